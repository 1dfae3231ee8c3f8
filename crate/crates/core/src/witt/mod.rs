//! Truncated π-typical Witt vectors W_n(A) = A^{n+1}.
//!
//! A is always a free polynomial algebra over a domain, hence π-torsion
//! free, and the ghost map
//!
//! ```text
//! w_i = x_0^{q^i} + π x_1^{q^{i-1}} + … + π^i x_i
//! ```
//!
//! is injective. Ring operations, Frobenius and negation are computed by
//! transporting to ghost coordinates, operating componentwise, and dividing
//! back exactly. Over the residue algebra A_0 (which is not torsion free)
//! operations lift to A, compute there and reduce.

mod residue;
mod universal;

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::BElem;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, same_alg, split_vector, Poly, PolyAlg};

pub use residue::ResidueWittVec;
pub use universal::{universal_polys, UniversalOp, UniversalPolys, DEFAULT_UNIVERSAL_BOUND};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A Witt vector (x_0, …, x_n) over A.
#[derive(Clone, PartialEq, Eq)]
pub struct WittVec {
    alg: Arc<PolyAlg>,
    comps: Vec<Poly>,
}

/// A ghost vector (w_0, …, w_n) ∈ Π_n A.
#[derive(Clone, PartialEq, Eq)]
pub struct GhostVec {
    alg: Arc<PolyAlg>,
    comps: Vec<Poly>,
}

fn check_components(alg: &Arc<PolyAlg>, comps: &[Poly]) -> Result<()> {
    if comps.is_empty() {
        return Err(Error::LengthMismatch { left: 0, right: 1 });
    }
    if comps.iter().any(|c| !same_alg(c.alg(), alg)) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

fn write_tuple<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    f.write_str("(")?;
    for (k, c) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// Parses `"(a, b, …)"` into components of `alg`, shifting parse error
/// positions to the full text.
pub(crate) fn parse_components(alg: &Arc<PolyAlg>, text: &str) -> Result<Vec<Poly>> {
    split_vector(text)?
        .into_iter()
        .map(|(offset, part)| {
            parse_poly(alg, part).map_err(|e| match e {
                Error::Parse { position, message } => Error::Parse {
                    position: position + offset,
                    message,
                },
                other => other,
            })
        })
        .collect()
}

/// The powers `x_j^{q^{i-j}}` for j < i, maintained level by level.
struct PowerLadder {
    powers: Vec<Poly>,
}

impl PowerLadder {
    fn new() -> Self {
        PowerLadder { powers: Vec::new() }
    }

    /// Raises every stored power to the q-th power (moves to the next level).
    fn advance(&mut self) {
        for p in &mut self.powers {
            *p = p.pow_q();
        }
    }

    /// Σ_j π^j · powers[j].
    fn weighted_sum(&self, alg: &Arc<PolyAlg>) -> Poly {
        let mut acc = Poly::zero(alg);
        for (j, p) in self.powers.iter().enumerate() {
            acc = &acc + &p.mul_pi_pow(j as u32);
        }
        acc
    }
}

impl WittVec {
    pub fn new(alg: &Arc<PolyAlg>, comps: Vec<Poly>) -> Result<Self> {
        check_components(alg, &comps)?;
        Ok(WittVec {
            alg: alg.clone(),
            comps,
        })
    }

    /// Parses `"(x_0, …, x_n)"`.
    pub fn parse(alg: &Arc<PolyAlg>, text: &str) -> Result<Self> {
        Self::new(alg, parse_components(alg, text)?)
    }

    pub fn zero(alg: &Arc<PolyAlg>, n: usize) -> Self {
        WittVec {
            alg: alg.clone(),
            comps: vec![Poly::zero(alg); n + 1],
        }
    }

    /// (1, 0, …, 0), the multiplicative identity.
    pub fn one(alg: &Arc<PolyAlg>, n: usize) -> Self {
        teichmuller(&Poly::one(alg), n)
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    /// Truncation level n (the vector has n + 1 components).
    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn ghost(&self) -> GhostVec {
        let mut ladder = PowerLadder::new();
        let mut out = Vec::with_capacity(self.comps.len());
        for x in &self.comps {
            ladder.advance();
            ladder.powers.push(x.clone());
            out.push(ladder.weighted_sum(&self.alg));
        }
        GhostVec {
            alg: self.alg.clone(),
            comps: out,
        }
    }

    fn check_pair(&self, other: &WittVec) -> Result<()> {
        if !same_alg(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        if self.comps.len() != other.comps.len() {
            return Err(Error::LengthMismatch {
                left: self.comps.len(),
                right: other.comps.len(),
            });
        }
        Ok(())
    }

    /// Ring operation in W_n(A); `other` is ignored for `Neg`.
    pub fn arith(&self, other: &WittVec, op: WittOp) -> Result<WittVec> {
        if op != WittOp::Neg {
            self.check_pair(other)?;
        }
        let gx = self.ghost();
        let ghost = match op {
            WittOp::Neg => gx.map(|a| -a),
            _ => {
                let gy = other.ghost();
                let f: fn(&Poly, &Poly) -> Poly = match op {
                    WittOp::Add => |a, b| a + b,
                    WittOp::Sub => |a, b| a - b,
                    WittOp::Mul => |a, b| a * b,
                    WittOp::Neg => unreachable!(),
                };
                gx.zip_with(&gy, f)
            }
        };
        ghost.unghost().map_err(|e| {
            Error::Internal(format!(
                "Witt {op:?} left the ghost image ({e}); the ring structure must be total"
            ))
        })
    }

    pub fn add(&self, other: &WittVec) -> Result<WittVec> {
        self.arith(other, WittOp::Add)
    }

    pub fn sub(&self, other: &WittVec) -> Result<WittVec> {
        self.arith(other, WittOp::Sub)
    }

    pub fn mul(&self, other: &WittVec) -> Result<WittVec> {
        self.arith(other, WittOp::Mul)
    }

    pub fn neg(&self) -> WittVec {
        self.arith(self, WittOp::Neg).expect("negation is total")
    }

    /// Restriction T: W_n → W_{n−1}, dropping the last component.
    pub fn restrict(&self) -> Result<WittVec> {
        if self.comps.len() < 2 {
            return Err(Error::TooShort {
                operation: "restriction",
            });
        }
        Ok(WittVec {
            alg: self.alg.clone(),
            comps: self.comps[..self.comps.len() - 1].to_vec(),
        })
    }

    /// Frobenius F: W_n → W_{n−1}, the unique map with w ∘ F = F_w ∘ w.
    pub fn frobenius(&self) -> Result<WittVec> {
        if self.comps.len() < 2 {
            return Err(Error::TooShort {
                operation: "Frobenius",
            });
        }
        self.ghost()
            .shift()?
            .unghost()
            .map_err(|e| Error::Internal(format!("Frobenius left the ghost image: {e}")))
    }

    /// Verschiebung V: (x_0, …, x_n) ↦ (0, x_0, …, x_n).
    pub fn verschiebung(&self) -> WittVec {
        let mut comps = Vec::with_capacity(self.comps.len() + 1);
        comps.push(Poly::zero(&self.alg));
        comps.extend(self.comps.iter().cloned());
        WittVec {
            alg: self.alg.clone(),
            comps,
        }
    }

    /// Componentwise image in W_n(A_0).
    pub fn to_residue(&self) -> ResidueWittVec {
        ResidueWittVec::from_components(self.comps.iter().map(Poly::to_residue).collect())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "witt",
            "n": self.level(),
            "components": self.comps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for WittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.comps)
    }
}

impl fmt::Debug for WittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittVec{self}")
    }
}

impl GhostVec {
    pub fn new(alg: &Arc<PolyAlg>, comps: Vec<Poly>) -> Result<Self> {
        check_components(alg, &comps)?;
        Ok(GhostVec {
            alg: alg.clone(),
            comps,
        })
    }

    pub fn parse(alg: &Arc<PolyAlg>, text: &str) -> Result<Self> {
        Self::new(alg, parse_components(alg, text)?)
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    fn map(&self, f: impl Fn(&Poly) -> Poly) -> GhostVec {
        GhostVec {
            alg: self.alg.clone(),
            comps: self.comps.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &GhostVec, f: impl Fn(&Poly, &Poly) -> Poly) -> GhostVec {
        GhostVec {
            alg: self.alg.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// F_w: left shift (w_0, …, w_n) ↦ (w_1, …, w_n).
    pub fn shift(&self) -> Result<GhostVec> {
        if self.comps.len() < 2 {
            return Err(Error::TooShort {
                operation: "ghost shift",
            });
        }
        Ok(GhostVec {
            alg: self.alg.clone(),
            comps: self.comps[1..].to_vec(),
        })
    }

    /// T_w: truncation (w_0, …, w_n) ↦ (w_0, …, w_{n−1}).
    pub fn truncate(&self) -> Result<GhostVec> {
        if self.comps.len() < 2 {
            return Err(Error::TooShort {
                operation: "ghost truncation",
            });
        }
        Ok(GhostVec {
            alg: self.alg.clone(),
            comps: self.comps[..self.comps.len() - 1].to_vec(),
        })
    }

    /// The unique Witt vector with this ghost image:
    /// `x_i = (w_i − Σ_{j<i} π^j x_j^{q^{i−j}}) / π^i`.
    pub fn unghost(&self) -> Result<WittVec> {
        let mut ladder = PowerLadder::new();
        let mut out: Vec<Poly> = Vec::with_capacity(self.comps.len());
        for (i, w) in self.comps.iter().enumerate() {
            ladder.advance();
            let rest = w - &ladder.weighted_sum(&self.alg);
            let x = rest
                .exact_div_pi(i as u32)
                .map_err(|_| Error::NotInGhostImage { index: i })?;
            ladder.powers.push(x.clone());
            out.push(x);
        }
        Ok(WittVec {
            alg: self.alg.clone(),
            comps: out,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "ghost",
            "n": self.level(),
            "components": self.comps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for GhostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.comps)
    }
}

impl fmt::Debug for GhostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GhostVec{self}")
    }
}

/// Teichmüller lift θ(a) = (a, 0, …, 0) of length n + 1.
pub fn teichmuller(a: &Poly, n: usize) -> WittVec {
    let mut comps = vec![Poly::zero(a.alg()); n + 1];
    comps[0] = a.clone();
    WittVec {
        alg: a.alg().clone(),
        comps,
    }
}

/// The R-algebra structure map B → W_n(A): the arithmetic exponential of
/// `r` in W_n(B), pushed into W_n(`target`). Frobenius is the identity on
/// B, so the ghost image of exp(r) is the constant vector (r, …, r).
pub fn structure_map(r: &BElem, n: usize, target: &Arc<PolyAlg>) -> Result<WittVec> {
    let base = PolyAlg::base(target.ring().clone());
    let r_poly = Poly::constant(&base, r.clone());
    let in_base = GhostVec::new(&base, vec![r_poly; n + 1])?
        .unghost()
        .map_err(|e| Error::Internal(format!("exp of a base element failed: {e}")))?;
    let comps = in_base
        .comps
        .iter()
        .map(|c| c.embed_constant(target))
        .collect::<Result<Vec<_>>>()?;
    WittVec::new(target, comps)
}

/// Whether the first `n` components of `x` vanish (x ∈ I_n).
pub fn in_ideal(x: &ResidueWittVec, n: usize) -> Result<bool> {
    x.in_ideal(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;

    fn zp(p: u32, gens: &[&str]) -> Arc<PolyAlg> {
        PolyAlg::new(
            Arc::new(CoeffRing::mixed_char(p).unwrap()),
            gens.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn f2(gens: &[&str]) -> Arc<PolyAlg> {
        PolyAlg::new(
            Arc::new(CoeffRing::equal_char(2, 1, None).unwrap()),
            gens.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap()
    }

    fn wv(alg: &Arc<PolyAlg>, s: &str) -> WittVec {
        WittVec::parse(alg, s).unwrap()
    }

    fn gv(alg: &Arc<PolyAlg>, s: &str) -> GhostVec {
        GhostVec::parse(alg, s).unwrap()
    }

    #[test]
    fn ghost_examples() {
        let z = zp(2, &[]);
        assert_eq!(wv(&z, "(3, -3)").ghost(), gv(&z, "(3, 3)"));
        let b = f2(&[]);
        assert_eq!(wv(&b, "(t, 1+t)").ghost(), gv(&b, "(t, t)"));
        let a = f2(&["u"]);
        let x = parse_poly(&a, "u + t").unwrap();
        let g = teichmuller(&x, 3).ghost();
        for (i, w) in g.components().iter().enumerate() {
            assert_eq!(*w, x.pow(2u64.pow(i as u32)));
        }
    }

    #[test]
    fn unghost_examples() {
        let z = zp(2, &[]);
        assert_eq!(gv(&z, "(2, 2)").unghost().unwrap(), wv(&z, "(2, -1)"));
        assert_eq!(
            gv(&z, "(0, 1)").unghost(),
            Err(Error::NotInGhostImage { index: 1 })
        );
    }

    #[test]
    fn addition_in_mixed_characteristic() {
        let z = zp(2, &[]);
        let one = wv(&z, "(1, 0)");
        assert_eq!(one.add(&one).unwrap(), wv(&z, "(2, -1)"));
        assert_ne!(
            one.add(&one).unwrap(),
            teichmuller(&Poly::from_int(&z, 2), 1)
        );
    }

    #[test]
    fn equal_characteristic_addition_and_product() {
        let a = f2(&["x0", "x1", "y0", "y1"]);
        let x = wv(&a, "(x0, x1)");
        let y = wv(&a, "(y0, y1)");
        assert_eq!(x.add(&y).unwrap(), wv(&a, "(x0 + y0, x1 + y1)"));
        assert_eq!(
            x.mul(&y).unwrap(),
            wv(&a, "(x0*y0, x0^2*y1 + y0^2*x1 + t*x1*y1)")
        );
    }

    #[test]
    fn restriction_and_frobenius() {
        let z = zp(2, &[]);
        let x = wv(&z, "(5, 7, -2)");
        assert_eq!(x.restrict().unwrap(), wv(&z, "(5, 7)"));
        assert!(matches!(
            wv(&z, "(5)").restrict(),
            Err(Error::TooShort { .. })
        ));
        assert_eq!(wv(&z, "(0, 1)").frobenius().unwrap(), wv(&z, "(2)"));
        let a = f2(&["u"]);
        let u = parse_poly(&a, "u + t").unwrap();
        assert_eq!(
            teichmuller(&u, 3).frobenius().unwrap(),
            teichmuller(&u.pow(2), 2)
        );
        assert_eq!(teichmuller(&u, 3).restrict().unwrap(), teichmuller(&u, 2));
    }

    #[test]
    fn verschiebung_ghost() {
        let z = zp(3, &["u"]);
        let x = wv(&z, "(u + 1, 2*u, u^2)");
        let v = x.verschiebung();
        assert_eq!(v.components()[1], x.components()[0]);
        let gv = v.ghost();
        let gx = x.ghost();
        assert!(gv.components()[0].is_zero());
        for i in 1..gv.components().len() {
            assert_eq!(gv.components()[i], gx.components()[i - 1].mul_pi_pow(1));
        }
    }

    #[test]
    fn structure_map_examples() {
        let b = f2(&[]);
        let t = b.ring().pi();
        assert_eq!(structure_map(&t, 2, &b).unwrap(), wv(&b, "(t, 1+t, t+t^2)"));
        let z = zp(2, &["u"]);
        let three = z.ring().from_int(3);
        assert_eq!(structure_map(&three, 1, &z).unwrap(), wv(&z, "(3, -3)"));
        assert_eq!(
            structure_map(&z.ring().one(), 3, &z).unwrap(),
            WittVec::one(&z, 3)
        );
    }

    #[test]
    fn json_shape() {
        let z = zp(2, &[]);
        let j = wv(&z, "(2, -1)").to_json();
        assert_eq!(j["kind"], "witt");
        assert_eq!(j["n"], 1);
        assert_eq!(j["components"][1], "-1");
    }
}
