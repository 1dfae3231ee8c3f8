use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{write_tuple, WittOp, WittVec};
use crate::error::{Error, Result};
use crate::poly::{parse_residue_poly, same_alg, split_vector, Poly, PolyAlg, ResiduePoly};

/// A Witt vector over the residue algebra A_0 = A/πA.
///
/// A_0 has π-torsion (it is killed by π), so the ghost map is not injective
/// here. Arithmetic lifts every component to A through the coefficient
/// section, computes in W_n(A) and reduces. The structure polynomials have
/// coefficients in B, so the result does not depend on the chosen lifts.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueWittVec {
    comps: Vec<ResiduePoly>,
}

impl ResidueWittVec {
    /// Panics on an empty component list or mixed algebras; both are
    /// programming errors rather than user input.
    pub fn from_components(comps: Vec<ResiduePoly>) -> Self {
        assert!(
            !comps.is_empty(),
            "a Witt vector needs at least one component"
        );
        assert!(
            comps.iter().all(|c| same_alg(c.alg(), comps[0].alg())),
            "components from different algebras"
        );
        ResidueWittVec { comps }
    }

    pub fn zero(alg: &Arc<PolyAlg>, n: usize) -> Self {
        ResidueWittVec {
            comps: vec![ResiduePoly::zero(alg); n + 1],
        }
    }

    pub fn parse(alg: &Arc<PolyAlg>, text: &str) -> Result<Self> {
        let comps = split_vector(text)?
            .into_iter()
            .map(|(offset, part)| {
                parse_residue_poly(alg, part).map_err(|e| match e {
                    Error::Parse { position, message } => Error::Parse {
                        position: position + offset,
                        message,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResidueWittVec { comps })
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        self.comps[0].alg()
    }

    pub fn components(&self) -> &[ResiduePoly] {
        &self.comps
    }

    pub fn level(&self) -> usize {
        self.comps.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ResiduePoly::is_zero)
    }

    /// The canonical lift to W_n(A).
    pub fn lift(&self) -> WittVec {
        WittVec {
            alg: self.alg().clone(),
            comps: self.comps.iter().map(Poly::lift).collect(),
        }
    }

    pub fn arith(&self, other: &ResidueWittVec, op: WittOp) -> Result<ResidueWittVec> {
        if op != WittOp::Neg && self.comps.len() != other.comps.len() {
            return Err(Error::LengthMismatch {
                left: self.comps.len(),
                right: other.comps.len(),
            });
        }
        Ok(self.lift().arith(&other.lift(), op)?.to_residue())
    }

    pub fn add(&self, other: &ResidueWittVec) -> Result<ResidueWittVec> {
        self.arith(other, WittOp::Add)
    }

    pub fn mul(&self, other: &ResidueWittVec) -> Result<ResidueWittVec> {
        self.arith(other, WittOp::Mul)
    }

    pub fn verschiebung(&self) -> ResidueWittVec {
        let mut comps = Vec::with_capacity(self.comps.len() + 1);
        comps.push(ResiduePoly::zero(self.alg()));
        comps.extend(self.comps.iter().cloned());
        ResidueWittVec { comps }
    }

    /// Whether x_0 = … = x_{n−1} = 0, i.e. x ∈ I_n.
    pub fn in_ideal(&self, n: usize) -> Result<bool> {
        if n > self.comps.len() {
            return Err(Error::BoundExceeded(format!(
                "ideal index {n} exceeds vector length {}",
                self.comps.len()
            )));
        }
        Ok(self.comps[..n].iter().all(ResiduePoly::is_zero))
    }

    /// Index of the first nonzero component, or `None` for the zero vector.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.comps.iter().position(|c| !c.is_zero())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "residue-witt",
            "n": self.level(),
            "components": self.comps.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ResidueWittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.comps)
    }
}

impl fmt::Debug for ResidueWittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueWittVec{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;

    fn alg(ring: CoeffRing) -> Arc<PolyAlg> {
        PolyAlg::new(Arc::new(ring), vec!["u".into()]).unwrap()
    }

    #[test]
    fn ideal_membership() {
        let a = alg(CoeffRing::equal_char(2, 1, None).unwrap());
        let x = ResidueWittVec::parse(&a, "(0, 0, u, 1)").unwrap();
        assert!(x.in_ideal(2).unwrap());
        assert!(!x.in_ideal(3).unwrap());
        let y = ResidueWittVec::parse(&a, "(0, u, 0)").unwrap();
        assert!(!y.in_ideal(2).unwrap());
        let v = ResidueWittVec::parse(&a, "(u + 1)").unwrap();
        assert!(v.verschiebung().verschiebung().in_ideal(2).unwrap());
        assert!(x.in_ideal(9).is_err());
    }

    #[test]
    fn equal_char_addition_is_componentwise() {
        let a = alg(CoeffRing::equal_char(2, 1, None).unwrap());
        let x = ResidueWittVec::parse(&a, "(u, 1, u^2)").unwrap();
        let y = ResidueWittVec::parse(&a, "(u + 1, u, u^2)").unwrap();
        assert_eq!(
            x.add(&y).unwrap(),
            ResidueWittVec::parse(&a, "(1, u + 1, 0)").unwrap()
        );
    }

    #[test]
    fn mixed_char_carry() {
        let a = alg(CoeffRing::mixed_char(2).unwrap());
        let one = ResidueWittVec::parse(&a, "(1, 0)").unwrap();
        // (1,0) + (1,0) = (2,-1) over Z, which reduces to (0, 1).
        assert_eq!(
            one.add(&one).unwrap(),
            ResidueWittVec::parse(&a, "(0, 1)").unwrap()
        );
    }
}
