//! Coefficient rings B with a distinguished uniformizer π.
//!
//! Three concrete instances are supported:
//!
//! * equal characteristic: B = 𝔽_q[t], π = t;
//! * mixed characteristic: B = ℤ, π = p;
//! * ramified mixed characteristic: B = ℤ[i], π = 1 + i, p = 2, e = 2.
//!
//! The π-adic completion is never materialised. Everything is computed
//! exactly in B, and statements about the completion are checked at a
//! finite π-adic truncation (see [`CoeffRing::reduce_mod`]).

mod fq;

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result, Valuation};

pub use fq::{is_prime, shipped_modulus, FiniteField, FqElem, SHIPPED_MODULI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    EqualChar,
    MixedChar,
    MixedCharRamified,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::EqualChar => "equal-char",
            RingKind::MixedChar => "mixed-char",
            RingKind::MixedCharRamified => "mixed-char-ramified",
        }
    }
}

/// An element of B in canonical form.
///
/// * `Poly`: coefficients of `t^0, t^1, …` over 𝔽_q, no trailing zeros.
/// * `Int`: an integer.
/// * `Gauss(a, b)`: the Gaussian integer `a + b i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BElem {
    Poly(Vec<FqElem>),
    Int(BigInt),
    Gauss(BigInt, BigInt),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// The base data (B, 𝔭, π, k, q = p^h, e).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffRing {
    kind: RingKind,
    e: u32,
    field: FiniteField,
}

impl CoeffRing {
    /// 𝔽_q[t] with π = t. `modulus` overrides the shipped irreducible
    /// polynomial for q = p^h.
    pub fn equal_char(p: u32, h: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        Ok(CoeffRing {
            kind: RingKind::EqualChar,
            e: 1,
            field: FiniteField::new(p, h, modulus)?,
        })
    }

    /// ℤ with π = p.
    pub fn mixed_char(p: u32) -> Result<Self> {
        Ok(CoeffRing {
            kind: RingKind::MixedChar,
            e: 1,
            field: FiniteField::prime(p)?,
        })
    }

    /// ℤ[i] with π = 1 + i.
    pub fn gaussian() -> Self {
        CoeffRing {
            kind: RingKind::MixedCharRamified,
            e: 2,
            field: FiniteField::prime(2).expect("2 is prime"),
        }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn h(&self) -> u32 {
        self.field.h()
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Ramification index v_π(p).
    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.field
    }

    pub fn is_equal_char(&self) -> bool {
        self.kind == RingKind::EqualChar
    }

    /// Characteristic of B: p in equal characteristic, 0 otherwise.
    pub fn characteristic(&self) -> u32 {
        if self.is_equal_char() {
            self.p()
        } else {
            0
        }
    }

    /// Human-readable name, e.g. `F_4[t]`, `Z (p=3)`, `Z[i]`.
    pub fn describe(&self) -> String {
        match self.kind {
            RingKind::EqualChar => format!("F_{}[t]", self.q()),
            RingKind::MixedChar => format!("Z (p={})", self.p()),
            RingKind::MixedCharRamified => "Z[i]".to_string(),
        }
    }

    pub fn pi_name(&self) -> &'static str {
        match self.kind {
            RingKind::EqualChar => "t",
            RingKind::MixedChar => "p",
            RingKind::MixedCharRamified => "1+i",
        }
    }

    // ---- constructors -------------------------------------------------

    pub fn zero(&self) -> BElem {
        match self.kind {
            RingKind::EqualChar => BElem::Poly(Vec::new()),
            RingKind::MixedChar => BElem::Int(BigInt::zero()),
            RingKind::MixedCharRamified => BElem::Gauss(BigInt::zero(), BigInt::zero()),
        }
    }

    pub fn one(&self) -> BElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> BElem {
        self.from_bigint(&BigInt::from(n))
    }

    /// Image of an integer under ℤ → B.
    pub fn from_bigint(&self, n: &BigInt) -> BElem {
        match self.kind {
            RingKind::EqualChar => {
                let r = n.mod_floor(&BigInt::from(self.p())).to_i64().unwrap();
                let c = self.field.from_int(r);
                BElem::Poly(if c.is_zero() { Vec::new() } else { vec![c] })
            }
            RingKind::MixedChar => BElem::Int(n.clone()),
            RingKind::MixedCharRamified => BElem::Gauss(n.clone(), BigInt::zero()),
        }
    }

    /// The uniformizer π.
    pub fn pi(&self) -> BElem {
        match self.kind {
            RingKind::EqualChar => BElem::Poly(vec![FqElem::ZERO, FqElem::ONE]),
            RingKind::MixedChar => BElem::Int(BigInt::from(self.p())),
            RingKind::MixedCharRamified => BElem::Gauss(BigInt::one(), BigInt::one()),
        }
    }

    /// π^n.
    pub fn pi_pow(&self, n: u32) -> BElem {
        self.mul_pi_pow(&self.one(), n)
    }

    /// The Gaussian unit `i` (ramified ring only).
    pub fn imaginary_unit(&self) -> Option<BElem> {
        (self.kind == RingKind::MixedCharRamified)
            .then(|| BElem::Gauss(BigInt::zero(), BigInt::one()))
    }

    /// The constant `z ∈ 𝔽_q ⊂ 𝔽_q[t]` (equal characteristic, h > 1).
    pub fn field_generator(&self) -> Option<BElem> {
        (self.kind == RingKind::EqualChar && self.h() > 1)
            .then(|| BElem::Poly(vec![self.field.generator()]))
    }

    /// Builds an element of 𝔽_q[t] from `t`-coefficients, trimming zeros.
    pub fn from_t_coeffs(&self, mut coeffs: Vec<FqElem>) -> Result<BElem> {
        if self.kind != RingKind::EqualChar {
            return Err(Error::RingMismatch);
        }
        if coeffs.iter().any(|&c| !self.field.contains(c)) {
            return Err(Error::RingMismatch);
        }
        trim(&mut coeffs);
        Ok(BElem::Poly(coeffs))
    }

    pub fn gaussian_elem(&self, a: BigInt, b: BigInt) -> Result<BElem> {
        if self.kind != RingKind::MixedCharRamified {
            return Err(Error::RingMismatch);
        }
        Ok(BElem::Gauss(a, b))
    }

    /// Whether `a` is a canonical element of this ring.
    pub fn contains(&self, a: &BElem) -> bool {
        match (self.kind, a) {
            (RingKind::EqualChar, BElem::Poly(c)) => {
                c.last().is_none_or(|l| !l.is_zero()) && c.iter().all(|&x| self.field.contains(x))
            }
            (RingKind::MixedChar, BElem::Int(_)) => true,
            (RingKind::MixedCharRamified, BElem::Gauss(..)) => true,
            _ => false,
        }
    }

    // ---- ring operations ------------------------------------------------

    /// Checked ring operation; `b` is ignored for `Neg`.
    pub fn arith(&self, a: &BElem, b: &BElem, op: BOp) -> Result<BElem> {
        if !self.contains(a) || (op != BOp::Neg && !self.contains(b)) {
            return Err(Error::RingMismatch);
        }
        Ok(match op {
            BOp::Add => self.add(a, b),
            BOp::Sub => self.sub(a, b),
            BOp::Mul => self.mul(a, b),
            BOp::Neg => self.neg(a),
        })
    }

    pub fn is_zero(&self, a: &BElem) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &BElem) -> bool {
        match a {
            BElem::Poly(c) => c.len() == 1 && c[0] == FqElem::ONE,
            BElem::Int(n) => n.is_one(),
            BElem::Gauss(x, y) => x.is_one() && y.is_zero(),
        }
    }

    pub fn add(&self, a: &BElem, b: &BElem) -> BElem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }

    pub fn add_assign(&self, a: &mut BElem, b: &BElem) {
        match (a, b) {
            (BElem::Poly(x), BElem::Poly(y)) => {
                if x.len() < y.len() {
                    x.resize(y.len(), FqElem::ZERO);
                }
                for (xi, &yi) in x.iter_mut().zip(y) {
                    *xi = self.field.add(*xi, yi);
                }
                trim(x);
            }
            (BElem::Int(x), BElem::Int(y)) => *x += y,
            (BElem::Gauss(x0, x1), BElem::Gauss(y0, y1)) => {
                *x0 += y0;
                *x1 += y1;
            }
            _ => panic!("coefficient ring mismatch"),
        }
    }

    pub fn neg(&self, a: &BElem) -> BElem {
        match a {
            BElem::Poly(x) => BElem::Poly(x.iter().map(|&c| self.field.neg(c)).collect()),
            BElem::Int(x) => BElem::Int(-x),
            BElem::Gauss(x, y) => BElem::Gauss(-x, -y),
        }
    }

    pub fn sub(&self, a: &BElem, b: &BElem) -> BElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &BElem, b: &BElem) -> BElem {
        match (a, b) {
            (BElem::Poly(x), BElem::Poly(y)) => {
                if x.is_empty() || y.is_empty() {
                    return BElem::Poly(Vec::new());
                }
                let mut out = vec![FqElem::ZERO; x.len() + y.len() - 1];
                if self.p() == 2 && self.h() == 1 {
                    for (i, &xi) in x.iter().enumerate() {
                        if xi.is_zero() {
                            continue;
                        }
                        for (o, &yj) in out[i..].iter_mut().zip(y) {
                            *o = self.field.add(*o, yj);
                        }
                    }
                } else {
                    for (i, &xi) in x.iter().enumerate() {
                        if xi.is_zero() {
                            continue;
                        }
                        for (o, &yj) in out[i..].iter_mut().zip(y) {
                            *o = self.field.add(*o, self.field.mul(xi, yj));
                        }
                    }
                }
                trim(&mut out);
                BElem::Poly(out)
            }
            (BElem::Int(x), BElem::Int(y)) => BElem::Int(x * y),
            (BElem::Gauss(a0, a1), BElem::Gauss(b0, b1)) => {
                BElem::Gauss(a0 * b0 - a1 * b1, a0 * b1 + a1 * b0)
            }
            _ => panic!("coefficient ring mismatch"),
        }
    }

    pub fn pow(&self, a: &BElem, mut e: u64) -> BElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `a^p` in equal characteristic, where it is additive:
    /// `(Σ c_k t^k)^p = Σ c_k^p t^{kp}`.
    pub fn frobenius_p(&self, a: &BElem) -> BElem {
        match a {
            BElem::Poly(x) if !x.is_empty() => {
                let p = self.p() as usize;
                let mut out = vec![FqElem::ZERO; (x.len() - 1) * p + 1];
                for (k, &c) in x.iter().enumerate() {
                    out[k * p] = self.field.pow(c, p as u64);
                }
                BElem::Poly(out)
            }
            BElem::Poly(_) => a.clone(),
            _ => self.pow(a, self.p() as u64),
        }
    }

    pub fn scale_int(&self, a: &BElem, n: &BigInt) -> BElem {
        self.mul(a, &self.from_bigint(n))
    }

    // ---- π-adic structure ----------------------------------------------

    /// π^n · a.
    pub fn mul_pi_pow(&self, a: &BElem, n: u32) -> BElem {
        if n == 0 || a.is_zero() {
            return a.clone();
        }
        match a {
            BElem::Poly(x) => {
                let mut out = vec![FqElem::ZERO; n as usize];
                out.extend_from_slice(x);
                BElem::Poly(out)
            }
            BElem::Int(x) => BElem::Int(x * BigInt::from(self.p()).pow(n)),
            BElem::Gauss(..) => {
                // (1+i)^2 = 2i
                let half = n / 2;
                let two_pow = BigInt::one() << half;
                let mut out = match a {
                    BElem::Gauss(x, y) => BElem::Gauss(x * &two_pow, y * &two_pow),
                    _ => unreachable!(),
                };
                out = mul_i_pow(out, half);
                if n % 2 == 1 {
                    out = self.mul(&out, &self.pi());
                }
                out
            }
        }
    }

    /// Largest n with π^n | a; infinite iff a = 0.
    pub fn v_pi(&self, a: &BElem) -> Valuation {
        match a {
            BElem::Poly(x) => match x.iter().position(|c| !c.is_zero()) {
                Some(k) => Valuation::Finite(k as u32),
                None => Valuation::Infinite,
            },
            BElem::Int(x) => {
                if x.is_zero() {
                    return Valuation::Infinite;
                }
                Valuation::Finite(int_valuation(x, self.p()))
            }
            BElem::Gauss(x, y) => {
                if x.is_zero() && y.is_zero() {
                    return Valuation::Infinite;
                }
                let s = match (x.is_zero(), y.is_zero()) {
                    (true, _) => int_valuation(y, 2),
                    (_, true) => int_valuation(x, 2),
                    _ => int_valuation(x, 2).min(int_valuation(y, 2)),
                };
                let xs = x >> s;
                let ys = y >> s;
                // after removing 2^s = unit·π^{2s}, one more π divides iff
                // both parts are odd
                if xs.is_odd() && ys.is_odd() {
                    Valuation::Finite(2 * s + 1)
                } else {
                    Valuation::Finite(2 * s)
                }
            }
        }
    }

    /// The b with π^n · b = a.
    pub fn exact_div_pi(&self, a: &BElem, n: u32) -> Result<BElem> {
        if n == 0 || a.is_zero() {
            return Ok(a.clone());
        }
        let v = self.v_pi(a);
        if !v.at_least(n) {
            return Err(Error::NotDivisible {
                required: n,
                valuation: v,
            });
        }
        Ok(match a {
            BElem::Poly(x) => BElem::Poly(x[n as usize..].to_vec()),
            BElem::Int(x) => BElem::Int(x / BigInt::from(self.p()).pow(n)),
            BElem::Gauss(x, y) => {
                let half = n / 2;
                let mut out = BElem::Gauss(x >> half, y >> half);
                // divide by i^half
                out = mul_i_pow(out, (4 - half % 4) % 4);
                if n % 2 == 1 {
                    // (a+bi)/(1+i) = ((a+b) + (b-a)i)/2
                    if let BElem::Gauss(a0, b0) = out {
                        out = BElem::Gauss((&a0 + &b0) >> 1, (&b0 - &a0) >> 1);
                    }
                }
                out
            }
        })
    }

    /// δ(a) = (a − a^q)/π, the π-derivation of the identity lift on B.
    pub fn delta(&self, a: &BElem) -> BElem {
        let aq = self.pow(a, self.q() as u64);
        self.exact_div_pi(&self.sub(a, &aq), 1)
            .expect("a ≡ a^q mod π in B")
    }

    /// C_π(x, y) = (x^q + y^q − (x+y)^q)/π, zero in equal characteristic.
    pub fn c_pi(&self, x: &BElem, y: &BElem) -> BElem {
        if self.is_equal_char() {
            return self.zero();
        }
        let q = self.q() as u64;
        let num = self.sub(
            &self.add(&self.pow(x, q), &self.pow(y, q)),
            &self.pow(&self.add(x, y), q),
        );
        self.exact_div_pi(&num, 1)
            .expect("binomial coefficients of a q-th power are divisible by p")
    }

    /// The image of `a` in k = B/π.
    pub fn residue(&self, a: &BElem) -> FqElem {
        match a {
            BElem::Poly(x) => x.first().copied().unwrap_or(FqElem::ZERO),
            BElem::Int(x) => {
                let r = x.mod_floor(&BigInt::from(self.p()));
                self.field.from_index(r.to_u32().unwrap()).unwrap()
            }
            BElem::Gauss(x, y) => {
                if (x + y).is_odd() {
                    FqElem::ONE
                } else {
                    FqElem::ZERO
                }
            }
        }
    }

    /// Set-theoretic section k → B: constants in 𝔽_q[t], representatives
    /// in `[0, p)` for ℤ, `{0, 1}` for ℤ[i].
    pub fn section(&self, c: FqElem) -> BElem {
        match self.kind {
            RingKind::EqualChar => BElem::Poly(if c.is_zero() { Vec::new() } else { vec![c] }),
            RingKind::MixedChar => BElem::Int(BigInt::from(c.index())),
            RingKind::MixedCharRamified => BElem::Gauss(BigInt::from(c.index()), BigInt::zero()),
        }
    }

    /// Canonical representative of `a` modulo π^{n+1}.
    pub fn reduce_mod(&self, a: &BElem, n: u32) -> BElem {
        let k = n + 1;
        match a {
            BElem::Poly(x) => {
                let mut out: Vec<FqElem> = x.iter().take(k as usize).copied().collect();
                trim(&mut out);
                BElem::Poly(out)
            }
            BElem::Int(x) => BElem::Int(x.mod_floor(&BigInt::from(self.p()).pow(k))),
            BElem::Gauss(x, y) => {
                // (π^{2s}) = (2^s); (π^{2s+1}) = {2^s (c + d i) : c ≡ d mod 2}
                let s = k / 2;
                let two_s = BigInt::one() << s;
                if k.is_multiple_of(2) {
                    BElem::Gauss(x.mod_floor(&two_s), y.mod_floor(&two_s))
                } else {
                    let (shift, b) = y.div_mod_floor(&two_s);
                    let a = (x - &shift * &two_s).mod_floor(&(&two_s << 1));
                    BElem::Gauss(a, b)
                }
            }
        }
    }

    // ---- formatting ------------------------------------------------------

    /// Renders `a` in the textual syntax accepted by the parser.
    pub fn format(&self, a: &BElem) -> String {
        let mut out = String::new();
        self.write_elem(&mut out, a).unwrap();
        out
    }

    fn write_elem(&self, out: &mut String, a: &BElem) -> fmt::Result {
        match a {
            BElem::Poly(x) => {
                let mut first = true;
                for (k, &c) in x.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        out.push('+');
                    }
                    first = false;
                    let cs = self.field.format(c);
                    let cs = if self.field.is_compound(c) {
                        format!("({cs})")
                    } else {
                        cs
                    };
                    match k {
                        0 => out.push_str(&self.field.format(c)),
                        _ => {
                            if c != FqElem::ONE {
                                write!(out, "{cs}*")?;
                            }
                            if k == 1 {
                                out.push('t');
                            } else {
                                write!(out, "t^{k}")?;
                            }
                        }
                    }
                }
                if first {
                    out.push('0');
                }
                Ok(())
            }
            BElem::Int(x) => write!(out, "{x}"),
            BElem::Gauss(x, y) => {
                if y.is_zero() {
                    return write!(out, "{x}");
                }
                if !x.is_zero() {
                    write!(out, "{x}")?;
                    out.push(if y.is_negative() { '-' } else { '+' });
                } else if y.is_negative() {
                    out.push('-');
                }
                let m = y.abs();
                if m.is_one() {
                    out.push('i');
                } else {
                    write!(out, "{m}*i")?;
                }
                Ok(())
            }
        }
    }

    /// Rendering of `a` as a polynomial coefficient: (negative, body,
    /// compound). A negative coefficient renders as `- body`; a compound
    /// body needs parentheses when multiplied.
    pub(crate) fn coefficient_parts(&self, a: &BElem) -> (bool, String, bool) {
        match a {
            BElem::Int(x) => (x.is_negative(), x.abs().to_string(), false),
            BElem::Gauss(x, y) if y.is_zero() => (x.is_negative(), x.abs().to_string(), false),
            BElem::Gauss(x, y) if x.is_zero() => {
                let body = if y.abs().is_one() {
                    "i".to_string()
                } else {
                    format!("{}*i", y.abs())
                };
                (y.is_negative(), body, false)
            }
            BElem::Gauss(..) => (false, self.format(a), true),
            BElem::Poly(x) => {
                let nonzero = x.iter().filter(|c| !c.is_zero()).count();
                let bare_compound = x.len() == 1 && self.field.is_compound(x[0]);
                (false, self.format(a), nonzero > 1 || bare_compound)
            }
        }
    }
}

impl BElem {
    pub fn is_zero(&self) -> bool {
        match self {
            BElem::Poly(x) => x.is_empty(),
            BElem::Int(x) => x.is_zero(),
            BElem::Gauss(x, y) => x.is_zero() && y.is_zero(),
        }
    }

    /// Coefficients in `t` (equal characteristic only).
    pub fn t_coeffs(&self) -> Option<&[FqElem]> {
        match self {
            BElem::Poly(x) => Some(x),
            _ => None,
        }
    }
}

fn trim(x: &mut Vec<FqElem>) {
    while x.last().is_some_and(|c| c.is_zero()) {
        x.pop();
    }
}

fn mul_i_pow(a: BElem, k: u32) -> BElem {
    match a {
        BElem::Gauss(x, y) => match k % 4 {
            0 => BElem::Gauss(x, y),
            1 => BElem::Gauss(-y, x),
            2 => BElem::Gauss(-x, -y),
            _ => BElem::Gauss(y, -x),
        },
        other => other,
    }
}

fn int_valuation(x: &BigInt, p: u32) -> u32 {
    if p == 2 {
        return x.trailing_zeros().unwrap_or(0) as u32;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut cur = x.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        cur = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> CoeffRing {
        CoeffRing::equal_char(2, 1, None).unwrap()
    }

    fn tpoly(ring: &CoeffRing, bits: &[u32]) -> BElem {
        let f = ring.residue_field();
        ring.from_t_coeffs(bits.iter().map(|&b| f.from_index(b).unwrap()).collect())
            .unwrap()
    }

    fn int(n: i64) -> BElem {
        BElem::Int(BigInt::from(n))
    }

    fn gauss(a: i64, b: i64) -> BElem {
        BElem::Gauss(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn char_two_squaring() {
        let r = f2t();
        let one_t = tpoly(&r, &[1, 1]);
        assert_eq!(r.mul(&one_t, &one_t), tpoly(&r, &[1, 0, 1]));
        assert_eq!(r.frobenius_p(&one_t), tpoly(&r, &[1, 0, 1]));
    }

    #[test]
    fn integer_and_gaussian_products() {
        let z2 = CoeffRing::mixed_char(2).unwrap();
        assert_eq!(z2.mul(&int(3), &int(3)), int(9));
        let zi = CoeffRing::gaussian();
        assert_eq!(zi.mul(&gauss(1, 1), &gauss(1, -1)), gauss(2, 0));
    }

    #[test]
    fn arith_rejects_foreign_elements() {
        let z2 = CoeffRing::mixed_char(2).unwrap();
        let r = f2t();
        assert_eq!(
            z2.arith(&int(1), &tpoly(&r, &[1]), BOp::Add),
            Err(Error::RingMismatch)
        );
        let f4 = CoeffRing::equal_char(2, 2, None).unwrap();
        let z_elem = f4.field_generator().unwrap();
        assert_eq!(
            r.arith(&z_elem, &r.one(), BOp::Mul),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn valuations() {
        let r = f2t();
        assert_eq!(
            r.v_pi(&tpoly(&r, &[0, 0, 0, 1, 0, 1])),
            Valuation::Finite(3)
        );
        let z2 = CoeffRing::mixed_char(2).unwrap();
        assert_eq!(z2.v_pi(&int(12)), Valuation::Finite(2));
        assert_eq!(z2.v_pi(&int(0)), Valuation::Infinite);
        let zi = CoeffRing::gaussian();
        assert_eq!(zi.v_pi(&gauss(2, 0)), Valuation::Finite(2));
        // dividing 2 by 1+i twice is exact, a third time is not
        let once = zi.exact_div_pi(&gauss(2, 0), 1).unwrap();
        let twice = zi.exact_div_pi(&once, 1).unwrap();
        assert_eq!(zi.v_pi(&twice), Valuation::Finite(0));
        assert!(zi.exact_div_pi(&twice, 1).is_err());
    }

    #[test]
    fn gaussian_valuation_matches_norm() {
        let zi = CoeffRing::gaussian();
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 && b == 0 {
                    continue;
                }
                let norm = a * a + b * b;
                let v2 = norm.trailing_zeros();
                assert_eq!(zi.v_pi(&gauss(a, b)), Valuation::Finite(v2), "{a}+{b}i");
            }
        }
    }

    #[test]
    fn exact_division() {
        let r = f2t();
        assert_eq!(
            r.exact_div_pi(&tpoly(&r, &[0, 0, 1, 1]), 2).unwrap(),
            tpoly(&r, &[1, 1])
        );
        let z2 = CoeffRing::mixed_char(2).unwrap();
        assert_eq!(z2.exact_div_pi(&int(-6), 1).unwrap(), int(-3));
        assert_eq!(
            z2.exact_div_pi(&int(3), 1),
            Err(Error::NotDivisible {
                required: 1,
                valuation: Valuation::Finite(0)
            })
        );
    }

    #[test]
    fn exact_division_inverts_pi_powers() {
        let rings = [
            f2t(),
            CoeffRing::equal_char(3, 2, None).unwrap(),
            CoeffRing::mixed_char(3).unwrap(),
            CoeffRing::gaussian(),
        ];
        for ring in &rings {
            let samples = match ring.kind() {
                RingKind::EqualChar => vec![tpoly(ring, &[1, 0, 1]), tpoly(ring, &[0, 1, 1, 1])],
                RingKind::MixedChar => vec![int(7), int(-10), int(1)],
                RingKind::MixedCharRamified => vec![gauss(3, -5), gauss(0, 1), gauss(4, 2)],
            };
            for a in &samples {
                for n in 0..=12 {
                    let up = ring.mul_pi_pow(a, n);
                    assert_eq!(ring.mul(a, &ring.pi_pow(n)), up);
                    assert_eq!(&ring.exact_div_pi(&up, n).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn delta_on_base() {
        let z2 = CoeffRing::mixed_char(2).unwrap();
        assert_eq!(z2.delta(&int(3)), int(-3));
        let r = f2t();
        assert_eq!(r.delta(&tpoly(&r, &[0, 1])), tpoly(&r, &[1, 1]));
        assert!(r.delta(&r.one()).is_zero());
    }

    #[test]
    fn residues_and_sections() {
        let r = f2t();
        assert_eq!(r.residue(&tpoly(&r, &[1, 1, 0, 1])), FqElem::ONE);
        let z3 = CoeffRing::mixed_char(3).unwrap();
        assert_eq!(z3.residue(&int(7)), FqElem::ONE);
        let f4 = CoeffRing::equal_char(2, 2, None).unwrap();
        let z = f4.residue_field().generator();
        assert_eq!(f4.section(z), f4.field_generator().unwrap());
        let zi = CoeffRing::gaussian();
        for ring in [&r, &z3, &f4, &zi] {
            for c in ring.residue_field().elements() {
                assert_eq!(ring.residue(&ring.section(c)), c);
            }
        }
    }

    #[test]
    fn c_pi_values() {
        let z2 = CoeffRing::mixed_char(2).unwrap();
        assert_eq!(z2.c_pi(&int(1), &int(1)), int(-1));
        let r = f2t();
        assert!(r.c_pi(&tpoly(&r, &[1, 1]), &tpoly(&r, &[0, 1])).is_zero());
    }

    #[test]
    fn reduce_mod_gaussian_representatives() {
        let zi = CoeffRing::gaussian();
        for n in 0..5u32 {
            let modulus = zi.pi_pow(n + 1);
            let mut seen = std::collections::HashSet::new();
            for a in -9i64..=9 {
                for b in -9i64..=9 {
                    let x = gauss(a, b);
                    let r = zi.reduce_mod(&x, n);
                    // same class
                    assert!(zi.v_pi(&zi.sub(&x, &r)).at_least(n + 1));
                    let _ = &modulus;
                    seen.insert(r);
                }
            }
            assert_eq!(seen.len(), 1 << (n + 1), "n = {n}");
        }
    }

    #[test]
    fn format_elements() {
        let r = f2t();
        assert_eq!(r.format(&tpoly(&r, &[1, 1, 1])), "1+t+t^2");
        let f4 = CoeffRing::equal_char(2, 2, None).unwrap();
        let z = f4.residue_field().generator();
        let zp1 = f4.residue_field().add(z, FqElem::ONE);
        let e = f4.from_t_coeffs(vec![zp1, FqElem::ZERO, z]).unwrap();
        assert_eq!(f4.format(&e), "1+z+z*t^2");
        let zi = CoeffRing::gaussian();
        assert_eq!(zi.format(&gauss(1, -1)), "1-i");
        assert_eq!(zi.format(&gauss(0, -3)), "-3*i");
    }
}
