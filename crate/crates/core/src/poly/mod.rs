//! Free polynomial algebras A = B[u_1, …, u_m] over a coefficient ring,
//! their reductions A_0 = A/πA, and Frobenius lifts on them.
//!
//! Polynomials are sparse maps from exponent vectors to coefficients, kept
//! in graded-lexicographic order. Every polynomial carries a shared handle
//! to its algebra so that mixing algebras is caught.

mod frob;
mod parse;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::coeff::{BElem, CoeffRing, FqElem};
use crate::error::{Error, Result, Valuation};

pub use frob::{c_pi, FrobLift};
pub use parse::{parse_poly, parse_residue_poly, split_vector};

/// An exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(m: usize) -> Self {
        Monomial(SmallVec::from_elem(0, m))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn generator(m: usize, i: usize) -> Self {
        let mut e = Self::one(m);
        e.0[i] = 1;
        e
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|&e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A = B[u_1, …, u_m].
#[derive(Debug, PartialEq, Eq)]
pub struct PolyAlg {
    ring: Arc<CoeffRing>,
    names: Vec<String>,
}

const RESERVED: &[&str] = &["t", "z", "i", "p"];

impl PolyAlg {
    pub fn new(ring: Arc<CoeffRing>, names: Vec<String>) -> Result<Arc<Self>> {
        for (k, name) in names.iter().enumerate() {
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || RESERVED.contains(&name.as_str()) {
                return Err(Error::Config(format!("invalid generator name '{name}'")));
            }
            if names[..k].contains(name) {
                return Err(Error::Config(format!("duplicate generator name '{name}'")));
            }
        }
        Ok(Arc::new(PolyAlg { ring, names }))
    }

    /// B itself (m = 0).
    pub fn base(ring: Arc<CoeffRing>) -> Arc<Self> {
        Arc::new(PolyAlg {
            ring,
            names: Vec::new(),
        })
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `B[u1, …]` style description.
    pub fn describe(&self) -> String {
        if self.names.is_empty() {
            self.ring.describe()
        } else {
            format!("{}[{}]", self.ring.describe(), self.names.join(","))
        }
    }
}

pub(crate) fn same_alg(a: &Arc<PolyAlg>, b: &Arc<PolyAlg>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Neg,
    Pow(u64),
}

/// An element of A.
#[derive(Clone)]
pub struct Poly {
    alg: Arc<PolyAlg>,
    terms: BTreeMap<Monomial, BElem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_alg(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&parse::format_poly(self))
    }
}

impl Poly {
    pub fn zero(alg: &Arc<PolyAlg>) -> Self {
        Poly {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alg: &Arc<PolyAlg>) -> Self {
        Self::constant(alg, alg.ring.one())
    }

    pub fn constant(alg: &Arc<PolyAlg>, c: BElem) -> Self {
        Self::term(alg, Monomial::one(alg.num_generators()), c)
    }

    pub fn from_int(alg: &Arc<PolyAlg>, n: i64) -> Self {
        Self::constant(alg, alg.ring.from_int(n))
    }

    /// π as an element of A.
    pub fn pi(alg: &Arc<PolyAlg>) -> Self {
        Self::constant(alg, alg.ring.pi())
    }

    pub fn generator(alg: &Arc<PolyAlg>, i: usize) -> Self {
        let m = alg.num_generators();
        assert!(i < m, "generator index {i} out of range");
        Self::term(alg, Monomial::generator(m, i), alg.ring.one())
    }

    pub fn term(alg: &Arc<PolyAlg>, mono: Monomial, c: BElem) -> Self {
        assert_eq!(mono.0.len(), alg.num_generators());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly {
            alg: alg.clone(),
            terms,
        }
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, combining
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(alg: &Arc<PolyAlg>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BElem)>,
    {
        let ring = alg.ring.clone();
        let mut acc: BTreeMap<Monomial, BElem> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != alg.num_generators() || !ring.contains(&c) {
                return Err(Error::AlgebraMismatch);
            }
            match acc.entry(Monomial::from_exponents(&exps)) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    ring.add_assign(o.get_mut(), &c);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Poly {
            alg: alg.clone(),
            terms: acc,
        })
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.alg.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && self.ring().is_one(c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BElem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Option<&BElem> {
        self.terms.get(mono)
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> BElem {
        self.terms
            .get(&Monomial::one(self.alg.num_generators()))
            .cloned()
            .unwrap_or_else(|| self.ring().zero())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of generator `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if same_alg(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// Checked ring operation; `other` is ignored for `Neg` and `Pow`.
    pub fn arith(&self, other: &Poly, op: PolyOp) -> Result<Poly> {
        match op {
            PolyOp::Neg => return Ok(-self),
            PolyOp::Pow(e) => return Ok(self.pow(e)),
            _ => {}
        }
        self.check(other)?;
        Ok(match op {
            PolyOp::Add => self + other,
            PolyOp::Sub => self - other,
            PolyOp::Mul => self * other,
            _ => unreachable!(),
        })
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        assert!(
            same_alg(&self.alg, &other.alg),
            "polynomial algebra mismatch"
        );
        let ring = self.ring();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let c = if negate { ring.neg(c) } else { c.clone() };
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    ring.add_assign(o.get_mut(), &c);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        Poly {
            alg: self.alg.clone(),
            terms,
        }
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        assert!(
            same_alg(&self.alg, &other.alg),
            "polynomial algebra mismatch"
        );
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.alg);
        }
        let ring = self.ring();
        let mut acc: HashMap<Monomial, BElem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ring.mul(ca, cb);
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        ring.add_assign(o.get_mut(), &prod);
                    }
                }
            }
        }
        Poly {
            alg: self.alg.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Multiplies every coefficient by `c ∈ B`.
    pub fn scale(&self, c: &BElem) -> Poly {
        let ring = self.ring();
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), ring.mul(a, c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// `f^p` in characteristic p, computed coefficient-wise.
    fn frobenius_p(&self) -> Poly {
        let ring = self.ring();
        let p = ring.p();
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.scale(p), ring.frobenius_p(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Poly {
        if e == 0 {
            return Poly::one(&self.alg);
        }
        if self.ring().is_equal_char() {
            // f^e = f^(e mod p) * (f^(e div p))^p with a cheap p-th power
            let p = self.ring().p() as u64;
            let low = self.pow_binary(e % p);
            if e < p {
                return low;
            }
            return &low * &self.pow(e / p).frobenius_p();
        }
        self.pow_binary(e)
    }

    fn pow_binary(&self, mut e: u64) -> Poly {
        if e == 0 {
            return Poly::one(&self.alg);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return Poly::term(&self.alg, m.scale(e as u32), self.ring().pow(c, e));
        }
        let mut base = self.clone();
        let mut acc: Option<Poly> = None;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = &base * &base;
        }
        acc.unwrap()
    }

    /// `f^q`.
    pub fn pow_q(&self) -> Poly {
        self.pow(self.ring().q() as u64)
    }

    /// π^n · f.
    pub fn mul_pi_pow(&self, n: u32) -> Poly {
        if n == 0 {
            return self.clone();
        }
        let ring = self.ring();
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.mul_pi_pow(c, n)))
                .collect(),
        }
    }

    /// Content valuation: minimum π-adic valuation of the coefficients.
    pub fn v_pi(&self) -> Valuation {
        let ring = self.ring();
        self.terms
            .values()
            .map(|c| ring.v_pi(c))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// The g with π^n g = f.
    pub fn exact_div_pi(&self, n: u32) -> Result<Poly> {
        if n == 0 {
            return Ok(self.clone());
        }
        let ring = self.ring();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            match ring.exact_div_pi(c, n) {
                Ok(d) => {
                    terms.insert(m.clone(), d);
                }
                Err(_) => {
                    return Err(Error::NotDivisible {
                        required: n,
                        valuation: self.v_pi(),
                    })
                }
            }
        }
        Ok(Poly {
            alg: self.alg.clone(),
            terms,
        })
    }

    /// Coefficients reduced to canonical representatives mod π^{n+1}.
    pub fn reduce_mod(&self, n: u32) -> Poly {
        let ring = self.ring();
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.reduce_mod(c, n)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// The image in A_0 = A/πA.
    pub fn to_residue(&self) -> ResiduePoly {
        let ring = self.ring();
        ResiduePoly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.residue(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Coefficient-wise section A_0 → A.
    pub fn lift(g: &ResiduePoly) -> Poly {
        let ring = g.alg.ring.clone();
        Poly {
            alg: g.alg.clone(),
            terms: g
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), ring.section(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Evaluates `self` at `images` (one per generator of `self`'s algebra),
    /// which live in `target`. Coefficients are mapped by the identity on B.
    pub fn substitute(&self, target: &Arc<PolyAlg>, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.alg.num_generators()
            || images.iter().any(|g| !same_alg(g.alg(), target))
            || *target.ring != *self.alg.ring
        {
            return Err(Error::AlgebraMismatch);
        }
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Monomial, BElem> = HashMap::new();
        let ring = self.ring();
        for (mono, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e as u64));
                prod = &prod * pw;
            }
            for (m, c) in prod.terms {
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        ring.add_assign(o.get_mut(), &c);
                    }
                }
            }
        }
        Ok(Poly {
            alg: target.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Re-homes a constant polynomial into another algebra over the same
    /// ring.
    pub fn embed_constant(&self, target: &Arc<PolyAlg>) -> Result<Poly> {
        if !self.is_constant() || *target.ring != *self.alg.ring {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Poly::constant(target, self.constant_term()))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_impl(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let ring = self.ring();
        Poly {
            alg: self.alg.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), ring.neg(c)))
                .collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    )*};
}

owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// An element of A_0 = A/πA = k[u_1, …, u_m].
#[derive(Clone)]
pub struct ResiduePoly {
    alg: Arc<PolyAlg>,
    terms: BTreeMap<Monomial, FqElem>,
}

impl PartialEq for ResiduePoly {
    fn eq(&self, other: &Self) -> bool {
        same_alg(&self.alg, &other.alg) && self.terms == other.terms
    }
}

impl Eq for ResiduePoly {}

impl fmt::Debug for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResiduePoly({})", self)
    }
}

impl fmt::Display for ResiduePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // The section is injective on coefficients, so the lift renders
        // exactly the residue coefficients.
        f.write_str(&parse::format_poly(&Poly::lift(self)))
    }
}

impl ResiduePoly {
    pub fn zero(alg: &Arc<PolyAlg>) -> Self {
        ResiduePoly {
            alg: alg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(alg: &Arc<PolyAlg>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, FqElem)>,
    {
        let field = alg.ring.residue_field();
        let mut acc: BTreeMap<Monomial, FqElem> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != alg.num_generators() || !field.contains(c) {
                return Err(Error::AlgebraMismatch);
            }
            let slot = acc
                .entry(Monomial::from_exponents(&exps))
                .or_insert(FqElem::ZERO);
            *slot = field.add(*slot, c);
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(ResiduePoly {
            alg: alg.clone(),
            terms: acc,
        })
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FqElem)> {
        self.terms.iter()
    }

    pub fn arith(&self, other: &ResiduePoly, op: PolyOp) -> Result<ResiduePoly> {
        if op != PolyOp::Neg && !matches!(op, PolyOp::Pow(_)) && !same_alg(&self.alg, &other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        let lifted = Poly::lift(self).arith(&Poly::lift(other), op)?;
        Ok(lifted.to_residue())
    }

    pub fn add(&self, other: &ResiduePoly) -> ResiduePoly {
        assert!(same_alg(&self.alg, &other.alg), "algebra mismatch");
        let field = self.alg.ring.residue_field();
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            let slot = terms.entry(m.clone()).or_insert(FqElem::ZERO);
            *slot = field.add(*slot, c);
        }
        terms.retain(|_, c| !c.is_zero());
        ResiduePoly {
            alg: self.alg.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &ResiduePoly) -> ResiduePoly {
        (&Poly::lift(self) * &Poly::lift(other)).to_residue()
    }

    pub fn pow(&self, e: u64) -> ResiduePoly {
        Poly::lift(self).pow(e).to_residue()
    }
}
