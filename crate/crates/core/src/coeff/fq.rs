//! Arithmetic in the residue field 𝔽_q, q = p^h.
//!
//! Elements are packed as integers `Σ d_i p^i` over their digit vector
//! `(d_0, …, d_{h-1})` with respect to the basis `1, z, …, z^{h-1}`, where
//! `z` is a root of the field's modulus. Prime fields use plain modular
//! arithmetic; extension fields precompute full addition and multiplication
//! tables.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest extension field we are willing to tabulate.
pub const MAX_EXTENSION_ORDER: u32 = 1024;

/// Irreducible moduli shipped for the supported extension fields, as
/// `(p, h, coefficients low to high)`.
pub const SHIPPED_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),       // z^2 + z + 1
    (2, 3, &[1, 1, 0, 1]),    // z^3 + z + 1
    (3, 2, &[1, 0, 1]),       // z^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // z^4 + z + 1
    (5, 2, &[2, 0, 1]),       // z^2 + 2
    (3, 3, &[1, 2, 0, 1]),    // z^3 + 2z + 1
];

/// An element of 𝔽_q in packed digit form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed index in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
}

// The tables are derived from (p, h, modulus).
impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn shipped_modulus(p: u32, h: u32) -> Option<&'static [u32]> {
    SHIPPED_MODULI
        .iter()
        .find(|(mp, mh, _)| *mp == p && *mh == h)
        .map(|(_, _, m)| *m)
}

impl FiniteField {
    /// The prime field 𝔽_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) || p > (1 << 31) {
            return Err(Error::InvalidRing(format!("{p} is not a supported prime")));
        }
        Ok(FiniteField {
            p,
            h: 1,
            q: p,
            modulus: vec![0, 1],
            add_table: Vec::new(),
            mul_table: Vec::new(),
        })
    }

    /// 𝔽_{p^h} defined by `modulus` (monic, degree h, low to high). With
    /// `None` the shipped modulus for (p, h) is used.
    pub fn new(p: u32, h: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidRing("h must be positive".into()));
        }
        if h == 1 && modulus.is_none() {
            return Self::prime(p);
        }
        if !is_prime(p as u64) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        let q = (p as u64)
            .checked_pow(h)
            .filter(|&q| q <= MAX_EXTENSION_ORDER as u64)
            .ok_or_else(|| {
                Error::InvalidRing(format!(
                    "extension fields are limited to q <= {MAX_EXTENSION_ORDER}"
                ))
            })? as u32;
        let modulus = match modulus {
            Some(m) => m,
            None => shipped_modulus(p, h)
                .ok_or_else(|| {
                    Error::InvalidRing(format!(
                        "no shipped modulus for q = {p}^{h}; supply ring.modulus"
                    ))
                })?
                .to_vec(),
        };
        if modulus.len() != h as usize + 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidRing(format!(
                "modulus must have degree {h} with coefficients in [0, {p})"
            )));
        }
        if modulus[h as usize] != 1 {
            return Err(Error::InvalidRing("modulus must be monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidRing(format!(
                "modulus {} is reducible over F_{p}",
                format_digits(&modulus, p)
            )));
        }
        let mut field = FiniteField {
            p,
            h,
            q,
            modulus,
            add_table: Vec::new(),
            mul_table: Vec::new(),
        };
        if h > 1 {
            field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            let da = self.digits(FqElem(a as u32));
            for b in 0..q {
                let db = self.digits(FqElem(b as u32));
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
                add[a * q + b] = self.pack(&sum).0;
                mul[a * q + b] = self.pack(&self.mul_digits(&da, &db)).0;
            }
        }
        self.add_table = add;
        self.mul_table = mul;
    }

    /// Schoolbook product of digit vectors reduced by the modulus.
    fn mul_digits(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let h = self.h as usize;
        let mut prod = vec![0u64; 2 * h];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (h..2 * h).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &m) in self.modulus[..h].iter().enumerate() {
                let idx = k - h + j;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod[..h].iter().map(|&c| c as u32).collect()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, low to high.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// The class of `z`. Prime fields have no such element and get 0.
    pub fn generator(&self) -> FqElem {
        if self.h == 1 {
            FqElem::ZERO
        } else {
            FqElem(self.p)
        }
    }

    pub fn contains(&self, a: FqElem) -> bool {
        a.0 < self.q
    }

    pub fn from_index(&self, index: u32) -> Option<FqElem> {
        (index < self.q).then_some(FqElem(index))
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.h)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Packs a digit vector; digits beyond `h` must already be reduced away.
    pub fn pack(&self, digits: &[u32]) -> FqElem {
        let mut v = 0u32;
        for &d in digits.iter().rev() {
            v = v * self.p + d % self.p;
        }
        FqElem(v)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.h == 1 {
            if self.p == 2 {
                return FqElem(a.0 ^ b.0);
            }
            FqElem(((a.0 as u64 + b.0 as u64) % self.p as u64) as u32)
        } else {
            FqElem(self.add_table[(a.0 * self.q + b.0) as usize])
        }
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if a.is_zero() {
            return a;
        }
        if self.h == 1 {
            FqElem(self.p - a.0)
        } else {
            let d: Vec<u32> = self
                .digits(a)
                .into_iter()
                .map(|x| (self.p - x) % self.p)
                .collect();
            self.pack(&d)
        }
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.h == 1 {
            if self.p == 2 {
                return FqElem(a.0 & b.0);
            }
            FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
        } else {
            FqElem(self.mul_table[(a.0 * self.q + b.0) as usize])
        }
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    /// Renders an element as a polynomial in `z`, lowest degree first
    /// (`1+z`, `2*z^2`). Prime field elements are plain integers.
    pub fn format(&self, a: FqElem) -> String {
        if self.h == 1 {
            return a.0.to_string();
        }
        format_digits(&self.digits(a), self.p)
    }

    /// Whether the rendering of `a` contains more than one term.
    pub fn is_compound(&self, a: FqElem) -> bool {
        self.h > 1 && self.digits(a).iter().filter(|&&d| d != 0).count() > 1
    }
}

fn format_digits(digits: &[u32], _p: u32) -> String {
    let mut out = String::new();
    for (k, &d) in digits.iter().enumerate() {
        if d == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (k, d) {
            (0, d) => write!(out, "{d}").unwrap(),
            (1, 1) => out.push('z'),
            (1, d) => write!(out, "{d}*z").unwrap(),
            (k, 1) => write!(out, "z^{k}").unwrap(),
            (k, d) => write!(out, "{d}*z^{k}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Brute-force irreducibility over 𝔽_p: no monic factor of degree
/// `1..=deg/2` divides `f`.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                g.push((v % p as u64) as u32);
                v /= p as u64;
            }
            g.push(1);
            if poly_rem_is_zero(p, f, &g) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u32, f: &[u32], g: &[u32]) -> bool {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (j, &gc) in g.iter().enumerate() {
                r[shift + j] = (r[shift + j] + (p - lead) * gc as u64 % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_generator_squares_to_z_plus_one() {
        let f4 = FiniteField::new(2, 2, None).unwrap();
        let z = f4.generator();
        let zz = f4.mul(z, z);
        assert_eq!(f4.format(zz), "1+z");
        assert_eq!(f4.pow(z, 4), z);
    }

    #[test]
    fn inverse_in_prime_field() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(f2.inv(FqElem::ONE).unwrap(), FqElem::ONE);
        assert_eq!(f2.inv(FqElem::ZERO), Err(Error::DivisionByZero));
        let f7 = FiniteField::prime(7).unwrap();
        for a in f7.elements().skip(1) {
            assert_eq!(f7.mul(a, f7.inv(a).unwrap()), FqElem::ONE);
        }
    }

    #[test]
    fn shipped_moduli_give_fields() {
        for &(p, h, _) in SHIPPED_MODULI {
            let f = FiniteField::new(p, h, None).unwrap();
            assert_eq!(f.q(), p.pow(h));
            for a in f.elements() {
                // x^q = x and every nonzero element is invertible
                assert_eq!(f.pow(a, f.q() as u64), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // z^2 + 1 = (z + 1)^2 over F_2
        let err = FiniteField::new(2, 2, Some(vec![1, 0, 1])).unwrap_err();
        assert!(matches!(err, Error::InvalidRing(_)));
    }

    #[test]
    fn digits_round_trip() {
        let f27 = FiniteField::new(3, 3, None).unwrap();
        for a in f27.elements() {
            assert_eq!(f27.pack(&f27.digits(a)), a);
            assert!(f27.digits(a).iter().all(|&d| d < 3));
        }
    }
}
