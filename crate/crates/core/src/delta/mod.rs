//! The arithmetic exponential, the arithmetic Taylor expansion and the
//! explicit recursion for its components.
//!
//! `exp_δ(x) = (P_0(x), …, P_n(x))` is the Witt vector whose ghost image is
//! `(x, φx, …, φⁿx)`. Two independent routes compute it: unghosting the
//! Frobenius orbit (the reference), and the closed recursion
//!
//! ```text
//! P_n = Σ_{i<n} Σ_{1≤j≤q^{n-1-i}} π^{i+j-n} C(q^{n-1-i}, j) P_i^{q(q^{n-1-i}-j)} (δP_i)^j
//! ```
//!
//! which is what the term tables decompose.

mod constants;
mod terms;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{FrobLift, Poly, PolyAlg};
use crate::witt::{GhostVec, ResidueWittVec, WittVec};

pub use constants::{ConstantBounds, DEFAULT_ENUMERATION_BUDGET};
pub use terms::{TermEntry, TermTable};

/// An algebra A together with a Frobenius lift φ and its π-derivation.
#[derive(Debug, Clone)]
pub struct DeltaContext {
    frob: FrobLift,
}

impl DeltaContext {
    pub fn new(frob: FrobLift) -> Self {
        DeltaContext { frob }
    }

    /// φ(u_i) = u_i^q.
    pub fn standard(alg: &Arc<PolyAlg>) -> Self {
        DeltaContext {
            frob: FrobLift::standard(alg),
        }
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        self.frob.alg()
    }

    pub fn frobenius(&self) -> &FrobLift {
        &self.frob
    }

    pub fn phi(&self, x: &Poly) -> Poly {
        self.frob.apply(x)
    }

    pub fn delta(&self, x: &Poly) -> Poly {
        self.frob.delta(x)
    }

    /// `exp_δ(x)` in W_n(A), via the ghost vector of the φ-orbit of x.
    pub fn exp_delta(&self, x: &Poly, n: usize) -> Result<WittVec> {
        let mut orbit = Vec::with_capacity(n + 1);
        let mut cur = x.clone();
        for k in 0..=n {
            if k > 0 {
                cur = self.phi(&cur);
            }
            orbit.push(cur.clone());
        }
        GhostVec::new(self.alg(), orbit)?
            .unghost()
            .map_err(|e| Error::Internal(format!("φ-orbit is not a ghost vector: {e}")))
    }

    /// The arithmetic Taylor expansion: exp_δ(x) reduced into W_n(A_0).
    pub fn taylor_expand(&self, x: &Poly, n: usize) -> Result<ResidueWittVec> {
        Ok(self.exp_delta(x, n)?.to_residue())
    }

    /// P_0(x), …, P_n(x) from the explicit recursion alone.
    pub fn p_sequence_explicit(&self, x: &Poly, n: usize) -> Result<Vec<Poly>> {
        let mut seq = vec![x.clone()];
        for k in 1..=n {
            let next = self.explicit_step(&seq, k, None)?;
            seq.push(next);
        }
        Ok(seq)
    }

    /// P_n(x) from the explicit recursion.
    pub fn p_n_explicit(&self, x: &Poly, n: usize) -> Result<Poly> {
        if n == 0 {
            return Err(Error::TooShort {
                operation: "explicit recursion (needs n ≥ 1)",
            });
        }
        Ok(self.p_sequence_explicit(x, n)?.pop().expect("non-empty"))
    }

    /// The decomposition of P_n(x) into the terms L_ij and partial sums S_i.
    pub fn term_decomposition(&self, x: &Poly, n: usize) -> Result<TermTable> {
        if n == 0 {
            return Err(Error::TooShort {
                operation: "term decomposition (needs n ≥ 1)",
            });
        }
        let seq = self.p_sequence_explicit(x, n - 1)?;
        let mut table = TermTable::new(n);
        self.explicit_step(&seq, n, Some(&mut table))?;
        Ok(table)
    }

    /// Computes P_n from P_0..P_{n−1}, optionally recording every term.
    fn explicit_step(
        &self,
        prev: &[Poly],
        n: usize,
        mut record: Option<&mut TermTable>,
    ) -> Result<Poly> {
        let alg = self.alg();
        let ring = alg.ring().clone();
        let q = ring.q() as u64;
        let mut total = Poly::zero(alg);
        for (i, p_i) in prev.iter().enumerate().take(n) {
            let big_n = q.pow((n - 1 - i) as u32);
            let d_i = self.delta(p_i);
            let p_q = p_i.pow_q();
            let mut s_i = Poly::zero(alg);
            let mut binom = BigInt::one();
            let mut d_pow = Poly::one(alg);
            for j in 1..=big_n {
                binom = binom * BigInt::from(big_n - j + 1) / BigInt::from(j);
                d_pow = &d_pow * &d_i;
                let c = ring.from_bigint(&binom);
                let term = if c.is_zero() {
                    Poly::zero(alg)
                } else {
                    let numerator = p_q.pow(big_n - j).scale(&c) * d_pow.clone();
                    let shift = i as i64 + j as i64 - n as i64;
                    if shift >= 0 {
                        numerator.mul_pi_pow(shift as u32)
                    } else {
                        numerator.exact_div_pi((-shift) as u32).map_err(|e| {
                            Error::Internal(format!(
                                "term (i={i}, j={j}) of P_{n} is not integral: {e}"
                            ))
                        })?
                    }
                };
                s_i = &s_i + &term;
                if let Some(t) = record.as_deref_mut() {
                    t.push_entry(i, j, term);
                }
            }
            total = &total + &s_i;
            if let Some(t) = record.as_deref_mut() {
                t.push_sum(i, s_i);
            }
        }
        if let Some(t) = record {
            t.set_total(total.clone());
        }
        Ok(total)
    }

    /// δx = 0, equivalently φ(x) = x^q.
    pub fn is_constant(&self, x: &Poly) -> bool {
        self.delta(x).is_zero()
    }

    /// Every x inside `bounds` with δx = 0, by exhaustive search.
    pub fn enumerate_constants(&self, bounds: &ConstantBounds, budget: u128) -> Result<Vec<Poly>> {
        constants::enumerate(self, bounds, budget)
    }
}
