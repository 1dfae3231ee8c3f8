use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{BElem, CoeffRing, FqElem, RingKind};
use crate::poly::{Poly, PolyAlg};

/// Shape of randomly sampled polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleBounds {
    /// Largest exponent of each generator.
    pub max_degree: u32,
    /// Largest number of monomials drawn (before combining).
    pub max_terms: usize,
    /// Largest t-degree of a coefficient (equal characteristic).
    pub t_degree: u32,
    /// Coefficients (and Gaussian parts) lie in [−bound, bound] (mixed
    /// characteristic).
    pub coeff_bound: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_degree: 2,
            max_terms: 3,
            t_degree: 2,
            coeff_bound: 3,
        }
    }
}

/// A random element of B within the bounds; may be zero.
pub fn sample_coeff(rng: &mut ChaCha8Rng, ring: &CoeffRing, bounds: &SampleBounds) -> BElem {
    match ring.kind() {
        RingKind::EqualChar => {
            let q = ring.q();
            let field = ring.residue_field();
            let coeffs: Vec<FqElem> = (0..=bounds.t_degree)
                .map(|_| {
                    field
                        .from_index(rng.gen_range(0..q))
                        .expect("index below q")
                })
                .collect();
            ring.from_t_coeffs(coeffs).expect("field elements")
        }
        RingKind::MixedChar => {
            let c = rng.gen_range(-bounds.coeff_bound..=bounds.coeff_bound);
            ring.from_int(c)
        }
        RingKind::MixedCharRamified => {
            let a = rng.gen_range(-bounds.coeff_bound..=bounds.coeff_bound);
            let b = rng.gen_range(-bounds.coeff_bound..=bounds.coeff_bound);
            ring.gaussian_elem(BigInt::from(a), BigInt::from(b))
                .expect("Gaussian ring")
        }
    }
}

/// A random sparse polynomial within the bounds; may be zero.
pub fn sample_poly(rng: &mut ChaCha8Rng, alg: &Arc<PolyAlg>, bounds: &SampleBounds) -> Poly {
    let m = alg.num_generators();
    let terms = rng.gen_range(1..=bounds.max_terms.max(1));
    let pairs: Vec<(Vec<u32>, BElem)> = (0..terms)
        .map(|_| {
            let exps = (0..m)
                .map(|_| rng.gen_range(0..=bounds.max_degree))
                .collect();
            (exps, sample_coeff(rng, alg.ring(), bounds))
        })
        .collect();
    Poly::from_terms(alg, pairs).expect("sampled terms fit the algebra")
}

/// A random polynomial of content valuation exactly 0.
pub fn sample_unit_content(
    rng: &mut ChaCha8Rng,
    alg: &Arc<PolyAlg>,
    bounds: &SampleBounds,
) -> Poly {
    loop {
        let f = sample_poly(rng, alg, bounds);
        if f.v_pi().finite() == Some(0) {
            return f;
        }
    }
}

/// A random polynomial of content valuation exactly `m`.
pub fn sample_with_valuation(
    rng: &mut ChaCha8Rng,
    alg: &Arc<PolyAlg>,
    bounds: &SampleBounds,
    m: u32,
) -> Poly {
    sample_unit_content(rng, alg, bounds).mul_pi_pow(m)
}

/// A random nonzero polynomial.
pub fn sample_nonzero(rng: &mut ChaCha8Rng, alg: &Arc<PolyAlg>, bounds: &SampleBounds) -> Poly {
    loop {
        let f = sample_poly(rng, alg, bounds);
        if !f.is_zero() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f2t() -> Arc<PolyAlg> {
        PolyAlg::new(
            Arc::new(CoeffRing::equal_char(2, 1, None).unwrap()),
            vec!["u".into()],
        )
        .unwrap()
    }

    #[test]
    fn deterministic_for_equal_seeds() {
        let a = f2t();
        let b = SampleBounds::default();
        let f = sample_poly(&mut ChaCha8Rng::seed_from_u64(9), &a, &b);
        let g = sample_poly(&mut ChaCha8Rng::seed_from_u64(9), &a, &b);
        assert_eq!(f, g);
    }

    #[test]
    fn constrained_valuation() {
        let z = PolyAlg::new(Arc::new(CoeffRing::gaussian()), vec!["u".into()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for m in 0..4 {
            let f = sample_with_valuation(&mut rng, &z, &SampleBounds::default(), m);
            assert_eq!(f.v_pi().finite(), Some(m));
        }
    }

    #[test]
    fn degree_zero_unit_over_f2() {
        let b = PolyAlg::base(Arc::new(CoeffRing::equal_char(2, 1, None).unwrap()));
        let bounds = SampleBounds {
            max_degree: 0,
            max_terms: 1,
            t_degree: 0,
            coeff_bound: 1,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            assert!(sample_unit_content(&mut rng, &b, &bounds).is_one());
        }
    }
}
