use std::sync::Arc;

use super::{same_alg, Poly, PolyAlg};
use crate::error::{Error, Result};

/// A lift of the q-power Frobenius φ on A = B[u_1, …, u_m], given by the
/// images of the generators. φ is the identity on B.
///
/// The π-derivation is always derived from φ as δx = (φ(x) − x^q)/π and
/// never stored separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobLift {
    alg: Arc<PolyAlg>,
    images: Vec<Poly>,
}

impl FrobLift {
    /// Validates that every image is congruent to `u_i^q` mod π.
    pub fn new(alg: &Arc<PolyAlg>, images: Vec<Poly>) -> Result<Self> {
        if images.len() != alg.num_generators() || images.iter().any(|g| !same_alg(g.alg(), alg)) {
            return Err(Error::AlgebraMismatch);
        }
        let lift = FrobLift {
            alg: alg.clone(),
            images,
        };
        lift.validate()?;
        Ok(lift)
    }

    /// φ(u_i) = u_i^q for every generator.
    pub fn standard(alg: &Arc<PolyAlg>) -> Self {
        let q = alg.ring().q() as u64;
        let images = (0..alg.num_generators())
            .map(|i| Poly::generator(alg, i).pow(q))
            .collect();
        FrobLift {
            alg: alg.clone(),
            images,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (i, img) in self.images.iter().enumerate() {
            let diff = img - &Poly::generator(&self.alg, i).pow_q();
            let residue = diff.to_residue();
            if !residue.is_zero() {
                return Err(Error::NotAFrobeniusLift {
                    generator: self.alg.names()[i].clone(),
                    witness: residue.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Whether φ(u_i) = u_i^q for all i.
    pub fn is_standard(&self) -> bool {
        *self == Self::standard(&self.alg)
    }

    /// φ(f): substitute generator images, identity on coefficients.
    pub fn apply(&self, f: &Poly) -> Poly {
        if self.alg.num_generators() == 0 {
            return f.clone();
        }
        f.substitute(&self.alg, &self.images)
            .expect("polynomial lives in the lift's algebra")
    }

    /// φ^k(f).
    pub fn iterate(&self, f: &Poly, k: usize) -> Poly {
        let mut out = f.clone();
        for _ in 0..k {
            out = self.apply(&out);
        }
        out
    }

    /// δf = (φ(f) − f^q)/π.
    pub fn delta(&self, f: &Poly) -> Poly {
        let num = &self.apply(f) - &f.pow_q();
        num.exact_div_pi(1)
            .expect("φ(f) ≡ f^q mod π for a validated Frobenius lift")
    }
}

/// C_π(x, y) = (x^q + y^q − (x+y)^q)/π; identically zero in positive
/// characteristic.
pub fn c_pi(x: &Poly, y: &Poly) -> Poly {
    if x.ring().is_equal_char() {
        return Poly::zero(x.alg());
    }
    let num = &(&x.pow_q() + &y.pow_q()) - &(x + y).pow_q();
    num.exact_div_pi(1)
        .expect("binomial coefficients of a q-th power are divisible by p")
}
