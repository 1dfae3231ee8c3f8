use rayon::prelude::*;

use super::DeltaContext;
use crate::coeff::FqElem;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Default cap on the number of candidates examined by a constants scan.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 1 << 22;

/// The search box for a constants scan over 𝔽_q[t][u_1, …, u_m]: a degree
/// bound per generator plus a bound on t-degrees of coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstantBounds {
    pub generator_degrees: Vec<u32>,
    pub t_degree: u32,
}

impl ConstantBounds {
    /// Parses `"u=2,t=8"`; generators not mentioned get degree 0.
    pub fn parse(names: &[String], text: &str) -> Result<Self> {
        let mut bounds = ConstantBounds {
            generator_degrees: vec![0; names.len()],
            t_degree: 0,
        };
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::Config(format!("bound '{item}' is not of the form name=degree"))
            })?;
            let value: u32 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bound '{item}' has a non-numeric degree")))?;
            match key.trim() {
                "t" => bounds.t_degree = value,
                name => {
                    let k = names.iter().position(|g| g == name).ok_or_else(|| {
                        Error::Config(format!("unknown generator '{name}' in bounds"))
                    })?;
                    bounds.generator_degrees[k] = value;
                }
            }
        }
        Ok(bounds)
    }

    fn monomials(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for &d in &self.generator_degrees {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=d).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

pub(super) fn enumerate(
    ctx: &DeltaContext,
    bounds: &ConstantBounds,
    budget: u128,
) -> Result<Vec<Poly>> {
    let alg = ctx.alg();
    let ring = alg.ring();
    if !ring.is_equal_char() {
        return Err(Error::IncompatibleRing {
            suite: "constants".into(),
            reason: format!(
                "{} has an infinite coefficient space per degree",
                ring.describe()
            ),
        });
    }
    if bounds.generator_degrees.len() != alg.num_generators() {
        return Err(Error::AlgebraMismatch);
    }
    let monomials = bounds.monomials();
    let per_coeff = bounds.t_degree as usize + 1;
    let slots = monomials.len() * per_coeff;
    let q = ring.q() as u128;
    let count = u32::try_from(slots)
        .ok()
        .and_then(|s| q.checked_pow(s))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::BudgetExceeded { trials: count });
    }
    let field = ring.residue_field();
    let candidates: Vec<Poly> = (0..count as u64)
        .into_par_iter()
        .filter_map(|index| {
            let mut rest = index;
            let mut digits = Vec::with_capacity(slots);
            for _ in 0..slots {
                digits.push(
                    field
                        .from_index((rest % q as u64) as u32)
                        .expect("digit below q"),
                );
                rest /= q as u64;
            }
            let terms = monomials.iter().enumerate().map(|(k, mono)| {
                let coeffs: Vec<FqElem> = digits[k * per_coeff..(k + 1) * per_coeff].to_vec();
                (
                    mono.clone(),
                    ring.from_t_coeffs(coeffs).expect("field digits"),
                )
            });
            let x = Poly::from_terms(alg, terms).expect("monomials match the algebra");
            ctx.is_constant(&x).then_some(x)
        })
        .collect();
    Ok(candidates)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coeff::CoeffRing;
    use crate::poly::PolyAlg;

    #[test]
    fn bounds_parsing() {
        let names = vec!["u".to_string(), "v".to_string()];
        let b = ConstantBounds::parse(&names, "u=2, t=3").unwrap();
        assert_eq!(b.generator_degrees, vec![2, 0]);
        assert_eq!(b.t_degree, 3);
        assert!(ConstantBounds::parse(&names, "w=1").is_err());
        assert!(ConstantBounds::parse(&names, "u:1").is_err());
    }

    #[test]
    fn base_constants_are_the_residue_field() {
        let b = PolyAlg::base(Arc::new(CoeffRing::equal_char(2, 1, None).unwrap()));
        let ctx = DeltaContext::standard(&b);
        let bounds = ConstantBounds {
            generator_degrees: vec![],
            t_degree: 8,
        };
        let found = ctx
            .enumerate_constants(&bounds, DEFAULT_ENUMERATION_BUDGET)
            .unwrap();
        assert_eq!(found, vec![Poly::zero(&b), Poly::one(&b)]);
    }

    #[test]
    fn budget_and_ring_checks() {
        let b = PolyAlg::base(Arc::new(CoeffRing::equal_char(2, 1, None).unwrap()));
        let ctx = DeltaContext::standard(&b);
        let bounds = ConstantBounds {
            generator_degrees: vec![],
            t_degree: 40,
        };
        assert_eq!(
            ctx.enumerate_constants(&bounds, 1 << 20),
            Err(Error::BudgetExceeded { trials: 1 << 41 })
        );
        let z = PolyAlg::base(Arc::new(CoeffRing::mixed_char(2).unwrap()));
        let ctx = DeltaContext::standard(&z);
        let bounds = ConstantBounds {
            generator_degrees: vec![],
            t_degree: 1,
        };
        assert!(matches!(
            ctx.enumerate_constants(&bounds, 1 << 20),
            Err(Error::IncompatibleRing { .. })
        ));
    }
}
