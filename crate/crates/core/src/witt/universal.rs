use std::sync::Arc;

use super::{WittOp, WittVec};
use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyAlg};

/// Largest truncation level accepted by [`universal_polys`] unless the
/// caller raises it.
pub const DEFAULT_UNIVERSAL_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniversalOp {
    Add,
    Mul,
}

impl UniversalOp {
    fn witt_op(self) -> WittOp {
        match self {
            UniversalOp::Add => WittOp::Add,
            UniversalOp::Mul => WittOp::Mul,
        }
    }
}

/// Universal structure polynomials for W_n addition or multiplication.
#[derive(Debug, Clone)]
pub struct UniversalPolys {
    alg: Arc<PolyAlg>,
    polys: Vec<Poly>,
}

/// Computes S_0..S_n (or M_0..M_n) in B[x0..xn, y0..yn] by running the Witt
/// operation on the generic vectors (x0, …, xn) and (y0, …, yn).
pub fn universal_polys(
    ring: &Arc<CoeffRing>,
    n: usize,
    op: UniversalOp,
    bound: usize,
) -> Result<UniversalPolys> {
    if n > bound {
        return Err(Error::BoundExceeded(format!(
            "universal polynomials requested at level {n}, bound is {bound}"
        )));
    }
    let names = (0..=n)
        .map(|i| format!("x{i}"))
        .chain((0..=n).map(|i| format!("y{i}")))
        .collect();
    let alg = PolyAlg::new(ring.clone(), names)?;
    let x = WittVec::new(&alg, (0..=n).map(|i| Poly::generator(&alg, i)).collect())?;
    let y = WittVec::new(
        &alg,
        (0..=n).map(|i| Poly::generator(&alg, n + 1 + i)).collect(),
    )?;
    let polys = x.arith(&y, op.witt_op())?.into_components();
    Ok(UniversalPolys { alg, polys })
}

impl UniversalPolys {
    pub fn alg(&self) -> &Arc<PolyAlg> {
        &self.alg
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn level(&self) -> usize {
        self.polys.len() - 1
    }

    /// Substitutes the components of `x` and `y` into the polynomials.
    pub fn evaluate(&self, x: &WittVec, y: &WittVec) -> Result<WittVec> {
        let n = self.level();
        if x.components().len() != n + 1 || y.components().len() != n + 1 {
            return Err(Error::LengthMismatch {
                left: x.components().len(),
                right: n + 1,
            });
        }
        if **x.alg().ring() != **self.alg.ring() {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Poly> = x
            .components()
            .iter()
            .chain(y.components())
            .cloned()
            .collect();
        let comps = self
            .polys
            .iter()
            .map(|p| p.substitute(x.alg(), &images))
            .collect::<Result<Vec<_>>>()?;
        WittVec::new(x.alg(), comps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn mixed_char_sum_polynomial() {
        let ring = Arc::new(CoeffRing::mixed_char(2).unwrap());
        let u = universal_polys(&ring, 1, UniversalOp::Add, DEFAULT_UNIVERSAL_BOUND).unwrap();
        let s1 = parse_poly(u.alg(), "x1 + y1 - x0*y0").unwrap();
        assert_eq!(u.polys()[1], s1);
    }

    #[test]
    fn equal_char_sums_are_linear() {
        let ring = Arc::new(CoeffRing::equal_char(2, 1, None).unwrap());
        let u = universal_polys(&ring, 3, UniversalOp::Add, DEFAULT_UNIVERSAL_BOUND).unwrap();
        for (i, s) in u.polys().iter().enumerate() {
            let expected = parse_poly(u.alg(), &format!("x{i} + y{i}")).unwrap();
            assert_eq!(*s, expected);
        }
    }

    #[test]
    fn first_product_polynomial() {
        let ring = Arc::new(CoeffRing::mixed_char(3).unwrap());
        let u = universal_polys(&ring, 2, UniversalOp::Mul, DEFAULT_UNIVERSAL_BOUND).unwrap();
        assert_eq!(u.polys()[0], parse_poly(u.alg(), "x0*y0").unwrap());
    }

    #[test]
    fn bound_is_enforced() {
        let ring = Arc::new(CoeffRing::mixed_char(2).unwrap());
        assert!(matches!(
            universal_polys(&ring, 5, UniversalOp::Add, DEFAULT_UNIVERSAL_BOUND),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn evaluation_matches_direct_arithmetic() {
        let ring = Arc::new(CoeffRing::mixed_char(2).unwrap());
        let a = PolyAlg::new(ring.clone(), vec!["u".into()]).unwrap();
        let x = WittVec::parse(&a, "(u + 1, 3*u, -u^2)").unwrap();
        let y = WittVec::parse(&a, "(u, 2, 1 - u)").unwrap();
        for op in [UniversalOp::Add, UniversalOp::Mul] {
            let u = universal_polys(&ring, 2, op, DEFAULT_UNIVERSAL_BOUND).unwrap();
            assert_eq!(
                u.evaluate(&x, &y).unwrap(),
                x.arith(&y, op.witt_op()).unwrap()
            );
        }
    }
}
