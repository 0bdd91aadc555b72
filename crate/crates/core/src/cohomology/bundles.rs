use num_rational::BigRational;

use super::cochain::require_cocycle;
use super::{cohomology, cup, CoefficientRing, Cochain, CohomologyError};
use crate::simplicial::SimplicialComplex;

/// A real line bundle given by a mod 2 transition 1-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineBundle {
    cocycle: Cochain,
}

impl LineBundle {
    pub fn new(x: &SimplicialComplex, cocycle: Cochain) -> Result<Self, CohomologyError> {
        if cocycle.ring() != &CoefficientRing::F2 {
            return Err(CohomologyError::RingMismatch { left: cocycle.ring().to_string(), right: "F2".into() });
        }
        if cocycle.degree() != 1 {
            return Err(CohomologyError::DegreeMismatch { expected: 1, found: cocycle.degree() });
        }
        require_cocycle(x, &cocycle)?;
        Ok(LineBundle { cocycle })
    }

    pub fn trivial(x: &SimplicialComplex) -> Self {
        LineBundle { cocycle: Cochain::zero(x, 1, CoefficientRing::F2) }
    }

    /// The first Stiefel–Whitney class at the cocycle level.
    pub fn w1(&self) -> &Cochain {
        &self.cocycle
    }
}

/// L ⊗ L′: transition cocycles add mod 2.
pub fn line_bundle_tensor(l1: &LineBundle, l2: &LineBundle) -> Result<LineBundle, CohomologyError> {
    Ok(LineBundle { cocycle: l1.cocycle.add(&l2.cocycle)? })
}

/// First and second Stiefel–Whitney classes of a sum of line bundles.
#[derive(Clone, Debug)]
pub struct WhitneyClasses {
    pub w1: Cochain,
    pub w2: Cochain,
    /// Coordinates in the generators of H¹(X;F2) and H²(X;F2); `w2_class` is empty below dimension 2.
    pub w1_class: Vec<BigRational>,
    pub w2_class: Vec<BigRational>,
}

/// Truncation of ∏(1 + w₁(Lᵢ)): `w1 = Σ w₁(Lᵢ)`, `w2 = Σ_{i<j} w₁(Lᵢ) ∪ w₁(Lⱼ)`.
pub fn whitney_classes(x: &SimplicialComplex, lines: &[LineBundle]) -> Result<WhitneyClasses, CohomologyError> {
    let mut w1 = Cochain::zero(x, 1, CoefficientRing::F2);
    let mut w2 = Cochain::zero(x, 2, CoefficientRing::F2);
    for l in lines {
        require_cocycle(x, &l.cocycle)?;
        // (1 + a)(1 + w1 + w2) = 1 + (w1 + a) + (w2 + w1·a)
        w2 = w2.add(&cup(x, &w1, &l.cocycle)?)?;
        w1 = w1.add(&l.cocycle)?;
    }
    let w1_class = cohomology(x, 1, &CoefficientRing::F2)?.class_coordinates(&w1)?;
    let w2_class = if x.dimension() >= 2 {
        cohomology(x, 2, &CoefficientRing::F2)?.class_coordinates(&w2)?
    } else {
        Vec::new()
    };
    Ok(WhitneyClasses { w1, w2, w1_class, w2_class })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology;
    use crate::linalg::mod2_solve;
    use crate::simplicial::{builtin, BoundaryRing};
    use num_traits::Zero;

    #[test]
    fn trivial_bundle() {
        let x = builtin("RP2").unwrap();
        let w = whitney_classes(&x, &[LineBundle::trivial(&x)]).unwrap();
        assert!(w.w1.is_zero() && w.w2.is_zero());
        assert!(w.w1_class.iter().chain(&w.w2_class).all(Zero::is_zero));
    }

    #[test]
    fn doubled_bundle() {
        let x = builtin("RP2").unwrap();
        let a = cohomology(&x, 1, &CoefficientRing::F2).unwrap().generators()[0].clone();
        let l = LineBundle::new(&x, a.clone()).unwrap();
        let w = whitney_classes(&x, &[l.clone(), l]).unwrap();
        assert!(w.w1.is_zero());
        let h2 = cohomology(&x, 2, &CoefficientRing::F2).unwrap();
        assert_eq!(w.w2_class, h2.class_coordinates(&cup(&x, &a, &a).unwrap()).unwrap());
        assert!(!w.w2_class[0].is_zero());
    }

    #[test]
    fn four_term_sum() {
        let x = builtin("RP2xRP2").unwrap();
        let h1 = cohomology(&x, 1, &CoefficientRing::F2).unwrap();
        let (a, b) = (h1.generators()[0].clone(), h1.generators()[1].clone());
        let la = LineBundle::new(&x, a.clone()).unwrap();
        let lb = LineBundle::new(&x, b.clone()).unwrap();
        let lab = line_bundle_tensor(&la, &lb).unwrap();
        let w = whitney_classes(&x, &[la, lb, lab, LineBundle::trivial(&x)]).unwrap();
        assert!(w.w1.is_zero());
        let s = a.add(&b).unwrap();
        let expected = cup(&x, &a, &b).unwrap().add(&cup(&x, &s, &s).unwrap()).unwrap();
        let h2 = cohomology(&x, 2, &CoefficientRing::F2).unwrap();
        assert_eq!(w.w2_class, h2.class_coordinates(&expected).unwrap());
    }

    #[test]
    fn mobius_squared_is_trivial() {
        let x = builtin("S1").unwrap();
        let m = LineBundle::new(&x, Cochain::from_ints(&x, 1, CoefficientRing::F2, &[1, 0, 0]).unwrap()).unwrap();
        let sq = line_bundle_tensor(&m, &m).unwrap();
        let d0 = x.coboundary_matrix(0, BoundaryRing::Mod2).unwrap().to_dense();
        let rows: Vec<Vec<bool>> = (0..d0.rows()).map(|i| d0.row(i).iter().map(|v| v.bit(0)).collect()).collect();
        let rhs: Vec<bool> = sq.w1().values().iter().map(|v| !v.is_zero()).collect();
        assert!(mod2_solve(&rows, &rhs).is_some());
        let rhs_m: Vec<bool> = m.w1().values().iter().map(|v| !v.is_zero()).collect();
        assert!(mod2_solve(&rows, &rhs_m).is_none());
        assert!(LineBundle::new(&x, Cochain::from_ints(&x, 1, CoefficientRing::Z, &[1, 0, 0]).unwrap()).is_err());
    }
}
