use super::isos::{graded_flip, ungraded_flip};
use super::maps::{check_graded_iso, GradedLinearMap};
use super::CliffordError;

/// Does conjugating f by the graded flip of a ⊗̂ a agree with conjugating by the plain flip?
///
/// The two flips differ by the sign (−1)^{deg x·deg y} on x ⊗ y, so the answer is yes exactly
/// when f commutes with that sign operator, as product automorphisms f₁ ⊗ f₂ do.
pub fn koszul_conjugation_check(f: &GradedLinearMap) -> Result<bool, CliffordError> {
    let a = f.source().clone();
    let Some((l, r)) = a.tensor_factors() else {
        return Err(CliffordError::NotGradedAutomorphism("source is not a graded tensor square".into()));
    };
    if l != r || f.target().labels() != a.labels() {
        return Err(CliffordError::NotGradedAutomorphism("source is not a graded tensor square".into()));
    }
    let verdict = check_graded_iso(f)?;
    if let Some(failure) = verdict.failure {
        return Err(CliffordError::NotGradedAutomorphism(failure.to_string()));
    }
    let eps = graded_flip(l, l);
    let tau = ungraded_flip(l, l);
    let graded = eps.matrix().mul(&f.matrix().mul(eps.matrix()));
    let plain = tau.matrix().mul(&f.matrix().mul(tau.matrix()));
    Ok(graded == plain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{clifford, graded_tensor, inner_automorphism, matrix_algebra, random_unitary, tensor_maps};
    use crate::linalg::{ComplexMatrix, GaussianRational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn nu_tensor_nu() {
        let cl1 = Arc::new(clifford(1));
        let nu = GradedLinearMap::grading_automorphism(cl1);
        assert!(koszul_conjugation_check(&tensor_maps(&nu, &nu)).unwrap());
    }

    fn random_automorphism(rng: &mut ChaCha8Rng) -> GradedLinearMap {
        let cl1 = Arc::new(clifford(1));
        let m2 = Arc::new(matrix_algebra(2, None).unwrap());
        let nu = if rng.gen_bool(0.5) {
            GradedLinearMap::grading_automorphism(cl1.clone())
        } else {
            GradedLinearMap::identity(cl1)
        };
        tensor_maps(&nu, &inner_automorphism(m2, &random_unitary(2, rng)).unwrap())
    }

    #[test]
    fn product_automorphisms_of_cl1_m2_square() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let f = tensor_maps(&random_automorphism(&mut rng), &random_automorphism(&mut rng));
            assert!(koszul_conjugation_check(&f).unwrap());
        }
    }

    #[test]
    fn bidegree_mixing_automorphism_fails() {
        // (Cl₁⊗̂Cl₁)⊗̂(Cl₁⊗̂Cl₁) ≅ Cl₄; rotating a generator of the left factor into one of
        // the right factor is a graded automorphism that mixes bidegrees.
        let cl1 = clifford(1);
        let a = graded_tensor(&cl1, &cl1);
        let sq = Arc::new(graded_tensor(&a, &a));
        let d = sq.dim();
        let gens: Vec<_> = (0..4).map(|i| sq.basis(1 << (3 - i))).collect();
        let c = GaussianRational::from_ratio(3, 5);
        let s = GaussianRational::from_ratio(4, 5);
        let rotated = [
            gens[0].scale(&c).add(&gens[2].scale(&s)),
            gens[1].clone(),
            gens[2].scale(&c).sub(&gens[0].scale(&s)),
            gens[3].clone(),
        ];
        let mut m = ComplexMatrix::zeros(d, d);
        for mask in 0..d {
            let mut img = sq.unit().clone();
            for (i, g) in rotated.iter().enumerate() {
                if mask >> (3 - i) & 1 == 1 {
                    img = sq.mul(&img, g);
                }
            }
            m.set_col(mask, img.coords());
        }
        let f = GradedLinearMap::new(sq.clone(), sq, m).unwrap();
        assert!(check_graded_iso(&f).unwrap().passed());
        assert!(!koszul_conjugation_check(&f).unwrap());
    }

    #[test]
    fn rejects_non_automorphism() {
        let cl1 = clifford(1);
        let a = Arc::new(graded_tensor(&cl1, &cl1));
        let f = GradedLinearMap::new(a.clone(), a, ComplexMatrix::identity(4).scale(&GaussianRational::from_int(2))).unwrap();
        assert!(koszul_conjugation_check(&f).is_err());
        let c = Arc::new(clifford(2));
        assert!(koszul_conjugation_check(&GradedLinearMap::identity(c)).is_err());
    }
}
