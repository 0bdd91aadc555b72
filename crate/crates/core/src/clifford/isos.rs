use std::sync::Arc;

use super::algebra::{direct_sum, graded_tensor, tensor_elements, AlgebraElement, GradedStarAlgebra};
use super::maps::{check_star_iso, sign, GradedLinearMap, IsoVerdict};
use super::{clifford, matrix_algebra, CliffordError};
use crate::linalg::{ComplexMatrix, GaussianRational};

/// a ⊗ b ↦ (−1)^{deg a·deg b} b ⊗ a.
pub fn graded_flip(a: &GradedStarAlgebra, b: &GradedStarAlgebra) -> GradedLinearMap {
    flip(a, b, true)
}

/// a ⊗ b ↦ b ⊗ a with no sign. Linear, but not an algebra map unless a or b is even.
pub fn ungraded_flip(a: &GradedStarAlgebra, b: &GradedStarAlgebra) -> GradedLinearMap {
    flip(a, b, false)
}

fn flip(a: &GradedStarAlgebra, b: &GradedStarAlgebra, koszul: bool) -> GradedLinearMap {
    let (da, db) = (a.dim(), b.dim());
    let mut m = ComplexMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            let s = koszul && a.degree(i) == 1 && b.degree(j) == 1;
            m[(j * da + i, i * db + j)] = sign(s);
        }
    }
    GradedLinearMap::new(Arc::new(graded_tensor(a, b)), Arc::new(graded_tensor(b, a)), m).expect("square flip")
}

/// Cl_m ⊗̂ Cl_n → Cl_{m+n}, eᵢ⊗1 ↦ eᵢ and 1⊗eⱼ ↦ e_{m+j}.
pub fn juxtaposition_iso(m: usize, n: usize) -> GradedLinearMap {
    let (a, b) = (clifford(m), clifford(n));
    let target = Arc::new(clifford(m + n));
    let d = target.dim();
    let mut mat = ComplexMatrix::zeros(d, d);
    for s in 0..a.dim() {
        for t in 0..b.dim() {
            mat[(s | (t << m), s * b.dim() + t)] = GaussianRational::one();
        }
    }
    GradedLinearMap::new(Arc::new(graded_tensor(&a, &b)), target, mat).expect("square juxtaposition")
}

/// diag(1_k, −1_k).
pub fn standard_even_grading(k: usize) -> ComplexMatrix {
    let mut entries = vec![GaussianRational::one(); k];
    entries.extend(vec![-GaussianRational::one(); k]);
    ComplexMatrix::diagonal(&entries)
}

/// 2×2 matrices of 1, e₁, e₂, e₁e₂ under f_pq ↦ E_pq.
fn cl2_images() -> [ComplexMatrix; 4] {
    let z = GaussianRational::zero;
    let one = GaussianRational::one;
    let i = GaussianRational::i;
    [
        ComplexMatrix::identity(2),
        ComplexMatrix::from_rows(vec![vec![z(), one()], vec![one(), z()]]),
        ComplexMatrix::from_rows(vec![vec![z(), i()], vec![-i(), z()]]),
        ComplexMatrix::from_rows(vec![vec![-i(), z()], vec![z(), i()]]),
    ]
}

/// f₁₁, f₁₂, f₂₁, f₂₂ written in the basis 1, e₁, e₂, e₁e₂ of Cl₂.
pub fn cl2_matrix_units() -> [AlgebraElement; 4] {
    let h = |a: i64, b: i64| GaussianRational::from_parts(a, b, 2);
    let z = GaussianRational::zero;
    [
        AlgebraElement::new(vec![h(1, 0), z(), z(), h(0, 1)]),
        AlgebraElement::new(vec![z(), h(1, 0), h(0, -1), z()]),
        AlgebraElement::new(vec![z(), h(1, 0), h(0, 1), z()]),
        AlgebraElement::new(vec![h(1, 0), z(), z(), h(0, -1)]),
    ]
}

/// Cl₂ → M₂ graded by diag(1, −1), sending f_pq to the matrix unit E_pq.
pub fn cl2_matrix_model() -> GradedLinearMap {
    cl2_mk_model(1).retarget_source(Arc::new(clifford(2)))
}

/// Columns: vectorized ρ(1), ρ(e₁), ρ(e₂), ρ(e₁e₂).
pub(crate) fn cl2_model_block() -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(4, 4);
    for (s, rho) in cl2_images().iter().enumerate() {
        for rc in 0..4 {
            p[(rc, s)] = rho[(rc / 2, rc % 2)].clone();
        }
    }
    p
}

/// Spreads a 4×4 block acting on Cl₂ ⊗ M₁ to Cl₂ ⊗ M_k → M_{2k}; `inverse` builds the reverse direction.
pub(crate) fn spread_model(k: usize, block: &ComplexMatrix, inverse: bool) -> ComplexMatrix {
    let d = 4 * k * k;
    let mut m = ComplexMatrix::zeros(d, d);
    for s in 0..4 {
        for rc in 0..4 {
            let (r, c) = (rc / 2, rc % 2);
            for i in 0..k {
                for j in 0..k {
                    let big = (r * k + i) * 2 * k + c * k + j;
                    let small = s * k * k + i * k + j;
                    if inverse {
                        m[(small, big)] = block[(s, rc)].clone();
                    } else {
                        m[(big, small)] = block[(rc, s)].clone();
                    }
                }
            }
        }
    }
    m
}

/// Cl₂ ⊗̂ M_k → M_{2k} graded by diag(1_k, −1_k): x ⊗ a ↦ ρ(x) ⊗ a with ρ the 2×2 model.
pub fn cl2_mk_model(k: usize) -> GradedLinearMap {
    let mk = matrix_algebra(k, None).expect("trivial grading");
    let source = Arc::new(graded_tensor(&clifford(2), &mk));
    let target = Arc::new(matrix_algebra(2 * k, Some(&standard_even_grading(k))).expect("valid grading"));
    GradedLinearMap::new(source, target, spread_model(k, &cl2_model_block(), false)).expect("square model")
}

/// θ(1⊗a + e₁⊗b) = (a+b, a−b) from Cl₁ ⊗ A onto the ungraded A ⊕ A.
pub fn cl1_splitting(a: &GradedStarAlgebra) -> Result<GradedLinearMap, CliffordError> {
    if !a.is_trivially_graded() {
        return Err(CliffordError::NotTriviallyGraded(a.name().to_string()));
    }
    let d = a.dim();
    let mut m = ComplexMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(i, i)] = GaussianRational::one();
        m[(d + i, i)] = GaussianRational::one();
        m[(i, d + i)] = GaussianRational::one();
        m[(d + i, d + i)] = -GaussianRational::one();
    }
    GradedLinearMap::new(Arc::new(graded_tensor(&clifford(1), a)), Arc::new(direct_sum(a, a)), m)
}

/// ν_A(a, b) = (b, a) on A ⊕ A.
pub fn summand_swap(sum: Arc<GradedStarAlgebra>) -> GradedLinearMap {
    let d = sum.dim() / 2;
    let mut m = ComplexMatrix::zeros(2 * d, 2 * d);
    for i in 0..d {
        m[(d + i, i)] = GaussianRational::one();
        m[(i, d + i)] = GaussianRational::one();
    }
    GradedLinearMap::new(sum.clone(), sum, m).expect("square swap")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingVerdict {
    pub star_iso: IsoVerdict,
    pub intertwines: bool,
}

impl SplittingVerdict {
    pub fn passed(&self) -> bool {
        self.star_iso.passed() && self.intertwines
    }
}

/// θ is an ungraded *-isomorphism and θ∘(ν⊗id) = ν_A∘θ.
pub fn verify_cl1_splitting(theta: &GradedLinearMap) -> Result<SplittingVerdict, CliffordError> {
    let star_iso = check_star_iso(theta)?;
    let grading = GradedLinearMap::grading_automorphism(theta.source().clone());
    let lhs = grading.then(theta)?;
    let rhs = theta.then(&summand_swap(theta.target().clone()))?;
    Ok(SplittingVerdict { star_iso, intertwines: lhs.matrix() == rhs.matrix() })
}

fn require_inner_grading(b: &GradedStarAlgebra, v: &AlgebraElement) -> Result<(), CliffordError> {
    let fail = |why: &str| Err(CliffordError::GradingNotInner(why.to_string()));
    if v.dim() != b.dim() {
        return Err(CliffordError::DimensionMismatch { expected: b.dim(), found: v.dim() });
    }
    if b.homogeneous_degree(v) != Some(0) {
        return fail("v is not even");
    }
    if b.star(v) != *v {
        return fail("v is not self-adjoint");
    }
    if b.mul(v, v) != *b.unit() {
        return fail("v² ≠ 1");
    }
    for i in 0..b.dim() {
        let x = b.basis(i);
        if b.mul(&b.mul(v, &x), v) != b.grade(&x) {
            return fail("conjugation by v is not the grading");
        }
    }
    Ok(())
}

/// For b graded by Ad_v, the isomorphism Cl₁ ⊗̂ b → Cl₁ ⊗ b° onto the trivially graded b°:
///
/// 1⊗b ↦ 1⊗b and e⊗b ↦ e⊗vb for b even; 1⊗b ↦ e⊗ivb and e⊗b ↦ 1⊗ib for b odd.
pub fn ungrade_inner(b: &GradedStarAlgebra, v: &AlgebraElement) -> Result<GradedLinearMap, CliffordError> {
    require_inner_grading(b, v)?;
    let cl1 = clifford(1);
    let flat = b.with_trivial_grading();
    let (one, e) = (cl1.basis(0), cl1.basis(1));
    let i = GaussianRational::i();
    let mut images = Vec::with_capacity(2 * b.dim());
    let mut odd_images = Vec::with_capacity(b.dim());
    for j in 0..b.dim() {
        let x = b.basis(j);
        let vx = b.mul(v, &x);
        if b.degree(j) == 0 {
            images.push(tensor_elements(&one, &x));
            odd_images.push(tensor_elements(&e, &vx));
        } else {
            images.push(tensor_elements(&e, &vx.scale(&i)));
            odd_images.push(tensor_elements(&one, &x.scale(&i)));
        }
    }
    images.extend(odd_images);
    GradedLinearMap::from_images(Arc::new(graded_tensor(&cl1, b)), Arc::new(graded_tensor(&cl1, &flat)), &images)
}

/// Ad_w on a matrix algebra M_k, for a unitary w.
pub fn inner_automorphism(a: Arc<GradedStarAlgebra>, w: &ComplexMatrix) -> Result<GradedLinearMap, CliffordError> {
    let k = w.rows();
    if a.dim() != k * k {
        return Err(CliffordError::DimensionMismatch { expected: a.dim(), found: k * k });
    }
    if !w.is_unitary() {
        return Err(CliffordError::NotUnitary);
    }
    GradedLinearMap::new(a.clone(), a, conjugation_matrix(w))
}

/// Matrix of X ↦ wXw* in the matrix-unit basis.
pub(crate) fn conjugation_matrix(w: &ComplexMatrix) -> ComplexMatrix {
    let k = w.rows();
    let wa = w.adjoint();
    let mut m = ComplexMatrix::zeros(k * k, k * k);
    for p in 0..k {
        for q in 0..k {
            for r in 0..k {
                if w[(r, p)].is_zero() {
                    continue;
                }
                for c in 0..k {
                    if !wa[(q, c)].is_zero() {
                        m[(r * k + c, p * k + q)] = &w[(r, p)] * &wa[(q, c)];
                    }
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::check_graded_iso;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m2_graded() -> GradedStarAlgebra {
        matrix_algebra(2, Some(&standard_even_grading(1))).unwrap()
    }

    #[test]
    fn flips() {
        let cl1 = clifford(1);
        let f = graded_flip(&cl1, &cl1);
        let t = f.source().clone();
        let ee = t.basis_index("e1⊗e1").unwrap();
        assert_eq!(f.apply(&t.basis(ee)), t.basis(ee).scale(&-GaussianRational::one()));
        assert!(check_graded_iso(&f).unwrap().passed());
        assert_eq!(f.then(&f).unwrap().matrix(), &ComplexMatrix::identity(4));
        let g = graded_flip(&cl1, &clifford(2));
        assert!(check_graded_iso(&g).unwrap().passed());
        assert!(!check_graded_iso(&ungraded_flip(&cl1, &cl1)).unwrap().passed());
    }

    #[test]
    fn juxtapositions() {
        for m in 0..=5 {
            for n in 0..=5 - m {
                assert!(check_graded_iso(&juxtaposition_iso(m, n)).unwrap().passed(), "({m},{n})");
            }
        }
        let j = juxtaposition_iso(1, 1);
        let s = j.source().basis_index("e1⊗e1").unwrap();
        assert_eq!(j.apply(&j.source().basis(s)), j.target().basis(j.target().basis_index("e1e2").unwrap()));
        assert_eq!(juxtaposition_iso(0, 3).matrix(), &ComplexMatrix::identity(8));
    }

    #[test]
    fn cl2_model() {
        let f = cl2_matrix_model();
        assert!(check_graded_iso(&f).unwrap().passed());
        let cl2 = f.source().clone();
        let [f11, f12, f21, f22] = cl2_matrix_units();
        assert_eq!(cl2.mul(&f11, &f12), f12);
        assert_eq!(cl2.mul(&f12, &f21), f11);
        assert_eq!(f11.add(&f22), *cl2.unit());
        assert_eq!(cl2.homogeneous_degree(&f11), Some(0));
        assert_eq!(cl2.homogeneous_degree(&f12), Some(1));
        let m2 = f.target().clone();
        for (fpq, pq) in [(&f11, 0), (&f12, 1), (&f21, 2), (&f22, 3)] {
            assert_eq!(f.apply(fpq), m2.basis(pq));
        }
        assert_eq!(f.apply(&cl2.basis(1)), m2.basis(1).add(&m2.basis(2)));
        for k in 2..=3 {
            assert!(check_graded_iso(&cl2_mk_model(k)).unwrap().passed());
        }
    }

    #[test]
    fn splittings() {
        for k in 1..=3 {
            let a = matrix_algebra(k, None).unwrap();
            let theta = cl1_splitting(&a).unwrap();
            assert!(verify_cl1_splitting(&theta).unwrap().passed(), "k = {k}");
        }
        let c = clifford(0);
        let theta = cl1_splitting(&c).unwrap();
        assert_eq!(theta.apply(&theta.source().basis(1)).coords(), &[GaussianRational::one(), -GaussianRational::one()]);
        let cplus = theta.source().unit().add(&theta.source().basis(1)).scale(&GaussianRational::from_ratio(1, 2));
        assert_eq!(theta.apply(&cplus).coords(), &[GaussianRational::one(), GaussianRational::zero()]);
        assert!(matches!(cl1_splitting(&clifford(1)), Err(CliffordError::NotTriviallyGraded(_))));
    }

    #[test]
    fn splitting_intertwines_on_random_elements() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = matrix_algebra(2, None).unwrap();
        let theta = cl1_splitting(&a).unwrap();
        let src = theta.source().clone();
        let swap = summand_swap(theta.target().clone());
        for _ in 0..20 {
            let x =
                AlgebraElement::new((0..8).map(|_| GaussianRational::from_parts(rng.gen_range(-3..=3), rng.gen_range(-3..=3), 2)).collect());
            assert_eq!(theta.apply(&src.grade(&x)), swap.apply(&theta.apply(&x)));
        }
    }

    #[test]
    fn ungrading_m2() {
        let b = m2_graded();
        let v = b.basis(0).sub(&b.basis(3));
        let f = ungrade_inner(&b, &v).unwrap();
        assert!(check_graded_iso(&f).unwrap().passed());
        let bad = b.basis(1).add(&b.basis(2));
        assert!(matches!(ungrade_inner(&b, &bad), Err(CliffordError::GradingNotInner(_))));
        assert!(ungrade_inner(&b, b.unit()).is_err());
    }

    #[test]
    fn ungrading_trivial_is_identity() {
        let b = matrix_algebra(2, None).unwrap();
        let f = ungrade_inner(&b, b.unit()).unwrap();
        assert_eq!(f.matrix(), &ComplexMatrix::identity(8));
    }

    #[test]
    fn ungrading_cl1_cl1() {
        let cl1 = clifford(1);
        let b = graded_tensor(&cl1, &cl1);
        let v = b.basis(b.basis_index("e1⊗e1").unwrap()).scale(&GaussianRational::i());
        let f = ungrade_inner(&b, &v).unwrap();
        assert!(check_graded_iso(&f).unwrap().passed());
        let transport = juxtaposition_iso(1, 1).then(&cl2_matrix_model()).unwrap();
        assert_eq!(transport.apply(&v), m2_graded().basis(0).sub(&m2_graded().basis(3)));
    }

    #[test]
    fn cl1_cl1_transport_matches_m2() {
        let t = juxtaposition_iso(1, 1).then(&cl2_matrix_model()).unwrap();
        assert!(check_graded_iso(&t).unwrap().passed());
        let (a, b) = (t.source().clone(), t.target().clone());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.apply(&a.mul(&a.basis(i), &a.basis(j))), b.mul(&t.apply(&a.basis(i)), &t.apply(&a.basis(j))));
            }
        }
    }

    #[test]
    fn inner_automorphisms() {
        let m2 = Arc::new(matrix_algebra(2, None).unwrap());
        let w = ComplexMatrix::from_rows(vec![
            vec![GaussianRational::from_ratio(3, 5), GaussianRational::from_ratio(-4, 5)],
            vec![GaussianRational::from_ratio(4, 5), GaussianRational::from_ratio(3, 5)],
        ]);
        let f = inner_automorphism(m2.clone(), &w).unwrap();
        assert!(check_graded_iso(&f).unwrap().passed());
        assert!(inner_automorphism(m2, &ComplexMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]])).is_err());
    }
}
