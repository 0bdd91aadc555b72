use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::algebra::{AlgebraElement, GradedStarAlgebra};
use super::CliffordError;
use crate::linalg::{ComplexMatrix, GaussianRational};

/// A Q\[i\]-linear map between two algebras, as a matrix acting on basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    source: Arc<GradedStarAlgebra>,
    target: Arc<GradedStarAlgebra>,
    matrix: ComplexMatrix,
}

impl GradedLinearMap {
    pub fn new(
        source: Arc<GradedStarAlgebra>,
        target: Arc<GradedStarAlgebra>,
        matrix: ComplexMatrix,
    ) -> Result<Self, CliffordError> {
        if matrix.cols() != source.dim() {
            return Err(CliffordError::DimensionMismatch { expected: source.dim(), found: matrix.cols() });
        }
        if matrix.rows() != target.dim() {
            return Err(CliffordError::DimensionMismatch { expected: target.dim(), found: matrix.rows() });
        }
        Ok(GradedLinearMap { source, target, matrix })
    }

    /// The map sending basis element i of the source to `images[i]`.
    pub fn from_images(
        source: Arc<GradedStarAlgebra>,
        target: Arc<GradedStarAlgebra>,
        images: &[AlgebraElement],
    ) -> Result<Self, CliffordError> {
        if images.len() != source.dim() {
            return Err(CliffordError::DimensionMismatch { expected: source.dim(), found: images.len() });
        }
        let mut m = ComplexMatrix::zeros(target.dim(), source.dim());
        for (j, x) in images.iter().enumerate() {
            if x.dim() != target.dim() {
                return Err(CliffordError::DimensionMismatch { expected: target.dim(), found: x.dim() });
            }
            m.set_col(j, x.coords());
        }
        Ok(GradedLinearMap { source, target, matrix: m })
    }

    pub fn identity(a: Arc<GradedStarAlgebra>) -> Self {
        let m = ComplexMatrix::identity(a.dim());
        GradedLinearMap { source: a.clone(), target: a, matrix: m }
    }

    /// x ↦ (−1)^deg x.
    pub fn grading_automorphism(a: Arc<GradedStarAlgebra>) -> Self {
        let signs: Vec<_> = a.degrees().iter().map(|&d| GaussianRational::from_int(if d == 1 { -1 } else { 1 })).collect();
        GradedLinearMap { source: a.clone(), target: a, matrix: ComplexMatrix::diagonal(&signs) }
    }

    pub fn source(&self) -> &Arc<GradedStarAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedStarAlgebra> {
        &self.target
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(self.matrix.mul_vec(x.coords()))
    }

    pub fn image_of_basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::new(self.matrix.col(i))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedLinearMap) -> Result<GradedLinearMap, CliffordError> {
        if self.target.dim() != other.source.dim() || self.target.labels() != other.source.labels() {
            return Err(CliffordError::DimensionMismatch { expected: self.target.dim(), found: other.source.dim() });
        }
        Ok(GradedLinearMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    pub fn inverse(&self) -> Option<GradedLinearMap> {
        let m = self.matrix.inverse()?;
        Some(GradedLinearMap { source: self.target.clone(), target: self.source.clone(), matrix: m })
    }

    /// Relabels the source and target without touching the matrix.
    pub fn retarget(self, source: Arc<GradedStarAlgebra>, target: Arc<GradedStarAlgebra>) -> Result<Self, CliffordError> {
        GradedLinearMap::new(source, target, self.matrix)
    }

    pub(crate) fn retarget_source(self, source: Arc<GradedStarAlgebra>) -> Self {
        assert_eq!(source.dim(), self.source.dim());
        GradedLinearMap { source, ..self }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                if !self.matrix[(i, j)].is_zero() {
                    entries.push(serde_json::json!([i, j, self.matrix[(i, j)].to_string()]));
                }
            }
        }
        serde_json::json!({
            "source": self.source.name(),
            "target": self.target.name(),
            "rows": self.matrix.rows(),
            "cols": self.matrix.cols(),
            "entries": entries,
        })
    }
}

/// f ⊗ g on the graded tensor products. No Koszul sign appears because both maps are even.
pub fn tensor_maps(f: &GradedLinearMap, g: &GradedLinearMap) -> GradedLinearMap {
    let source = Arc::new(super::graded_tensor(&f.source, &g.source));
    let target = Arc::new(super::graded_tensor(&f.target, &g.target));
    GradedLinearMap { source, target, matrix: f.matrix.kron(&g.matrix) }
}

/// Why a map failed to be a graded *-isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoFailure {
    NotDegreePreserving { i: usize },
    NotUnital,
    NotStarPreserving { i: usize },
    NotMultiplicative { i: usize, j: usize },
    NotBijective,
}

impl fmt::Display for IsoFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoFailure::NotDegreePreserving { i } => write!(f, "image of basis element {i} has the wrong degree"),
            IsoFailure::NotUnital => write!(f, "unit is not preserved"),
            IsoFailure::NotStarPreserving { i } => write!(f, "star is not preserved on basis element {i}"),
            IsoFailure::NotMultiplicative { i, j } => write!(f, "f(b{i} b{j}) differs from f(b{i}) f(b{j})"),
            IsoFailure::NotBijective => write!(f, "map is not bijective"),
        }
    }
}

/// Outcome of an isomorphism check; `failure` holds the first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub failure: Option<IsoFailure>,
}

impl IsoVerdict {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn fail(f: IsoFailure) -> Self {
        IsoVerdict { failure: Some(f) }
    }
}

/// Is `f` a bijective, unital, star-preserving, degree-preserving algebra map?
///
/// Multiplicativity is tested on (generator, basis) pairs, which is equivalent to testing
/// every basis pair; on failure the offending basis pair is located and reported.
pub fn check_graded_iso(f: &GradedLinearMap) -> Result<IsoVerdict, CliffordError> {
    verify(f, true)
}

/// As [`check_graded_iso`] but ignoring degrees.
pub fn check_star_iso(f: &GradedLinearMap) -> Result<IsoVerdict, CliffordError> {
    verify(f, false)
}

fn verify(f: &GradedLinearMap, graded: bool) -> Result<IsoVerdict, CliffordError> {
    let (a, b) = (&f.source, &f.target);
    if a.dim() != b.dim() {
        return Err(CliffordError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let d = a.dim();
    let images: Vec<AlgebraElement> = (0..d).map(|i| f.image_of_basis(i)).collect();
    if graded {
        for (i, y) in images.iter().enumerate() {
            if !y.is_zero() && b.homogeneous_degree(y) != Some(a.degree(i)) {
                return Ok(IsoVerdict::fail(IsoFailure::NotDegreePreserving { i }));
            }
        }
    }
    if f.apply(a.unit()) != *b.unit() {
        return Ok(IsoVerdict::fail(IsoFailure::NotUnital));
    }
    for (i, y) in images.iter().enumerate() {
        if f.apply(&a.star(&a.basis(i))) != b.star(y) {
            return Ok(IsoVerdict::fail(IsoFailure::NotStarPreserving { i }));
        }
    }
    let mut generators_ok = true;
    'outer: for g in a.generators() {
        let fg = f.apply(g);
        for (j, y) in images.iter().enumerate() {
            if f.apply(&a.mul(g, &a.basis(j))) != b.mul(&fg, y) {
                generators_ok = false;
                break 'outer;
            }
        }
    }
    if !generators_ok {
        for i in 0..d {
            for j in 0..d {
                let lhs = f.apply(&a.mul(&a.basis(i), &a.basis(j)));
                if lhs != b.mul(&images[i], &images[j]) {
                    return Ok(IsoVerdict::fail(IsoFailure::NotMultiplicative { i, j }));
                }
            }
        }
    }
    if !is_invertible(&f.matrix) {
        return Ok(IsoVerdict::fail(IsoFailure::NotBijective));
    }
    Ok(IsoVerdict { failure: None })
}

const CERT_PRIME: u64 = 1_000_000_009;

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn sqrt_minus_one(p: u64) -> u64 {
    (2..p).map(|q| mod_pow(q, (p - 1) / 4, p)).find(|&r| (r as u128 * r as u128 % p as u128) as u64 == p - 1).unwrap()
}

fn reduce_rational(x: &num_rational::BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = x.numer().mod_floor(&pb).to_u64()?;
    Some((n as u128 * mod_pow(d, p - 2, p) as u128 % p as u128) as u64)
}

fn rank_mod_p(m: &ComplexMatrix, p: u64) -> Option<usize> {
    let iota = sqrt_minus_one(p);
    let (r, c) = (m.rows(), m.cols());
    let mut a = vec![0u64; r * c];
    for i in 0..r {
        for j in 0..c {
            let z = &m[(i, j)];
            if z.is_zero() {
                continue;
            }
            let re = reduce_rational(&z.re, p)?;
            let im = reduce_rational(&z.im, p)?;
            a[i * c + j] = ((re as u128 + im as u128 * iota as u128) % p as u128) as u64;
        }
    }
    let mut rank = 0;
    for col in 0..c {
        let Some(piv) = (rank..r).find(|&i| a[i * c + col] != 0) else { continue };
        for j in 0..c {
            a.swap(rank * c + j, piv * c + j);
        }
        let inv = mod_pow(a[rank * c + col], p - 2, p);
        for i in 0..r {
            if i == rank || a[i * c + col] == 0 {
                continue;
            }
            let factor = (a[i * c + col] as u128 * inv as u128 % p as u128) as u64;
            for j in col..c {
                let sub = (factor as u128 * a[rank * c + j] as u128 % p as u128) as u64;
                a[i * c + j] = (a[i * c + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Full rank modulo a prime certifies full rank over Q\[i\]; otherwise decide exactly.
pub(crate) fn is_invertible(m: &ComplexMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    if rank_mod_p(m, CERT_PRIME) == Some(m.rows()) {
        return true;
    }
    m.rank() == m.rows()
}

pub(crate) fn sign(negative: bool) -> GaussianRational {
    if negative {
        -GaussianRational::one()
    } else {
        GaussianRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{clifford, graded_tensor, matrix_algebra};

    #[test]
    fn identity_and_grading_pass() {
        let cl1 = Arc::new(clifford(1));
        assert!(check_graded_iso(&GradedLinearMap::identity(cl1.clone())).unwrap().passed());
        let nu = GradedLinearMap::grading_automorphism(cl1.clone());
        assert!(check_graded_iso(&nu).unwrap().passed());
        assert_eq!(nu.apply(&cl1.basis(1)), cl1.basis(1).scale(&GaussianRational::from_int(-1)));
    }

    #[test]
    fn shifted_generator_fails_with_witness() {
        let cl1 = Arc::new(clifford(1));
        let m = ComplexMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]);
        let f = GradedLinearMap::new(cl1.clone(), cl1, m).unwrap();
        let v = check_graded_iso(&f).unwrap();
        assert!(matches!(v.failure, Some(IsoFailure::NotDegreePreserving { i: 1 })));
        let v = check_star_iso(&f).unwrap();
        assert_eq!(v.failure, Some(IsoFailure::NotMultiplicative { i: 1, j: 1 }));
    }

    #[test]
    fn non_bijective_detected() {
        let m2 = Arc::new(matrix_algebra(2, None).unwrap());
        let cl0 = Arc::new(clifford(0));
        let z = GradedLinearMap::new(m2.clone(), cl0, ComplexMatrix::zeros(1, 4)).unwrap();
        assert!(matches!(check_graded_iso(&z), Err(CliffordError::DimensionMismatch { .. })));
        assert!(!is_invertible(&ComplexMatrix::from_int_rows(&[vec![1, 2], vec![2, 4]])));
        assert!(is_invertible(&ComplexMatrix::from_int_rows(&[vec![1, 2], vec![2, 3]])));
    }

    #[test]
    fn transpose_is_not_multiplicative() {
        let m2 = Arc::new(matrix_algebra(2, None).unwrap());
        let images: Vec<_> = (0..4).map(|a| m2.basis((a % 2) * 2 + a / 2)).collect();
        let t = GradedLinearMap::from_images(m2.clone(), m2, &images).unwrap();
        let v = check_graded_iso(&t).unwrap();
        assert!(matches!(v.failure, Some(IsoFailure::NotMultiplicative { .. })));
    }

    #[test]
    fn tensor_of_automorphisms() {
        let cl1 = Arc::new(clifford(1));
        let nu = GradedLinearMap::grading_automorphism(cl1.clone());
        let f = tensor_maps(&nu, &nu);
        assert_eq!(f.source().labels(), graded_tensor(&cl1, &cl1).labels());
        assert!(check_graded_iso(&f).unwrap().passed());
        assert_eq!(f.then(&f).unwrap().matrix(), &ComplexMatrix::identity(4));
    }
}
