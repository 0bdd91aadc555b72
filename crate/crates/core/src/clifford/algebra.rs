use std::fmt;

use serde::{Deserialize, Serialize};

use super::CliffordError;
use crate::linalg::{ComplexMatrix, GaussianRational};

pub(crate) type SparseVec = Vec<(usize, GaussianRational)>;

/// A vector of coordinates in the basis of some [`GradedStarAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraElement {
    coords: Vec<GaussianRational>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<GaussianRational>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement { coords: vec![GaussianRational::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = GaussianRational::one();
        e
    }

    pub fn from_sparse(dim: usize, entries: &[(usize, GaussianRational)]) -> Self {
        let mut e = Self::zero(dim);
        for (i, c) in entries {
            e.coords[*i] += c;
        }
        e
    }

    pub fn coords(&self) -> &[GaussianRational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(GaussianRational::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        AlgebraElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        AlgebraElement { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        AlgebraElement { coords: self.coords.iter().map(|a| a * s).collect() }
    }

    pub(crate) fn nonzero(&self) -> impl Iterator<Item = (usize, &GaussianRational)> {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl std::ops::Index<usize> for AlgebraElement {
    type Output = GaussianRational;
    fn index(&self, i: usize) -> &GaussianRational {
        &self.coords[i]
    }
}

/// Which law of a graded *-algebra failed, with the offending basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantViolation {
    NotAssociative { i: usize, j: usize, k: usize },
    UnitLaw { i: usize },
    Inhomogeneous { i: usize, j: usize },
    StarNotInvolutive { i: usize },
    StarNotAntimultiplicative { i: usize, j: usize },
    StarNotHomogeneous { i: usize },
}

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantViolation::NotAssociative { i, j, k } => write!(f, "associativity fails on basis triple ({i}, {j}, {k})"),
            InvariantViolation::UnitLaw { i } => write!(f, "unit law fails on basis element {i}"),
            InvariantViolation::Inhomogeneous { i, j } => write!(f, "product of basis elements {i}, {j} is not homogeneous"),
            InvariantViolation::StarNotInvolutive { i } => write!(f, "star is not involutive on basis element {i}"),
            InvariantViolation::StarNotAntimultiplicative { i, j } => {
                write!(f, "(b{i} b{j})* differs from b{j}* b{i}*")
            }
            InvariantViolation::StarNotHomogeneous { i } => write!(f, "star does not preserve the degree of basis element {i}"),
        }
    }
}

/// A finite-dimensional Z/2-graded *-algebra over Q\[i\], given by structure constants in a
/// homogeneous basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedStarAlgebra {
    name: String,
    labels: Vec<String>,
    degrees: Vec<u8>,
    table: Vec<SparseVec>,
    star: Vec<SparseVec>,
    unit: AlgebraElement,
    generators: Vec<AlgebraElement>,
    factors: Option<Box<(GradedStarAlgebra, GradedStarAlgebra)>>,
}

fn sparse_add(out: &mut Vec<GaussianRational>, v: &SparseVec, s: &GaussianRational) {
    for (k, c) in v {
        out[*k] += &(c * s);
    }
}

fn parity(sign_bit: bool) -> GaussianRational {
    if sign_bit {
        GaussianRational::from_int(-1)
    } else {
        GaussianRational::one()
    }
}

impl GradedStarAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn degree(&self, i: usize) -> u8 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[u8] {
        &self.degrees
    }

    pub fn unit(&self) -> &AlgebraElement {
        &self.unit
    }

    /// Elements generating the algebra as a unital algebra.
    pub fn generators(&self) -> &[AlgebraElement] {
        &self.generators
    }

    /// The two factors when this algebra was built by [`graded_tensor`].
    pub fn tensor_factors(&self) -> Option<(&GradedStarAlgebra, &GradedStarAlgebra)> {
        self.factors.as_deref().map(|(a, b)| (a, b))
    }

    pub fn is_trivially_graded(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), i)
    }

    pub fn element(&self, coords: Vec<GaussianRational>) -> Result<AlgebraElement, CliffordError> {
        if coords.len() != self.dim() {
            return Err(CliffordError::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        Ok(AlgebraElement::new(coords))
    }

    pub(crate) fn product_of_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub(crate) fn star_of_basis(&self, i: usize) -> &SparseVec {
        &self.star[i]
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let d = self.dim();
        assert!(x.dim() == d && y.dim() == d, "element does not belong to {}", self.name);
        let mut out = vec![GaussianRational::zero(); d];
        let ys: Vec<_> = y.nonzero().collect();
        for (i, a) in x.nonzero() {
            for &(j, b) in &ys {
                let t = &self.table[i * d + j];
                if !t.is_empty() {
                    sparse_add(&mut out, t, &(a * b));
                }
            }
        }
        AlgebraElement::new(out)
    }

    /// The conjugate-linear involution.
    pub fn star(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = vec![GaussianRational::zero(); self.dim()];
        for (i, a) in x.nonzero() {
            sparse_add(&mut out, &self.star[i], &a.conj());
        }
        AlgebraElement::new(out)
    }

    /// x ↦ (−1)^deg x.
    pub fn grade(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::new(
            x.coords().iter().zip(&self.degrees).map(|(c, &d)| if d == 1 { -c } else { c.clone() }).collect(),
        )
    }

    /// `Some(d)` when x is homogeneous of degree d; zero counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self, x: &AlgebraElement) -> Option<u8> {
        let mut deg = None;
        for (i, _) in x.nonzero() {
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.mul(x, y).sub(&self.mul(y, x))
    }

    /// Checks associativity on all basis triples, the unit law, homogeneity of products (which
    /// is exactly multiplicativity of the grading automorphism) and the star laws.
    pub fn check_invariants(&self) -> Result<(), InvariantViolation> {
        let d = self.dim();
        for i in 0..d {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(InvariantViolation::UnitLaw { i });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let deg = (self.degrees[i] + self.degrees[j]) % 2;
                if self.product_of_basis(i, j).iter().any(|(k, _)| self.degrees[*k] != deg) {
                    return Err(InvariantViolation::Inhomogeneous { i, j });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = AlgebraElement::from_sparse(d, self.product_of_basis(i, j));
                for k in 0..d {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = AlgebraElement::from_sparse(d, self.product_of_basis(j, k));
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        return Err(InvariantViolation::NotAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..d {
            let b = self.basis(i);
            let s = self.star(&b);
            if self.star(&s) != b {
                return Err(InvariantViolation::StarNotInvolutive { i });
            }
            if self.homogeneous_degree(&s) != Some(self.degrees[i]) {
                return Err(InvariantViolation::StarNotHomogeneous { i });
            }
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.star(&AlgebraElement::from_sparse(d, self.product_of_basis(i, j)));
                let rhs = self.mul(&self.star(&self.basis(j)), &self.star(&self.basis(i)));
                if lhs != rhs {
                    return Err(InvariantViolation::StarNotAntimultiplicative { i, j });
                }
            }
        }
        Ok(())
    }

    /// The same algebra with every basis element declared even.
    pub fn with_trivial_grading(&self) -> GradedStarAlgebra {
        let mut a = self.clone();
        a.name = format!("{}°", self.name);
        a.degrees = vec![0; self.dim()];
        a.factors = None;
        a
    }

    /// Square matrix of the linear map x ↦ a·x.
    pub fn left_multiplication(&self, a: &AlgebraElement) -> ComplexMatrix {
        let d = self.dim();
        let mut m = ComplexMatrix::zeros(d, d);
        for j in 0..d {
            m.set_col(j, self.mul(a, &self.basis(j)).coords());
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut constants = Vec::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                for (k, c) in self.product_of_basis(i, j) {
                    constants.push(serde_json::json!([i, j, k, c.to_string()]));
                }
            }
        }
        let star: Vec<_> = self
            .star
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |(k, c)| serde_json::json!([i, k, c.to_string()])))
            .collect();
        serde_json::json!({
            "name": self.name,
            "dim": self.dim(),
            "basis": self.labels,
            "degrees": self.degrees,
            "structure_constants": constants,
            "star": star,
            "unit": self.unit,
        })
    }
}

/// The complex Clifford algebra on e₁,…,eₙ with eᵢ² = 1, eᵢeⱼ = −eⱼeᵢ and eᵢ* = eᵢ.
///
/// Basis element `S` (a bitmask, bit i standing for e_{i+1}) is the ordered product e_S.
pub fn clifford(n: usize) -> GradedStarAlgebra {
    assert!(n < usize::BITS as usize / 2, "Clifford algebra too large");
    let d = 1usize << n;
    let label = |s: usize| {
        if s == 0 {
            "1".to_string()
        } else {
            (0..n).filter(|i| s >> i & 1 == 1).map(|i| format!("e{}", i + 1)).collect()
        }
    };
    let mut table = Vec::with_capacity(d * d);
    for s in 0..d {
        for t in 0..d {
            let mut swaps = 0u32;
            for j in 0..n {
                if t >> j & 1 == 1 {
                    swaps += (s >> (j + 1)).count_ones();
                }
            }
            table.push(vec![(s ^ t, parity(swaps % 2 == 1))]);
        }
    }
    let star = (0..d)
        .map(|s| {
            let k = s.count_ones();
            vec![(s, parity((k * k.saturating_sub(1) / 2) % 2 == 1))]
        })
        .collect();
    GradedStarAlgebra {
        name: format!("Cl{n}"),
        labels: (0..d).map(label).collect(),
        degrees: (0..d).map(|s| (s.count_ones() % 2) as u8).collect(),
        table,
        star,
        unit: AlgebraElement::basis(d, 0),
        generators: (0..n).map(|i| AlgebraElement::basis(d, 1 << i)).collect(),
        factors: None,
    }
}

/// M_k(C) in the matrix-unit basis `E_ij` (index i·k + j), graded by conjugation with a
/// diagonal ±1 unitary, or trivially when none is given.
pub fn matrix_algebra(k: usize, grading_unitary: Option<&ComplexMatrix>) -> Result<GradedStarAlgebra, CliffordError> {
    let signs: Vec<u8> = match grading_unitary {
        None => vec![0; k],
        Some(v) => {
            if v.rows() != k || v.cols() != k {
                return Err(CliffordError::InvalidGradingUnitary(format!("expected a {k}×{k} matrix")));
            }
            if !v.is_self_adjoint() || v.mul(v) != ComplexMatrix::identity(k) {
                return Err(CliffordError::InvalidGradingUnitary("not a self-adjoint unitary".into()));
            }
            let mut signs = Vec::with_capacity(k);
            for i in 0..k {
                for j in 0..k {
                    if i != j && !v[(i, j)].is_zero() {
                        return Err(CliffordError::InvalidGradingUnitary(
                            "grading unitaries must be diagonal in the matrix-unit basis".into(),
                        ));
                    }
                }
                signs.push(u8::from(v[(i, i)] != GaussianRational::one()));
            }
            signs
        }
    };
    let d = k * k;
    let mut table = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let (i, j, p, q) = (a / k, a % k, b / k, b % k);
            table.push(if j == p { vec![(i * k + q, GaussianRational::one())] } else { Vec::new() });
        }
    }
    let mut unit = AlgebraElement::zero(d);
    for i in 0..k {
        unit.coords[i * k + i] = GaussianRational::one();
    }
    let mut generators = Vec::new();
    for i in 0..k.saturating_sub(1) {
        generators.push(AlgebraElement::basis(d, i * k + i + 1));
        generators.push(AlgebraElement::basis(d, (i + 1) * k + i));
    }
    let graded = signs.iter().any(|&s| s == 1);
    Ok(GradedStarAlgebra {
        name: if graded { format!("M{k}(graded)") } else { format!("M{k}") },
        labels: (0..d).map(|a| format!("E{}{}", a / k + 1, a % k + 1)).collect(),
        degrees: (0..d).map(|a| signs[a / k] ^ signs[a % k]).collect(),
        table,
        star: (0..d).map(|a| vec![((a % k) * k + a / k, GaussianRational::one())]).collect(),
        unit,
        generators,
        factors: None,
    })
}

/// The graded tensor product a ⊗̂ b with basis pairs (i, j) at index i·dim(b) + j.
///
/// (a⊗b)(a′⊗b′) = (−1)^{deg b·deg a′} aa′⊗bb′ and (a⊗b)* = (−1)^{deg a·deg b} a*⊗b*.
pub fn graded_tensor(a: &GradedStarAlgebra, b: &GradedStarAlgebra) -> GradedStarAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let idx = |i: usize, j: usize| i * db + j;
    let mut table = Vec::with_capacity(d * d);
    for i in 0..da {
        for j in 0..db {
            for k in 0..da {
                for l in 0..db {
                    let sign = parity(b.degrees[j] == 1 && a.degrees[k] == 1);
                    let pa = a.product_of_basis(i, k);
                    let pb = b.product_of_basis(j, l);
                    let mut entries: SparseVec = Vec::with_capacity(pa.len() * pb.len());
                    for (p, c) in pa {
                        for (q, e) in pb {
                            entries.push((idx(*p, *q), &(c * e) * &sign));
                        }
                    }
                    entries.sort_by_key(|(x, _)| *x);
                    table.push(entries);
                }
            }
        }
    }
    let mut star = Vec::with_capacity(d);
    for i in 0..da {
        for j in 0..db {
            let sign = parity(a.degrees[i] == 1 && b.degrees[j] == 1);
            let mut entries = Vec::new();
            for (p, c) in a.star_of_basis(i) {
                for (q, e) in b.star_of_basis(j) {
                    entries.push((idx(*p, *q), &(c * e) * &sign));
                }
            }
            star.push(entries);
        }
    }
    let mut unit = vec![GaussianRational::zero(); d];
    for (i, x) in a.unit.nonzero() {
        for (j, y) in b.unit.nonzero() {
            unit[idx(i, j)] = x * y;
        }
    }
    let mut generators = Vec::new();
    for g in &a.generators {
        generators.push(tensor_elements(g, &b.unit));
    }
    for h in &b.generators {
        generators.push(tensor_elements(&a.unit, h));
    }
    GradedStarAlgebra {
        name: format!("{}⊗{}", a.name, b.name),
        labels: a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| format!("{x}⊗{y}"))).collect(),
        degrees: a.degrees.iter().flat_map(|x| b.degrees.iter().map(move |y| (x + y) % 2)).collect(),
        table,
        star,
        unit: AlgebraElement::new(unit),
        generators,
        factors: Some(Box::new((a.clone(), b.clone()))),
    }
}

/// x ⊗ y in the basis of a graded tensor product.
pub fn tensor_elements(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let db = y.dim();
    let mut out = vec![GaussianRational::zero(); x.dim() * db];
    for (i, a) in x.nonzero() {
        for (j, b) in y.nonzero() {
            out[i * db + j] = a * b;
        }
    }
    AlgebraElement::new(out)
}

/// The direct sum a ⊕ b; `(x, 0)` occupies the first dim(a) coordinates.
pub fn direct_sum(a: &GradedStarAlgebra, b: &GradedStarAlgebra) -> GradedStarAlgebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let shift = |v: &SparseVec, off: usize| v.iter().map(|(k, c)| (k + off, c.clone())).collect::<SparseVec>();
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            table.push(match (i < da, j < da) {
                (true, true) => a.product_of_basis(i, j).clone(),
                (false, false) => shift(b.product_of_basis(i - da, j - da), da),
                _ => Vec::new(),
            });
        }
    }
    let star = (0..d).map(|i| if i < da { a.star[i].clone() } else { shift(&b.star[i - da], da) }).collect();
    let embed = |x: &AlgebraElement, first: bool| {
        let mut v = vec![GaussianRational::zero(); d];
        let off = if first { 0 } else { da };
        for (i, c) in x.nonzero() {
            v[i + off] = c.clone();
        }
        AlgebraElement::new(v)
    };
    let mut generators: Vec<_> = a.generators.iter().map(|g| embed(g, true)).collect();
    generators.extend(b.generators.iter().map(|g| embed(g, false)));
    generators.push(embed(&a.unit, true));
    GradedStarAlgebra {
        name: format!("{}⊕{}", a.name, b.name),
        labels: a.labels.iter().map(|l| format!("({l},0)")).chain(b.labels.iter().map(|l| format!("(0,{l})"))).collect(),
        degrees: a.degrees.iter().chain(&b.degrees).copied().collect(),
        table,
        star,
        unit: embed(&a.unit, true).add(&embed(&b.unit, false)),
        generators,
        factors: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: &GradedStarAlgebra, label: &str) -> AlgebraElement {
        a.basis(a.basis_index(label).unwrap())
    }

    #[test]
    fn clifford_relations() {
        for n in 0..=5 {
            let cl = clifford(n);
            assert_eq!(cl.dim(), 1 << n);
            assert_eq!(cl.check_invariants(), Ok(()));
        }
        let cl2 = clifford(2);
        let (e1, e2) = (e(&cl2, "e1"), e(&cl2, "e2"));
        assert_eq!(cl2.mul(&e1, &e1), *cl2.unit());
        assert_eq!(cl2.mul(&e1, &e2), cl2.mul(&e2, &e1).scale(&GaussianRational::from_int(-1)));
        assert_eq!(cl2.degree(cl2.basis_index("e1").unwrap()), 1);
        let e12 = e(&cl2, "e1e2");
        assert_eq!(cl2.star(&e12), e12.scale(&GaussianRational::from_int(-1)));
        assert_eq!(clifford(0).dim(), 1);
        assert!(clifford(0).is_trivially_graded());
    }

    #[test]
    fn matrix_gradings() {
        let v = ComplexMatrix::from_int_rows(&[vec![1, 0], vec![0, -1]]);
        let m2 = matrix_algebra(2, Some(&v)).unwrap();
        assert_eq!(m2.degrees(), &[0, 1, 1, 0]);
        assert_eq!(m2.check_invariants(), Ok(()));
        for k in 1..=3 {
            let m = matrix_algebra(k, None).unwrap();
            assert!(m.is_trivially_graded());
            assert_eq!(m.check_invariants(), Ok(()));
        }
        let bad = ComplexMatrix::from_int_rows(&[vec![1, 1], vec![0, -1]]);
        assert!(matrix_algebra(2, Some(&bad)).is_err());
        let sym = ComplexMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(matrix_algebra(2, Some(&sym)), Err(CliffordError::InvalidGradingUnitary(_))));
    }

    #[test]
    fn koszul_signs() {
        let cl1 = clifford(1);
        let t = graded_tensor(&cl1, &cl1);
        assert_eq!(t.check_invariants(), Ok(()));
        let (a, b, ab) = (e(&t, "e1⊗1"), e(&t, "1⊗e1"), e(&t, "e1⊗e1"));
        assert_eq!(t.mul(&a, &b), ab);
        assert_eq!(t.mul(&b, &a), ab.scale(&GaussianRational::from_int(-1)));
        assert_eq!(t.mul(&a, &a), *t.unit());
        assert_eq!(t.star(&ab), ab.scale(&GaussianRational::from_int(-1)));
        let c = graded_tensor(&cl1, &clifford(0));
        assert_eq!(c.dim(), 2);
        assert_eq!(c.product_of_basis(1, 1), cl1.product_of_basis(1, 1));
    }

    #[test]
    fn tensor_and_sum_invariants() {
        let v = ComplexMatrix::from_int_rows(&[vec![1, 0], vec![0, -1]]);
        let m2g = matrix_algebra(2, Some(&v)).unwrap();
        let a = graded_tensor(&clifford(1), &m2g);
        assert_eq!(a.check_invariants(), Ok(()));
        assert_eq!(graded_tensor(&clifford(2), &matrix_algebra(2, None).unwrap()).check_invariants(), Ok(()));
        let m2 = matrix_algebra(2, None).unwrap();
        let s = direct_sum(&m2, &m2);
        assert_eq!(s.check_invariants(), Ok(()));
        assert_eq!(s.unit().coords().iter().filter(|c| c.is_one()).count(), 4);
    }

    #[test]
    fn broken_table_is_detected() {
        let mut cl1 = clifford(1);
        cl1.table[3] = vec![(1, GaussianRational::one())];
        assert!(cl1.check_invariants().is_err());
    }
}
