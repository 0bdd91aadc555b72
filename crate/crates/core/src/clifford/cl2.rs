use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::algebra::{graded_tensor, GradedStarAlgebra};
use super::isos::{cl2_model_block, spread_model};
use super::maps::GradedLinearMap;
use super::{clifford, matrix_algebra, CliffordError};
use crate::linalg::{ComplexMatrix, GaussianRational};

/// A graded automorphism of Cl₂ ⊗ M_k written as Ad_ũ ∘ (Ad_{e₁ˣ} ⊗ Ad_w) with ũ = 1 ⊕ u.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cl2AutDecomposition {
    pub u: ComplexMatrix,
    pub x: u8,
    pub alpha_unitary: ComplexMatrix,
}

impl Cl2AutDecomposition {
    pub fn k(&self) -> usize {
        self.u.rows()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "u": matrix_json(&self.u), "x": self.x, "alpha_unitary": matrix_json(&self.alpha_unitary) })
    }
}

pub(crate) fn matrix_json(m: &ComplexMatrix) -> serde_json::Value {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect::<Vec<_>>()).collect()
}

/// Cl₂ ⊗̂ M_k, the domain of [`theta`] and [`decompose_cl2_automorphism`].
pub fn cl2_tensor_matrix(k: usize) -> GradedStarAlgebra {
    graded_tensor(&clifford(2), &matrix_algebra(k, None).expect("trivial grading"))
}

fn model_inverse_block() -> ComplexMatrix {
    cl2_model_block().inverse().expect("invertible model")
}

fn block_diag(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let k = a.rows();
    let mut m = ComplexMatrix::zeros(2 * k, 2 * k);
    m.set_block(0, 0, a);
    m.set_block(k, k, b);
    m
}

fn block_swap(k: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2 * k, 2 * k);
    m.set_block(0, k, &ComplexMatrix::identity(k));
    m.set_block(k, 0, &ComplexMatrix::identity(k));
    m
}

fn conjugation(w: &ComplexMatrix) -> ComplexMatrix {
    super::isos::conjugation_matrix(w)
}

/// The unitary W = ũ·S^x·(w ⊕ w) of M_{2k} implementing Θ(u, x, Ad_w).
pub fn theta_unitary(u: &ComplexMatrix, x: u8, w: &ComplexMatrix) -> Result<ComplexMatrix, CliffordError> {
    let k = u.rows();
    if !u.is_unitary() || !w.is_unitary() || w.rows() != k {
        return Err(CliffordError::NotUnitary);
    }
    if x > 1 {
        return Err(CliffordError::NotGradedAutomorphism("x must be 0 or 1".into()));
    }
    let mut big = block_diag(&ComplexMatrix::identity(k), u);
    if x == 1 {
        big = big.mul(&block_swap(k));
    }
    Ok(big.mul(&block_diag(w, w)))
}

/// Θ(u, x, α) = Ad_ũ ∘ (Ad_{e₁ˣ} ⊗ α) on Cl₂ ⊗ M_k, with α = Ad_w.
pub fn theta(u: &ComplexMatrix, x: u8, w: &ComplexMatrix) -> Result<GradedLinearMap, CliffordError> {
    let k = u.rows();
    let big = conjugation(&theta_unitary(u, x, w)?);
    let phi = spread_model(k, &cl2_model_block(), false);
    let phi_inv = spread_model(k, &model_inverse_block(), true);
    let a = Arc::new(cl2_tensor_matrix(k));
    GradedLinearMap::new(a.clone(), a, phi_inv.mul(&big.mul(&phi)))
}

struct MatrixModelMap {
    k: usize,
    images: Vec<ComplexMatrix>,
}

impl MatrixModelMap {
    fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let n = 2 * self.k;
        let mut out = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let c = &x[(a, b)];
                if !c.is_zero() {
                    out = out.add(&self.images[a * n + b].scale(c));
                }
            }
        }
        out
    }

    fn image(&self, a: usize, b: usize) -> &ComplexMatrix {
        &self.images[a * 2 * self.k + b]
    }

    /// Degree, star, unit and matrix-unit relations; together these make F a graded
    /// *-endomorphism of the simple algebra M_{2k}, hence an automorphism.
    fn check(&self) -> Result<(), CliffordError> {
        let (k, n) = (self.k, 2 * self.k);
        let fail = |why: &str| Err(CliffordError::NotGradedAutomorphism(why.to_string()));
        let side = |i: usize| i >= k;
        for a in 0..n {
            for b in 0..n {
                let img = self.image(a, b);
                let odd = side(a) != side(b);
                for r in 0..n {
                    for c in 0..n {
                        if !img[(r, c)].is_zero() && (side(r) != side(c)) != odd {
                            return fail("degree not preserved");
                        }
                    }
                }
                if img.adjoint() != *self.image(b, a) {
                    return fail("star not preserved");
                }
                if self.image(a, 0).mul(self.image(0, b)) != *img {
                    return fail("not multiplicative");
                }
            }
        }
        let mut sum = ComplexMatrix::zeros(n, n);
        for a in 0..n {
            sum = sum.add(self.image(a, a));
        }
        if sum != ComplexMatrix::identity(n) {
            return fail("unit not preserved");
        }
        Ok(())
    }
}

fn matrix_model(f: &GradedLinearMap) -> Result<MatrixModelMap, CliffordError> {
    let d = f.source().dim();
    let k = (d / 4).sqrt();
    if 4 * k * k != d || k == 0 {
        return Err(CliffordError::NotGradedAutomorphism(format!("dimension {d} is not 4k²")));
    }
    let expected = cl2_tensor_matrix(k);
    if f.source().labels() != expected.labels() || f.target().labels() != expected.labels() {
        return Err(CliffordError::NotGradedAutomorphism("map is not an endomorphism of Cl₂ ⊗ M_k".into()));
    }
    let phi = spread_model(k, &cl2_model_block(), false);
    let phi_inv = spread_model(k, &model_inverse_block(), true);
    let big = phi.mul(&f.matrix().mul(&phi_inv));
    let n = 2 * k;
    let images = (0..n * n)
        .map(|col| {
            let mut m = ComplexMatrix::zeros(n, n);
            for r in 0..n {
                for c in 0..n {
                    m[(r, c)] = big[(r * n + c, col)].clone();
                }
            }
            m
        })
        .collect();
    Ok(MatrixModelMap { k, images })
}

/// Recovers (u, x, α) with Θ(u, x, α) = f.
///
/// u is read from f(e₁⊗1) = [[0, u*], [u, 0]]; after stripping Ad_ũ the map either fixes or
/// swaps the two diagonal blocks, which gives x; the remaining block action is Ad_w.
pub fn decompose_cl2_automorphism(f: &GradedLinearMap) -> Result<Cl2AutDecomposition, CliffordError> {
    let model = matrix_model(f)?;
    model.check()?;
    let k = model.k;
    let s = model.apply(&block_swap(k));
    let zero = ComplexMatrix::zeros(k, k);
    if s.block(0, 0, k, k) != zero || s.block(k, k, k, k) != zero {
        return Err(CliffordError::NotGradedAutomorphism("image of e₁⊗1 is not off-diagonal".into()));
    }
    let u = s.block(k, 0, k, k);
    if s.block(0, k, k, k) != u.adjoint() || !u.is_unitary() {
        return Err(CliffordError::NotGradedAutomorphism("image of e₁⊗1 is not of the form [[0,u*],[u,0]]".into()));
    }
    let ut = block_diag(&ComplexMatrix::identity(k), &u);
    let uta = ut.adjoint();
    let stripped = |x: &ComplexMatrix| uta.mul(&model.apply(x)).mul(&ut);
    let top = block_diag(&ComplexMatrix::identity(k), &zero);
    let p = stripped(&top);
    let x = if p == top {
        0
    } else if p == block_diag(&zero, &ComplexMatrix::identity(k)) {
        1
    } else {
        return Err(CliffordError::NotGradedAutomorphism("diagonal blocks are neither fixed nor swapped".into()));
    };
    let n = 2 * k;
    let alpha: Vec<ComplexMatrix> = (0..k * k)
        .map(|a| {
            let mut e = ComplexMatrix::zeros(n, n);
            e[(a / k, a % k)] = GaussianRational::one();
            let img = stripped(&e);
            if x == 0 {
                img.block(0, 0, k, k)
            } else {
                img.block(k, k, k, k)
            }
        })
        .collect();
    let w = normalize_phase(&implementing_unitary(k, &alpha)?);
    let rebuilt = theta(&u, x, &w)?;
    if rebuilt.matrix() != f.matrix() {
        return Err(CliffordError::NotGradedAutomorphism("reconstruction mismatch".into()));
    }
    Ok(Cl2AutDecomposition { u, x, alpha_unitary: w })
}

/// Finds a unitary w with w·E_ij·w* = alpha\[i·k + j\].
///
/// alpha(E_ij)\[r\]\[c\] = w_ri·conj(w_cj), so fixing (c, j) gives w up to the scalar conj(w_cj),
/// whose modulus² is the diagonal entry alpha(E_jj)\[c\]\[c\].
fn implementing_unitary(k: usize, alpha: &[ComplexMatrix]) -> Result<ComplexMatrix, CliffordError> {
    let mut best: Option<(bool, BigInt, usize, usize)> = None;
    for j in 0..k {
        let p = &alpha[j * k + j];
        for c in 0..k {
            let n = &p[(c, c)];
            if n.is_zero() {
                continue;
            }
            if !n.im.is_zero() || n.re.is_negative() {
                return Err(CliffordError::NotGradedAutomorphism("α(E_jj) is not a projection".into()));
            }
            let square = rational_sqrt(&n.re).is_some();
            let height = n.re.numer() * n.re.denom();
            let better = match &best {
                None => true,
                Some((sq, h, _, _)) => (square && !sq) || (square == *sq && height < *h),
            };
            if better {
                best = Some((square, height, c, j));
            }
        }
    }
    let (_, _, c, j) = best.ok_or_else(|| CliffordError::NotGradedAutomorphism("α is zero".into()))?;
    let norm = alpha[j * k + j][(c, c)].re.clone();
    let t = gaussian_with_norm(&norm)
        .ok_or_else(|| CliffordError::NotGradedAutomorphism("α is not implemented by a Q[i] unitary".into()))?;
    let scale = t.conj().inv().expect("nonzero");
    let mut w = ComplexMatrix::zeros(k, k);
    for r in 0..k {
        for i in 0..k {
            w[(r, i)] = &alpha[i * k + j][(r, c)] * &scale;
        }
    }
    if !w.is_unitary() {
        return Err(CliffordError::NotGradedAutomorphism("α is not an inner automorphism".into()));
    }
    Ok(w)
}

/// Multiplies w by a phase so that the first entry (column-major) of rational modulus is
/// positive real. When no entry has rational modulus w is returned unchanged.
pub fn normalize_phase(w: &ComplexMatrix) -> ComplexMatrix {
    for c in 0..w.cols() {
        for r in 0..w.rows() {
            let z = &w[(r, c)];
            if z.is_zero() {
                continue;
            }
            if let Some(m) = rational_sqrt(&z.norm_sqr()) {
                let phase = z.conj().scale(&m.recip());
                return w.scale(&phase);
            }
        }
    }
    w.clone()
}

/// w₁ = λ·w₂ for a scalar λ (necessarily of modulus 1 when both are unitary).
pub fn equal_up_to_phase(w1: &ComplexMatrix, w2: &ComplexMatrix) -> bool {
    if w1.rows() != w2.rows() || w1.cols() != w2.cols() {
        return false;
    }
    let mut lambda: Option<GaussianRational> = None;
    for r in 0..w1.rows() {
        for c in 0..w1.cols() {
            let (a, b) = (&w1[(r, c)], &w2[(r, c)]);
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {
                    let l = a / b;
                    if lambda.get_or_insert_with(|| l.clone()) != &l {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    lambda.is_some()
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer(), q.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
}

/// A Gaussian rational t with |t|² = q, or `None` when q is not a sum of two rational squares.
pub fn gaussian_with_norm(q: &BigRational) -> Option<GaussianRational> {
    if q.is_zero() {
        return Some(GaussianRational::zero());
    }
    if let Some(r) = rational_sqrt(q) {
        return Some(GaussianRational::real(r));
    }
    let d = q.denom().clone();
    let (a, b) = sum_of_two_squares(&(q.numer() * &d))?;
    Some(GaussianRational::new(BigRational::new(a, d.clone()), BigRational::new(b, d)))
}

fn pow_mod(b: &BigInt, e: &BigInt, m: &BigInt) -> BigInt {
    b.modpow(e, m)
}

/// a² + b² = p for a prime p ≡ 1 mod 4, by the Hermite–Serret descent.
fn prime_as_two_squares(p: &BigInt) -> (BigInt, BigInt) {
    let minus_one = p - 1u32;
    let e = &minus_one / 4u32;
    let mut q = BigInt::from(2);
    let root = loop {
        let r = pow_mod(&q, &e, p);
        if (&r * &r).mod_floor(p) == minus_one {
            break r;
        }
        q += 1u32;
    };
    let (mut a, mut b) = (p.clone(), root);
    while &b * &b > *p {
        let r = a.mod_floor(&b);
        a = b;
        b = r;
    }
    let rest = p - &b * &b;
    (b, rest.sqrt())
}

/// Integers a, b with a² + b² = n ≥ 0, by factoring n.
pub fn sum_of_two_squares(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_negative() {
        return None;
    }
    if n.is_zero() {
        return Some((BigInt::zero(), BigInt::zero()));
    }
    let mul = |(a, b): (BigInt, BigInt), (c, d): (BigInt, BigInt)| (&a * &c - &b * &d, &a * &d + &b * &c);
    let mut acc = (BigInt::one(), BigInt::zero());
    let mut rest = n.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            acc = mul(acc, prime_power_as_two_squares(&p, e)?);
        }
        p += if p == BigInt::from(2) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        acc = mul(acc, prime_power_as_two_squares(&rest, 1)?);
    }
    Some((acc.0.abs(), acc.1.abs()))
}

fn prime_power_as_two_squares(p: &BigInt, e: u32) -> Option<(BigInt, BigInt)> {
    let r = p.mod_floor(&BigInt::from(4));
    if r == BigInt::from(3) {
        return (e % 2 == 0).then(|| (p.pow(e / 2), BigInt::zero()));
    }
    let base = if *p == BigInt::from(2) { (BigInt::one(), BigInt::one()) } else { prime_as_two_squares(p) };
    let mut acc = (BigInt::one(), BigInt::zero());
    for _ in 0..e {
        acc = (&acc.0 * &base.0 - &acc.1 * &base.1, &acc.0 * &base.1 + &acc.1 * &base.0);
    }
    Some(acc)
}

const PYTHAGOREAN: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];

/// A random k×k unitary with Q\[i\] entries: a signed permutation with quarter-turn phases,
/// composed with a few rational Givens rotations and rational phases.
pub fn random_unitary<R: Rng + ?Sized>(k: usize, rng: &mut R) -> ComplexMatrix {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let quarter = [GaussianRational::one(), GaussianRational::i(), -GaussianRational::one(), -GaussianRational::i()];
    let mut w = ComplexMatrix::zeros(k, k);
    for (i, &p) in perm.iter().enumerate() {
        w[(i, p)] = quarter[rng.gen_range(0..4)].clone();
    }
    if k < 2 {
        if rng.gen_bool(0.5) {
            let (a, b, c) = PYTHAGOREAN[rng.gen_range(0..3)];
            w = w.scale(&GaussianRational::from_parts(a, b, c));
        }
        return w;
    }
    for _ in 0..rng.gen_range(1..=2) {
        let p = rng.gen_range(0..k);
        let q = (p + rng.gen_range(1..k)) % k;
        let (a, b, c) = PYTHAGOREAN[rng.gen_range(0..3)];
        let mut g = ComplexMatrix::identity(k);
        g[(p, p)] = GaussianRational::from_ratio(a, c);
        g[(q, q)] = GaussianRational::from_ratio(a, c);
        g[(p, q)] = GaussianRational::from_ratio(-b, c);
        g[(q, p)] = GaussianRational::from_ratio(b, c);
        w = g.mul(&w);
    }
    if rng.gen_bool(0.5) {
        let mut d = ComplexMatrix::identity(k);
        let i = rng.gen_range(0..k);
        d[(i, i)] = GaussianRational::from_parts(3, 4, 5);
        w = d.mul(&w);
    }
    w
}
