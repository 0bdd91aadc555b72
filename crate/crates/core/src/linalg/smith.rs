//! Smith normal form over Z with unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// `u · a · v = diag(d, 0, …)` with `u`, `v` unimodular.
///
/// The inverses of both transforms are carried along so that callers can move between
/// the original and the diagonal bases in either direction without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors, each positive and dividing the next.
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.d.len()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row\[dst\] += c · row\[src\]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    /// col\[dst\] += c · col\[src\]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
        self.v_inv.add_row_multiple(src, dst, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Clears row and column `t` outside the pivot; returns false if a smaller remainder
    /// appeared and the pivot has to be chosen again.
    fn clear_cross(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        let p = self.a[(t, t)].clone();
        for i in t + 1..rows {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = self.a[(i, t)].div_floor(&p);
            self.add_row(i, t, &-q);
            if !self.a[(i, t)].is_zero() {
                return false;
            }
        }
        for j in t + 1..cols {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = self.a[(t, j)].div_floor(&p);
            self.add_col(j, t, &-q);
            if !self.a[(t, j)].is_zero() {
                return false;
            }
        }
        true
    }
}

/// Computes the Smith normal form `u·a·v = diag(d₁, …, d_r, 0, …)` with `dᵢ | dᵢ₊₁`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut d = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = r.a.min_abs_entry(t) else { break };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            if !r.clear_cross(t) {
                let (pi, pj) = r.a.min_abs_entry(t).expect("nonzero block");
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let p = r.a[(t, t)].clone();
            match r.a.divides_block(t + 1, &p) {
                Some((i, _)) => r.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        d.push(r.a[(t, t)].clone());
    }
    SmithForm { d, u: r.u, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}

/// Solves `a·x = b` over Z; `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length must equal row count");
    let snf = smith_normal_form(a);
    let y = snf.u.mul_vec(b);
    let r = snf.rank();
    let mut z = vec![BigInt::zero(); a.cols()];
    for (i, yi) in y.iter().enumerate() {
        if i < r {
            let (q, rem) = yi.div_rem(&snf.d[i]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}
