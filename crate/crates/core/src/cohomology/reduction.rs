//! Algebraic Gaussian elimination of a cochain complex.
//!
//! Each step picks a unit entry λ of some δᵏ, joining a k-cell b to a (k+1)-cell c, and
//! removes both. The remaining complex is chain-homotopy equivalent to the original; the
//! recorded steps give the chain maps in both directions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::simplicial::{BoundaryRing, SimplicialComplex};

pub(crate) trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn unit_inverse(&self) -> Option<Self>;
    fn from_bigint(v: &BigInt) -> Self;
    fn ring() -> BoundaryRing;
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }
    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }
    fn ring() -> BoundaryRing {
        BoundaryRing::Integers
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Gf2(pub bool);

impl Scalar for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn add(&self, other: &Self) -> Self {
        Gf2(self.0 ^ other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        Gf2(self.0 & other.0)
    }
    fn neg(&self) -> Self {
        *self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }
    fn from_bigint(v: &BigInt) -> Self {
        Gf2(v.bit(0))
    }
    fn ring() -> BoundaryRing {
        BoundaryRing::Mod2
    }
}

#[derive(Debug)]
struct Step<R> {
    k: usize,
    b: usize,
    c: usize,
    lam_inv: R,
    /// row c of δᵏ without b, at the time of the step
    beta: Vec<(usize, R)>,
    /// column b of δᵏ without c
    gamma: Vec<(usize, R)>,
}

#[derive(Clone, Copy)]
enum Candidate {
    Row(usize, usize),
    Col(usize, usize),
}

#[derive(Debug)]
pub(crate) struct Reduction<R> {
    sizes: Vec<usize>,
    alive: Vec<Vec<bool>>,
    /// `rows[k][c]`: entries of δᵏ in row c (a (k+1)-simplex), keyed by k-simplex
    rows: Vec<Vec<BTreeMap<usize, R>>>,
    cols: Vec<Vec<BTreeSet<usize>>>,
    steps: Vec<Step<R>>,
}

impl<R: Scalar> Reduction<R> {
    pub(crate) fn new(x: &SimplicialComplex) -> Self {
        let dim = x.dimension();
        let sizes: Vec<usize> = (0..=dim).map(|k| x.count(k)).collect();
        let mut rows = Vec::with_capacity(dim);
        let mut cols = Vec::with_capacity(dim);
        for k in 0..dim {
            let m = x.coboundary_unchecked(k, R::ring());
            let mut rk: Vec<BTreeMap<usize, R>> = vec![BTreeMap::new(); sizes[k + 1]];
            let mut ck: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); sizes[k]];
            for (i, row) in rk.iter_mut().enumerate() {
                for (j, v) in m.row(i) {
                    let v = R::from_bigint(v);
                    if !v.is_zero() {
                        row.insert(*j, v);
                        ck[*j].insert(i);
                    }
                }
            }
            rows.push(rk);
            cols.push(ck);
        }
        let mut red = Reduction { alive: sizes.iter().map(|&n| vec![true; n]).collect(), sizes, rows, cols, steps: Vec::new() };
        red.run();
        red
    }

    fn run(&mut self) {
        let mut stack = Vec::new();
        for k in (0..self.rows.len()).rev() {
            stack.extend((0..self.cols[k].len()).map(|b| Candidate::Col(k, b)));
            stack.extend((0..self.rows[k].len()).map(|c| Candidate::Row(k, c)));
        }
        loop {
            while let Some(cand) = stack.pop() {
                let pivot = match cand {
                    Candidate::Col(k, b) if self.cols[k][b].len() == 1 => {
                        let c = *self.cols[k][b].iter().next().unwrap();
                        Some((k, b, c))
                    }
                    Candidate::Row(k, c) if self.rows[k][c].len() == 1 => {
                        let b = *self.rows[k][c].keys().next().unwrap();
                        Some((k, b, c))
                    }
                    _ => None,
                };
                if let Some((k, b, c)) = pivot {
                    if self.rows[k][c][&b].unit_inverse().is_some() {
                        self.eliminate(k, b, c, &mut stack);
                    }
                }
            }
            match self.markowitz_pivot() {
                Some((k, b, c)) => self.eliminate(k, b, c, &mut stack),
                None => break,
            }
        }
    }

    /// Unit entry minimizing (|row| − 1)(|col| − 1).
    fn markowitz_pivot(&self) -> Option<(usize, usize, usize)> {
        let mut best: Option<(usize, (usize, usize, usize))> = None;
        for (k, rows) in self.rows.iter().enumerate() {
            for (c, row) in rows.iter().enumerate() {
                for (&b, v) in row {
                    if v.unit_inverse().is_none() {
                        continue;
                    }
                    let cost = (row.len() - 1) * (self.cols[k][b].len() - 1);
                    if best.as_ref().is_none_or(|(bc, _)| cost < *bc) {
                        best = Some((cost, (k, b, c)));
                    }
                }
            }
        }
        best.map(|(_, p)| p)
    }

    fn eliminate(&mut self, k: usize, b: usize, c: usize, stack: &mut Vec<Candidate>) {
        let lam_inv = self.rows[k][c][&b].unit_inverse().expect("pivot is a unit");
        let beta: Vec<(usize, R)> = self.rows[k][c].iter().filter(|(&s, _)| s != b).map(|(&s, v)| (s, v.clone())).collect();
        let gamma: Vec<(usize, R)> =
            self.cols[k][b].iter().filter(|&&r| r != c).map(|&r| (r, self.rows[k][r][&b].clone())).collect();
        // D ← D − γ λ⁻¹ β
        for (r, g) in &gamma {
            let factor = g.mul(&lam_inv).neg();
            for (s, bv) in &beta {
                let delta = factor.mul(bv);
                let row = &mut self.rows[k][*r];
                let updated = match row.get(s) {
                    Some(old) => old.add(&delta),
                    None => delta,
                };
                if updated.is_zero() {
                    row.remove(s);
                    self.cols[k][*s].remove(r);
                } else {
                    row.insert(*s, updated);
                    self.cols[k][*s].insert(*r);
                }
            }
            stack.push(Candidate::Row(k, *r));
        }
        for r in std::mem::take(&mut self.cols[k][b]) {
            self.rows[k][r].remove(&b);
            stack.push(Candidate::Row(k, r));
        }
        for s in std::mem::take(&mut self.rows[k][c]).into_keys() {
            self.cols[k][s].remove(&c);
            stack.push(Candidate::Col(k, s));
        }
        if k > 0 {
            for s in std::mem::take(&mut self.rows[k - 1][b]).into_keys() {
                self.cols[k - 1][s].remove(&b);
                stack.push(Candidate::Col(k - 1, s));
            }
        }
        if k + 1 < self.rows.len() {
            for r in std::mem::take(&mut self.cols[k + 1][c]) {
                self.rows[k + 1][r].remove(&c);
                stack.push(Candidate::Row(k + 1, r));
            }
        }
        self.alive[k][b] = false;
        self.alive[k + 1][c] = false;
        self.steps.push(Step { k, b, c, lam_inv, beta, gamma });
    }

    pub(crate) fn dimension(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Surviving k-cells in increasing order.
    pub(crate) fn alive(&self, k: usize) -> Vec<usize> {
        (0..self.sizes[k]).filter(|&i| self.alive[k][i]).collect()
    }

    /// Residual δᵏ between surviving cells as dense rows (rows: alive k+1, cols: alive k).
    pub(crate) fn residual(&self, k: usize) -> Vec<Vec<R>> {
        let src = self.alive(k);
        if k >= self.rows.len() {
            return Vec::new();
        }
        let pos: BTreeMap<usize, usize> = src.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        self.alive(k + 1)
            .into_iter()
            .map(|c| {
                let mut row = vec![R::zero(); src.len()];
                for (s, v) in &self.rows[k][c] {
                    row[pos[s]] = v.clone();
                }
                row
            })
            .collect()
    }

    /// The projection onto the reduced complex, as a dense vector over all k-cells that is
    /// zero on eliminated cells.
    pub(crate) fn project(&self, k: usize, z: &[R]) -> Vec<R> {
        let mut z = z.to_vec();
        for st in &self.steps {
            if st.k == k {
                z[st.b] = R::zero();
            } else if st.k + 1 == k {
                let zc = std::mem::replace(&mut z[st.c], R::zero());
                if !zc.is_zero() {
                    let f = st.lam_inv.mul(&zc);
                    for (e, g) in &st.gamma {
                        z[*e] = z[*e].add(&g.mul(&f).neg());
                    }
                }
            }
        }
        z
    }

    /// The inclusion of the reduced complex; `x` must vanish on eliminated cells.
    pub(crate) fn include(&self, k: usize, x: &[R]) -> Vec<R> {
        let mut x = x.to_vec();
        for st in self.steps.iter().rev() {
            if st.k == k {
                let mut acc = R::zero();
                for (s, bv) in &st.beta {
                    if !x[*s].is_zero() {
                        acc = acc.add(&bv.mul(&x[*s]));
                    }
                }
                x[st.b] = st.lam_inv.mul(&acc).neg();
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtin;

    #[test]
    fn circle_reduces_to_point_and_loop() {
        let x = builtin("S1").unwrap();
        let r: Reduction<BigInt> = Reduction::new(&x);
        assert_eq!(r.alive(0).len(), 1);
        assert_eq!(r.alive(1).len(), 1);
        assert!(r.residual(0).iter().flatten().all(|v| Scalar::is_zero(v)));
    }

    #[test]
    fn chain_maps_are_compatible_with_coboundaries() {
        let x = builtin("RP2").unwrap();
        let r: Reduction<BigInt> = Reduction::new(&x);
        let d0 = x.coboundary_matrix(0, BoundaryRing::Integers).unwrap();
        // projecting a coboundary gives the residual coboundary of the projection
        let v: Vec<BigInt> = (0..6).map(|i| BigInt::from(i * i - 3)).collect();
        let lhs = r.project(1, &d0.mul_vec(&v));
        let pv = r.project(0, &v);
        let res = r.residual(0);
        let alive0 = r.alive(0);
        let alive1 = r.alive(1);
        for (row, &c) in res.iter().zip(&alive1) {
            let acc: BigInt = row.iter().zip(&alive0).map(|(a, &s)| a * &pv[s]).sum();
            assert_eq!(acc, lhs[c]);
        }
        // inclusion of surviving cocycles lands in cocycles
        let d1 = x.coboundary_matrix(1, BoundaryRing::Integers).unwrap();
        for &c in &alive1 {
            let mut e = vec![<BigInt as Zero>::zero(); x.count(1)];
            e[c] = BigInt::one();
            let lifted = r.include(1, &e);
            let residual_image: Vec<BigInt> = r.residual(1).iter().map(|row| row[alive1.iter().position(|&a| a == c).unwrap()].clone()).collect();
            let full = d1.mul_vec(&lifted);
            let alive2 = r.alive(2);
            for (i, &t) in alive2.iter().enumerate() {
                assert_eq!(full[t], residual_image[i]);
            }
            assert_eq!(r.project(1, &lifted), e);
        }
    }
}
