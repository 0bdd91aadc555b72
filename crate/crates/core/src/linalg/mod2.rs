//! Linear algebra over Z/2.

/// Solves `a·x = b` over Z/2. `a` is given by rows; returns `None` when inconsistent.
pub fn mod2_solve(a: &[Vec<bool>], b: &[bool]) -> Option<Vec<bool>> {
    assert_eq!(a.len(), b.len(), "right-hand side length must equal row count");
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<(Vec<bool>, bool)> = a.iter().cloned().zip(b.iter().copied()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i].0[c]) else { continue };
        rows.swap(r, p);
        let (pivot_row, pivot_rhs) = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.0[c] {
                for (x, y) in row.0.iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
                row.1 ^= pivot_rhs;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|(_, rhs)| *rhs) {
        return None;
    }
    let mut x = vec![false; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i].1;
    }
    Some(x)
}

/// Rank over Z/2.
pub fn mod2_rank(a: &[Vec<bool>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c] {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= *y;
                }
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(mod2_solve(&[vec![true]], &[true]), Some(vec![true]));
        assert_eq!(mod2_solve(&[vec![false]], &[true]), None);
        assert_eq!(mod2_solve(&[vec![true, true], vec![true, true]], &[true, false]), None);
        assert_eq!(mod2_rank(&[vec![true, true], vec![true, true]]), 1);
    }

    proptest! {
        #[test]
        fn solution_satisfies_or_none_exists(bits in proptest::collection::vec(any::<bool>(), 12), rhs in proptest::collection::vec(any::<bool>(), 3)) {
            let a: Vec<Vec<bool>> = bits.chunks(4).map(<[bool]>::to_vec).collect();
            let apply = |x: &[bool]| -> Vec<bool> {
                a.iter().map(|row| row.iter().zip(x).fold(false, |acc, (p, q)| acc ^ (*p & *q))).collect()
            };
            match mod2_solve(&a, &rhs) {
                Some(x) => prop_assert_eq!(apply(&x), rhs),
                None => {
                    let any = (0u32..16).any(|m| {
                        let x: Vec<bool> = (0..4).map(|i| m >> i & 1 == 1).collect();
                        apply(&x) == rhs
                    });
                    prop_assert!(!any);
                }
            }
        }
    }
}
