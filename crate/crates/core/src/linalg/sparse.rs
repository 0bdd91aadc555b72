use num_bigint::BigInt;
use num_traits::Zero;

use super::IntMatrix;

/// Row-major sparse integer matrix; each row holds `(column, value)` pairs sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(usize, BigInt)>>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: vec![Vec::new(); rows] }
    }

    /// Builds from unsorted row contents; zero values are dropped and duplicates summed.
    pub fn from_row_entries(cols: usize, rows: Vec<Vec<(usize, BigInt)>>) -> Self {
        let entries = rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|(c, _)| *c);
                let mut merged: Vec<(usize, BigInt)> = Vec::with_capacity(row.len());
                for (c, v) in row {
                    assert!(c < cols, "column index out of range");
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect::<Vec<_>>();
        SparseIntMatrix { rows: entries.len(), cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, BigInt)] {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.entries[i][k].1.clone())
            .unwrap_or_default()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        self.entries
            .iter()
            .map(|row| row.iter().filter(|(c, _)| !v[*c].is_zero()).map(|(c, x)| x * &v[*c]).sum())
            .collect()
    }

    /// Sparse product `self · other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .flat_map(|(k, a)| other.entries[*k].iter().map(move |(j, b)| (*j, a * b)))
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_row_entries(other.cols, rows)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row {
                m[(i, *j)] = v.clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Vec::is_empty)
    }
}
