use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::SimplicialError;
use crate::linalg::SparseIntMatrix;

/// A simplex as its strictly increasing vertex list.
pub type Simplex = Vec<usize>;

/// `(dimension, position)` of a simplex in the sorted order of its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexIndex {
    pub dim: usize,
    pub pos: usize,
}

/// Coefficients for coboundary matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryRing {
    Integers,
    Mod2,
}

/// On-disk description: vertex count plus a list of (typically maximal) simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComplex {
    pub vertices: usize,
    pub maximal_simplices: Vec<Vec<usize>>,
}

/// A finite face-closed simplicial complex with vertices `0..n_vertices`.
///
/// Simplices of each dimension are kept in lexicographic order; that order is the
/// basis order of every cochain group.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    n_vertices: usize,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl SimplicialComplex {
    /// Validates a raw description and returns its face closure.
    pub fn validate(raw: &RawComplex) -> Result<Self, SimplicialError> {
        let mut seen = BTreeSet::new();
        for s in &raw.maximal_simplices {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(SimplicialError::MalformedTuple(s.clone()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= raw.vertices) {
                return Err(SimplicialError::VertexOutOfRange { vertex: v, n_vertices: raw.vertices });
            }
            if !seen.insert(s.clone()) {
                return Err(SimplicialError::DuplicateSimplex(s.clone()));
            }
        }
        Ok(Self::from_faces_unchecked(raw.vertices, raw.maximal_simplices.iter().cloned()))
    }

    /// Face closure of already well-formed simplices.
    pub(crate) fn from_faces_unchecked(n_vertices: usize, generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut by_dim: Vec<BTreeSet<Simplex>> = vec![(0..n_vertices).map(|v| vec![v]).collect()];
        for s in generators {
            let k = s.len();
            for mask in 1u64..(1u64 << k) {
                let face: Simplex = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim.into_iter().map(|set| set.into_iter().collect()).collect();
        let index = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        SimplicialComplex { n_vertices, simplices, index }
    }

    pub fn from_json(text: &str) -> Result<Self, SimplicialError> {
        let raw: RawComplex = serde_json::from_str(text).map_err(|e| SimplicialError::Json(e.to_string()))?;
        Self::validate(&raw)
    }

    /// Maximal simplices in the on-disk format.
    pub fn to_raw(&self) -> RawComplex {
        let maximal = self.maximal_simplices();
        RawComplex { vertices: self.n_vertices, maximal_simplices: maximal }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("complex serializes")
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Largest k with a k-simplex; 0 for the empty complex.
    pub fn dimension(&self) -> usize {
        self.simplices.iter().rposition(|l| !l.is_empty()).unwrap_or(0)
    }

    pub fn simplices(&self, k: usize) -> &[Simplex] {
        self.simplices.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dimension()).map(|k| self.count(k)).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn index_of(&self, s: &[usize]) -> Option<SimplexIndex> {
        let dim = s.len().checked_sub(1)?;
        self.index.get(dim)?.get(s).map(|&pos| SimplexIndex { dim, pos })
    }

    pub fn simplex(&self, idx: SimplexIndex) -> &[usize] {
        &self.simplices[idx.dim][idx.pos]
    }

    /// Position of a k-simplex given its vertex list; panics on a non-simplex.
    pub(crate) fn position(&self, s: &[usize]) -> usize {
        self.index[s.len() - 1][s]
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let dim = self.dimension();
        let mut out = Vec::new();
        for k in 0..=dim {
            for s in self.simplices(k) {
                let covered = k < dim
                    && (0..self.n_vertices).any(|v| {
                        if s.binary_search(&v).is_ok() {
                            return false;
                        }
                        let mut t = s.clone();
                        t.push(v);
                        t.sort_unstable();
                        self.index[k + 1].contains_key(&t)
                    });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// Matrix of δ: Cᵏ → Cᵏ⁺¹. Entry (τ, σ) is (−1)ⁱ when σ is τ with vertex i removed.
    pub fn coboundary_matrix(&self, k: usize, ring: BoundaryRing) -> Result<SparseIntMatrix, SimplicialError> {
        if k >= self.dimension() {
            return Err(SimplicialError::DegreeOutOfRange { degree: k, dimension: self.dimension() });
        }
        Ok(self.coboundary_unchecked(k, ring))
    }

    /// δᵏ for any k; the zero map when there are no (k+1)-simplices.
    pub(crate) fn coboundary_unchecked(&self, k: usize, ring: BoundaryRing) -> SparseIntMatrix {
        let rows = self
            .simplices(k + 1)
            .iter()
            .map(|tau| {
                (0..tau.len())
                    .map(|i| {
                        let mut face = tau.clone();
                        face.remove(i);
                        let sign = match ring {
                            BoundaryRing::Mod2 => 1,
                            BoundaryRing::Integers if i % 2 == 0 => 1,
                            BoundaryRing::Integers => -1,
                        };
                        (self.position(&face), BigInt::from(sign))
                    })
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_row_entries(self.count(k), rows)
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n_vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 0..self.n_vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// Disjoint union; the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let shift = self.n_vertices;
        let gens = self
            .maximal_simplices()
            .into_iter()
            .chain(other.maximal_simplices().into_iter().map(|s| s.iter().map(|v| v + shift).collect()));
        Self::from_faces_unchecked(self.n_vertices + other.n_vertices, gens)
    }

    /// Faces of codimension one of every simplex are present (internal consistency).
    pub fn is_face_closed(&self) -> bool {
        (1..=self.dimension()).all(|k| {
            self.simplices(k).iter().all(|s| {
                (0..s.len()).all(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    self.index[k - 1].contains_key(&f)
                })
            })
        })
    }
}
