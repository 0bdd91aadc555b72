use super::{Simplex, SimplicialComplex};

/// Staircase triangulation of |x| × |y|.
///
/// Vertex `(a, b)` gets index `a * y.n_vertices() + b`, so the lexicographic order on pairs
/// is the numeric order. Each pair of maximal simplices contributes its monotone lattice paths.
pub fn product_complex(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    let ny = y.n_vertices();
    let xs = x.maximal_simplices();
    let ys = y.maximal_simplices();
    let mut gens = Vec::new();
    for s in &xs {
        for t in &ys {
            staircases(s, t, ny, &mut gens);
        }
    }
    SimplicialComplex::from_faces_unchecked(x.n_vertices() * ny, gens)
}

fn staircases(s: &[usize], t: &[usize], ny: usize, out: &mut Vec<Simplex>) {
    let (p, q) = (s.len() - 1, t.len() - 1);
    // a path is the set of steps (out of p + q) that advance in the x direction
    for mask in 0u64..(1u64 << (p + q)) {
        if mask.count_ones() as usize != p {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let mut path = Vec::with_capacity(p + q + 1);
        path.push(s[0] * ny + t[0]);
        for step in 0..p + q {
            if mask >> step & 1 == 1 {
                i += 1;
            } else {
                j += 1;
            }
            path.push(s[i] * ny + t[j]);
        }
        out.push(path);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::RawComplex;

    fn complex(n: usize, s: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::validate(&RawComplex { vertices: n, maximal_simplices: s.iter().map(|x| x.to_vec()).collect() })
            .unwrap()
    }

    #[test]
    fn square() {
        let e = complex(2, &[&[0, 1]]);
        let sq = product_complex(&e, &e);
        assert_eq!(sq.simplices(2), &[vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(sq.f_vector(), vec![4, 5, 2]);
    }

    #[test]
    fn torus_from_circles() {
        let c = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let t = product_complex(&c, &c);
        assert_eq!(t.f_vector(), vec![9, 27, 18]);
        assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn prism_counts() {
        let tri = complex(3, &[&[0, 1, 2]]);
        let e = complex(2, &[&[0, 1]]);
        let a = product_complex(&tri, &e);
        let b = product_complex(&e, &tri);
        assert_eq!(a.count(3), 3);
        assert_eq!(a.f_vector(), b.f_vector());
        assert_eq!(a.euler_characteristic(), 1);
    }
}
