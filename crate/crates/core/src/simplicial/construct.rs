//! Generators for catalog triangulations.
//!
//! The projective spaces are built as the barycentric subdivision of the cross-polytope
//! boundary modulo the antipodal map, then shrunk by edge contractions that satisfy the
//! link condition. The shipped RP³ and RP⁴ data are the output of these routines.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Simplex, SimplicialComplex};

/// ∂Δⁿ⁺¹, a triangulated n-sphere on n + 2 vertices.
pub fn sphere(n: usize) -> SimplicialComplex {
    let facets = (0..n + 2).map(|skip| (0..n + 2).filter(|&v| v != skip).collect());
    SimplicialComplex::from_faces_unchecked(n + 2, facets)
}

/// The full simplex Δⁿ.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_faces_unchecked(n + 1, [(0..=n).collect()])
}

/// RPⁿ as sd(∂β_{n+1}) modulo x ↦ −x, before any simplification.
///
/// A face of the cross-polytope is a set of signed coordinates with distinct indices; a facet
/// of the subdivision is a maximal chain of faces, i.e. an ordering of the coordinates with a
/// sign for each.
pub fn projective_space_subdivided(n: usize) -> SimplicialComplex {
    let d = n + 1;
    // a face is encoded by (support mask, sign mask ⊆ support)
    let canonical = |support: u32, signs: u32| -> (u32, u32) {
        // orbit representative: lowest coordinate carries sign +
        let low = support & support.wrapping_neg();
        if signs & low != 0 {
            (support, signs ^ support)
        } else {
            (support, signs)
        }
    };
    let mut labels: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for support in 1u32..(1 << d) {
        let mut signs = support;
        loop {
            let key = canonical(support, signs);
            let next = labels.len();
            labels.entry(key).or_insert(next);
            if signs == 0 {
                break;
            }
            signs = (signs - 1) & support;
        }
    }
    let mut facets = BTreeSet::new();
    for perm in permutations(d) {
        for sign_choice in 0u32..(1 << d) {
            let (mut support, mut signs) = (0u32, 0u32);
            let mut f: Simplex = Vec::with_capacity(d);
            for &c in &perm {
                support |= 1 << c;
                signs |= sign_choice & (1 << c);
                f.push(labels[&canonical(support, signs)]);
            }
            f.sort_unstable();
            facets.insert(f);
        }
    }
    SimplicialComplex::from_faces_unchecked(labels.len(), facets)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Greedily contracts edges of a pure complex while the link condition
/// `lk(a) ∩ lk(b) = lk(ab)` holds, then renumbers the surviving vertices as `0..n`.
///
/// Edges are tried in lexicographic order of the current labels, so the result is deterministic.
pub fn contract_edges(x: &SimplicialComplex) -> SimplicialComplex {
    let dim = x.dimension();
    let mut facets: Vec<Simplex> = x.simplices(dim).to_vec();
    'outer: loop {
        let mut star: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                star.entry(v).or_default().push(i);
            }
        }
        let mut edges = BTreeSet::new();
        for f in &facets {
            for i in 0..f.len() {
                for j in i + 1..f.len() {
                    edges.insert((f[i], f[j]));
                }
            }
        }
        for &(a, b) in &edges {
            if link_condition(&facets, &star, a, b) {
                facets = facets
                    .into_iter()
                    .filter(|f| !(f.contains(&a) && f.contains(&b)))
                    .map(|f| {
                        let mut g: Simplex = f.into_iter().map(|v| if v == b { a } else { v }).collect();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                continue 'outer;
            }
        }
        break;
    }
    relabel(&facets)
}

fn faces_of(f: &[usize], skip: &[usize], into: &mut HashSet<Simplex>) {
    let rest: Vec<usize> = f.iter().copied().filter(|v| !skip.contains(v)).collect();
    for mask in 0u64..(1u64 << rest.len()) {
        into.insert((0..rest.len()).filter(|i| mask >> i & 1 == 1).map(|i| rest[i]).collect());
    }
}

fn link_condition(facets: &[Simplex], star: &BTreeMap<usize, Vec<usize>>, a: usize, b: usize) -> bool {
    let link = |v: usize| {
        let mut set = HashSet::new();
        for &i in &star[&v] {
            faces_of(&facets[i], &[v], &mut set);
        }
        set
    };
    let (la, lb) = (link(a), link(b));
    let mut lab = HashSet::new();
    for &i in &star[&a] {
        if facets[i].contains(&b) {
            faces_of(&facets[i], &[a, b], &mut lab);
        }
    }
    la.iter().filter(|s| lb.contains(*s)).count() == lab.len()
}

fn relabel(facets: &[Simplex]) -> SimplicialComplex {
    let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
    let map: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let gens = facets.iter().map(|f| {
        let mut g: Simplex = f.iter().map(|v| map[v]).collect();
        g.sort_unstable();
        g
    });
    SimplicialComplex::from_faces_unchecked(used.len(), gens)
}

/// Klein bottle from an `m × n` grid: columns glued straight, rows glued with a reflection.
/// `None` when the gluing identifies two corners of a triangle.
pub fn klein_grid(m: usize, n: usize) -> Option<SimplicialComplex> {
    let class = |i: usize, j: usize| -> usize {
        let (i, j) = if j == n { ((m - i) % m, 0) } else { (i % m, j) };
        i * n + j
    };
    let mut gens = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let (a, b, c, d) = (class(i, j), class(i + 1, j), class(i, j + 1), class(i + 1, j + 1));
            for tri in [[a, b, d], [a, c, d]] {
                let mut t = tri.to_vec();
                t.sort_unstable();
                if t[0] == t[1] || t[1] == t[2] {
                    return None;
                }
                gens.push(t);
            }
        }
    }
    Some(SimplicialComplex::from_faces_unchecked(m * n, gens))
}

/// Checks that a pure 2-complex is a closed surface: every edge lies in exactly two
/// triangles and every vertex link is a single cycle.
pub fn is_closed_surface(x: &SimplicialComplex) -> bool {
    if x.dimension() != 2 {
        return false;
    }
    let tris = x.simplices(2);
    let mut edge_count: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in tris {
        for (p, q) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *edge_count.entry((p, q)).or_default() += 1;
        }
    }
    if x.simplices(1).iter().any(|e| edge_count.get(&(e[0], e[1])) != Some(&2)) {
        return false;
    }
    (0..x.n_vertices()).all(|v| {
        let link: Vec<(usize, usize)> = tris
            .iter()
            .filter(|t| t.contains(&v))
            .map(|t| {
                let r: Vec<usize> = t.iter().copied().filter(|&u| u != v).collect();
                (r[0], r[1])
            })
            .collect();
        if link.is_empty() {
            return false;
        }
        // walk the cycle starting from the first link edge
        let (start, mut cur) = link[0];
        let mut prev = start;
        let mut steps = 1;
        while cur != start {
            let next = link.iter().find_map(|&(p, q)| {
                if p == cur && q != prev {
                    Some(q)
                } else if q == cur && p != prev {
                    Some(p)
                } else {
                    None
                }
            });
            match next {
                Some(nx) => {
                    prev = cur;
                    cur = nx;
                    steps += 1;
                }
                None => return false,
            }
            if steps > link.len() {
                return false;
            }
        }
        steps == link.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spheres_have_expected_euler_characteristic() {
        for n in 1..=4 {
            let s = sphere(n);
            assert_eq!(s.euler_characteristic(), if n % 2 == 0 { 2 } else { 0 });
            assert_eq!(s.dimension(), n);
        }
    }

    #[test]
    fn subdivided_projective_plane() {
        let rp2 = projective_space_subdivided(2);
        assert_eq!(rp2.n_vertices(), 13);
        assert_eq!(rp2.count(2), 24);
        assert_eq!(rp2.euler_characteristic(), 1);
        assert!(is_closed_surface(&rp2));
        let small = contract_edges(&rp2);
        assert!(is_closed_surface(&small));
        assert_eq!(small.euler_characteristic(), 1);
        assert!(small.n_vertices() < 13);
    }

    #[test]
    fn subdivided_projective_space_euler() {
        assert_eq!(projective_space_subdivided(3).euler_characteristic(), 0);
        assert_eq!(projective_space_subdivided(4).n_vertices(), 121);
    }

    #[test]
    fn klein_grid_is_surface() {
        let k = klein_grid(3, 3).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        assert!(is_closed_surface(&k));
    }

    #[test]
    fn torus_grid_check_rejects_disk() {
        assert!(!is_closed_surface(&simplex(2)));
        assert!(is_closed_surface(&sphere(2)));
    }
}
