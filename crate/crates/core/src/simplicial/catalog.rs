use super::construct::{klein_grid, simplex, sphere};
use super::{product_complex, SimplicialComplex, SimplicialError};

const RP3_JSON: &str = include_str!("data/rp3.json");
const RP4_JSON: &str = include_str!("data/rp4.json");

/// The vertex-minimal six-vertex projective plane.
const RP2_TRIANGLES: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 1, 5],
    [1, 2, 4],
    [2, 3, 5],
    [1, 3, 4],
    [2, 4, 5],
    [1, 3, 5],
];

/// Names accepted by [`builtin`] besides `Delta<n>` and `A+B` unions.
pub fn catalog_names() -> &'static [&'static str] {
    &["S1", "S2", "S3", "S4", "RP2", "RP3", "RP4", "T2", "T3", "Klein", "RP2xS1", "RP2xRP2"]
}

/// Looks up a catalog space.
///
/// Besides [`catalog_names`], `Delta<n>` (also `Δ<n>`) gives the full n-simplex for n ≤ 4 and
/// `A+B` the disjoint union of two catalog spaces.
pub fn builtin(name: &str) -> Result<SimplicialComplex, SimplicialError> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('+') {
        return Ok(builtin(a)?.disjoint_union(&builtin(b)?));
    }
    let unknown = || SimplicialError::UnknownName(name.to_string());
    let circle = || sphere(1);
    let rp2 = || {
        let tris = RP2_TRIANGLES.iter().map(|t| {
            let mut t = t.to_vec();
            t.sort_unstable();
            t
        });
        SimplicialComplex::from_faces_unchecked(6, tris)
    };
    let parse = |text: &str| SimplicialComplex::from_json(text).expect("embedded triangulation is valid");
    Ok(match name {
        "S1" => circle(),
        "S2" => sphere(2),
        "S3" => sphere(3),
        "S4" => sphere(4),
        "RP2" => rp2(),
        "RP3" => parse(RP3_JSON),
        "RP4" => parse(RP4_JSON),
        "T2" => product_complex(&circle(), &circle()),
        "T3" => product_complex(&product_complex(&circle(), &circle()), &circle()),
        "Klein" => klein_grid(3, 3).expect("3 × 3 grid is simplicial"),
        "RP2xS1" => product_complex(&rp2(), &circle()),
        "RP2xRP2" => product_complex(&rp2(), &rp2()),
        _ => {
            let n = name.strip_prefix("Delta").or_else(|| name.strip_prefix('Δ')).ok_or_else(unknown)?;
            let n: usize = n.parse().map_err(|_| unknown())?;
            if n > 4 {
                return Err(unknown());
            }
            simplex(n)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::construct::{contract_edges, is_closed_surface, projective_space_subdivided};

    #[test]
    fn euler_characteristics() {
        let expected = [
            ("S1", 0),
            ("S2", 2),
            ("S3", 0),
            ("S4", 2),
            ("RP2", 1),
            ("RP3", 0),
            ("RP4", 1),
            ("T2", 0),
            ("T3", 0),
            ("Klein", 0),
            ("RP2xS1", 0),
            ("RP2xRP2", 1),
        ];
        for (name, chi) in expected {
            let x = builtin(name).unwrap();
            assert_eq!(x.euler_characteristic(), chi, "{name}");
            assert!(x.dimension() <= 4);
            assert!(x.is_face_closed());
            assert_eq!(x.connected_components().len(), 1, "{name}");
        }
    }

    #[test]
    fn rp2_counts() {
        let x = builtin("RP2").unwrap();
        assert_eq!(x.f_vector(), vec![6, 15, 10]);
        assert!(is_closed_surface(&x));
        assert!(is_closed_surface(&builtin("Klein").unwrap()));
    }

    #[test]
    fn product_sizes() {
        assert_eq!(builtin("RP2xRP2").unwrap().n_vertices(), 36);
        assert_eq!(builtin("T2").unwrap().f_vector(), vec![9, 27, 18]);
    }

    #[test]
    fn unions_and_simplices() {
        let u = builtin("RP2+S1").unwrap();
        assert_eq!(u.connected_components().len(), 2);
        assert_eq!(u.n_vertices(), 9);
        assert_eq!(builtin("Delta2").unwrap().f_vector(), vec![3, 3, 1]);
        assert_eq!(builtin("Δ3").unwrap().count(3), 1);
        assert!(matches!(builtin("Delta9"), Err(SimplicialError::UnknownName(_))));
        assert!(matches!(builtin("Torus"), Err(SimplicialError::UnknownName(_))));
    }

    #[test]
    fn embedded_projective_spaces_match_generator() {
        assert_eq!(contract_edges(&projective_space_subdivided(3)), builtin("RP3").unwrap());
        assert_eq!(contract_edges(&projective_space_subdivided(4)), builtin("RP4").unwrap());
    }
}
