use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cochain::require_cocycle;
use super::reduction::{Gf2, Reduction};
use super::{CoefficientRing, Cochain, CohomologyError};
use crate::linalg::{bigint_to_json, smith_normal_form, strip_primes, AbelianPresentation, FgAbelianGroup, IntMatrix};
use crate::simplicial::SimplicialComplex;

#[derive(Debug)]
enum Solver {
    Integral {
        reduction: Arc<Reduction<BigInt>>,
        alive: Vec<usize>,
        /// rows of V⁻¹ past the rank of the residual δᵏ: cocycle ↦ kernel coordinates
        kernel_coords: IntMatrix,
        presentation: AbelianPresentation,
        /// for Z_P: which integral generators survive, with their localized orders
        localized: Option<Localization>,
    },
    Mod2 {
        reduction: Arc<Reduction<Gf2>>,
        alive: Vec<usize>,
    },
}

#[derive(Debug)]
struct Localization {
    primes: Vec<u64>,
    keep: Vec<usize>,
}

/// `Hᵏ(X; R)` as a finitely generated abelian group with cocycle generators.
///
/// Generators are listed free ones first, then torsion in divisor-chain order, matching the
/// coordinates returned by [`CohomologyGroup::class_coordinates`]. For `Z_P` the free rank counts
/// `Z_P` summands and the torsion is coprime to `P`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    ring: CoefficientRing,
    group: FgAbelianGroup,
    generators: Vec<Cochain>,
    complex: Arc<SimplicialComplex>,
    solver: Arc<Solver>,
}

fn dense(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// `Hᵏ(x; ring)` for `0 ≤ k ≤ dim x`.
pub fn cohomology(x: &SimplicialComplex, k: usize, ring: &CoefficientRing) -> Result<CohomologyGroup, CohomologyError> {
    if k > x.dimension() {
        return Err(CohomologyError::DegreeOutOfRange { degree: k, dimension: x.dimension() });
    }
    let complex = Arc::new(x.clone());
    Ok(match ring {
        CoefficientRing::F2 => mod2_group(&complex, Arc::new(Reduction::new(x)), k),
        _ => integral_group(&complex, Arc::new(Reduction::new(x)), k, ring),
    })
}

/// Every degree `0..=dim x`, sharing one reduction of the cochain complex.
pub fn cohomology_all(x: &SimplicialComplex, ring: &CoefficientRing) -> Vec<CohomologyGroup> {
    let complex = Arc::new(x.clone());
    match ring {
        CoefficientRing::F2 => {
            let red = Arc::new(Reduction::new(x));
            (0..=x.dimension()).map(|k| mod2_group(&complex, red.clone(), k)).collect()
        }
        _ => {
            let red = Arc::new(Reduction::new(x));
            (0..=x.dimension()).map(|k| integral_group(&complex, red.clone(), k, ring)).collect()
        }
    }
}

fn mod2_group(complex: &Arc<SimplicialComplex>, reduction: Arc<Reduction<Gf2>>, k: usize) -> CohomologyGroup {
    let alive = reduction.alive(k);
    debug_assert!(reduction.residual(k).iter().flatten().all(|v| !v.0));
    let n = complex.count(k);
    let generators = alive
        .iter()
        .map(|&a| {
            let mut e = vec![Gf2(false); n];
            e[a] = Gf2(true);
            let lifted = reduction.include(k, &e);
            Cochain::from_integers(k, CoefficientRing::F2, lifted.iter().map(|b| BigInt::from(b.0 as u8)).collect())
        })
        .collect();
    CohomologyGroup {
        degree: k,
        ring: CoefficientRing::F2,
        group: FgAbelianGroup::elementary_2(alive.len()),
        generators,
        complex: complex.clone(),
        solver: Arc::new(Solver::Mod2 { reduction, alive }),
    }
}

fn integral_group(
    complex: &Arc<SimplicialComplex>,
    reduction: Arc<Reduction<BigInt>>,
    k: usize,
    ring: &CoefficientRing,
) -> CohomologyGroup {
    let alive = reduction.alive(k);
    let n_alive = alive.len();
    let below = if k == 0 { 0 } else { reduction.alive(k - 1).len() };
    let b = dense(if k < reduction.dimension() { reduction.residual(k) } else { Vec::new() }, n_alive);
    let a = if k == 0 { IntMatrix::zeros(n_alive, 0) } else { dense(reduction.residual(k - 1), below) };
    let snf_b = smith_normal_form(&b);
    let rank = snf_b.rank();
    let kernel_coords = snf_b.v_inv.select_rows(rank..n_alive);
    let kernel_basis = snf_b.v.select_cols(rank..n_alive);
    // image of δᵏ⁻¹ in kernel coordinates; the quotient is presented by its columns
    let c = kernel_coords.mul(&a);
    let presentation = AbelianPresentation::new(&c.transpose());
    let z_group = presentation.group.clone();

    let (group, localized, kept): (FgAbelianGroup, Option<Localization>, Vec<usize>) = match ring {
        CoefficientRing::ZP(primes) => {
            let mut keep: Vec<usize> = (0..z_group.free_rank).collect();
            let mut torsion = Vec::new();
            for (i, t) in z_group.torsion.iter().enumerate() {
                let s = strip_primes(t, primes);
                if !s.is_one() {
                    keep.push(z_group.free_rank + i);
                    torsion.push(s);
                }
            }
            let g = FgAbelianGroup { free_rank: z_group.free_rank, torsion };
            (g, Some(Localization { primes: primes.clone(), keep: keep.clone() }), keep)
        }
        _ => (z_group.clone(), None, (0..z_group.generator_count()).collect()),
    };

    let n = complex.count(k);
    let generators = kept
        .iter()
        .map(|&i| {
            let v = kernel_basis.mul_vec(&presentation.generator(i));
            let mut full = vec![BigInt::zero(); n];
            for (pos, val) in alive.iter().zip(v) {
                full[*pos] = val;
            }
            Cochain::from_integers(k, ring.clone(), reduction.include(k, &full))
        })
        .collect();
    CohomologyGroup {
        degree: k,
        ring: ring.clone(),
        group,
        generators,
        complex: complex.clone(),
        solver: Arc::new(Solver::Integral { reduction, alive, kernel_coords, presentation, localized }),
    }
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn generators(&self) -> &[Cochain] {
        &self.generators
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// Coordinates of the class of `z` in the generators: free coordinates first (rational for
    /// `Z_P`), then torsion coordinates reduced into `0..order`.
    pub fn class_coordinates(&self, z: &Cochain) -> Result<Vec<BigRational>, CohomologyError> {
        if z.degree() != self.degree {
            return Err(CohomologyError::DegreeMismatch { expected: self.degree, found: z.degree() });
        }
        if *z.ring() != self.ring {
            return Err(CohomologyError::RingMismatch { left: self.ring.to_string(), right: z.ring().to_string() });
        }
        require_cocycle(&self.complex, z)?;
        match self.solver.as_ref() {
            Solver::Mod2 { reduction, alive } => {
                let v: Vec<Gf2> = z.integer_values().iter().map(|b| Gf2(b.bit(0))).collect();
                let p = reduction.project(self.degree, &v);
                Ok(alive.iter().map(|&a| BigRational::from_integer(BigInt::from(p[a].0 as u8))).collect())
            }
            Solver::Integral { reduction, alive, kernel_coords, presentation, localized } => {
                let denom = z.values().iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                let scaled: Vec<BigInt> = z.values().iter().map(|v| (v * BigRational::from_integer(denom.clone())).to_integer()).collect();
                let p = reduction.project(self.degree, &scaled);
                let restricted: Vec<BigInt> = alive.iter().map(|&a| p[a].clone()).collect();
                let w = kernel_coords.mul_vec(&restricted);
                let raw = presentation.coordinates(&w);
                match localized {
                    None => Ok(raw.into_iter().map(BigRational::from_integer).collect()),
                    Some(loc) => Ok(localize(&self.group, loc, &raw, &denom)),
                }
            }
        }
    }

    /// True when `z` is a coboundary.
    pub fn is_trivial_class(&self, z: &Cochain) -> Result<bool, CohomologyError> {
        Ok(self.class_coordinates(z)?.iter().all(Zero::is_zero))
    }

    /// The cocycle `Σ aᵢ·genᵢ` for integer coordinates.
    pub fn cocycle_from_coordinates(&self, coords: &[BigInt]) -> Cochain {
        assert_eq!(coords.len(), self.generators.len(), "coordinate length mismatch");
        let mut acc = Cochain::zero(&self.complex, self.degree, self.ring.clone());
        for (g, a) in self.generators.iter().zip(coords) {
            if !a.is_zero() {
                acc = acc.add(&g.scale(a)).expect("generators share ring and degree");
            }
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.group.free_rank,
            "torsion": self.group.torsion.iter().map(bigint_to_json).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(Cochain::to_json).collect::<Vec<_>>(),
        })
    }
}

fn localize(group: &FgAbelianGroup, loc: &Localization, raw: &[BigInt], denom: &BigInt) -> Vec<BigRational> {
    debug_assert!(crate::linalg::is_smooth(denom, &loc.primes));
    loc.keep
        .iter()
        .enumerate()
        .map(|(new, &old)| {
            if new < group.free_rank {
                BigRational::new(raw[old].clone(), denom.clone())
            } else {
                let t = &group.torsion[new - group.free_rank];
                let inv = modular_inverse(denom, t);
                BigRational::from_integer((&raw[old] * inv).mod_floor(t))
            }
        })
        .collect()
}

fn modular_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "denominator is a unit modulo the torsion order");
    e.x.mod_floor(m)
}

impl Serialize for CohomologyGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CohomologyGroup", 3)?;
        st.serialize_field("rank", &self.group.free_rank)?;
        st.serialize_field("torsion", &self.group.torsion.iter().map(bigint_to_json).collect::<Vec<_>>())?;
        st.serialize_field("generators", &self.generators)?;
        st.end()
    }
}

pub fn class_coordinates(g: &CohomologyGroup, z: &Cochain) -> Result<Vec<BigRational>, CohomologyError> {
    g.class_coordinates(z)
}

/// The torsion part of an integral or localized cohomology group.
#[derive(Clone, Debug)]
pub struct TorsionSubgroup {
    pub group: FgAbelianGroup,
    pub generators: Vec<Cochain>,
    parent: CohomologyGroup,
}

impl TorsionSubgroup {
    pub fn parent(&self) -> &CohomologyGroup {
        &self.parent
    }

    /// Coordinates in the torsion generators; fails if the class has a free component.
    pub fn coordinates(&self, z: &Cochain) -> Result<Vec<BigInt>, CohomologyError> {
        let all = self.parent.class_coordinates(z)?;
        let free = self.parent.group.free_rank;
        if all[..free].iter().any(|v| !v.is_zero()) {
            return Err(CohomologyError::NotTorsion);
        }
        Ok(all[free..].iter().map(BigRational::to_integer).collect())
    }
}

pub fn torsion_subgroup(g: &CohomologyGroup) -> Result<TorsionSubgroup, CohomologyError> {
    if g.ring == CoefficientRing::F2 {
        return Err(CohomologyError::UnsupportedRingPair { from: "F2".into(), to: "torsion subgroup".into() });
    }
    let free = g.group.free_rank;
    Ok(TorsionSubgroup { group: g.group.torsion_part(), generators: g.generators[free..].to_vec(), parent: g.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{bockstein, coboundary, cup};
    use crate::simplicial::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn summary(name: &str, ring: &CoefficientRing) -> Vec<String> {
        cohomology_all(&builtin(name).unwrap(), ring).iter().map(|g| g.group().to_string()).collect()
    }

    #[test]
    fn projective_plane() {
        let rp2 = builtin("RP2").unwrap();
        let h2 = cohomology(&rp2, 2, &CoefficientRing::Z).unwrap();
        assert_eq!(h2.group().free_rank, 0);
        assert_eq!(h2.group().torsion, ints(&[2]));
        assert!(cohomology(&rp2, 1, &CoefficientRing::Z).unwrap().group().is_trivial());
        assert_eq!(summary("RP2", &CoefficientRing::F2), ["Z/2", "Z/2", "Z/2"]);
        assert!(matches!(cohomology(&rp2, 3, &CoefficientRing::Z), Err(CohomologyError::DegreeOutOfRange { .. })));
    }

    #[test]
    fn spheres_and_tori() {
        assert_eq!(summary("S3", &CoefficientRing::Z), ["Z", "0", "0", "Z"]);
        assert_eq!(summary("T2", &CoefficientRing::Z), ["Z", "Z^2", "Z"]);
        assert_eq!(summary("Klein", &CoefficientRing::Z), ["Z", "Z", "Z/2"]);
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let x = builtin("RP2xS1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for ring in [CoefficientRing::Z, CoefficientRing::F2, CoefficientRing::zp(&[3]).unwrap()] {
            for g in cohomology_all(&x, &ring) {
                let n = g.generators().len();
                for (i, gen) in g.generators().iter().enumerate() {
                    let mut expect = vec![BigRational::zero(); n];
                    expect[i] = BigRational::one();
                    assert_eq!(g.class_coordinates(gen).unwrap(), expect);
                    if g.degree() > 0 {
                        let noise = coboundary(&x, &Cochain::random(&x, g.degree() - 1, ring.clone(), &mut rng));
                        assert_eq!(g.class_coordinates(&gen.add(&noise).unwrap()).unwrap(), expect);
                    }
                }
                let zero = Cochain::zero(&x, g.degree(), ring.clone());
                assert!(g.is_trivial_class(&zero).unwrap());
            }
        }
    }

    #[test]
    fn torsion_order_annihilates_generator() {
        let x = builtin("RP2xS1").unwrap();
        for g in cohomology_all(&x, &CoefficientRing::Z) {
            let free = g.group().free_rank;
            for (i, t) in g.group().torsion.iter().enumerate() {
                let multiple = g.generators()[free + i].scale(t);
                assert!(g.is_trivial_class(&multiple).unwrap());
            }
        }
    }

    #[test]
    fn localization() {
        let rp2 = builtin("RP2").unwrap();
        let z = cohomology(&rp2, 2, &CoefficientRing::Z).unwrap();
        let gen = z.generators()[0].clone();
        let twos = CoefficientRing::zp(&[2]).unwrap();
        let threes = CoefficientRing::zp(&[3]).unwrap();
        let h_two = cohomology(&rp2, 2, &twos).unwrap();
        assert!(h_two.group().is_trivial());
        let image = crate::cohomology::coefficient_map(&gen, &twos).unwrap();
        assert!(h_two.is_trivial_class(&image).unwrap());
        let h_three = cohomology(&rp2, 2, &threes).unwrap();
        assert_eq!(h_three.group().torsion, ints(&[2]));
        let image = crate::cohomology::coefficient_map(&gen, &threes).unwrap();
        assert_eq!(h_three.class_coordinates(&image).unwrap(), vec![BigRational::one()]);
        // a fractional representative: (1/3)·(3·gen) is the same class
        let thrice = crate::cohomology::coefficient_map(&gen.scale(&BigInt::from(3)), &threes).unwrap();
        let third = Cochain::new(&rp2, 2, threes.clone(), thrice.values().iter().map(|v| v / BigRational::from_integer(3.into())).collect()).unwrap();
        assert_eq!(h_three.class_coordinates(&third).unwrap(), vec![BigRational::one()]);
        // free classes take rational coordinates
        let s1 = builtin("S1").unwrap();
        let h1 = cohomology(&s1, 1, &threes).unwrap();
        let g = h1.generators()[0].clone();
        let g3 = Cochain::new(&s1, 1, threes, g.values().iter().map(|v| v / BigRational::from_integer(9.into())).collect()).unwrap();
        assert_eq!(h1.class_coordinates(&g3).unwrap(), vec![BigRational::new(1.into(), 9.into())]);
    }

    #[test]
    fn rp2_cup_square_and_bockstein() {
        let x = builtin("RP2").unwrap();
        let h1 = cohomology(&x, 1, &CoefficientRing::F2).unwrap();
        let h2 = cohomology(&x, 2, &CoefficientRing::F2).unwrap();
        let a = &h1.generators()[0];
        let sq = cup(&x, a, a).unwrap();
        assert_eq!(h2.class_coordinates(&sq).unwrap(), vec![BigRational::one()]);
        let hz = cohomology(&x, 2, &CoefficientRing::Z).unwrap();
        assert_eq!(hz.class_coordinates(&bockstein(&x, a).unwrap()).unwrap(), vec![BigRational::one()]);
    }

    #[test]
    fn torsion_subgroups() {
        let s3 = builtin("S3").unwrap();
        let t = torsion_subgroup(&cohomology(&s3, 3, &CoefficientRing::Z).unwrap()).unwrap();
        assert!(t.group.is_trivial());
        let rp2 = builtin("RP2").unwrap();
        let h2 = cohomology(&rp2, 2, &CoefficientRing::Z).unwrap();
        let t = torsion_subgroup(&h2).unwrap();
        assert_eq!(t.coordinates(&h2.generators()[0]).unwrap(), ints(&[1]));
        let h0 = cohomology(&rp2, 0, &CoefficientRing::Z).unwrap();
        let t0 = torsion_subgroup(&h0).unwrap();
        assert!(matches!(t0.coordinates(&h0.generators()[0]), Err(CohomologyError::NotTorsion)));
        assert!(torsion_subgroup(&cohomology(&rp2, 0, &CoefficientRing::F2).unwrap()).is_err());
    }

    #[test]
    fn json_shape() {
        let x = builtin("RP2").unwrap();
        let g = cohomology(&x, 2, &CoefficientRing::Z).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["rank"], 0);
        assert_eq!(v["torsion"], serde_json::json!([2]));
        assert_eq!(v["generators"].as_array().unwrap().len(), 1);
        assert_eq!(v, g.to_json());
    }
}
