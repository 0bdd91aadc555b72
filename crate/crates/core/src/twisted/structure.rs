use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::TwistedError;
use crate::cohomology::{
    bockstein, coefficient_map, cohomology, cup, torsion_subgroup, CoefficientRing, Cochain, CohomologyGroup,
    TorsionSubgroup,
};
use crate::linalg::{bigint_to_json, cokernel_presentation, is_smooth, FgAbelianGroup, IntMatrix};
use crate::simplicial::SimplicialComplex;
use crate::ssa::SsaDescriptor;

const MAX_DIMENSION: usize = 4;

/// The module T = H³(X; K₀(D)), or its torsion subgroup.
#[derive(Clone, Debug)]
pub(crate) enum TModule {
    Zero { ring: CoefficientRing },
    Full(CohomologyGroup),
    Torsion(TorsionSubgroup),
}

impl TModule {
    pub(crate) fn group(&self) -> FgAbelianGroup {
        match self {
            TModule::Zero { .. } => FgAbelianGroup::trivial(),
            TModule::Full(g) => g.group().clone(),
            TModule::Torsion(t) => t.group.clone(),
        }
    }

    fn ring(&self) -> &CoefficientRing {
        match self {
            TModule::Zero { ring } => ring,
            TModule::Full(g) => g.ring(),
            TModule::Torsion(t) => t.parent().ring(),
        }
    }

    fn coordinates(&self, z: &Cochain) -> Result<Vec<BigRational>, TwistedError> {
        Ok(match self {
            TModule::Zero { .. } => Vec::new(),
            TModule::Full(g) => g.class_coordinates(z)?,
            TModule::Torsion(t) => t.coordinates(z)?.into_iter().map(BigRational::from_integer).collect(),
        })
    }

    fn generators(&self) -> &[Cochain] {
        match self {
            TModule::Zero { .. } => &[],
            TModule::Full(g) => g.generators(),
            TModule::Torsion(t) => &t.generators,
        }
    }
}

/// An element (w, τ) of H¹(X; Z/2) ×_tw T.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistedElement {
    pub w: Vec<u8>,
    #[serde(with = "rational_strings")]
    pub tau: Vec<BigRational>,
}

mod rational_strings {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<_> = self.w.iter().map(u8::to_string).collect();
        let t: Vec<_> = self.tau.iter().map(BigRational::to_string).collect();
        write!(f, "([{}], [{}])", w.join(" "), t.join(" "))
    }
}

/// The central extension of H¹(X; Z/2) by T with cocycle c(w, w′) = j∘β(w ∪ w′).
#[derive(Clone, Debug)]
pub struct TwistedGroupStructure {
    complex: Arc<SimplicialComplex>,
    algebra: SsaDescriptor,
    h1: Option<CohomologyGroup>,
    t: TModule,
    t_group: FgAbelianGroup,
    table: Vec<Vec<Vec<BigRational>>>,
}

pub(crate) fn require_dimension(x: &SimplicialComplex) -> Result<(), TwistedError> {
    if x.dimension() > MAX_DIMENSION {
        return Err(TwistedError::DimensionTooLarge { dimension: x.dimension() });
    }
    Ok(())
}

fn h1_group(x: &SimplicialComplex) -> Result<Option<CohomologyGroup>, TwistedError> {
    if x.dimension() < 1 {
        return Ok(None);
    }
    Ok(Some(cohomology(x, 1, &CoefficientRing::F2)?))
}

/// H¹(X; Z/2) ×_tw H³(X; K₀(D)).
pub fn build_twisted_group(x: &SimplicialComplex, d: &SsaDescriptor) -> Result<TwistedGroupStructure, TwistedError> {
    build(x, d, false)
}

pub(crate) fn build(x: &SimplicialComplex, d: &SsaDescriptor, torsion_only: bool) -> Result<TwistedGroupStructure, TwistedError> {
    require_dimension(x)?;
    let ring = d.coefficient_ring()?;
    let h1 = h1_group(x)?;
    let t = if x.dimension() < 3 {
        TModule::Zero { ring: ring.clone() }
    } else {
        let full = cohomology(x, 3, &ring)?;
        if torsion_only {
            TModule::Torsion(torsion_subgroup(&full)?)
        } else {
            TModule::Full(full)
        }
    };
    let t_group = t.group();
    let gens: Vec<Cochain> = h1.as_ref().map(|h| h.generators().to_vec()).unwrap_or_default();
    let n = gens.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = if matches!(t, TModule::Zero { .. }) {
                Vec::new()
            } else {
                let b = bockstein(x, &cup(x, &gens[i], &gens[j])?)?;
                t.coordinates(&coefficient_map(&b, &ring)?)?
            };
        }
    }
    let s = TwistedGroupStructure { complex: Arc::new(x.clone()), algebra: d.clone(), h1, t, t_group, table };
    s.verify_table()?;
    Ok(s)
}

impl TwistedGroupStructure {
    fn verify_table(&self) -> Result<(), TwistedError> {
        let n = self.h1_rank();
        let zero = self.zero_tau();
        for i in 0..n {
            if self.table[i][i] != zero {
                return Err(TwistedError::TableInvariant(format!("c(e{i}, e{i}) ≠ 0")));
            }
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(TwistedError::TableInvariant(format!("c(e{i}, e{j}) ≠ c(e{j}, e{i})")));
                }
                if self.add_tau(&self.table[i][j], &self.table[i][j]) != zero {
                    return Err(TwistedError::TableInvariant(format!("c(e{i}, e{j}) is not 2-torsion")));
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn algebra(&self) -> &SsaDescriptor {
        &self.algebra
    }

    pub fn coefficient_ring(&self) -> &CoefficientRing {
        self.t.ring()
    }

    pub fn h1_rank(&self) -> usize {
        self.h1.as_ref().map_or(0, |h| h.generators().len())
    }

    /// Generator cocycles of H¹(X; Z/2).
    pub fn h1_generators(&self) -> &[Cochain] {
        self.h1.as_ref().map_or(&[], |h| h.generators())
    }

    /// T as a K₀(D)-module: the free rank counts copies of K₀(D).
    pub fn t_group(&self) -> &FgAbelianGroup {
        &self.t_group
    }

    pub fn t_generators(&self) -> &[Cochain] {
        self.t.generators()
    }

    /// c(eᵢ, eⱼ) in T-coordinates.
    pub fn table_entry(&self, i: usize, j: usize) -> &[BigRational] {
        &self.table[i][j]
    }

    pub fn is_untwisted(&self) -> bool {
        let zero = self.zero_tau();
        self.table.iter().flatten().all(|e| *e == zero)
    }

    fn zero_tau(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.t_group.generator_count()]
    }

    fn reduce_tau(&self, tau: &mut [BigRational]) {
        let free = self.t_group.free_rank;
        for (i, v) in tau.iter_mut().enumerate().skip(free) {
            let order = &self.t_group.torsion[i - free];
            *v = BigRational::from_integer(v.to_integer().mod_floor(order));
        }
    }

    pub(crate) fn add_tau(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out: Vec<_> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce_tau(&mut out);
        out
    }

    fn neg_tau(&self, a: &[BigRational]) -> Vec<BigRational> {
        let mut out: Vec<_> = a.iter().map(|x| -x).collect();
        self.reduce_tau(&mut out);
        out
    }

    /// c(w, w′) expanded bilinearly from the table.
    pub fn cocycle(&self, w: &[u8], w2: &[u8]) -> Vec<BigRational> {
        let mut acc = self.zero_tau();
        for (i, &a) in w.iter().enumerate() {
            for (j, &b) in w2.iter().enumerate() {
                if a == 1 && b == 1 {
                    acc = self.add_tau(&acc, &self.table[i][j]);
                }
            }
        }
        acc
    }

    pub fn identity(&self) -> TwistedElement {
        TwistedElement { w: vec![0; self.h1_rank()], tau: self.zero_tau() }
    }

    /// Validates and normalizes (w, τ).
    pub fn element(&self, w: Vec<u8>, tau: Vec<BigRational>) -> Result<TwistedElement, TwistedError> {
        let g = TwistedElement { w, tau };
        self.check_member(&g)?;
        let mut tau = g.tau;
        self.reduce_tau(&mut tau);
        Ok(TwistedElement { w: g.w, tau })
    }

    fn check_member(&self, g: &TwistedElement) -> Result<(), TwistedError> {
        if g.w.len() != self.h1_rank() || g.tau.len() != self.t_group.generator_count() {
            return Err(TwistedError::StructureMismatch(format!(
                "expected {} + {} coordinates, got {} + {}",
                self.h1_rank(),
                self.t_group.generator_count(),
                g.w.len(),
                g.tau.len()
            )));
        }
        if g.w.iter().any(|&b| b > 1) {
            return Err(TwistedError::StructureMismatch("w must be a 0/1 vector".into()));
        }
        let free = self.t_group.free_rank;
        let primes = self.coefficient_ring().primes();
        for (i, v) in g.tau.iter().enumerate() {
            let ok = if i >= free { v.is_integer() } else { is_smooth(v.denom(), primes) };
            if !ok {
                return Err(TwistedError::StructureMismatch(format!("τ coordinate {v} is not in the coefficient ring")));
            }
        }
        Ok(())
    }

    /// (eᵢ, 0).
    pub fn section(&self, i: usize) -> TwistedElement {
        let mut g = self.identity();
        g.w[i] = 1;
        g
    }

    /// (0, tⱼ) for the j-th generator of T.
    pub fn t_generator(&self, j: usize) -> TwistedElement {
        let mut g = self.identity();
        g.tau[j] = BigRational::one();
        g
    }

    /// (w, τ)·(w′, τ′) = (w + w′, τ + τ′ + c(w, w′)).
    pub fn multiply(&self, g: &TwistedElement, h: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        self.check_member(g)?;
        self.check_member(h)?;
        let w = g.w.iter().zip(&h.w).map(|(a, b)| a ^ b).collect();
        let tau = self.add_tau(&self.add_tau(&g.tau, &h.tau), &self.cocycle(&g.w, &h.w));
        Ok(TwistedElement { w, tau })
    }

    /// (w, −τ − c(w, w)).
    pub fn inverse(&self, g: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        self.check_member(g)?;
        let tau = self.add_tau(&self.neg_tau(&g.tau), &self.neg_tau(&self.cocycle(&g.w, &g.w)));
        Ok(TwistedElement { w: g.w.clone(), tau })
    }

    /// Presentation by the section elements s(eᵢ) and the generators of T, with relations
    /// ord(tⱼ)·tⱼ = 0 and 2·s(eᵢ) = c(eᵢ, eᵢ). The free part of T passes through unchanged.
    pub fn isomorphism_type(&self) -> FgAbelianGroup {
        let n = self.h1_rank();
        let free = self.t_group.free_rank;
        let tors = &self.t_group.torsion;
        let cols = n + tors.len();
        let mut rows = Vec::new();
        for (j, o) in tors.iter().enumerate() {
            let mut r = vec![BigInt::zero(); cols];
            r[n + j] = o.clone();
            rows.push(r);
        }
        for i in 0..n {
            let mut r = vec![BigInt::zero(); cols];
            r[i] = BigInt::from(2);
            for (j, v) in self.table[i][i][free..].iter().enumerate() {
                r[n + j] = -v.to_integer();
            }
            rows.push(r);
        }
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, v) in r.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        let finite = if cols == 0 { FgAbelianGroup::trivial() } else { cokernel_presentation(&m) };
        FgAbelianGroup::free(free).direct_sum(&finite)
    }

    /// The number of elements, when finite.
    pub fn order(&self) -> Option<BigInt> {
        let t = self.t_group.order()?;
        Some(t << self.h1_rank())
    }

    /// Every element, when there are at most `limit` of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<TwistedElement>> {
        let order = self.order()?;
        if order > BigInt::from(limit) {
            return None;
        }
        let mut taus = vec![Vec::new()];
        for o in &self.t_group.torsion {
            let o: usize = o.try_into().ok()?;
            taus = taus
                .into_iter()
                .flat_map(|t: Vec<BigRational>| {
                    (0..o).map(move |v| {
                        let mut t = t.clone();
                        t.push(BigRational::from_integer(BigInt::from(v)));
                        t
                    })
                })
                .collect();
        }
        let n = self.h1_rank();
        let mut out = Vec::with_capacity(order.try_into().ok()?);
        for mask in 0..1usize << n {
            for t in &taus {
                out.push(TwistedElement { w: (0..n).map(|i| (mask >> i & 1) as u8).collect(), tau: t.clone() });
            }
        }
        Some(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> TwistedElement {
        let w = (0..self.h1_rank()).map(|_| rng.gen_range(0..2u8)).collect();
        let primes = self.coefficient_ring().primes().to_vec();
        let mut tau = Vec::with_capacity(self.t_group.generator_count());
        for _ in 0..self.t_group.free_rank {
            let num = BigInt::from(rng.gen_range(-4..=4));
            let den = match primes.as_slice() {
                [] => BigInt::one(),
                ps => BigInt::from(ps[rng.gen_range(0..ps.len())]).pow(rng.gen_range(0..3)),
            };
            tau.push(BigRational::new(num, den));
        }
        for o in &self.t_group.torsion {
            let o: u64 = o.try_into().unwrap_or(u64::MAX);
            tau.push(BigRational::from_integer(BigInt::from(rng.gen_range(0..o))));
        }
        TwistedElement { w, tau }
    }

    /// Coordinates of a mod 2 class in the H¹ basis.
    pub fn w_coordinates(&self, z: &Cochain) -> Result<Vec<u8>, TwistedError> {
        match &self.h1 {
            None => Ok(Vec::new()),
            Some(h) => Ok(h.class_coordinates(z)?.iter().map(|v| u8::from(!v.is_zero())).collect()),
        }
    }

    /// Coordinates in T of the class j(z) for an integral 3-cocycle z.
    pub fn t_coordinates(&self, z: &Cochain) -> Result<Vec<BigRational>, TwistedError> {
        if matches!(self.t, TModule::Zero { .. }) {
            return Ok(Vec::new());
        }
        self.t.coordinates(&coefficient_map(z, self.coefficient_ring())?)
    }

    /// The class of j∘β(x ∪ y) for mod 2 1-cocycles x, y computed from cochains.
    pub fn twist_class(&self, x: &Cochain, y: &Cochain) -> Result<Vec<BigRational>, TwistedError> {
        if matches!(self.t, TModule::Zero { .. }) {
            return Ok(Vec::new());
        }
        let b = bockstein(&self.complex, &cup(&self.complex, x, y)?)?;
        self.t_coordinates(&b)
    }

    /// Applies the coefficient change K₀(D) → K₀(D′) to τ, keeping w.
    pub fn change_coefficients(&self, target: &TwistedGroupStructure, g: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        self.check_member(g)?;
        if self.complex.to_raw() != target.complex.to_raw() || self.h1_generators() != target.h1_generators() {
            return Err(TwistedError::StructureMismatch("structures live on different complexes".into()));
        }
        if self.t_group.free_rank > 0 && self.coefficient_ring() != &CoefficientRing::Z {
            return Err(TwistedError::StructureMismatch("coefficient change is implemented from integral T".into()));
        }
        if matches!(self.t, TModule::Zero { .. }) {
            return target.element(g.w.clone(), target.zero_tau());
        }
        let coords: Vec<BigInt> = g.tau.iter().map(BigRational::to_integer).collect();
        let z = match &self.t {
            TModule::Full(h) => h.cocycle_from_coordinates(&coords),
            TModule::Torsion(t) => {
                let mut full = vec![BigInt::zero(); t.parent().generators().len()];
                let free = t.parent().group().free_rank;
                full[free..].clone_from_slice(&coords);
                t.parent().cocycle_from_coordinates(&full)
            }
            TModule::Zero { .. } => unreachable!(),
        };
        let tau = target.t_coordinates(&z)?;
        target.element(g.w.clone(), tau)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<Vec<String>>> =
            self.table.iter().map(|row| row.iter().map(|e| e.iter().map(|v| v.to_string()).collect()).collect()).collect();
        serde_json::json!({
            "algebra": self.algebra.to_string(),
            "coefficients": self.coefficient_ring().to_string(),
            "h1_rank": self.h1_rank(),
            "t": group_json(&self.t_group),
            "table": table,
            "untwisted": self.is_untwisted(),
            "isomorphism_type": group_json(&self.isomorphism_type()),
        })
    }
}

pub(crate) fn group_json(g: &FgAbelianGroup) -> serde_json::Value {
    serde_json::json!({
        "rank": g.free_rank,
        "torsion": g.torsion.iter().map(bigint_to_json).collect::<Vec<_>>(),
        "description": g.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtin;

    fn c() -> SsaDescriptor {
        SsaDescriptor::C
    }

    #[test]
    fn sphere_is_untwisted() {
        let s = build_twisted_group(&builtin("S3").unwrap(), &c()).unwrap();
        assert_eq!(s.h1_rank(), 0);
        assert_eq!(*s.t_group(), FgAbelianGroup::free(1));
        assert_eq!(s.isomorphism_type(), FgAbelianGroup::free(1));
    }

    #[test]
    fn rp2_squared_twist() {
        let s = build_twisted_group(&builtin("RP2xRP2").unwrap(), &c()).unwrap();
        assert_eq!(s.h1_rank(), 2);
        assert_eq!(*s.t_group(), FgAbelianGroup::elementary_2(1));
        let one = vec![BigRational::one()];
        assert_eq!(s.table_entry(0, 1), one.as_slice());
        assert!(s.table_entry(0, 0)[0].is_zero() && s.table_entry(1, 1)[0].is_zero());
        assert_eq!(s.isomorphism_type(), FgAbelianGroup::elementary_2(3));
        let (a, b) = (s.section(0), s.section(1));
        let ab = s.multiply(&a, &b).unwrap();
        assert_eq!(ab, TwistedElement { w: vec![1, 1], tau: one });
        assert_eq!(s.multiply(&a, &a).unwrap(), s.identity());
        assert_eq!(s.inverse(&a).unwrap(), a);
        assert_eq!(s.multiply(&ab, &s.identity()).unwrap(), ab);
    }

    #[test]
    fn localization_at_two_kills_twist() {
        let x = builtin("RP2xRP2").unwrap();
        let s = build_twisted_group(&x, &SsaDescriptor::mp(&[2]).unwrap()).unwrap();
        assert!(s.t_group().is_trivial());
        assert!(s.is_untwisted());
        let s3 = build_twisted_group(&x, &SsaDescriptor::mp(&[3]).unwrap()).unwrap();
        assert!(!s3.is_untwisted());
    }

    #[test]
    fn rp2_and_t3() {
        let s = build_twisted_group(&builtin("RP2").unwrap(), &c()).unwrap();
        assert_eq!(s.isomorphism_type(), FgAbelianGroup::elementary_2(1));
        let t3 = build_twisted_group(&builtin("T3").unwrap(), &c()).unwrap();
        assert_eq!(t3.h1_rank(), 3);
        assert!(t3.is_untwisted());
        assert_eq!(t3.isomorphism_type(), FgAbelianGroup::elementary_2(3).direct_sum(&FgAbelianGroup::free(1)));
    }

    #[test]
    fn untwisted_inverse_negates() {
        let t3 = build_twisted_group(&builtin("T3").unwrap(), &c()).unwrap();
        let g = t3.element(vec![0, 0, 0], vec![BigRational::from_integer(5.into())]).unwrap();
        assert_eq!(t3.inverse(&g).unwrap().tau, vec![BigRational::from_integer((-5).into())]);
    }

    #[test]
    fn coefficient_change_is_homomorphic() {
        let mut rng = rand::rngs::mock::StepRng::new(7, 11);
        for name in ["RP2xRP2", "T3", "RP3"] {
            let x = builtin(name).unwrap();
            let from = build_twisted_group(&x, &c()).unwrap();
            for p in [2u64, 3] {
                let to = build_twisted_group(&x, &SsaDescriptor::mp(&[p]).unwrap()).unwrap();
                for _ in 0..10 {
                    let (g, h) = (from.random_element(&mut rng), from.random_element(&mut rng));
                    let g = from.element(g.w, g.tau.iter().map(|v| BigRational::from_integer(v.to_integer())).collect()).unwrap();
                    let h = from.element(h.w, h.tau.iter().map(|v| BigRational::from_integer(v.to_integer())).collect()).unwrap();
                    let lhs = from.change_coefficients(&to, &from.multiply(&g, &h).unwrap()).unwrap();
                    let rhs = to
                        .multiply(&from.change_coefficients(&to, &g).unwrap(), &from.change_coefficients(&to, &h).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "{name} p={p}");
                }
            }
        }
    }

    #[test]
    fn guards() {
        let x = builtin("RP2").unwrap();
        assert!(matches!(build_twisted_group(&x, &SsaDescriptor::O2), Err(TwistedError::Ssa(_))));
        assert!(build_twisted_group(&x, &"Q".parse().unwrap()).is_err());
        let s = build_twisted_group(&x, &c()).unwrap();
        let bad = TwistedElement { w: vec![1, 0], tau: vec![] };
        assert!(matches!(s.multiply(&bad, &s.identity()), Err(TwistedError::StructureMismatch(_))));
        let half = s.element(vec![1], vec![]).unwrap();
        assert_eq!(half, s.section(0));
        let big = crate::simplicial::construct::simplex(5);
        assert!(matches!(build_twisted_group(&big, &c()), Err(TwistedError::DimensionTooLarge { dimension: 5 })));
    }
}
