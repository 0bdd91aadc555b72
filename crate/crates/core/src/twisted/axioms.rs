use std::fmt::Display;

use rand::rngs::StdRng;
use rand::{RngCore, SeedableRng};
use serde::Serialize;

use super::{
    BrauerElement, BrauerGroup, BundleGroup, BundleGroupElement, TwistedElement, TwistedError, TwistedGroupStructure,
};

const ENUMERATION_LIMIT: usize = 4096;
const PAIR_LIMIT: usize = 256;
const TRIPLE_LIMIT: usize = 64;

/// A group law exposed for axiom checking.
pub trait GroupLaw {
    type Element: Clone + PartialEq + Display;
    fn identity(&self) -> Self::Element;
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Result<Self::Element, TwistedError>;
    fn inverse(&self, g: &Self::Element) -> Result<Self::Element, TwistedError>;
    fn elements(&self, limit: usize) -> Option<Vec<Self::Element>>;
    fn random_element(&self, rng: &mut dyn RngCore) -> Self::Element;
}

impl GroupLaw for TwistedGroupStructure {
    type Element = TwistedElement;
    fn identity(&self) -> TwistedElement {
        TwistedGroupStructure::identity(self)
    }
    fn multiply(&self, g: &TwistedElement, h: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        TwistedGroupStructure::multiply(self, g, h)
    }
    fn inverse(&self, g: &TwistedElement) -> Result<TwistedElement, TwistedError> {
        TwistedGroupStructure::inverse(self, g)
    }
    fn elements(&self, limit: usize) -> Option<Vec<TwistedElement>> {
        TwistedGroupStructure::elements(self, limit)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> TwistedElement {
        TwistedGroupStructure::random_element(self, rng)
    }
}

impl GroupLaw for BundleGroup {
    type Element = BundleGroupElement;
    fn identity(&self) -> BundleGroupElement {
        BundleGroup::identity(self)
    }
    fn multiply(&self, g: &BundleGroupElement, h: &BundleGroupElement) -> Result<BundleGroupElement, TwistedError> {
        BundleGroup::multiply(self, g, h)
    }
    fn inverse(&self, g: &BundleGroupElement) -> Result<BundleGroupElement, TwistedError> {
        BundleGroup::inverse(self, g)
    }
    fn elements(&self, limit: usize) -> Option<Vec<BundleGroupElement>> {
        BundleGroup::elements(self, limit)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> BundleGroupElement {
        BundleGroup::random_element(self, rng)
    }
}

impl GroupLaw for BrauerGroup {
    type Element = BrauerElement;
    fn identity(&self) -> BrauerElement {
        BrauerGroup::identity(self)
    }
    fn multiply(&self, g: &BrauerElement, h: &BrauerElement) -> Result<BrauerElement, TwistedError> {
        BrauerGroup::multiply(self, g, h)
    }
    fn inverse(&self, g: &BrauerElement) -> Result<BrauerElement, TwistedError> {
        BrauerGroup::inverse(self, g)
    }
    fn elements(&self, limit: usize) -> Option<Vec<BrauerElement>> {
        BrauerGroup::elements(self, limit)
    }
    fn random_element(&self, rng: &mut dyn RngCore) -> BrauerElement {
        BrauerGroup::random_element(self, rng)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AxiomReport {
    /// Group order when all elements were enumerated.
    pub enumerated: Option<usize>,
    pub identity_checks: usize,
    pub inverse_checks: usize,
    pub commutativity_checks: usize,
    pub associativity_checks: usize,
    pub exhaustive_pairs: bool,
    pub exhaustive_triples: bool,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Every axiom was checked on every tuple of elements.
    pub fn exhaustive(&self) -> bool {
        self.enumerated.is_some() && self.exhaustive_pairs && self.exhaustive_triples
    }
}

struct Checker<'a, G: GroupLaw> {
    s: &'a G,
    report: AxiomReport,
}

impl<G: GroupLaw> Checker<'_, G> {
    fn fail(&mut self, axiom: &'static str, witness: &[&G::Element], detail: String) {
        self.report.failures.push(AxiomFailure { axiom, witness: witness.iter().map(|g| g.to_string()).collect(), detail });
    }

    fn mul(&mut self, axiom: &'static str, witness: &[&G::Element], g: &G::Element, h: &G::Element) -> Option<G::Element> {
        match self.s.multiply(g, h) {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(axiom, witness, e.to_string());
                None
            }
        }
    }

    fn unit_and_inverse(&mut self, g: &G::Element) {
        let e = self.s.identity();
        self.report.identity_checks += 1;
        if let (Some(a), Some(b)) = (self.mul("identity", &[g], g, &e), self.mul("identity", &[g], &e, g)) {
            if a != *g || b != *g {
                self.fail("identity", &[g], format!("g·1 = {a}, 1·g = {b}"));
            }
        }
        self.report.inverse_checks += 1;
        match self.s.inverse(g) {
            Err(err) => self.fail("inverse", &[g], err.to_string()),
            Ok(inv) => {
                if let Some(p) = self.mul("inverse", &[g], g, &inv) {
                    if p != e {
                        self.fail("inverse", &[g], format!("g·g⁻¹ = {p}"));
                    }
                }
            }
        }
    }

    fn commutes(&mut self, g: &G::Element, h: &G::Element) {
        self.report.commutativity_checks += 1;
        if let (Some(a), Some(b)) = (self.mul("commutativity", &[g, h], g, h), self.mul("commutativity", &[g, h], h, g)) {
            if a != b {
                self.fail("commutativity", &[g, h], format!("gh = {a}, hg = {b}"));
            }
        }
    }

    fn associates(&mut self, g: &G::Element, h: &G::Element, k: &G::Element) {
        self.report.associativity_checks += 1;
        let w = [g, h, k];
        let left = self.mul("associativity", &w, g, h).and_then(|gh| self.mul("associativity", &w, &gh, k));
        let right = self.mul("associativity", &w, h, k).and_then(|hk| self.mul("associativity", &w, g, &hk));
        if let (Some(a), Some(b)) = (left, right) {
            if a != b {
                self.fail("associativity", &w, format!("(gh)k = {a}, g(hk) = {b}"));
            }
        }
    }
}

/// Identity, inverse, commutativity and associativity checks.
///
/// Groups with at most 4096 elements are enumerated and every element is tested for identity
/// and inverses; pairs are exhaustive up to 256 elements and triples up to 64. Everything else
/// uses `sample_count` random tuples drawn from `seed`.
pub fn check_group_axioms<G: GroupLaw>(s: &G, sample_count: usize, seed: u64) -> AxiomReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut c = Checker { s, report: AxiomReport::default() };
    let all = s.elements(ENUMERATION_LIMIT);
    c.report.enumerated = all.as_ref().map(Vec::len);
    match &all {
        Some(all) => all.iter().for_each(|g| c.unit_and_inverse(g)),
        None => {
            for _ in 0..sample_count {
                let g = s.random_element(&mut rng);
                c.unit_and_inverse(&g);
            }
        }
    }
    let n = all.as_ref().map_or(usize::MAX, Vec::len);
    let all = all.unwrap_or_default();
    let pick = |rng: &mut StdRng| -> G::Element {
        if all.is_empty() {
            s.random_element(rng)
        } else {
            all[(rng.next_u64() % all.len() as u64) as usize].clone()
        }
    };
    if n <= PAIR_LIMIT {
        c.report.exhaustive_pairs = true;
        for g in &all {
            for h in &all {
                c.commutes(g, h);
            }
        }
    } else {
        for _ in 0..sample_count {
            let (g, h) = (pick(&mut rng), pick(&mut rng));
            c.commutes(&g, &h);
        }
    }
    if n <= TRIPLE_LIMIT {
        c.report.exhaustive_triples = true;
        for g in &all {
            for h in &all {
                for k in &all {
                    c.associates(g, h, k);
                }
            }
        }
    } else {
        for _ in 0..sample_count {
            let (g, h, k) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            c.associates(&g, &h, &k);
        }
    }
    c.report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtin;
    use crate::ssa::SsaDescriptor;
    use crate::twisted::{brauer_group, build_twisted_group, bundle_group};

    #[test]
    fn rp2_squared_exhaustive() {
        let s = build_twisted_group(&builtin("RP2xRP2").unwrap(), &SsaDescriptor::C).unwrap();
        let r = check_group_axioms(&s, 10, 1);
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.exhaustive());
        assert_eq!(r.enumerated, Some(8));
        assert_eq!(r.associativity_checks, 512);
    }

    #[test]
    fn t3_randomized() {
        let s = build_twisted_group(&builtin("T3").unwrap(), &SsaDescriptor::C).unwrap();
        let r = check_group_axioms(&s, 50, 2);
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.enumerated, None);
        assert_eq!(r.associativity_checks, 50);
        let q = build_twisted_group(&builtin("RP2xRP2").unwrap(), &"MP:3".parse().unwrap()).unwrap();
        assert!(check_group_axioms(&q, 50, 3).passed());
    }

    #[test]
    fn wrappers() {
        let x = builtin("RP2xRP2").unwrap();
        let b = brauer_group(&x, &SsaDescriptor::C).unwrap();
        let r = check_group_axioms(&b, 10, 4);
        assert!(r.passed() && r.exhaustive());
        let g = bundle_group(&builtin("RP2+S1").unwrap(), &SsaDescriptor::C).unwrap();
        assert!(check_group_axioms(&g, 10, 5).passed());
    }
}
