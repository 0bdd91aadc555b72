use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use dixmier_core::cohomology::{cohomology, coboundary, is_cocycle, CoefficientRing, Cochain};
use dixmier_core::simplicial::builtin;
use dixmier_core::twisted::{brauer_group, build_twisted_group, BrauerElement, BrauerGroup, TwistedElement, TwistedGroupStructure};
use dixmier_core::SsaDescriptor;

fn rp2_squared() -> &'static TwistedGroupStructure {
    static S: OnceLock<TwistedGroupStructure> = OnceLock::new();
    S.get_or_init(|| build_twisted_group(&builtin("RP2xRP2").unwrap(), &SsaDescriptor::C).unwrap())
}

fn t3_local() -> &'static TwistedGroupStructure {
    // T = Z[1/3] has a free coordinate.
    static S: OnceLock<TwistedGroupStructure> = OnceLock::new();
    S.get_or_init(|| build_twisted_group(&builtin("T3").unwrap(), &SsaDescriptor::mp(&[3]).unwrap()).unwrap())
}

fn rp2_squared_brauer() -> &'static BrauerGroup {
    static G: OnceLock<BrauerGroup> = OnceLock::new();
    G.get_or_init(|| brauer_group(&builtin("RP2xRP2").unwrap(), &SsaDescriptor::C).unwrap())
}

fn element_strategy(h1: usize, t: usize) -> impl Strategy<Value = (Vec<u8>, Vec<(i64, u32)>)> {
    (prop::collection::vec(0u8..2, h1), prop::collection::vec((-20i64..20, 0u32..3), t))
}

fn make(s: &TwistedGroupStructure, (w, tau): (Vec<u8>, Vec<(i64, u32)>)) -> TwistedElement {
    let r = s.coefficient_ring();
    let tau = tau
        .into_iter()
        .map(|(a, k)| {
            let den = r.primes().first().map_or(BigInt::from(1), |&p| BigInt::from(p).pow(k));
            BigRational::new(BigInt::from(a), den)
        })
        .collect();
    s.element(w, tau).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rp2_squared_law(a in element_strategy(2, 1), b in element_strategy(2, 1), c in element_strategy(2, 1)) {
        let s = rp2_squared();
        let (a, b, c) = (make(s, a), make(s, b), make(s, c));
        let ab = s.multiply(&a, &b).unwrap();
        prop_assert_eq!(&ab, &s.multiply(&b, &a).unwrap());
        prop_assert_eq!(s.multiply(&ab, &c).unwrap(), s.multiply(&a, &s.multiply(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(s.multiply(&a, &s.inverse(&a).unwrap()).unwrap(), s.identity());
    }

    #[test]
    fn localized_law(a in element_strategy(3, 1), b in element_strategy(3, 1), c in element_strategy(3, 1)) {
        let s = t3_local();
        let (a, b, c) = (make(s, a), make(s, b), make(s, c));
        let ab = s.multiply(&a, &b).unwrap();
        prop_assert_eq!(s.multiply(&ab, &c).unwrap(), s.multiply(&a, &s.multiply(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(s.multiply(&s.identity(), &a).unwrap(), a.clone());
        prop_assert_eq!(s.multiply(&s.inverse(&a).unwrap(), &a).unwrap(), s.identity());
    }

    #[test]
    fn twisted_element_json_round_trip(a in element_strategy(3, 1)) {
        let s = t3_local();
        let e = make(s, a);
        let text = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::from_str::<TwistedElement>(&text).unwrap(), e);
    }

    #[test]
    fn brauer_elements_round_trip(i in 0usize..16, j in 0usize..16) {
        let g = rp2_squared_brauer();
        let all = g.elements(64).unwrap();
        let (a, b) = (&all[i], &all[j]);
        let text = serde_json::to_string(a).unwrap();
        prop_assert_eq!(&serde_json::from_str::<BrauerElement>(&text).unwrap(), a);
        let ab = g.multiply(a, b).unwrap();
        prop_assert!(all.contains(&ab));
        prop_assert_eq!(g.multiply(&ab, &g.inverse(b).unwrap()).unwrap(), a.clone());
    }

    #[test]
    fn coboundaries_are_cocycles(seed in any::<u64>(), k in 0usize..3) {
        use rand::SeedableRng;
        let x = builtin("RP2xS1").unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for ring in [CoefficientRing::Z, CoefficientRing::F2] {
            let c = Cochain::random(&x, k, ring.clone(), &mut rng);
            let d = coboundary(&x, &c);
            prop_assert!(is_cocycle(&x, &d));
            prop_assert!(cohomology(&x, k + 1, &ring).unwrap().is_trivial_class(&d).unwrap());
        }
    }
}

#[test]
fn identity_is_neutral_on_every_catalog_space() {
    for name in dixmier_core::simplicial::catalog_names() {
        let s = build_twisted_group(&builtin(name).unwrap(), &SsaDescriptor::C).unwrap();
        for e in s.elements(64).unwrap_or_default() {
            assert_eq!(s.multiply(&e, &s.identity()).unwrap(), e, "{name}");
        }
    }
}
