use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::structure::{build, group_json, require_dimension};
use super::{TwistedElement, TwistedError, TwistedGroupStructure};
use crate::cohomology::LineBundle;
use crate::linalg::FgAbelianGroup;
use crate::simplicial::SimplicialComplex;
use crate::ssa::SsaDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleGroupElement {
    pub parity: Vec<u8>,
    pub inner: TwistedElement,
}

impl fmt::Display for BundleGroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<_> = self.parity.iter().map(u8::to_string).collect();
        write!(f, "[{}] {}", p.join(" "), self.inner)
    }
}

/// H⁰(X; Z/2) ⊕ Ê¹_D(X), one parity bit per connected component.
#[derive(Clone, Debug)]
pub struct BundleGroup {
    twisted: TwistedGroupStructure,
    components: usize,
}

pub fn bundle_group(x: &SimplicialComplex, d: &SsaDescriptor) -> Result<BundleGroup, TwistedError> {
    let twisted = build(x, d, false)?;
    Ok(BundleGroup { twisted, components: x.connected_components().len() })
}

fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

impl BundleGroup {
    pub fn twisted(&self) -> &TwistedGroupStructure {
        &self.twisted
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn identity(&self) -> BundleGroupElement {
        BundleGroupElement { parity: vec![0; self.components], inner: self.twisted.identity() }
    }

    pub fn element(&self, parity: Vec<u8>, inner: TwistedElement) -> Result<BundleGroupElement, TwistedError> {
        if parity.len() != self.components || parity.iter().any(|&p| p > 1) {
            return Err(TwistedError::StructureMismatch(format!(
                "expected {} parity bits, got {:?}",
                self.components, parity
            )));
        }
        let inner = self.twisted.element(inner.w, inner.tau)?;
        Ok(BundleGroupElement { parity, inner })
    }

    fn check_parity(&self, g: &BundleGroupElement) -> Result<(), TwistedError> {
        if g.parity.len() != self.components {
            return Err(TwistedError::StructureMismatch(format!(
                "expected {} parity bits, got {}",
                self.components,
                g.parity.len()
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, g: &BundleGroupElement, h: &BundleGroupElement) -> Result<BundleGroupElement, TwistedError> {
        self.check_parity(g)?;
        self.check_parity(h)?;
        Ok(BundleGroupElement { parity: xor(&g.parity, &h.parity), inner: self.twisted.multiply(&g.inner, &h.inner)? })
    }

    pub fn inverse(&self, g: &BundleGroupElement) -> Result<BundleGroupElement, TwistedError> {
        self.check_parity(g)?;
        Ok(BundleGroupElement { parity: g.parity.clone(), inner: self.twisted.inverse(&g.inner)? })
    }

    /// The image in H⁰ × H¹.
    pub fn forget_tau(&self, g: &BundleGroupElement) -> (Vec<u8>, Vec<u8>) {
        (g.parity.clone(), g.inner.w.clone())
    }

    pub fn isomorphism_type(&self) -> FgAbelianGroup {
        FgAbelianGroup::elementary_2(self.components).direct_sum(&self.twisted.isomorphism_type())
    }

    pub fn order(&self) -> Option<BigInt> {
        self.twisted.order().map(|o| o << self.components)
    }

    pub fn elements(&self, limit: usize) -> Option<Vec<BundleGroupElement>> {
        let c = self.components;
        let inner = self.twisted.elements(limit >> c.min(usize::BITS as usize - 1))?;
        let mut out = Vec::with_capacity(inner.len() << c);
        for mask in 0..1usize << c {
            let parity: Vec<u8> = (0..c).map(|i| (mask >> i & 1) as u8).collect();
            out.extend(inner.iter().map(|t| BundleGroupElement { parity: parity.clone(), inner: t.clone() }));
        }
        (out.len() <= limit).then_some(out)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> BundleGroupElement {
        BundleGroupElement {
            parity: (0..self.components).map(|_| rng.gen_range(0..2u8)).collect(),
            inner: self.twisted.random_element(rng),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "components": self.components,
            "parity": group_json(&FgAbelianGroup::elementary_2(self.components)),
            "twisted": self.twisted.to_json(),
            "isomorphism_type": group_json(&self.isomorphism_type()),
        })
    }
}

/// The element of Cliff_L ⊗ D ⊗ K: odd parity everywhere, w = w₁(L) and τ = 0.
pub fn clifford_bundle_invariants(l: &LineBundle, g: &BundleGroup) -> Result<BundleGroupElement, TwistedError> {
    require_dimension(g.twisted.complex())?;
    let w = g.twisted.w_coordinates(l.w1())?;
    let inner = g.twisted.element(w, g.twisted.identity().tau)?;
    Ok(BundleGroupElement { parity: vec![1; g.components], inner })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BrauerElement {
    pub parity: Vec<u8>,
    pub w: Vec<u8>,
    #[serde(with = "crate::linalg::bigint_list")]
    pub tor: Vec<BigInt>,
}

impl fmt::Display for BrauerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<_> = self.parity.iter().map(u8::to_string).collect();
        let w: Vec<_> = self.w.iter().map(u8::to_string).collect();
        let t: Vec<_> = self.tor.iter().map(BigInt::to_string).collect();
        write!(f, "[{}] [{}] [{}]", p.join(" "), w.join(" "), t.join(" "))
    }
}

/// H⁰(X; Z/2) × H¹(X; Z/2) ×_tw Tor H³(X; K₀(D)).
#[derive(Clone, Debug)]
pub struct BrauerGroup {
    bundles: BundleGroup,
}

pub fn brauer_group(x: &SimplicialComplex, d: &SsaDescriptor) -> Result<BrauerGroup, TwistedError> {
    if !d.is_stably_finite() {
        return Err(TwistedError::NotStablyFinite(d.to_string()));
    }
    let twisted = build(x, d, true)?;
    Ok(BrauerGroup { bundles: BundleGroup { twisted, components: x.connected_components().len() } })
}

impl BrauerGroup {
    pub fn twisted(&self) -> &TwistedGroupStructure {
        &self.bundles.twisted
    }

    pub fn components(&self) -> usize {
        self.bundles.components
    }

    fn lift(&self, g: &BrauerElement) -> BundleGroupElement {
        BundleGroupElement {
            parity: g.parity.clone(),
            inner: TwistedElement { w: g.w.clone(), tau: g.tor.iter().cloned().map(BigRational::from_integer).collect() },
        }
    }

    fn lower(g: BundleGroupElement) -> BrauerElement {
        BrauerElement { parity: g.parity, w: g.inner.w, tor: g.inner.tau.iter().map(BigRational::to_integer).collect() }
    }

    pub fn identity(&self) -> BrauerElement {
        Self::lower(self.bundles.identity())
    }

    pub fn element(&self, parity: Vec<u8>, w: Vec<u8>, tor: Vec<BigInt>) -> Result<BrauerElement, TwistedError> {
        let g = self.lift(&BrauerElement { parity, w, tor });
        Ok(Self::lower(self.bundles.element(g.parity, g.inner)?))
    }

    pub fn multiply(&self, g: &BrauerElement, h: &BrauerElement) -> Result<BrauerElement, TwistedError> {
        Ok(Self::lower(self.bundles.multiply(&self.lift(g), &self.lift(h))?))
    }

    pub fn inverse(&self, g: &BrauerElement) -> Result<BrauerElement, TwistedError> {
        Ok(Self::lower(self.bundles.inverse(&self.lift(g))?))
    }

    pub fn isomorphism_type(&self) -> FgAbelianGroup {
        self.bundles.isomorphism_type()
    }

    pub fn order(&self) -> BigInt {
        self.bundles.order().expect("torsion coefficients give a finite group")
    }

    pub fn elements(&self, limit: usize) -> Option<Vec<BrauerElement>> {
        Some(self.bundles.elements(limit)?.into_iter().map(Self::lower).collect())
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> BrauerElement {
        Self::lower(self.bundles.random_element(rng))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = self.bundles.to_json();
        v["order"] = crate::linalg::bigint_to_json(&self.order());
        v
    }
}
