use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use super::{CoefficientRing, CohomologyError};
use crate::linalg::{bigint_to_json, is_smooth};
use crate::simplicial::{BoundaryRing, SimplicialComplex};

/// One coefficient per k-simplex, in the complex's sorted simplex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    ring: CoefficientRing,
    values: Vec<BigRational>,
}

fn mod2(v: &BigRational) -> BigRational {
    BigRational::from_integer(v.to_integer().mod_floor(&BigInt::from(2)))
}

impl Cochain {
    /// Checks the length and that each value belongs to the ring (0/1 for F2, integers for Z,
    /// P-smooth denominators for Z_P).
    pub fn new(
        x: &SimplicialComplex,
        degree: usize,
        ring: CoefficientRing,
        values: Vec<BigRational>,
    ) -> Result<Self, CohomologyError> {
        if values.len() != x.count(degree) {
            return Err(CohomologyError::LengthMismatch { expected: x.count(degree), found: values.len() });
        }
        for v in &values {
            let ok = match &ring {
                CoefficientRing::Z => v.is_integer(),
                CoefficientRing::F2 => v.is_zero() || v.is_one(),
                CoefficientRing::ZP(ps) => is_smooth(v.denom(), ps),
            };
            if !ok {
                return Err(CohomologyError::InvalidValue { value: v.to_string(), ring: ring.to_string() });
            }
        }
        Ok(Cochain { degree, ring, values })
    }

    pub fn from_ints(x: &SimplicialComplex, degree: usize, ring: CoefficientRing, values: &[i64]) -> Result<Self, CohomologyError> {
        Self::new(x, degree, ring, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn zero(x: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> Self {
        Cochain { degree, ring, values: vec![BigRational::zero(); x.count(degree)] }
    }

    /// The cochain that is 1 on every simplex of the given degree.
    pub fn constant_one(x: &SimplicialComplex, degree: usize, ring: CoefficientRing) -> Self {
        Cochain { degree, ring, values: vec![BigRational::one(); x.count(degree)] }
    }

    /// Random values in `-2..=2` (0/1 over F2).
    pub fn random<G: Rng>(x: &SimplicialComplex, degree: usize, ring: CoefficientRing, rng: &mut G) -> Self {
        let values = (0..x.count(degree))
            .map(|_| match ring {
                CoefficientRing::F2 => BigRational::from_integer(rng.gen_range(0..2).into()),
                _ => BigRational::from_integer(rng.gen_range(-2..=2).into()),
            })
            .collect();
        Cochain { degree, ring, values }
    }

    pub(crate) fn from_parts(degree: usize, ring: CoefficientRing, values: Vec<BigRational>) -> Self {
        let values = if ring == CoefficientRing::F2 { values.iter().map(mod2).collect() } else { values };
        Cochain { degree, ring, values }
    }

    pub(crate) fn from_integers(degree: usize, ring: CoefficientRing, values: Vec<BigInt>) -> Self {
        Self::from_parts(degree, ring, values.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Values as integers; panics on a fractional entry.
    pub(crate) fn integer_values(&self) -> Vec<BigInt> {
        self.values
            .iter()
            .map(|v| {
                assert!(v.is_integer(), "fractional cochain value");
                v.to_integer()
            })
            .collect()
    }

    fn check_compatible(&self, other: &Cochain) -> Result<(), CohomologyError> {
        if self.ring != other.ring {
            return Err(CohomologyError::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() });
        }
        if self.degree != other.degree || self.len() != other.len() {
            return Err(CohomologyError::LengthMismatch { expected: self.len(), found: other.len() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.check_compatible(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self::from_parts(self.degree, self.ring.clone(), values))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, CohomologyError> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Cochain {
        let k = BigRational::from_integer(k.clone());
        Self::from_parts(self.degree, self.ring.clone(), self.values.iter().map(|v| v * &k).collect())
    }

    /// JSON array aligned with the simplex order; non-integral values become `"p/q"` strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.values
                .iter()
                .map(|v| if v.is_integer() { bigint_to_json(&v.to_integer()) } else { serde_json::Value::from(v.to_string()) })
                .collect(),
        )
    }

    pub fn from_json(
        x: &SimplicialComplex,
        degree: usize,
        ring: CoefficientRing,
        json: &serde_json::Value,
    ) -> Result<Self, CohomologyError> {
        let bad = || CohomologyError::InvalidValue { value: json.to_string(), ring: ring.to_string() };
        let arr = json.as_array().ok_or_else(bad)?;
        let values = arr
            .iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
                serde_json::Value::String(s) => s.parse::<BigRational>().ok(),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Self::new(x, degree, ring.clone(), values)
    }
}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// δc, of degree one higher.
pub fn coboundary(x: &SimplicialComplex, c: &Cochain) -> Cochain {
    let ring = if c.ring == CoefficientRing::F2 { BoundaryRing::Mod2 } else { BoundaryRing::Integers };
    let m = x.coboundary_unchecked(c.degree, ring);
    let values = (0..m.rows())
        .map(|i| m.row(i).iter().fold(BigRational::zero(), |acc, (j, v)| acc + &c.values[*j] * BigRational::from_integer(v.clone())))
        .collect();
    Cochain::from_parts(c.degree + 1, c.ring.clone(), values)
}

pub fn is_cocycle(x: &SimplicialComplex, c: &Cochain) -> bool {
    coboundary(x, c).is_zero()
}

pub(crate) fn require_cocycle(x: &SimplicialComplex, c: &Cochain) -> Result<(), CohomologyError> {
    if c.len() != x.count(c.degree) {
        return Err(CohomologyError::LengthMismatch { expected: x.count(c.degree), found: c.len() });
    }
    if is_cocycle(x, c) {
        Ok(())
    } else {
        Err(CohomologyError::NotACocycle { degree: c.degree })
    }
}

/// Front-face/back-face product: `(a ∪ b)(v₀…v_{p+q}) = a(v₀…v_p) · b(v_p…v_{p+q})`.
pub fn cup(x: &SimplicialComplex, a: &Cochain, b: &Cochain) -> Result<Cochain, CohomologyError> {
    if a.ring != b.ring {
        return Err(CohomologyError::RingMismatch { left: a.ring.to_string(), right: b.ring.to_string() });
    }
    for c in [a, b] {
        if c.len() != x.count(c.degree) {
            return Err(CohomologyError::LengthMismatch { expected: x.count(c.degree), found: c.len() });
        }
    }
    let (p, q) = (a.degree, b.degree);
    let values = x
        .simplices(p + q)
        .iter()
        .map(|s| {
            let front = &a.values[x.position(&s[..=p])];
            if front.is_zero() {
                return BigRational::zero();
            }
            front * &b.values[x.position(&s[p..])]
        })
        .collect();
    Ok(Cochain::from_parts(p + q, a.ring.clone(), values))
}

/// Integral Bockstein of a mod 2 cocycle: lift to 0/1 values, apply δ, halve.
pub fn bockstein(x: &SimplicialComplex, c: &Cochain) -> Result<Cochain, CohomologyError> {
    if c.ring != CoefficientRing::F2 {
        return Err(CohomologyError::RingMismatch { left: c.ring.to_string(), right: CoefficientRing::F2.to_string() });
    }
    require_cocycle(x, c)?;
    let lift = Cochain { degree: c.degree, ring: CoefficientRing::Z, values: c.values.clone() };
    let d = coboundary(x, &lift);
    let two = BigInt::from(2);
    let halved = d
        .integer_values()
        .into_iter()
        .map(|v| {
            let (q, r) = v.div_rem(&two);
            assert!(r.is_zero(), "coboundary of a mod 2 cocycle lift is even");
            q
        })
        .collect();
    Ok(Cochain::from_integers(c.degree + 1, CoefficientRing::Z, halved))
}

/// Change of coefficients along Z → F2, Z → Z_P, Z_P → Z_P' (P ⊆ P'), or the identity.
pub fn coefficient_map(c: &Cochain, target: &CoefficientRing) -> Result<Cochain, CohomologyError> {
    let ok = match (&c.ring, target) {
        (a, b) if a == b => true,
        (CoefficientRing::Z, _) => true,
        (CoefficientRing::ZP(p), CoefficientRing::ZP(q)) => p.iter().all(|x| q.contains(x)),
        _ => false,
    };
    if !ok {
        return Err(CohomologyError::UnsupportedRingPair { from: c.ring.to_string(), to: target.to_string() });
    }
    Ok(Cochain::from_parts(c.degree, target.clone(), c.values.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unit_cocycle_is_cup_identity() {
        let x = builtin("RP2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let one = Cochain::constant_one(&x, 0, CoefficientRing::Z);
        for k in 0..=2 {
            let b = Cochain::random(&x, k, CoefficientRing::Z, &mut rng);
            assert_eq!(cup(&x, &one, &b).unwrap(), b);
            assert_eq!(cup(&x, &b, &one).unwrap(), b);
        }
    }

    #[test]
    fn leibniz_rule_on_random_cochains() {
        let x = builtin("RP2xS1").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 1), (0, 2)] {
            let a = Cochain::random(&x, p, CoefficientRing::Z, &mut rng);
            let b = Cochain::random(&x, q, CoefficientRing::Z, &mut rng);
            let lhs = coboundary(&x, &cup(&x, &a, &b).unwrap());
            let sign = BigInt::from(if p % 2 == 0 { 1 } else { -1 });
            let rhs = cup(&x, &coboundary(&x, &a), &b).unwrap().add(&cup(&x, &a, &coboundary(&x, &b)).unwrap().scale(&sign)).unwrap();
            assert_eq!(lhs, rhs, "p={p} q={q}");
        }
    }

    #[test]
    fn even_integer_cochain_reduces_to_zero() {
        let x = builtin("S2").unwrap();
        let c = Cochain::from_ints(&x, 1, CoefficientRing::Z, &[2, -4, 0, 6, 2, 8]).unwrap();
        assert!(coefficient_map(&c, &CoefficientRing::F2).unwrap().is_zero());
        assert!(coefficient_map(&coefficient_map(&c, &CoefficientRing::F2).unwrap(), &CoefficientRing::Z).is_err());
        let zp = CoefficientRing::zp(&[3]).unwrap();
        assert!(coefficient_map(&coefficient_map(&c, &zp).unwrap(), &CoefficientRing::zp(&[2, 3]).unwrap()).is_ok());
        assert!(coefficient_map(&coefficient_map(&c, &zp).unwrap(), &CoefficientRing::zp(&[2]).unwrap()).is_err());
    }

    #[test]
    fn value_validation() {
        let x = builtin("S1").unwrap();
        assert!(Cochain::from_ints(&x, 0, CoefficientRing::F2, &[0, 1, 2]).is_err());
        assert!(Cochain::from_ints(&x, 0, CoefficientRing::Z, &[0, 1]).is_err());
        let third = BigRational::new(1.into(), 3.into());
        let v = vec![third.clone(), BigRational::zero(), BigRational::zero()];
        assert!(Cochain::new(&x, 0, CoefficientRing::zp(&[3]).unwrap(), v.clone()).is_ok());
        assert!(Cochain::new(&x, 0, CoefficientRing::zp(&[2]).unwrap(), v.clone()).is_err());
        let c = Cochain::new(&x, 0, CoefficientRing::zp(&[3]).unwrap(), v).unwrap();
        assert_eq!(c.to_json().to_string(), r#"["1/3",0,0]"#);
        assert_eq!(Cochain::from_json(&x, 0, c.ring().clone(), &c.to_json()).unwrap(), c);
    }

    #[test]
    fn ring_mismatch_in_cup() {
        let x = builtin("S1").unwrap();
        let a = Cochain::zero(&x, 0, CoefficientRing::Z);
        let b = Cochain::zero(&x, 1, CoefficientRing::F2);
        assert!(matches!(cup(&x, &a, &b), Err(CohomologyError::RingMismatch { .. })));
    }

    #[test]
    fn bockstein_of_coboundary_is_coboundary_shape() {
        let x = builtin("S1").unwrap();
        let f = Cochain::from_ints(&x, 0, CoefficientRing::F2, &[1, 0, 0]).unwrap();
        let c = coboundary(&x, &f);
        let b = bockstein(&x, &c).unwrap();
        assert_eq!(b.degree(), 2);
        assert!(b.is_empty());
        let not_cocycle = Cochain::from_ints(&x, 0, CoefficientRing::F2, &[1, 0, 0]).unwrap();
        assert!(matches!(bockstein(&x, &not_cocycle), Err(CohomologyError::NotACocycle { .. })));
    }
}
