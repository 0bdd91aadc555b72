use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::CohomologyError;

/// Coefficients: the integers, the field with two elements, or `Z_P = Z[1/p : p ∈ P]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientRing {
    Z,
    F2,
    /// Sorted, deduplicated, nonempty list of primes.
    ZP(Vec<u64>),
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl CoefficientRing {
    pub fn zp(primes: &[u64]) -> Result<Self, CohomologyError> {
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        if ps.is_empty() {
            return Err(CohomologyError::InvalidRing("Z_P needs at least one prime".into()));
        }
        if let Some(p) = ps.iter().find(|&&p| !is_prime(p)) {
            return Err(CohomologyError::InvalidRing(format!("{p} is not prime")));
        }
        Ok(CoefficientRing::ZP(ps))
    }

    /// Inverted primes; empty for Z and F2.
    pub fn primes(&self) -> &[u64] {
        match self {
            CoefficientRing::ZP(p) => p,
            _ => &[],
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Z => write!(f, "Z"),
            CoefficientRing::F2 => write!(f, "F2"),
            CoefficientRing::ZP(ps) => {
                let list: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "ZP:{}", list.join(","))
            }
        }
    }
}

impl FromStr for CoefficientRing {
    type Err = CohomologyError;

    /// `Z`, `F2` (or `Z2`), `ZP:2,3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "Z" => Ok(CoefficientRing::Z),
            "F2" | "Z2" | "Z/2" => Ok(CoefficientRing::F2),
            other => {
                let list = other
                    .strip_prefix("ZP:")
                    .ok_or_else(|| CohomologyError::InvalidRing(format!("unknown ring `{other}`")))?;
                let primes = list
                    .split(',')
                    .map(|p| p.trim().parse::<u64>().map_err(|_| CohomologyError::InvalidRing(format!("bad prime `{p}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                CoefficientRing::zp(&primes)
            }
        }
    }
}

impl Serialize for CoefficientRing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoefficientRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
