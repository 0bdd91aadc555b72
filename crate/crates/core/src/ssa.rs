//! K-theory coefficient data of the strongly self-absorbing UCT algebras.
//!
//! The stably finite ones are C, the Jiang–Su algebra Z and the UHF algebras M_P;
//! tensoring with O_∞ gives the purely infinite ones, and O₂ absorbs everything.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::CoefficientRing;
use crate::linalg::FgAbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SsaError {
    #[error("unknown strongly self-absorbing algebra: {0}")]
    Unknown(String),
    #[error("invalid prime set: {0}")]
    InvalidPrimes(String),
    #[error("{0} involves every prime and has no finite description")]
    SymbolicPrimes(String),
    #[error("{0} is not finitely generated")]
    NotFinitelyGenerated(String),
    #[error("{0} has vanishing K-theory")]
    VanishingK0(String),
}

/// A set of primes: finite (sorted, deduplicated) or all of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimeSet {
    Finite(Vec<u64>),
    All,
}

impl PrimeSet {
    pub fn finite(primes: &[u64]) -> Result<Self, SsaError> {
        let mut p = primes.to_vec();
        p.sort_unstable();
        p.dedup();
        if let Some(bad) = p.iter().find(|&&q| !is_prime(q)) {
            return Err(SsaError::InvalidPrimes(format!("{bad} is not prime")));
        }
        Ok(PrimeSet::Finite(p))
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        match (self, other) {
            (_, PrimeSet::All) => true,
            (PrimeSet::All, PrimeSet::Finite(_)) => false,
            (PrimeSet::Finite(a), PrimeSet::Finite(b)) => a.iter().all(|p| b.contains(p)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Finite(p) if p.is_empty())
    }

    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => is_prime(p),
            PrimeSet::Finite(ps) => ps.contains(&p),
        }
    }

    /// The primes, or an error for the symbolic set of all primes.
    pub fn primes(&self) -> Result<&[u64], SsaError> {
        match self {
            PrimeSet::Finite(p) => Ok(p),
            PrimeSet::All => Err(SsaError::SymbolicPrimes("the set of all primes".into())),
        }
    }

    fn list(&self) -> String {
        match self {
            PrimeSet::All => "all".into(),
            PrimeSet::Finite(p) => p.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn parse_primes(s: &str) -> Result<PrimeSet, SsaError> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(PrimeSet::All);
    }
    let primes: Vec<u64> = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| SsaError::InvalidPrimes(s.to_string())))
        .collect::<Result<_, _>>()?;
    if primes.is_empty() {
        return Err(SsaError::InvalidPrimes(s.to_string()));
    }
    PrimeSet::finite(&primes)
}

/// One of the strongly self-absorbing UCT algebras. `MP(PrimeSet::All)` is Q, the universal UHF algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SsaDescriptor {
    C,
    JiangSu,
    MP(PrimeSet),
    OInfty,
    MPOInfty(PrimeSet),
    O2,
}

impl SsaDescriptor {
    pub fn mp(primes: &[u64]) -> Result<Self, SsaError> {
        let p = PrimeSet::finite(primes)?;
        if p.is_empty() {
            return Err(SsaError::InvalidPrimes("M_P needs a nonempty prime set".into()));
        }
        Ok(SsaDescriptor::MP(p))
    }

    pub fn mp_oinfty(primes: &[u64]) -> Result<Self, SsaError> {
        match Self::mp(primes)? {
            SsaDescriptor::MP(p) => Ok(SsaDescriptor::MPOInfty(p)),
            _ => unreachable!(),
        }
    }

    pub fn is_purely_infinite(&self) -> bool {
        matches!(self, SsaDescriptor::OInfty | SsaDescriptor::MPOInfty(_) | SsaDescriptor::O2)
    }

    pub fn is_stably_finite(&self) -> bool {
        !self.is_purely_infinite()
    }

    pub fn prime_set(&self) -> Option<&PrimeSet> {
        match self {
            SsaDescriptor::MP(p) | SsaDescriptor::MPOInfty(p) => Some(p),
            _ => None,
        }
    }

    /// The coefficient ring for cohomology with K₀(D) coefficients.
    pub fn coefficient_ring(&self) -> Result<CoefficientRing, SsaError> {
        match k0(self) {
            K0Ring::Z => Ok(CoefficientRing::Z),
            K0Ring::ZP(p) => CoefficientRing::zp(&p).map_err(|e| SsaError::InvalidPrimes(e.to_string())),
            K0Ring::QRing => Err(SsaError::SymbolicPrimes(self.to_string())),
            K0Ring::Zero => Err(SsaError::VanishingK0(self.to_string())),
        }
    }
}

impl fmt::Display for SsaDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SsaDescriptor::C => write!(f, "C"),
            SsaDescriptor::JiangSu => write!(f, "Z"),
            SsaDescriptor::MP(PrimeSet::All) => write!(f, "Q"),
            SsaDescriptor::MP(p) => write!(f, "MP:{}", p.list()),
            SsaDescriptor::OInfty => write!(f, "OInfty"),
            SsaDescriptor::MPOInfty(PrimeSet::All) => write!(f, "QOInfty"),
            SsaDescriptor::MPOInfty(p) => write!(f, "MPOInfty:{}", p.list()),
            SsaDescriptor::O2 => write!(f, "O2"),
        }
    }
}

impl FromStr for SsaDescriptor {
    type Err = SsaError;

    fn from_str(s: &str) -> Result<Self, SsaError> {
        let t = s.trim();
        let (head, tail) = match t.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (t, None),
        };
        let with_primes = |make: fn(PrimeSet) -> SsaDescriptor| -> Result<SsaDescriptor, SsaError> {
            let p = parse_primes(tail.ok_or_else(|| SsaError::InvalidPrimes(format!("{t} needs a prime list")))?)?;
            Ok(make(p))
        };
        let plain = |d: SsaDescriptor| if tail.is_some() { Err(SsaError::Unknown(t.to_string())) } else { Ok(d) };
        match head {
            "C" => plain(SsaDescriptor::C),
            "Z" | "JiangSu" => plain(SsaDescriptor::JiangSu),
            "Q" => plain(SsaDescriptor::MP(PrimeSet::All)),
            "OInfty" | "Oinf" | "O_inf" => plain(SsaDescriptor::OInfty),
            "QOInfty" => plain(SsaDescriptor::MPOInfty(PrimeSet::All)),
            "O2" => plain(SsaDescriptor::O2),
            "MP" | "M" => with_primes(SsaDescriptor::MP),
            "MPOInfty" => with_primes(SsaDescriptor::MPOInfty),
            _ => Err(SsaError::Unknown(t.to_string())),
        }
    }
}

impl Serialize for SsaDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SsaDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Representatives of every family, used for tables and the CLI.
pub fn catalog_algebras() -> Vec<SsaDescriptor> {
    [
        "C", "Z", "MP:2", "MP:3", "MP:2,3", "Q", "OInfty", "MPOInfty:2", "MPOInfty:3", "MPOInfty:2,3", "QOInfty", "O2",
    ]
    .iter()
    .map(|s| s.parse().expect("catalog entry"))
    .collect()
}

/// K₀ as a ring: Z, Z\[1/P\], Q or 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum K0Ring {
    Z,
    ZP(Vec<u64>),
    QRing,
    Zero,
}

impl fmt::Display for K0Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K0Ring::Z => write!(f, "Z"),
            K0Ring::ZP(p) => {
                write!(f, "Z[{}]", p.iter().map(|q| format!("1/{q}")).collect::<Vec<_>>().join(", "))
            }
            K0Ring::QRing => write!(f, "Q"),
            K0Ring::Zero => write!(f, "0"),
        }
    }
}

pub fn k0(d: &SsaDescriptor) -> K0Ring {
    match d {
        SsaDescriptor::C | SsaDescriptor::JiangSu | SsaDescriptor::OInfty => K0Ring::Z,
        SsaDescriptor::MP(PrimeSet::All) | SsaDescriptor::MPOInfty(PrimeSet::All) => K0Ring::QRing,
        SsaDescriptor::MP(PrimeSet::Finite(p)) | SsaDescriptor::MPOInfty(PrimeSet::Finite(p)) => K0Ring::ZP(p.clone()),
        SsaDescriptor::O2 => K0Ring::Zero,
    }
}

/// {±1}^has_sign × (free abelian on `free_primes`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnitsGroup {
    pub has_sign: bool,
    pub free_primes: PrimeSet,
}

impl UnitsGroup {
    pub fn trivial() -> Self {
        UnitsGroup { has_sign: false, free_primes: PrimeSet::Finite(Vec::new()) }
    }

    pub fn is_trivial(&self) -> bool {
        !self.has_sign && self.free_primes.is_empty()
    }

    pub fn to_abelian(&self) -> Result<FgAbelianGroup, SsaError> {
        let rank = self.free_primes.primes().map_err(|_| SsaError::SymbolicPrimes(self.to_string()))?.len();
        let sign = if self.has_sign { FgAbelianGroup::elementary_2(1) } else { FgAbelianGroup::trivial() };
        Ok(sign.direct_sum(&FgAbelianGroup::free(rank)))
    }
}

impl fmt::Display for UnitsGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.has_sign {
            parts.push("{±1}".to_string());
        }
        match &self.free_primes {
            PrimeSet::All => parts.push("⟨all primes⟩".into()),
            PrimeSet::Finite(p) if !p.is_empty() => parts.push(format!("⟨{}⟩", self.free_primes.list())),
            _ => {}
        }
        if parts.is_empty() {
            write!(f, "{{1}}")
        } else {
            write!(f, "{}", parts.join(" × "))
        }
    }
}

/// GL₁(K₀(D)).
pub fn units(d: &SsaDescriptor) -> UnitsGroup {
    match d {
        SsaDescriptor::O2 => UnitsGroup::trivial(),
        SsaDescriptor::MP(p) | SsaDescriptor::MPOInfty(p) => UnitsGroup { has_sign: true, free_primes: p.clone() },
        _ => UnitsGroup { has_sign: true, free_primes: PrimeSet::Finite(Vec::new()) },
    }
}

/// Units represented by projections in D ⊗ K; all units when D is purely infinite.
pub fn positive_units(d: &SsaDescriptor) -> UnitsGroup {
    let u = units(d);
    if d.is_purely_infinite() {
        u
    } else {
        UnitsGroup { has_sign: false, ..u }
    }
}

/// A group appearing in the coefficient tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientGroup {
    Trivial,
    Units(UnitsGroup),
    Additive(K0Ring),
    /// Z/2 × the given units.
    GradedUnits(UnitsGroup),
}

impl CoefficientGroup {
    pub fn is_trivial(&self) -> bool {
        match self {
            CoefficientGroup::Trivial => true,
            CoefficientGroup::Units(u) => u.is_trivial(),
            CoefficientGroup::Additive(r) => *r == K0Ring::Zero,
            CoefficientGroup::GradedUnits(_) => false,
        }
    }

    /// The group as a finitely generated abelian group, when it is one.
    pub fn to_abelian(&self) -> Result<FgAbelianGroup, SsaError> {
        match self {
            CoefficientGroup::Trivial => Ok(FgAbelianGroup::trivial()),
            CoefficientGroup::Units(u) => u.to_abelian(),
            CoefficientGroup::GradedUnits(u) => Ok(FgAbelianGroup::elementary_2(1).direct_sum(&u.to_abelian()?)),
            CoefficientGroup::Additive(K0Ring::Z) => Ok(FgAbelianGroup::free(1)),
            CoefficientGroup::Additive(K0Ring::Zero) => Ok(FgAbelianGroup::trivial()),
            CoefficientGroup::Additive(r) => Err(SsaError::NotFinitelyGenerated(r.to_string())),
        }
    }
}

impl fmt::Display for CoefficientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientGroup::Trivial => write!(f, "0"),
            CoefficientGroup::Units(u) => write!(f, "{u}"),
            CoefficientGroup::Additive(r) => write!(f, "{r}"),
            CoefficientGroup::GradedUnits(u) if u.is_trivial() => write!(f, "Z/2"),
            CoefficientGroup::GradedUnits(u) => write!(f, "Z/2 × {u}"),
        }
    }
}

/// π_i(Aut(D ⊗ K)): positive units for i = 0, K₀(D) for even i ≥ 2 and 0 for odd i.
pub fn homotopy_groups_aut(d: &SsaDescriptor, i: usize) -> CoefficientGroup {
    if *d == SsaDescriptor::O2 {
        return CoefficientGroup::Trivial;
    }
    match i {
        0 => CoefficientGroup::Units(positive_units(d)),
        i if i % 2 == 1 => CoefficientGroup::Trivial,
        _ => CoefficientGroup::Additive(k0(d)),
    }
}

/// π₀ of the graded automorphism group: Z/2 × K₀(D)^×_+.
pub fn pi0_aut_graded(d: &SsaDescriptor) -> CoefficientGroup {
    if *d == SsaDescriptor::O2 {
        return CoefficientGroup::Trivial;
    }
    CoefficientGroup::GradedUnits(positive_units(d))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum FiniteLevel {
    C,
    Z,
    Uhf,
}

fn finite_part(d: &SsaDescriptor) -> (FiniteLevel, Option<&PrimeSet>) {
    match d {
        SsaDescriptor::C => (FiniteLevel::C, None),
        SsaDescriptor::JiangSu | SsaDescriptor::OInfty => (FiniteLevel::Z, None),
        SsaDescriptor::MP(p) | SsaDescriptor::MPOInfty(p) => (FiniteLevel::Uhf, Some(p)),
        SsaDescriptor::O2 => unreachable!(),
    }
}

/// D′ ⊗ D ≅ D′.
pub fn absorbs(d_small: &SsaDescriptor, d_big: &SsaDescriptor) -> bool {
    match (d_small, d_big) {
        (SsaDescriptor::C, _) | (_, SsaDescriptor::O2) => true,
        (SsaDescriptor::O2, _) => false,
        _ => {
            let (ls, ps) = finite_part(d_small);
            let (lb, pb) = finite_part(d_big);
            let finite_ok = match (ps, pb) {
                (Some(a), Some(b)) => a.is_subset(b),
                (Some(_), None) => false,
                _ => ls <= lb,
            };
            finite_ok && (d_small.is_stably_finite() || d_big.is_purely_infinite())
        }
    }
}
