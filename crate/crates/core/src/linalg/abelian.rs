//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};

/// `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_m` with every `tᵢ ≥ 2` and `tᵢ | tᵢ₊₁`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(with = "bigint_list")]
    pub torsion: Vec<BigInt>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `(Z/2)^n`.
    pub fn elementary_2(n: usize) -> Self {
        FgAbelianGroup { free_rank: 0, torsion: vec![BigInt::from(2); n] }
    }

    /// Canonical form of `Z^free ⊕ ⊕ Z/orders[i]`; orders of 1 are dropped, orders of 0
    /// count as free summands, and the rest are merged into a divisor chain.
    pub fn from_cyclic(free: usize, orders: &[BigInt]) -> Self {
        let n = orders.len();
        let relations = IntMatrix::from_diagonal(n, n, orders);
        let mut g = cokernel_presentation(&relations);
        g.free_rank += free;
        g
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        FgAbelianGroup::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn torsion_part(&self) -> FgAbelianGroup {
        FgAbelianGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Number of cyclic summands in the canonical decomposition (free ones first).
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the i-th canonical generator; zero for free generators.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|x| *x == t).count();
            if run == 1 {
                parts.push(format!("Z/{t}"));
            } else {
                parts.push(format!("(Z/{t})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `Z^cols / rowspan(a)`: each row of `a` is a relation among `cols` generators.
pub fn cokernel_presentation(a: &IntMatrix) -> FgAbelianGroup {
    AbelianPresentation::new(a).group
}

/// A presented group together with the change of coordinates to its canonical form.
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    pub group: FgAbelianGroup,
    /// Rows map raw generator coordinates to canonical coordinates (before reduction).
    to_canonical: IntMatrix,
    /// Column `i` expresses canonical generator `i` in the raw generators.
    generators: IntMatrix,
}

impl AbelianPresentation {
    /// Presentation with raw generators `0..a.cols()` and relation rows `a`.
    pub fn new(a: &IntMatrix) -> Self {
        let n = a.cols();
        let snf = smith_normal_form(a);
        let r = snf.rank();
        // raw row-coordinates x become x·V; relations become rowspan(diag d)
        let keep_torsion: Vec<usize> = (0..r).filter(|&i| !snf.d[i].is_one()).collect();
        let order: Vec<usize> = (r..n).chain(keep_torsion.iter().copied()).collect();
        let vt = snf.v.transpose();
        let mut to_canonical = IntMatrix::zeros(order.len(), n);
        let mut generators = IntMatrix::zeros(n, order.len());
        for (new, &old) in order.iter().enumerate() {
            for j in 0..n {
                to_canonical[(new, j)] = vt[(old, j)].clone();
                generators[(j, new)] = snf.v_inv[(old, j)].clone();
            }
        }
        let group = FgAbelianGroup {
            free_rank: n - r,
            torsion: keep_torsion.iter().map(|&i| snf.d[i].clone()).collect(),
        };
        AbelianPresentation { group, to_canonical, generators }
    }

    /// Canonical coordinates of the element with raw coordinates `raw`, torsion entries
    /// reduced into `0..order`.
    pub fn coordinates(&self, raw: &[BigInt]) -> Vec<BigInt> {
        let mut y = self.to_canonical.mul_vec(raw);
        reduce_coordinates(&self.group, &mut y);
        y
    }

    /// Raw coordinates of canonical generator `i`.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.generators.col(i)
    }
}

/// Reduces torsion coordinates into `0..tᵢ` in place.
pub fn reduce_coordinates(group: &FgAbelianGroup, coords: &mut [BigInt]) {
    assert_eq!(coords.len(), group.generator_count(), "coordinate length mismatch");
    for (c, t) in coords[group.free_rank..].iter_mut().zip(&group.torsion) {
        *c = c.mod_floor(t);
    }
}

pub(crate) mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let as_json: Vec<serde_json::Value> = v.iter().map(super::bigint_to_json).collect();
        as_json.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| super::bigint_from_json(v).ok_or_else(|| serde::de::Error::custom("expected an integer")))
            .collect()
    }
}

/// JSON number when the value fits in an i64, decimal string otherwise.
pub fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

pub fn bigint_from_json(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// True when every prime factor of `n` lies in `primes`.
pub fn is_smooth(n: &BigInt, primes: &[u64]) -> bool {
    let mut m = n.abs();
    if m.is_zero() {
        return false;
    }
    for &p in primes {
        let p = BigInt::from(p);
        while (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m.is_one()
}

/// Removes every prime of `primes` from `n`.
pub fn strip_primes(n: &BigInt, primes: &[u64]) -> BigInt {
    let mut m = n.abs();
    for &p in primes {
        let p = BigInt::from(p);
        while !m.is_zero() && (&m % &p).is_zero() {
            m /= &p;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel_presentation(&IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(g, FgAbelianGroup { free_rank: 0, torsion: ints(&[2]) });
        assert_eq!(cokernel_presentation(&IntMatrix::zeros(0, 3)), FgAbelianGroup::free(3));
        // Z/2 ⊕ Z/3 ≅ Z/6
        let g = cokernel_presentation(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(g, FgAbelianGroup { free_rank: 0, torsion: ints(&[6]) });
    }

    #[test]
    fn crt_merge_of_cyclic_orders() {
        let g = FgAbelianGroup::from_cyclic(1, &ints(&[4, 6, 1, 0]));
        assert_eq!(g, FgAbelianGroup { free_rank: 2, torsion: ints(&[2, 12]) });
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/12");
        assert_eq!(FgAbelianGroup::elementary_2(3).to_string(), "(Z/2)^3");
        assert_eq!(FgAbelianGroup::trivial().to_string(), "0");
    }

    #[test]
    fn presentation_coordinates_respect_relations() {
        // Z^2 / <(2, 0), (0, 3)> ≅ Z/6; generator g0 has order 2, g1 order 3
        let p = AbelianPresentation::new(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        let c0 = p.coordinates(&ints(&[1, 0]));
        let c1 = p.coordinates(&ints(&[0, 1]));
        let six = BigInt::from(6);
        assert_eq!((&c0[0] * BigInt::from(2)).mod_floor(&six), BigInt::zero());
        assert_eq!((&c1[0] * BigInt::from(3)).mod_floor(&six), BigInt::zero());
        assert_eq!(p.coordinates(&ints(&[2, 3])), ints(&[0]));
        // the canonical generator maps back to coordinate 1
        assert_eq!(p.coordinates(&p.generator(0)), ints(&[1]));
    }

    #[test]
    fn json_shape() {
        let g = FgAbelianGroup { free_rank: 0, torsion: ints(&[2]) };
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":0,"torsion":[2]}"#);
        let back: FgAbelianGroup = serde_json::from_str(r#"{"rank":1,"torsion":[2,4]}"#).unwrap();
        assert_eq!(back.torsion, ints(&[2, 4]));
    }

    #[test]
    fn smooth_numbers() {
        assert!(is_smooth(&BigInt::from(12), &[2, 3]));
        assert!(!is_smooth(&BigInt::from(10), &[2, 3]));
        assert_eq!(strip_primes(&BigInt::from(12), &[2]), BigInt::from(3));
    }

    proptest! {
        #[test]
        fn cokernel_invariant_under_permutation_and_padding(
            entries in proptest::collection::vec(-5i64..6, 9),
            swap in 0usize..3,
        ) {
            let rows: Vec<Vec<i64>> = entries.chunks(3).map(<[i64]>::to_vec).collect();
            let a = IntMatrix::from_rows(&rows);
            let g = cokernel_presentation(&a);

            let mut permuted = rows.clone();
            permuted.swap(0, swap);
            for r in permuted.iter_mut() {
                r.swap(0, 2 - swap.min(2));
            }
            // column permutation relabels generators, so the group is unchanged
            prop_assert_eq!(cokernel_presentation(&IntMatrix::from_rows(&permuted)), g.clone());

            let mut padded = rows.clone();
            padded.push(vec![0, 0, 0]);
            prop_assert_eq!(cokernel_presentation(&IntMatrix::from_rows(&padded)), g.clone());

            let with_col: Vec<Vec<i64>> = rows.iter().map(|r| { let mut r = r.clone(); r.push(0); r }).collect();
            let h = cokernel_presentation(&IntMatrix::from_rows(&with_col));
            prop_assert_eq!(h.free_rank, g.free_rank + 1);
            prop_assert_eq!(h.torsion, g.torsion);
        }
    }
}
