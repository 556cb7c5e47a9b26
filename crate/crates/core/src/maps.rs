//! Representable self-maps of the naturals: an eventual tail rule plus a finite
//! table of exceptions.
//!
//! A [`SelfMap`] is always held in canonical form: the tail has minimal period,
//! every exception differs from the tail value at its key (or patches a key
//! where the tail would go negative), and keys are kept sorted. Two canonical
//! maps are structurally equal exactly when they denote the same function.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::MapError;
use crate::finiteness::{FinitenessResult, Witness};

/// Eventual behaviour of a self-map of the naturals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailSpec {
    /// `n ↦ n + offsets[n mod p]` with `p = offsets.len()`.
    Periodic { offsets: Vec<i64> },
    /// `n ↦ value`.
    Constant { value: u64 },
}

impl TailSpec {
    pub fn periodic(offsets: Vec<i64>) -> Self {
        TailSpec::Periodic { offsets }
    }

    pub fn constant(value: u64) -> Self {
        TailSpec::Constant { value }
    }

    /// The period; constant tails report 1.
    pub fn period(&self) -> u64 {
        match self {
            TailSpec::Periodic { offsets } => offsets.len() as u64,
            TailSpec::Constant { .. } => 1,
        }
    }

    pub fn offsets(&self) -> Option<&[i64]> {
        match self {
            TailSpec::Periodic { offsets } => Some(offsets),
            TailSpec::Constant { .. } => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, TailSpec::Constant { .. })
    }

    /// Tail value at `n`; may be negative for small `n` on periodic tails.
    pub fn value_at(&self, n: u64) -> i128 {
        match self {
            TailSpec::Periodic { offsets } => {
                let d = offsets[(n % offsets.len() as u64) as usize];
                n as i128 + d as i128
            }
            TailSpec::Constant { value } => *value as i128,
        }
    }

    /// Largest `|d_r|`; zero for constant tails.
    pub fn max_abs_offset(&self) -> u64 {
        match self {
            TailSpec::Periodic { offsets } => {
                offsets.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0)
            }
            TailSpec::Constant { .. } => 0,
        }
    }

    /// Image of residue `r` under the induced residue map `r ↦ (r + d_r) mod p`.
    pub(crate) fn residue_image(offsets: &[i64], r: usize) -> usize {
        let p = offsets.len() as i128;
        (r as i128 + offsets[r] as i128).rem_euclid(p) as usize
    }

    /// Same function with the shortest period.
    pub fn minimized(&self) -> TailSpec {
        match self {
            TailSpec::Periodic { offsets } => {
                let p = offsets.len();
                let q = (1..=p)
                    .filter(|q| p % q == 0)
                    .find(|&q| (0..p).all(|i| offsets[i] == offsets[i % q]))
                    .unwrap_or(p);
                TailSpec::Periodic {
                    offsets: offsets[..q].to_vec(),
                }
            }
            TailSpec::Constant { value } => TailSpec::Constant { value: *value },
        }
    }

    fn validate(&self) -> Result<(), MapError> {
        if let TailSpec::Periodic { offsets } = self {
            if offsets.is_empty() {
                return Err(MapError::InvalidTail("period must be at least 1".into()));
            }
        }
        Ok(())
    }
}

/// A self-map of the naturals in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelfMap {
    tail: TailSpec,
    exceptions: BTreeMap<u64, u64>,
}

/// Build the canonical map denoted by `tail` overridden by `exceptions`.
///
/// Later duplicates of a key override earlier ones. Fails when the tail is
/// malformed or would send some non-exceptional key to a negative number.
pub fn canonicalize(
    tail: TailSpec,
    exceptions: impl IntoIterator<Item = (u64, u64)>,
) -> Result<SelfMap, MapError> {
    tail.validate()?;
    let tail = tail.minimized();
    let mut exceptions: BTreeMap<u64, u64> = exceptions.into_iter().collect();

    // negative tail values can only occur below max |d_r|
    let offending: Vec<u64> = (0..tail.max_abs_offset())
        .filter(|&n| tail.value_at(n) < 0 && !exceptions.contains_key(&n))
        .collect();
    if !offending.is_empty() {
        return Err(MapError::Totality { keys: offending });
    }

    exceptions.retain(|&k, &mut v| tail.value_at(k) != v as i128);
    Ok(SelfMap { tail, exceptions })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl SelfMap {
    /// Canonicalizing constructor; see [`canonicalize`].
    pub fn new(
        tail: TailSpec,
        exceptions: impl IntoIterator<Item = (u64, u64)>,
    ) -> Result<Self, MapError> {
        canonicalize(tail, exceptions)
    }

    /// Pure periodic tail with no exceptions.
    pub fn periodic(offsets: Vec<i64>) -> Result<Self, MapError> {
        canonicalize(TailSpec::periodic(offsets), [])
    }

    pub fn constant(value: u64) -> Self {
        SelfMap {
            tail: TailSpec::Constant { value },
            exceptions: BTreeMap::new(),
        }
    }

    pub fn identity() -> Self {
        SelfMap {
            tail: TailSpec::periodic(vec![0]),
            exceptions: BTreeMap::new(),
        }
    }

    /// The successor map `n ↦ n + 1`: injective, missing only 0.
    pub fn successor() -> Self {
        SelfMap {
            tail: TailSpec::periodic(vec![1]),
            exceptions: BTreeMap::new(),
        }
    }

    /// Left inverse of [`SelfMap::successor`] fixing 0: `0 ↦ 0`, `n ↦ n - 1`.
    pub fn predecessor() -> Self {
        SelfMap {
            tail: TailSpec::periodic(vec![-1]),
            exceptions: [(0, 0)].into_iter().collect(),
        }
    }

    /// The involution swapping `2m` and `2m + 1`.
    pub fn pair_swap() -> Self {
        SelfMap {
            tail: TailSpec::periodic(vec![1, -1]),
            exceptions: BTreeMap::new(),
        }
    }

    pub fn tail(&self) -> &TailSpec {
        &self.tail
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, u64> {
        &self.exceptions
    }

    pub fn period(&self) -> u64 {
        self.tail.period()
    }

    pub fn max_abs_offset(&self) -> u64 {
        self.tail.max_abs_offset()
    }

    /// One past the largest exception key (0 without exceptions).
    pub fn key_bound(&self) -> u64 {
        self.exceptions.keys().next_back().map_or(0, |k| k + 1)
    }

    fn max_key(&self) -> u64 {
        self.exceptions.keys().next_back().copied().unwrap_or(0)
    }

    fn max_value(&self) -> u64 {
        self.exceptions.values().copied().max().unwrap_or(0)
    }

    /// Stability window: beyond it the map acts as its pure tail, clear of
    /// every exception key and value.
    pub fn stability_window(&self) -> u64 {
        let p = self.period();
        self.max_key().max(self.max_value()).max(p) + self.max_abs_offset() + p + 1
    }

    pub fn evaluate(&self, n: u64) -> u64 {
        if let Some(&v) = self.exceptions.get(&n) {
            return v;
        }
        let v = self.tail.value_at(n);
        u64::try_from(v).unwrap_or_else(|_| {
            panic!("totality breach: tail value {v} at non-exceptional key {n}")
        })
    }

    /// Composition `self ∘ inner`.
    pub fn compose(&self, inner: &SelfMap) -> SelfMap {
        let (outer, f) = (self, inner);
        let (tail, bound) = match (&f.tail, &outer.tail) {
            (TailSpec::Constant { value }, _) => {
                (TailSpec::constant(outer.evaluate(*value)), f.key_bound())
            }
            (TailSpec::Periodic { .. }, TailSpec::Constant { value }) => (
                TailSpec::constant(*value),
                f.key_bound().max(outer.key_bound() + f.max_abs_offset()),
            ),
            (TailSpec::Periodic { offsets: df }, TailSpec::Periodic { offsets: dg }) => {
                let (pf, pg) = (df.len() as u64, dg.len() as u64);
                let period = lcm(pf, pg);
                let offsets = (0..period)
                    .map(|r| {
                        let d = df[(r % pf) as usize];
                        let image = (r as i128 + d as i128).rem_euclid(pg as i128) as usize;
                        d + dg[image]
                    })
                    .collect();
                let bound = f
                    .key_bound()
                    .max(outer.key_bound() + f.max_abs_offset())
                    .max(f.max_abs_offset() + outer.max_abs_offset());
                (TailSpec::periodic(offsets), bound)
            }
        };
        // below `bound` the composite may disagree with its tail; tabulate it
        let table = (0..bound).map(|n| (n, outer.evaluate(f.evaluate(n))));
        canonicalize(tail, table).expect("composition of total maps is total")
    }

    /// `self` composed with itself `n` times.
    pub fn power(&self, n: u32) -> SelfMap {
        let mut acc = SelfMap::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Exact preimage of `{m}`.
    pub fn preimage(&self, m: u64) -> FinitenessResult {
        match &self.tail {
            TailSpec::Constant { value } if *value == m => {
                FinitenessResult::Infinite(Witness::ConstantTail { value: *value })
            }
            _ => FinitenessResult::Finite(self.fiber(m)),
        }
    }

    /// Preimage of `{m}`, assuming it is finite (always true off a constant
    /// tail's value).
    pub(crate) fn fiber(&self, m: u64) -> BTreeSet<u64> {
        let mut out: BTreeSet<u64> = self
            .exceptions
            .iter()
            .filter(|&(_, &v)| v == m)
            .map(|(&k, _)| k)
            .collect();
        if let TailSpec::Periodic { offsets } = &self.tail {
            let p = offsets.len() as i128;
            for (r, &d) in offsets.iter().enumerate() {
                let n = m as i128 - d as i128;
                if n >= 0 && n.rem_euclid(p) == r as i128 {
                    let n = n as u64;
                    if !self.exceptions.contains_key(&n) {
                        out.insert(n);
                    }
                }
            }
        }
        out
    }

    /// The set `{n : self(n) != other(n)}`.
    pub fn disagreement(&self, other: &SelfMap) -> FinitenessResult {
        if self.tail == other.tail {
            let keys: BTreeSet<u64> = self
                .exceptions
                .keys()
                .chain(other.exceptions.keys())
                .copied()
                .collect();
            return FinitenessResult::Finite(
                keys.into_iter()
                    .filter(|&k| self.evaluate(k) != other.evaluate(k))
                    .collect(),
            );
        }
        let witness = match (&self.tail, &other.tail) {
            (TailSpec::Periodic { offsets: a }, TailSpec::Periodic { offsets: b }) => {
                let (pa, pb) = (a.len() as u64, b.len() as u64);
                let modulus = lcm(pa, pb);
                let residues = (0..modulus)
                    .filter(|r| a[(r % pa) as usize] != b[(r % pb) as usize])
                    .collect();
                Witness::Residues { modulus, residues }
            }
            // a constant differs eventually from any other tail at every point
            _ => Witness::Residues {
                modulus: 1,
                residues: vec![0],
            },
        };
        FinitenessResult::Infinite(witness)
    }

    pub fn almost_equal(&self, other: &SelfMap) -> bool {
        self.tail == other.tail
    }

    /// Same map with the given points redefined.
    pub fn with_values(&self, overrides: impl IntoIterator<Item = (u64, u64)>) -> SelfMap {
        let table = self
            .exceptions
            .iter()
            .map(|(&k, &v)| (k, v))
            .chain(overrides);
        canonicalize(self.tail.clone(), table).expect("overriding a total map keeps it total")
    }
}

impl fmt::Display for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum WireTail {
    Periodic { period: u64, offsets: Vec<i64> },
    Constant { value: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireMap {
    tail: WireTail,
    #[serde(default)]
    exceptions: Vec<(u64, u64)>,
}

impl From<&SelfMap> for WireMap {
    fn from(map: &SelfMap) -> Self {
        let tail = match &map.tail {
            TailSpec::Periodic { offsets } => WireTail::Periodic {
                period: offsets.len() as u64,
                offsets: offsets.clone(),
            },
            TailSpec::Constant { value } => WireTail::Constant { value: *value },
        };
        WireMap {
            tail,
            exceptions: map.exceptions.iter().map(|(&k, &v)| (k, v)).collect(),
        }
    }
}

impl TryFrom<WireMap> for SelfMap {
    type Error = MapError;

    fn try_from(wire: WireMap) -> Result<Self, MapError> {
        let tail = match wire.tail {
            WireTail::Periodic { period, offsets } => {
                if period as usize != offsets.len() {
                    return Err(MapError::InvalidTail(format!(
                        "period {period} but {} offsets",
                        offsets.len()
                    )));
                }
                TailSpec::Periodic { offsets }
            }
            WireTail::Constant { value } => TailSpec::Constant { value },
        };
        let mut seen = BTreeSet::new();
        if let Some((k, _)) = wire.exceptions.iter().find(|(k, _)| !seen.insert(*k)) {
            return Err(MapError::InvalidTail(format!(
                "duplicate exception key {k}"
            )));
        }
        canonicalize(tail, wire.exceptions)
    }
}

impl Serialize for SelfMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        WireMap::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SelfMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = WireMap::deserialize(deserializer)?;
        SelfMap::try_from(wire).map_err(serde::de::Error::custom)
    }
}
