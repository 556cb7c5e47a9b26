//! Brute-force ground truth.
//!
//! On a finite carrier `{0, …, n−1}` every set is computed by exhaustive scan,
//! which checks the counting identities the infinite theory rests on. For
//! representable maps of ℕ, [`window_scan_profile`] recomputes monoset and range
//! complements by naive enumeration so the windowed algorithms in
//! [`crate::analysis`] can be compared against it.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::analysis::complements;
use crate::error::MapError;
use crate::maps::SelfMap;

/// A self-map of `{0, …, n−1}` given by its value table.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "WireFinite", into = "WireFinite")]
pub struct FiniteSelfMap {
    table: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireFinite {
    n: u64,
    table: Vec<u64>,
}

impl TryFrom<WireFinite> for FiniteSelfMap {
    type Error = MapError;

    fn try_from(wire: WireFinite) -> Result<Self, MapError> {
        if wire.n as usize != wire.table.len() {
            return Err(MapError::InvalidFiniteMap(format!(
                "n = {} but table has {} entries",
                wire.n,
                wire.table.len()
            )));
        }
        FiniteSelfMap::new(wire.table)
    }
}

impl From<FiniteSelfMap> for WireFinite {
    fn from(m: FiniteSelfMap) -> Self {
        WireFinite {
            n: m.table.len() as u64,
            table: m.table,
        }
    }
}

impl FiniteSelfMap {
    pub fn new(table: Vec<u64>) -> Result<Self, MapError> {
        let n = table.len() as u64;
        if n == 0 {
            return Err(MapError::InvalidFiniteMap(
                "carrier must be nonempty".into(),
            ));
        }
        if let Some(v) = table.iter().find(|&&v| v >= n) {
            return Err(MapError::InvalidFiniteMap(format!(
                "value {v} outside [0, {n})"
            )));
        }
        Ok(FiniteSelfMap { table })
    }

    pub fn identity(n: u64) -> Self {
        FiniteSelfMap {
            table: (0..n).collect(),
        }
    }

    pub fn size(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn apply(&self, x: u64) -> u64 {
        self.table[x as usize]
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &FiniteSelfMap) -> FiniteSelfMap {
        FiniteSelfMap {
            table: inner.table.iter().map(|&x| self.apply(x)).collect(),
        }
    }

    pub fn with_value(&self, point: u64, value: u64) -> Result<FiniteSelfMap, MapError> {
        let mut table = self.table.clone();
        *table.get_mut(point as usize).ok_or_else(|| {
            MapError::InvalidFiniteMap(format!("point {point} outside carrier"))
        })? = value;
        FiniteSelfMap::new(table)
    }

    fn fiber_size(&self, m: u64) -> usize {
        self.table.iter().filter(|&&v| v == m).count()
    }

    /// All `n^n` self-maps of an `n`-element set, in lexicographic order.
    pub fn all(n: u64) -> impl Iterator<Item = FiniteSelfMap> {
        let total = n.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut table = vec![0; n as usize];
            for slot in table.iter_mut().rev() {
                *slot = code % n;
                code /= n;
            }
            FiniteSelfMap { table }
        })
    }

    /// All permutations of an `n`-element set.
    pub fn permutations(n: u64) -> impl Iterator<Item = FiniteSelfMap> {
        FiniteSelfMap::all(n)
            .filter(|m| m.table.iter().collect::<BTreeSet<_>>().len() == m.table.len())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: u64) -> FiniteSelfMap {
        FiniteSelfMap {
            table: (0..n).map(|_| rng.gen_range(0..n)).collect(),
        }
    }
}

/// Monoset complement, range complement and the image of the former.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleProfile {
    pub monoset_complement: BTreeSet<u64>,
    pub range_complement: BTreeSet<u64>,
    pub image_of_monoset_complement: BTreeSet<u64>,
}

pub fn oracle_profile(m: &FiniteSelfMap) -> OracleProfile {
    let n = m.size();
    let monoset_complement: BTreeSet<u64> =
        (0..n).filter(|&x| m.fiber_size(m.apply(x)) > 1).collect();
    let range: BTreeSet<u64> = m.table.iter().copied().collect();
    OracleProfile {
        range_complement: (0..n).filter(|y| !range.contains(y)).collect(),
        image_of_monoset_complement: monoset_complement.iter().map(|&x| m.apply(x)).collect(),
        monoset_complement,
    }
}

/// `|Ω_f′| − |f(Ω_f′)| = |f(Ω)′|`
pub fn check_finite_identity(m: &FiniteSelfMap) -> bool {
    let p = oracle_profile(m);
    p.monoset_complement.len() - p.image_of_monoset_complement.len() == p.range_complement.len()
}

/// Both sides of `f(Ω ∖ Ω_f) = f(Ω) ∖ f(Ω_f)`, each computed by its own scan.
pub fn comp_identity_sides(m: &FiniteSelfMap) -> (BTreeSet<u64>, BTreeSet<u64>) {
    let n = m.size();
    let lhs = (0..n)
        .filter(|&x| m.fiber_size(m.apply(x)) > 1)
        .map(|x| m.apply(x))
        .collect();
    let range: BTreeSet<u64> = m.table.iter().copied().collect();
    let monoset_image: BTreeSet<u64> = (0..n)
        .filter(|&x| m.fiber_size(m.apply(x)) == 1)
        .map(|x| m.apply(x))
        .collect();
    (lhs, range.difference(&monoset_image).copied().collect())
}

pub fn check_comp_identity(m: &FiniteSelfMap) -> bool {
    let (lhs, rhs) = comp_identity_sides(m);
    lhs == rhs
}

/// Injective iff surjective on a finite carrier.
pub fn check_inj_iff_surj(m: &FiniteSelfMap) -> bool {
    let p = oracle_profile(m);
    p.monoset_complement.is_empty() == p.range_complement.is_empty()
}

/// Sizes entering the index: `|Ω_f′|`, `|f(Ω_f′)|`, `|f(Ω)′|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub monoset_complement: i64,
    pub image_of_monoset: i64,
    pub range_complement: i64,
}

impl Counts {
    pub fn defect(&self) -> i64 {
        self.monoset_complement - self.image_of_monoset
    }

    /// `defect − |f(Ω)′|`: the index on ℕ, always 0 on a finite carrier.
    pub fn index(&self) -> i64 {
        self.defect() - self.range_complement
    }

    fn minus(&self, other: &Counts) -> Counts {
        Counts {
            monoset_complement: self.monoset_complement - other.monoset_complement,
            image_of_monoset: self.image_of_monoset - other.image_of_monoset,
            range_complement: self.range_complement - other.range_complement,
        }
    }
}

/// A map on which a single-point edit can be replayed.
pub trait EditSubject: Sized {
    fn value(&self, n: u64) -> u64;
    fn fiber_size(&self, m: u64) -> usize;
    fn counts(&self) -> Result<Counts, MapError>;
    fn edited(&self, point: u64, value: u64) -> Result<Self, MapError>;
}

impl EditSubject for FiniteSelfMap {
    fn value(&self, n: u64) -> u64 {
        self.apply(n)
    }

    fn fiber_size(&self, m: u64) -> usize {
        FiniteSelfMap::fiber_size(self, m)
    }

    fn counts(&self) -> Result<Counts, MapError> {
        let p = oracle_profile(self);
        Ok(Counts {
            monoset_complement: p.monoset_complement.len() as i64,
            image_of_monoset: p.image_of_monoset_complement.len() as i64,
            range_complement: p.range_complement.len() as i64,
        })
    }

    fn edited(&self, point: u64, value: u64) -> Result<Self, MapError> {
        self.with_value(point, value)
    }
}

impl EditSubject for SelfMap {
    fn value(&self, n: u64) -> u64 {
        self.evaluate(n)
    }

    fn fiber_size(&self, m: u64) -> usize {
        self.fiber(m).len()
    }

    fn counts(&self) -> Result<Counts, MapError> {
        let c = complements(self)?;
        Ok(Counts {
            monoset_complement: c.monoset.len() as i64,
            image_of_monoset: c.image_of_monoset.len() as i64,
            range_complement: c.range.len() as i64,
        })
    }

    fn edited(&self, point: u64, value: u64) -> Result<Self, MapError> {
        Ok(self.with_values([(point, value)]))
    }
}

/// The four cases of a single-point edit `ω₀ ↦ ω₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EditCase {
    #[serde(rename = "no_op")]
    NoOp,
    /// `ω₁ ∉ f(Ω)`, `ω₀ ∈ Ω_f`
    #[serde(rename = "i")]
    I,
    /// `ω₁ ∉ f(Ω)`, `ω₀ ∉ Ω_f`
    #[serde(rename = "ii")]
    II,
    /// `ω₁ ∈ f(Ω)`, `ω₀ ∈ Ω_f`
    #[serde(rename = "iii")]
    III,
    /// `ω₁ ∈ f(Ω)`, `ω₀ ∉ Ω_f`
    #[serde(rename = "iv")]
    IV,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EditReport {
    pub case: EditCase,
    /// `|f⁻¹(f(ω₀))|` before the edit.
    pub old_fiber_size: usize,
    /// Whether the point already sending to `ω₁` lies in the monoset.
    pub target_in_monoset: Option<bool>,
    pub predicted: Counts,
    pub actual: Counts,
    pub index_before: i64,
    pub index_after: i64,
}

impl EditReport {
    /// Predicted and observed deltas agree and the index did not move.
    pub fn holds(&self) -> bool {
        self.predicted == self.actual && self.index_before == self.index_after
    }

    /// `(Δ|f(Ω)′|, Δ(|Ω_f′| − |f(Ω_f′)|))`
    pub fn bookkeeping(&self) -> (i64, i64) {
        (self.actual.range_complement, self.actual.defect())
    }
}

fn deltas(monoset_complement: i64, image_of_monoset: i64, range_complement: i64) -> Counts {
    Counts {
        monoset_complement,
        image_of_monoset,
        range_complement,
    }
}

/// Redefine `f` at `point` and compare the observed change in every count
/// with the change the case analysis predicts.
pub fn replay_edit<M: EditSubject>(
    f: &M,
    point: u64,
    new_value: u64,
) -> Result<EditReport, MapError> {
    let before = f.counts()?;
    let old_value = f.value(point);
    let old_fiber = f.fiber_size(old_value);
    let in_monoset = old_fiber == 1;
    let target_fiber = f.fiber_size(new_value);

    let (case, target_in_monoset, predicted) = if old_value == new_value {
        (EditCase::NoOp, None, deltas(0, 0, 0))
    } else if target_fiber == 0 {
        match (in_monoset, old_fiber) {
            // f(ω₀) is lost as a value and ω₁ gained
            (true, _) => (EditCase::I, None, deltas(0, 0, 0)),
            (false, 2) => (EditCase::II, None, deltas(-2, -1, -1)),
            (false, _) => (EditCase::II, None, deltas(-1, 0, -1)),
        }
    } else {
        let target_mono = target_fiber == 1;
        let d = match (in_monoset, old_fiber, target_mono) {
            (true, _, true) => deltas(2, 1, 1),
            (true, _, false) => deltas(1, 0, 1),
            (false, 2, true) => deltas(0, 0, 0),
            (false, 2, false) => deltas(-1, -1, 0),
            (false, _, true) => deltas(1, 1, 0),
            (false, _, false) => deltas(0, 0, 0),
        };
        (
            if in_monoset {
                EditCase::III
            } else {
                EditCase::IV
            },
            Some(target_mono),
            d,
        )
    };

    let after = f.edited(point, new_value)?.counts()?;
    Ok(EditReport {
        case,
        old_fiber_size: old_fiber,
        target_in_monoset,
        predicted,
        actual: after.minus(&before),
        index_before: before.index(),
        index_after: after.index(),
    })
}

/// Replay an edit on a finite map; also fails if the finite identity breaks.
pub fn check_edit_invariance(
    m: &FiniteSelfMap,
    point: u64,
    new_value: u64,
) -> Result<EditReport, MapError> {
    let report = replay_edit(m, point, new_value)?;
    debug_assert_eq!(report.index_before, 0);
    Ok(report)
}

/// Monoset and range complements of `f` restricted to `[0, bound)`, found by
/// naive enumeration of `f` over `[0, 2·bound)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowProfile {
    pub bound: u64,
    pub monoset_complement: BTreeSet<u64>,
    pub range_complement: BTreeSet<u64>,
}

/// Naive scan; exact for near-bijections once `bound ≥ 4·W(f)`, since every
/// collision partner and preimage of a point below `bound` then lies below
/// `2·bound`.
pub fn window_scan_profile(f: &SelfMap, bound: u64) -> WindowProfile {
    let values: Vec<u64> = (0..2 * bound).map(|n| f.evaluate(n)).collect();
    let mut hits = std::collections::HashMap::new();
    for &v in &values {
        *hits.entry(v).or_insert(0usize) += 1;
    }
    WindowProfile {
        bound,
        monoset_complement: (0..bound)
            .filter(|&n| hits[&values[n as usize]] > 1)
            .collect(),
        range_complement: (0..bound).filter(|m| !hits.contains_key(m)).collect(),
    }
}

/// Failure counts from a sweep of finite-carrier checks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub exhaustive_maps: u64,
    pub random_maps: u64,
    pub finite_identity_failures: u64,
    pub comp_identity_failures: u64,
    pub inj_iff_surj_failures: u64,
    pub edit_replays: u64,
    pub edit_failures: u64,
    pub permutation_pairs: u64,
    pub left_right_failures: u64,
}

impl SuiteReport {
    pub fn failures(&self) -> u64 {
        self.finite_identity_failures
            + self.comp_identity_failures
            + self.inj_iff_surj_failures
            + self.edit_failures
            + self.left_right_failures
    }

    fn record(&mut self, m: &FiniteSelfMap) {
        self.finite_identity_failures += u64::from(!check_finite_identity(m));
        self.comp_identity_failures += u64::from(!check_comp_identity(m));
        self.inj_iff_surj_failures += u64::from(!check_inj_iff_surj(m));
    }
}

/// Composition with a permutation on either side transforms range and monoset
/// as `π∘f(Ω) = π(f(Ω))`, `Ω_{π∘f} = Ω_f`, `f∘π(Ω) = f(Ω)`, `Ω_{f∘π} = π⁻¹(Ω_f)`.
pub fn check_left_right(f: &FiniteSelfMap, pi: &FiniteSelfMap) -> bool {
    let base = oracle_profile(f);
    let left = oracle_profile(&pi.compose(f));
    let right = oracle_profile(&f.compose(pi));
    let n = f.size();
    let image_under_pi: BTreeSet<u64> =
        base.range_complement.iter().map(|&y| pi.apply(y)).collect();
    let pulled_back: BTreeSet<u64> = (0..n)
        .filter(|&x| base.monoset_complement.contains(&pi.apply(x)))
        .collect();
    left.range_complement == image_under_pi
        && left.monoset_complement == base.monoset_complement
        && right.range_complement == base.range_complement
        && right.monoset_complement == pulled_back
}

/// Exhaustive sweep over carriers of size `1..=exhaustive_max` (identities,
/// edits and permutation transforms) followed by `random_count` random maps
/// with carriers of size `1..=random_max`.
pub fn run_suite<R: Rng + ?Sized>(
    rng: &mut R,
    exhaustive_max: u64,
    random_count: u64,
    random_max: u64,
) -> SuiteReport {
    let mut report = SuiteReport::default();
    for n in 1..=exhaustive_max {
        let perms: Vec<FiniteSelfMap> = FiniteSelfMap::permutations(n).collect();
        for m in FiniteSelfMap::all(n) {
            report.exhaustive_maps += 1;
            report.record(&m);
            for point in 0..n {
                for value in 0..n {
                    report.edit_replays += 1;
                    let ok = check_edit_invariance(&m, point, value).is_ok_and(|r| r.holds());
                    report.edit_failures += u64::from(!ok);
                }
            }
            for pi in &perms {
                report.permutation_pairs += 1;
                report.left_right_failures += u64::from(!check_left_right(&m, pi));
            }
        }
    }
    for _ in 0..random_count {
        let n = rng.gen_range(1..=random_max);
        let m = FiniteSelfMap::random(rng, n);
        report.random_maps += 1;
        report.record(&m);
        let (point, value) = (rng.gen_range(0..n), rng.gen_range(0..n));
        report.edit_replays += 1;
        let ok = check_edit_invariance(&m, point, value).is_ok_and(|r| r.holds());
        report.edit_failures += u64::from(!ok);
    }
    report
}
