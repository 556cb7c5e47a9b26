//! Ranges, monosets and the integer index of representable self-maps.
//!
//! For a periodic tail `n ↦ n + d_{n mod p}` everything hinges on the residue
//! map `r ↦ (r + d_r) mod p`. When it permutes the residues the tail is
//! injective on all of ℕ, every natural beyond `max key + max|d|` is hit, and
//! so both the monoset complement and the range complement live inside the
//! stability window; they are then computed exactly by scanning it with exact
//! fibers. When it does not, colliding residue classes put infinitely many
//! points outside the monoset and the classes it misses are never attained.
//! Constant tails are neither nearly injective nor nearly surjective.
//!
//! Consequently, within the representable class, near-injective, near-surjective
//! and near-bijective coincide.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::MapError;
use crate::finiteness::{FinitenessResult, Witness};
use crate::maps::{SelfMap, TailSpec};

/// How a periodic tail's residue map fails to be a permutation.
struct ResidueDefect {
    /// Residues whose image is shared with another residue.
    colliding: Vec<u64>,
    /// One concrete colliding pair of residues.
    pair: (u64, u64),
    /// Residues not in the image.
    missing: Vec<u64>,
}

fn residue_defect(offsets: &[i64]) -> Option<ResidueDefect> {
    let p = offsets.len();
    let mut sources: Vec<Vec<u64>> = vec![Vec::new(); p];
    for r in 0..p {
        sources[TailSpec::residue_image(offsets, r)].push(r as u64);
    }
    let missing: Vec<u64> = (0..p as u64)
        .filter(|&s| sources[s as usize].is_empty())
        .collect();
    if missing.is_empty() {
        return None;
    }
    let mut colliding: Vec<u64> = sources
        .iter()
        .filter(|s| s.len() > 1)
        .flatten()
        .copied()
        .collect();
    colliding.sort_unstable();
    let first = sources
        .iter()
        .find(|s| s.len() > 1)
        .expect("non-surjective residue map collides");
    Some(ResidueDefect {
        colliding,
        pair: (first[0], first[1]),
        missing,
    })
}

/// Complement of the monoset: points sharing their image with another point.
pub fn monoset_complement(f: &SelfMap) -> FinitenessResult {
    match f.tail() {
        TailSpec::Constant { value } => {
            FinitenessResult::Infinite(Witness::ConstantTail { value: *value })
        }
        TailSpec::Periodic { offsets } => match residue_defect(offsets) {
            Some(defect) => {
                let p = offsets.len() as u64;
                let (r1, r2) = defect.pair;
                let (d1, d2) = (offsets[r1 as usize], offsets[r2 as usize]);
                // n1 beyond the window by 2·max|d| keeps its partner beyond it too
                let floor = f.stability_window() + 2 * f.max_abs_offset();
                let n1 = floor + (r1 + p - floor % p) % p;
                let n2 = (n1 as i128 + d1 as i128 - d2 as i128) as u64;
                FinitenessResult::Infinite(Witness::Collision {
                    modulus: p,
                    residues: defect.colliding,
                    pair: (n1, n2),
                })
            }
            None => FinitenessResult::Finite(
                (0..f.stability_window())
                    .filter(|&n| f.fiber(f.evaluate(n)).len() > 1)
                    .collect(),
            ),
        },
    }
}

/// Naturals that are never attained.
pub fn range_complement(f: &SelfMap) -> FinitenessResult {
    match f.tail() {
        TailSpec::Constant { value } => {
            FinitenessResult::Infinite(Witness::ConstantTail { value: *value })
        }
        TailSpec::Periodic { offsets } => match residue_defect(offsets) {
            Some(defect) => FinitenessResult::Infinite(Witness::Residues {
                modulus: offsets.len() as u64,
                residues: defect.missing,
            }),
            None => FinitenessResult::Finite(
                (0..f.stability_window())
                    .filter(|&m| f.fiber(m).is_empty())
                    .collect(),
            ),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub near_injective: bool,
    pub near_surjective: bool,
    pub near_bijective: bool,
    pub injective: bool,
    pub surjective: bool,
}

pub fn classify(f: &SelfMap) -> Classification {
    let mono = monoset_complement(f);
    let range = range_complement(f);
    let near_injective = mono.is_finite();
    let near_surjective = range.is_finite();
    Classification {
        near_injective,
        near_surjective,
        near_bijective: near_injective && near_surjective,
        injective: mono.finite().is_some_and(BTreeSet::is_empty),
        surjective: range.finite().is_some_and(BTreeSet::is_empty),
    }
}

/// The finite complements of a near-bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complements {
    pub monoset: BTreeSet<u64>,
    pub range: BTreeSet<u64>,
    /// `f` applied to the monoset complement.
    pub image_of_monoset: BTreeSet<u64>,
}

impl Complements {
    /// `(|Ω_f′| − |f(Ω_f′)|) − |f(Ω)′|`
    pub fn index(&self) -> i64 {
        self.defect() - self.range.len() as i64
    }

    /// `|Ω_f′| − |f(Ω_f′)|`: how many points collapse onto shared values.
    pub fn defect(&self) -> i64 {
        self.monoset.len() as i64 - self.image_of_monoset.len() as i64
    }
}

/// Both complements, or the reason the map is not a near-bijection.
pub fn complements(f: &SelfMap) -> Result<Complements, MapError> {
    let monoset = match monoset_complement(f) {
        FinitenessResult::Finite(s) => s,
        FinitenessResult::Infinite(witness) => {
            return Err(MapError::NotNearBijection {
                which: "monoset",
                witness,
            })
        }
    };
    let range = match range_complement(f) {
        FinitenessResult::Finite(s) => s,
        FinitenessResult::Infinite(witness) => {
            return Err(MapError::NotNearBijection {
                which: "range",
                witness,
            })
        }
    };
    let image_of_monoset = monoset.iter().map(|&n| f.evaluate(n)).collect();
    Ok(Complements {
        monoset,
        range,
        image_of_monoset,
    })
}

/// The index of a near-bijection.
pub fn index(f: &SelfMap) -> Result<i64, MapError> {
    complements(f).map(|c| c.index())
}

/// `−(Σ_r d_r) / p` for a periodic tail whose residue map is a permutation.
///
/// This reads the index off the tail alone; exceptions never change it.
pub fn tail_index(f: &SelfMap) -> Option<i64> {
    let offsets = f.tail().offsets()?;
    if residue_defect(offsets).is_some() {
        return None;
    }
    let sum: i64 = offsets.iter().sum();
    let p = offsets.len() as i64;
    debug_assert_eq!(
        sum.rem_euclid(p),
        0,
        "offset sum of a residue permutation is divisible by p"
    );
    Some(-sum / p)
}

/// Complements and index in one report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapProfile {
    pub monoset_complement: FinitenessResult,
    pub range_complement: FinitenessResult,
    pub image_of_monoset_complement: Option<BTreeSet<u64>>,
    pub index: Option<i64>,
}

pub fn profile(f: &SelfMap) -> MapProfile {
    let monoset_complement = monoset_complement(f);
    let range_complement = range_complement(f);
    let image_of_monoset_complement = monoset_complement
        .finite()
        .map(|s| s.iter().map(|&n| f.evaluate(n)).collect::<BTreeSet<u64>>());
    let index = match (
        &image_of_monoset_complement,
        monoset_complement.finite(),
        range_complement.finite(),
    ) {
        (Some(image), Some(mono), Some(range)) => {
            Some(mono.len() as i64 - image.len() as i64 - range.len() as i64)
        }
        _ => None,
    };
    MapProfile {
        monoset_complement,
        range_complement,
        image_of_monoset_complement,
        index,
    }
}

/// Both sides of `f(Ω ∖ Ω_f) = f(Ω) ∖ f(Ω_f)`.
///
/// The left side is the pointwise image of the monoset complement. The right
/// side is a set difference taken over values below `W + max|d| + 1`, which
/// bounds every value the monoset complement can reach.
pub fn image_identity_sides(f: &SelfMap) -> Result<(BTreeSet<u64>, BTreeSet<u64>), MapError> {
    let c = complements(f)?;
    let value_bound = f.stability_window() + f.max_abs_offset() + 1;
    let scan = 0..value_bound + f.max_abs_offset() + 1;

    let mut attained = BTreeSet::new();
    let mut from_monoset = BTreeSet::new();
    for n in scan {
        let m = f.evaluate(n);
        if m < value_bound {
            attained.insert(m);
            if !c.monoset.contains(&n) {
                from_monoset.insert(m);
            }
        }
    }
    let rhs = attained.difference(&from_monoset).copied().collect();
    Ok((c.image_of_monoset, rhs))
}

pub fn image_identity_check(f: &SelfMap) -> Result<bool, MapError> {
    let (lhs, rhs) = image_identity_sides(f)?;
    Ok(lhs == rhs)
}

/// Fibers over each value the monoset complement attains.
pub fn fiber_decomposition(f: &SelfMap) -> Result<BTreeMap<u64, BTreeSet<u64>>, MapError> {
    let monoset = match monoset_complement(f) {
        FinitenessResult::Finite(s) => s,
        FinitenessResult::Infinite(witness) => return Err(MapError::NotNearInjective { witness }),
    };
    let mut out = BTreeMap::new();
    for n in monoset {
        let m = f.evaluate(n);
        out.entry(m).or_insert_with(|| f.fiber(m));
    }
    Ok(out)
}
