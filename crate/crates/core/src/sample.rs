//! Random representable maps for sweeps and property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::maps::{SelfMap, TailSpec};

/// Size limits for random maps.
#[derive(Debug, Clone, Copy)]
pub struct SampleSpec {
    pub max_period: u64,
    pub max_offset: i64,
    pub max_exceptions: usize,
    /// Exception keys are drawn from `[0, key_range)`.
    pub key_range: u64,
    /// Exception values are drawn from `[0, value_range)`.
    pub value_range: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            max_period: 6,
            max_offset: 5,
            max_exceptions: 8,
            key_range: 24,
            value_range: 24,
        }
    }
}

/// Offsets whose residue map is a permutation, i.e. the tail of a near-bijection.
///
/// `d_r = σ(r) − r + p·k_r` for a random permutation `σ` of the residues and
/// random `k_r` keeping `|d_r| ≤ max_offset`.
pub fn random_bijective_offsets<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> Vec<i64> {
    let p = rng.gen_range(1..=spec.max_period) as i64;
    let mut sigma: Vec<i64> = (0..p).collect();
    sigma.shuffle(rng);
    sigma
        .iter()
        .enumerate()
        .map(|(r, &s)| {
            let base = s - r as i64;
            let choices: Vec<i64> = (-spec.max_offset..=spec.max_offset)
                .filter(|d| (d - base).rem_euclid(p) == 0)
                .collect();
            *choices.choose(rng).expect("base itself is within range")
        })
        .collect()
}

/// Random finite exceptions over `offsets`, patched for totality.
fn with_random_exceptions<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &SampleSpec,
    tail: TailSpec,
) -> SelfMap {
    let count = rng.gen_range(0..=spec.max_exceptions);
    let mut table: Vec<(u64, u64)> = (0..count)
        .map(|_| {
            (
                rng.gen_range(0..spec.key_range),
                rng.gen_range(0..spec.value_range),
            )
        })
        .collect();
    for n in 0..tail.max_abs_offset() {
        if tail.value_at(n) < 0 && !table.iter().any(|&(k, _)| k == n) {
            table.push((n, rng.gen_range(0..spec.value_range)));
        }
    }
    SelfMap::new(tail, table).expect("patched table is total")
}

pub fn random_near_bijection<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> SelfMap {
    let offsets = random_bijective_offsets(rng, spec);
    with_random_exceptions(rng, spec, TailSpec::periodic(offsets))
}

/// A random near-bijection whose index satisfies `accept`, by rejection.
pub fn random_near_bijection_where<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &SampleSpec,
    accept: impl Fn(i64) -> bool,
) -> SelfMap {
    loop {
        let offsets = random_bijective_offsets(rng, spec);
        let p = offsets.len() as i64;
        let index = -offsets.iter().sum::<i64>() / p;
        if accept(index) {
            return with_random_exceptions(rng, spec, TailSpec::periodic(offsets));
        }
    }
}

/// Any representable map: mostly periodic (bijective residue map or not),
/// occasionally constant.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> SelfMap {
    if rng.gen_ratio(1, 8) {
        let value = rng.gen_range(0..spec.value_range);
        return with_random_exceptions(rng, spec, TailSpec::constant(value));
    }
    let p = rng.gen_range(1..=spec.max_period) as usize;
    let offsets = (0..p)
        .map(|_| rng.gen_range(-spec.max_offset..=spec.max_offset))
        .collect();
    with_random_exceptions(rng, spec, TailSpec::periodic(offsets))
}

/// A true permutation of ℕ: a residue-block permutation `qp + r ↦ qp + σ(r)`
/// composed with a random permutation of an initial segment.
pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> SelfMap {
    let p = rng.gen_range(1..=spec.max_period) as i64;
    let mut sigma: Vec<i64> = (0..p).collect();
    sigma.shuffle(rng);
    let block = SelfMap::periodic(
        sigma
            .iter()
            .enumerate()
            .map(|(r, &s)| s - r as i64)
            .collect(),
    )
    .expect("block permutations stay within their block");

    let len = rng.gen_range(1..=12u64);
    let mut image: Vec<u64> = (0..len).collect();
    image.shuffle(rng);
    let segment = SelfMap::new(TailSpec::periodic(vec![0]), (0..len).zip(image))
        .expect("identity tail is total");
    block.compose(&segment)
}
