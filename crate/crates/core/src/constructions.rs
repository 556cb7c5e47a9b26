//! Constructive procedures on near-bijections: class inverses, repair to a
//! bijection, reduction to an injection or a surjection, and synthesis of the
//! permutations `λ`, `ρ` relating two maps of equal index.
//!
//! Every free choice between finite sets of equal size is made with the
//! increasing-order bijection, and within a fiber the smallest point survives,
//! so all outputs are deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::{classify, complements, fiber_decomposition, tail_index, Complements};
use crate::error::MapError;
use crate::finiteness::FinitenessResult;
use crate::maps::{SelfMap, TailSpec};

/// Tail of the inverse of a residue-permuting periodic tail.
fn inverse_tail(offsets: &[i64]) -> TailSpec {
    let p = offsets.len();
    let mut inv = vec![0; p];
    for (r, &d) in offsets.iter().enumerate() {
        inv[TailSpec::residue_image(offsets, r)] = -d;
    }
    TailSpec::periodic(inv)
}

/// A map `g` inverting `f` on its monoset image, sending every value outside
/// `f(Ω_f)` to 0, so that `g∘f ≡ I ≡ f∘g`.
pub fn class_inverse(f: &SelfMap) -> Result<SelfMap, MapError> {
    complements(f)?;
    let offsets = f
        .tail()
        .offsets()
        .expect("near-bijections have periodic tails");
    // beyond this bound every value has exactly one preimage, itself beyond the window
    let bound = f.stability_window() + f.max_abs_offset() + 1;
    let table = (0..bound).map(|m| {
        let fiber = f.fiber(m);
        let value = if fiber.len() == 1 {
            *fiber.first().unwrap()
        } else {
            0
        };
        (m, value)
    });
    SelfMap::new(inverse_tail(offsets), table)
}

/// All fiber members except the smallest, in increasing order.
fn surplus_points(f: &SelfMap) -> Result<BTreeSet<u64>, MapError> {
    Ok(fiber_decomposition(f)?
        .into_values()
        .flat_map(|fiber| fiber.into_iter().skip(1))
        .collect())
}

/// Redefine `f` on `marked` (ascending) to take the smallest values of `targets`
/// in increasing order.
fn reassign(f: &SelfMap, marked: &BTreeSet<u64>, targets: &BTreeSet<u64>) -> SelfMap {
    f.with_values(marked.iter().copied().zip(targets.iter().copied()))
}

/// A bijection almost equal to an index-zero near-bijection.
///
/// Surplus fiber points are reassigned in increasing order onto the range
/// complement; the result agrees with `f` on the monoset.
pub fn repair_to_bijection(f: &SelfMap) -> Result<SelfMap, MapError> {
    let c = complements(f)?;
    match c.index() {
        0 => {}
        k => return Err(MapError::IndexNonzero(k)),
    }
    let marked = surplus_points(f)?;
    debug_assert_eq!(marked.len(), c.range.len());
    Ok(reassign(f, &marked, &c.range))
}

/// An injection `g ≡ f` with `|g(Ω)′| = −ind(f)`, for `ind(f) ≤ 0`.
pub fn reduce_to_injection(f: &SelfMap) -> Result<SelfMap, MapError> {
    let c = complements(f)?;
    let k = c.index();
    if k > 0 {
        return Err(MapError::IndexPositive(k));
    }
    let marked = surplus_points(f)?;
    Ok(reassign(f, &marked, &c.range))
}

/// Points to move when filling the range complement from the monoset complement.
///
/// Repeatedly takes the largest member of a largest fiber (ties go to the fiber
/// whose largest member is larger) so that no fiber is ever emptied.
fn surjection_marks(f: &SelfMap, c: &Complements) -> Result<BTreeSet<u64>, MapError> {
    let mut fibers: Vec<Vec<u64>> = fiber_decomposition(f)?
        .into_values()
        .map(|s| s.into_iter().collect())
        .collect();
    let mut marked = BTreeSet::new();
    for _ in 0..c.range.len() {
        let fiber = fibers
            .iter_mut()
            .filter(|fb| fb.len() > 1)
            .max_by_key(|fb| (fb.len(), *fb.last().unwrap()))
            .expect("non-negative index leaves enough surplus points");
        marked.insert(fiber.pop().unwrap());
    }
    Ok(marked)
}

/// A surjection `g ≡ f` with `|Ω_g′| − |g(Ω_g′)| = ind(f)`, for `ind(f) ≥ 0`.
pub fn reduce_to_surjection(f: &SelfMap) -> Result<SelfMap, MapError> {
    let c = complements(f)?;
    let k = c.index();
    if k < 0 {
        return Err(MapError::IndexNegative(k));
    }
    let marked = surjection_marks(f, &c)?;
    Ok(reassign(f, &marked, &c.range))
}

/// Which reduction the synthesis went through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthesisRoute {
    /// Both maps reduced to injections (index ≤ 0).
    Injective,
    /// Both maps reduced to surjections (index > 0).
    Surjective,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: &'static str,
    pub holds: bool,
}

/// Permutations `λ`, `ρ` with `λ∘f ≡ g ≡ f∘ρ`, plus everything checked on the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SynthesisCertificate {
    pub f: SelfMap,
    pub g: SelfMap,
    pub index: i64,
    pub route: SynthesisRoute,
    pub reduced_f: SelfMap,
    pub reduced_g: SelfMap,
    pub lambda: SelfMap,
    pub rho: SelfMap,
    /// `D(λ∘f, g)`
    pub lambda_residual: FinitenessResult,
    /// `D(g, f∘ρ)`
    pub rho_residual: FinitenessResult,
    /// Whether `f ≡ g∘ρ` also happens to hold (the reverse orientation).
    pub rho_reverse_orientation: bool,
    pub checks: Vec<NamedCheck>,
}

impl SynthesisCertificate {
    /// Every named check holds and both residuals are finite.
    pub fn verified(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
            && self.lambda_residual.is_finite()
            && self.rho_residual.is_finite()
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.holds)
    }
}

fn is_permutation(map: &SelfMap) -> bool {
    let c = classify(map);
    let balanced = map
        .tail()
        .offsets()
        .is_some_and(|d| d.iter().sum::<i64>() == 0);
    c.injective && c.surjective && tail_index(map) == Some(0) && balanced
}

fn increasing_pairs(from: &BTreeSet<u64>, to: &BTreeSet<u64>) -> Vec<(u64, u64)> {
    from.iter().copied().zip(to.iter().copied()).collect()
}

fn subset(result: &FinitenessResult, allowed: &BTreeSet<u64>) -> bool {
    result.finite().is_some_and(|s| s.is_subset(allowed))
}

/// Permutations relating two near-bijections of equal index.
///
/// Both maps are first reduced to injections (index ≤ 0) or surjections
/// (index > 0); the permutations are built on the reduced representatives
/// and certified against the originals.
pub fn synthesize_lambda_rho(f: &SelfMap, g: &SelfMap) -> Result<SynthesisCertificate, MapError> {
    let (kf, kg) = (complements(f)?.index(), complements(g)?.index());
    if kf != kg {
        return Err(MapError::IndexMismatch(kf, kg));
    }
    let mut checks = Vec::new();
    let (route, reduced_f, reduced_g, lambda, rho) = if kf <= 0 {
        let rf = reduce_to_injection(f)?;
        let rg = reduce_to_injection(g)?;
        let (lambda, rho) = injective_pair(&rf, &rg, &mut checks)?;
        (SynthesisRoute::Injective, rf, rg, lambda, rho)
    } else {
        let rf = reduce_to_surjection(f)?;
        let rg = reduce_to_surjection(g)?;
        let (lambda, rho) = surjective_pair(&rf, &rg, &mut checks)?;
        (SynthesisRoute::Surjective, rf, rg, lambda, rho)
    };
    checks.push(NamedCheck {
        name: "lambda_is_permutation",
        holds: is_permutation(&lambda),
    });
    checks.push(NamedCheck {
        name: "rho_is_permutation",
        holds: is_permutation(&rho),
    });

    let lambda_residual = lambda.compose(f).disagreement(g);
    let rho_residual = g.disagreement(&f.compose(&rho));
    let rho_reverse_orientation = f.almost_equal(&g.compose(&rho));
    Ok(SynthesisCertificate {
        f: f.clone(),
        g: g.clone(),
        index: kf,
        route,
        reduced_f,
        reduced_g,
        lambda,
        rho,
        lambda_residual,
        rho_residual,
        rho_reverse_orientation,
        checks,
    })
}

/// `λ`, `ρ` for injective near-surjections `f`, `g` of equal index.
fn injective_pair(
    f: &SelfMap,
    g: &SelfMap,
    checks: &mut Vec<NamedCheck>,
) -> Result<(SelfMap, SelfMap), MapError> {
    let (cf, cg) = (complements(f)?, complements(g)?);
    let f_inv = class_inverse(f)?;

    // λ = g∘f⁻¹ on f(Ω), increasing bijection f(Ω)′ → g(Ω)′
    let lambda = g
        .compose(&f_inv)
        .with_values(increasing_pairs(&cf.range, &cg.range));
    checks.push(NamedCheck {
        name: "range_complements_equal_size",
        holds: cf.range.len() == cg.range.len(),
    });
    checks.push(NamedCheck {
        name: "lambda_exact_on_reduced",
        holds: lambda.compose(f) == *g,
    });

    // ρ = f⁻¹∘g on g⁻¹(f(Ω)), increasing bijection on the complements
    let outside: BTreeSet<u64> = cf.range.iter().flat_map(|&m| g.fiber(m)).collect();
    let target: BTreeSet<u64> = cg.range.iter().flat_map(|&m| f.fiber(m)).collect();
    checks.push(NamedCheck {
        name: "rho_complements_equal_size",
        holds: outside.len() == target.len(),
    });
    let rho = f_inv
        .compose(g)
        .with_values(increasing_pairs(&outside, &target));
    checks.push(NamedCheck {
        name: "rho_exact_off_complement",
        holds: subset(&f.compose(&rho).disagreement(g), &outside),
    });
    Ok((lambda, rho))
}

/// `λ`, `ρ` for surjective near-injections `f`, `g` of equal index.
///
/// With `A = Ω_f` and `B = Ω_g`, `λ` matches `f(A∩B)` to `g(A∩B)` and `ρ`
/// matches `B ∩ g⁻¹(f(A))` to `A ∩ f⁻¹(g(B))`; the two cardinality claims
/// that make the finite complements pair up are recorded as checks.
fn surjective_pair(
    f: &SelfMap,
    g: &SelfMap,
    checks: &mut Vec<NamedCheck>,
) -> Result<(SelfMap, SelfMap), MapError> {
    let (cf, cg) = (complements(f)?, complements(g)?);
    let (a_out, b_out) = (&cf.monoset, &cg.monoset);
    let f_inv = class_inverse(f)?;
    // everything at or beyond this bound lies in A ∩ B with images in f(A) ∩ g(B)
    let bound = 2 * (f.stability_window() + g.stability_window());

    // the unique preimage of m in the given monoset, if any
    let mono_preimage = |h: &SelfMap, m: u64| {
        let fiber = h.fiber(m);
        (fiber.len() == 1).then(|| *fiber.first().unwrap())
    };

    let f_ab_out: BTreeSet<u64> = (0..bound)
        .filter(|&m| !mono_preimage(f, m).is_some_and(|n| !b_out.contains(&n)))
        .collect();
    let g_ab_out: BTreeSet<u64> = (0..bound)
        .filter(|&m| !mono_preimage(g, m).is_some_and(|n| !a_out.contains(&n)))
        .collect();
    let a_cap_b_out = b_out.difference(a_out).count();
    let b_cap_a_out = a_out.difference(b_out).count();
    checks.push(NamedCheck {
        name: "lambda_cardinality_claim",
        holds: f_ab_out.len() == g_ab_out.len(),
    });
    checks.push(NamedCheck {
        name: "lambda_decomposition_f",
        holds: f_ab_out.len() == cf.image_of_monoset.len() + a_cap_b_out,
    });
    checks.push(NamedCheck {
        name: "lambda_decomposition_g",
        holds: g_ab_out.len() == cg.image_of_monoset.len() + b_cap_a_out,
    });
    let lambda = g
        .compose(&f_inv)
        .with_values(increasing_pairs(&f_ab_out, &g_ab_out));
    let agree_set: BTreeSet<u64> = a_out.union(b_out).copied().collect();
    checks.push(NamedCheck {
        name: "lambda_exact_on_common_monoset",
        holds: subset(&lambda.compose(f).disagreement(g), &agree_set),
    });

    let rho_out: BTreeSet<u64> = (0..bound)
        .filter(|&w| b_out.contains(&w) || mono_preimage(f, g.evaluate(w)).is_none())
        .collect();
    let rho_target: BTreeSet<u64> = (0..bound)
        .filter(|&w| a_out.contains(&w) || mono_preimage(g, f.evaluate(w)).is_none())
        .collect();
    checks.push(NamedCheck {
        name: "rho_cardinality_claim",
        holds: rho_out.len() == rho_target.len(),
    });
    let rho = f_inv
        .compose(g)
        .with_values(increasing_pairs(&rho_out, &rho_target));
    checks.push(NamedCheck {
        name: "rho_exact_off_complement",
        holds: subset(&f.compose(&rho).disagreement(g), &rho_out),
    });
    Ok((lambda, rho))
}

fn require_surjective_near_injection(h: &SelfMap) -> Result<(), MapError> {
    let c = complements(h)?;
    if !c.range.is_empty() {
        return Err(MapError::NotSurjective(c.range.into_iter().collect()));
    }
    Ok(())
}

/// The first value over which the fibers of `f` and `g` disagree in size.
fn fiber_mismatch(f: &SelfMap, g: &SelfMap) -> Result<Option<MapError>, MapError> {
    require_surjective_near_injection(f)?;
    require_surjective_near_injection(g)?;
    let (ff, gf) = (fiber_decomposition(f)?, fiber_decomposition(g)?);
    let values: BTreeSet<u64> = ff.keys().chain(gf.keys()).copied().collect();
    Ok(values.into_iter().find_map(|value| {
        let (f_size, g_size) = (f.fiber(value).len(), g.fiber(value).len());
        (f_size != g_size).then_some(MapError::FibersMismatch {
            value,
            f_size,
            g_size,
        })
    }))
}

/// Whether two surjective near-injections share `f(Ω_f′) = g(Ω_g′)` with equal
/// fiber sizes over it.
pub fn fibers_match(f: &SelfMap, g: &SelfMap) -> Result<bool, MapError> {
    Ok(fiber_mismatch(f, g)?.is_none())
}

/// A permutation `ρ` with `g = f∘ρ` exactly, for surjective near-injections
/// whose fibers match.
pub fn synthesize_rho_exact(f: &SelfMap, g: &SelfMap) -> Result<SelfMap, MapError> {
    if let Some(err) = fiber_mismatch(f, g)? {
        return Err(err);
    }
    let pairs: BTreeMap<u64, u64> = fiber_decomposition(g)?
        .into_iter()
        .flat_map(|(value, g_fiber)| g_fiber.into_iter().zip(f.fiber(value)))
        .collect();
    let rho = class_inverse(f)?.compose(g).with_values(pairs);
    if f.compose(&rho) != *g {
        return Err(MapError::CheckFailed("f∘ρ = g".into()));
    }
    Ok(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{index, monoset_complement, range_complement};

    fn set(items: &[u64]) -> BTreeSet<u64> {
        items.iter().copied().collect()
    }
    fn u() -> SelfMap {
        SelfMap::successor()
    }
    fn v() -> SelfMap {
        SelfMap::predecessor()
    }
    fn pi() -> SelfMap {
        SelfMap::pair_swap()
    }
    fn id() -> SelfMap {
        SelfMap::identity()
    }
    fn swap01() -> SelfMap {
        SelfMap::new(TailSpec::periodic(vec![0]), [(0, 1)]).unwrap()
    }

    fn is_bijection(h: &SelfMap) -> bool {
        let c = classify(h);
        c.injective && c.surjective
    }

    #[test]
    fn class_inverse_examples() {
        let inv = class_inverse(&u()).unwrap();
        assert!(inv.almost_equal(&v()));
        assert_eq!(inv, v());
        assert_eq!(class_inverse(&id()).unwrap(), id());
        assert_eq!(pi().compose(&pi()), id());
        assert!(class_inverse(&pi()).unwrap().almost_equal(&pi()));
        assert!(matches!(
            class_inverse(&SelfMap::constant(3)),
            Err(MapError::NotNearBijection { .. })
        ));
    }

    #[test]
    fn class_inverse_is_two_sided() {
        for f in [
            u(),
            v(),
            pi(),
            swap01(),
            v().power(3),
            pi().compose(&u().power(2)),
        ] {
            let g = class_inverse(&f).unwrap();
            assert!(g.compose(&f).almost_equal(&id()), "{f}");
            assert!(f.compose(&g).almost_equal(&id()), "{f}");
        }
    }

    #[test]
    fn repair_examples() {
        let repaired = repair_to_bijection(&swap01()).unwrap();
        assert_eq!(
            repaired,
            SelfMap::new(TailSpec::periodic(vec![0]), [(0, 1), (1, 0)]).unwrap()
        );
        assert!(is_bijection(&repaired));
        // brute-force window check of bijectivity
        let image: BTreeSet<u64> = (0..40).map(|n| repaired.evaluate(n)).collect();
        assert_eq!(image, (0..40).collect());

        assert_eq!(repair_to_bijection(&id()).unwrap(), id());
        // u∘v is the same map as swap01; the smallest fiber member survives, so
        // the repair is the transposition, almost equal to the identity
        let repaired = repair_to_bijection(&u().compose(&v())).unwrap();
        assert_eq!(repaired, repair_to_bijection(&swap01()).unwrap());
        assert_eq!(
            repaired.disagreement(&id()),
            FinitenessResult::Finite(set(&[0, 1]))
        );
        assert_eq!(repair_to_bijection(&u()), Err(MapError::IndexNonzero(-1)));
    }

    #[test]
    fn reduce_to_injection_examples() {
        assert_eq!(reduce_to_injection(&u()).unwrap(), u());

        let f = SelfMap::new(TailSpec::periodic(vec![1]), [(0, 2)]).unwrap();
        let c = complements(&f).unwrap();
        assert_eq!(c.monoset, set(&[0, 1]));
        assert_eq!(c.range, set(&[0, 1]));
        assert_eq!(c.index(), -1);
        let g = reduce_to_injection(&f).unwrap();
        assert!(g.almost_equal(&f));
        assert_eq!(monoset_complement(&g), FinitenessResult::Finite(set(&[])));
        assert_eq!(range_complement(&g).finite().unwrap().len(), 1);
        // window brute force: injective on [0, 50)
        let image: BTreeSet<u64> = (0..50).map(|n| g.evaluate(n)).collect();
        assert_eq!(image.len(), 50);

        assert!(is_bijection(&reduce_to_injection(&swap01()).unwrap()));
        assert_eq!(reduce_to_injection(&v()), Err(MapError::IndexPositive(1)));
    }

    #[test]
    fn reduce_to_surjection_examples() {
        assert_eq!(reduce_to_surjection(&v()).unwrap(), v());
        let g = reduce_to_surjection(&swap01()).unwrap();
        assert!(is_bijection(&g));
        assert_eq!(g, repair_to_bijection(&swap01()).unwrap());
        assert_eq!(reduce_to_surjection(&v().power(2)).unwrap(), v().power(2));
        assert_eq!(reduce_to_surjection(&u()), Err(MapError::IndexNegative(-1)));
    }

    #[test]
    fn reduce_to_surjection_drains_largest_fiber() {
        // fibers {0,1,2} over 5 and {3,4} over 6; the tail covers 7 onwards
        let f = SelfMap::new(
            TailSpec::periodic(vec![2]),
            [(0, 5), (1, 5), (2, 5), (3, 6), (4, 6)],
        )
        .unwrap();
        let c = complements(&f).unwrap();
        assert_eq!(c.range, set(&[0, 1, 2, 3, 4]));
        assert_eq!(c.monoset, set(&[0, 1, 2, 3, 4]));
        assert_eq!(c.index(), -2);
        assert_eq!(reduce_to_surjection(&f), Err(MapError::IndexNegative(-2)));

        // fibers {0,1,2} over 0 and {3,6} over 5, range complement {1,2}
        let f = SelfMap::new(
            TailSpec::periodic(vec![-1]),
            [(0, 0), (1, 0), (2, 0), (3, 5)],
        )
        .unwrap();
        let c = complements(&f).unwrap();
        assert_eq!(c.monoset, set(&[0, 1, 2, 3, 6]));
        assert_eq!(c.range, set(&[1, 2]));
        assert_eq!(c.index(), 1);
        let g = reduce_to_surjection(&f).unwrap();
        // the size-3 fiber loses 2, then the tie between {0,1} and {3,6} goes to 6
        assert_eq!(g, f.with_values([(2, 1), (6, 2)]));
        assert_eq!(range_complement(&g), FinitenessResult::Finite(set(&[])));
        assert_eq!(complements(&g).unwrap().defect(), 1);
    }

    #[test]
    fn synthesize_trivial() {
        let cert = synthesize_lambda_rho(&u(), &u()).unwrap();
        assert!(cert.verified());
        assert_eq!(cert.lambda, id());
        assert_eq!(cert.rho, id());
        assert_eq!(cert.lambda_residual, FinitenessResult::Finite(set(&[])));
        assert_eq!(cert.rho_residual, FinitenessResult::Finite(set(&[])));
    }

    #[test]
    fn synthesize_negative_index() {
        let f = u().power(2);
        let g = pi().compose(&f);
        assert_eq!(index(&f), Ok(-2));
        assert_eq!(index(&g), Ok(-2));
        let cert = synthesize_lambda_rho(&f, &g).unwrap();
        assert!(cert.verified(), "{:?}", cert.checks);
        assert_eq!(cert.route, SynthesisRoute::Injective);
        assert!(cert.lambda.almost_equal(&pi()));
        assert_eq!(
            cert.lambda.disagreement(&pi()),
            FinitenessResult::Finite(set(&[0, 1]))
        );
        assert!(cert.lambda.compose(&f).almost_equal(&g));
    }

    #[test]
    fn synthesize_positive_index() {
        let g = v().compose(&pi());
        assert_eq!(index(&g), Ok(1));
        let cert = synthesize_lambda_rho(&v(), &g).unwrap();
        assert!(cert.verified(), "{:?}", cert.checks);
        assert_eq!(cert.route, SynthesisRoute::Surjective);
        assert_eq!(cert.check("lambda_cardinality_claim"), Some(true));
        assert_eq!(cert.check("rho_cardinality_claim"), Some(true));
        assert!(g.almost_equal(&v().compose(&cert.rho)));
    }

    #[test]
    fn synthesize_index_mismatch() {
        assert_eq!(
            synthesize_lambda_rho(&u(), &v()).unwrap_err(),
            MapError::IndexMismatch(-1, 1)
        );
    }

    #[test]
    fn fibers_match_examples() {
        assert!(fibers_match(&v(), &v()).unwrap());
        let g = v().compose(&pi());
        assert_eq!(
            fiber_decomposition(&g).unwrap(),
            [(0, set(&[0, 1]))].into_iter().collect()
        );
        assert!(fibers_match(&v(), &g).unwrap());
        // v² has the size-3 fiber {0,1,2} over 0
        let v2 = v().power(2);
        assert_eq!(
            fiber_decomposition(&v2).unwrap(),
            [(0, set(&[0, 1, 2]))].into_iter().collect()
        );
        assert!(!fibers_match(&v(), &v2).unwrap());
        assert!(matches!(
            fibers_match(&u(), &v()),
            Err(MapError::NotSurjective(_))
        ));
    }

    #[test]
    fn rho_exact_examples() {
        assert_eq!(synthesize_rho_exact(&v(), &v()).unwrap(), id());

        let sigma = SelfMap::new(TailSpec::periodic(vec![0]), [(1, 4), (4, 2), (2, 1)]).unwrap();
        let g = v().compose(&sigma);
        let rho = synthesize_rho_exact(&v(), &g).unwrap();
        assert_eq!(v().compose(&rho), g);

        // g(0) = 0, g(2) = 0: the fiber over 0 is {0, 2}
        let g = v().with_values([(1, 1), (2, 0)]);
        let rho = synthesize_rho_exact(&v(), &g).unwrap();
        assert_eq!(
            rho,
            SelfMap::new(TailSpec::periodic(vec![0]), [(1, 2), (2, 1)]).unwrap()
        );

        let err = synthesize_rho_exact(&v(), &v().power(2)).unwrap_err();
        assert_eq!(
            err,
            MapError::FibersMismatch {
                value: 0,
                f_size: 2,
                g_size: 3
            }
        );
    }
}
