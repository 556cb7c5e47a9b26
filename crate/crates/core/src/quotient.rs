//! The group of almost-equality classes of representable near-bijections and
//! its index homomorphism onto ℤ.
//!
//! Two representable maps are almost equal exactly when their canonical tails
//! coincide, so a class is determined by its tail. The chosen representative
//! is the bare tail, patched to 0 wherever the tail would go negative.

use serde::Serialize;

use crate::analysis::{classify, complements};
use crate::constructions::{class_inverse, repair_to_bijection};
use crate::error::MapError;
use crate::finiteness::FinitenessResult;
use crate::maps::SelfMap;

/// An element `[f]` of the quotient group, with its index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassRep {
    #[serde(flatten)]
    representative: SelfMap,
    index: i64,
}

impl ClassRep {
    pub fn representative(&self) -> &SelfMap {
        &self.representative
    }

    /// `Ind [f] = ind(f)`.
    pub fn ind(&self) -> i64 {
        self.index
    }

    /// The group operation `[self][other] = [self ∘ other]`.
    pub fn compose(&self, other: &ClassRep) -> ClassRep {
        class_of(&self.representative.compose(&other.representative))
            .expect("near-bijections are closed under composition")
    }

    pub fn inverse(&self) -> ClassRep {
        let inv = class_inverse(&self.representative).expect("representative is a near-bijection");
        class_of(&inv).expect("class inverse is a near-bijection")
    }

    /// Membership in the kernel of `Ind`: classes of almost bijective maps.
    ///
    /// Kernel members are repaired to a bijection to confirm almost bijectivity.
    pub fn in_kernel(&self) -> bool {
        if self.index != 0 {
            return false;
        }
        let repaired = repair_to_bijection(&self.representative).expect("index-zero maps repair");
        let c = classify(&repaired);
        assert!(c.injective && c.surjective && repaired.almost_equal(&self.representative));
        true
    }

    /// `self` raised to an integer power.
    pub fn pow(&self, n: i64) -> ClassRep {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(class_identity(), |acc, _| acc.compose(&base))
    }
}

/// The class of a near-bijection.
pub fn class_of(f: &SelfMap) -> Result<ClassRep, MapError> {
    let index = complements(f)?.index();
    let tail = f.tail().clone();
    let patches: Vec<(u64, u64)> = (0..f.max_abs_offset())
        .filter(|&n| tail.value_at(n) < 0)
        .map(|n| (n, 0))
        .collect();
    let representative = SelfMap::new(tail, patches)?;
    debug_assert_eq!(complements(&representative).map(|c| c.index()), Ok(index));
    Ok(ClassRep {
        representative,
        index,
    })
}

pub fn class_identity() -> ClassRep {
    ClassRep {
        representative: SelfMap::identity(),
        index: 0,
    }
}

pub fn class_compose(a: &ClassRep, b: &ClassRep) -> ClassRep {
    a.compose(b)
}

pub fn class_inverse_op(a: &ClassRep) -> ClassRep {
    a.inverse()
}

#[allow(non_snake_case)]
pub fn Ind(a: &ClassRep) -> i64 {
    a.ind()
}

/// The splitting `n ↦ [v]ⁿ`, with `[v]⁻¹ = [u]`.
pub fn splitting(n: i64) -> ClassRep {
    let generator = if n >= 0 {
        SelfMap::predecessor()
    } else {
        SelfMap::successor()
    };
    let power = u32::try_from(n.unsigned_abs()).expect("exponent fits in u32");
    class_of(&generator.power(power)).expect("powers of the generators are near-bijections")
}

pub fn in_s(a: &ClassRep) -> bool {
    a.in_kernel()
}

/// `D(π∘u, u∘π)` for the pair swap `π` and successor `u`: infinite, so the
/// classes `[u]` and `[π]` do not commute.
pub fn noncentrality_demo() -> FinitenessResult {
    let (pi, u) = (SelfMap::pair_swap(), SelfMap::successor());
    pi.compose(&u).disagreement(&u.compose(&pi))
}

/// Whether `[f]` and `[g]` are mutually inverse units of the near-injection monoid.
pub fn is_unit_in_i(f: &SelfMap, g: &SelfMap) -> Result<bool, MapError> {
    for h in [f, g] {
        if let FinitenessResult::Infinite(witness) = crate::analysis::monoset_complement(h) {
            return Err(MapError::NotNearInjective { witness });
        }
    }
    let id = SelfMap::identity();
    let unit = g.compose(f).almost_equal(&id) && f.compose(g).almost_equal(&id);
    if unit {
        assert!(classify(f).near_bijective && classify(g).near_bijective);
    }
    Ok(unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finiteness::Witness;
    use crate::maps::TailSpec;

    fn u() -> SelfMap {
        SelfMap::successor()
    }
    fn v() -> SelfMap {
        SelfMap::predecessor()
    }
    fn pi() -> SelfMap {
        SelfMap::pair_swap()
    }
    fn class(f: &SelfMap) -> ClassRep {
        class_of(f).unwrap()
    }

    #[test]
    fn class_of_examples() {
        assert_eq!(class(&v()), class(&v().compose(&u()).compose(&v())));
        assert_eq!(class(&SelfMap::identity()), class(&pi().compose(&pi())));
        assert_ne!(class(&u()), class(&SelfMap::identity()));
        assert!(matches!(
            class_of(&SelfMap::constant(1)),
            Err(MapError::NotNearBijection { .. })
        ));
    }

    #[test]
    fn representative_keeps_only_totality_patches() {
        let f = SelfMap::new(TailSpec::periodic(vec![-3, 1]), [(0, 7), (2, 3), (9, 1)]).unwrap();
        let rep = class(&f);
        let expected = SelfMap::new(TailSpec::periodic(vec![-3, 1]), [(0, 0), (2, 0)]).unwrap();
        assert_eq!(rep.representative(), &expected);
        assert_eq!(rep.ind(), 1);
        assert!(rep.representative().almost_equal(&f));
    }

    #[test]
    fn group_operations() {
        assert_eq!(class_compose(&class(&u()), &class(&v())), class_identity());
        assert_eq!(class_compose(&class(&v()), &class(&u())), class_identity());
        assert_eq!(
            class_inverse_op(&class(&v().power(3))),
            class(&u().power(3))
        );
        let a = class(&pi().compose(&u()));
        assert_eq!(class_compose(&a, &class_identity()), a);
        assert_eq!(class_compose(&class_identity(), &a), a);
    }

    #[test]
    fn ind_values() {
        for n in 1..=8 {
            assert_eq!(Ind(&class(&v().power(n))), n as i64);
        }
        assert_eq!(Ind(&class_identity()), 0);
    }

    #[test]
    fn splitting_values() {
        assert_eq!(splitting(0), class_identity());
        assert_eq!(splitting(-3), class(&u().power(3)));
        assert_eq!(Ind(&splitting(5)), 5);
        assert_eq!(splitting(4).compose(&splitting(-7)), splitting(-3));
        assert_eq!(class(&v()).pow(-2), splitting(-2));
    }

    #[test]
    fn kernel_membership() {
        assert!(in_s(&class_identity()));
        assert!(!in_s(&class(&u())));
        assert!(in_s(&class(&pi())));
    }

    #[test]
    fn noncentrality() {
        assert_eq!(
            noncentrality_demo(),
            FinitenessResult::Infinite(Witness::Residues {
                modulus: 2,
                residues: vec![0, 1]
            })
        );
        let (pu, up) = (pi().compose(&u()), u().compose(&pi()));
        for n in 0..50 {
            if n % 2 == 0 {
                assert_eq!(pu.evaluate(n), n);
                assert_eq!(up.evaluate(n), n + 2);
            } else {
                assert_eq!(up.evaluate(n), n);
                assert_eq!(pu.evaluate(n), n + 2);
            }
        }
    }

    #[test]
    fn units() {
        assert_eq!(is_unit_in_i(&u(), &v()), Ok(true));
        assert_eq!(
            is_unit_in_i(&SelfMap::identity(), &SelfMap::identity()),
            Ok(true)
        );
        assert_eq!(is_unit_in_i(&u(), &u()), Ok(false));
        assert!(matches!(
            is_unit_in_i(&SelfMap::constant(3), &u()),
            Err(MapError::NotNearInjective { .. })
        ));
    }

    #[test]
    fn class_serialization() {
        assert_eq!(
            serde_json::to_string(&class(&v())).unwrap(),
            r#"{"tail":{"kind":"periodic","period":1,"offsets":[-1]},"exceptions":[[0,0]],"index":1}"#
        );
    }
}
