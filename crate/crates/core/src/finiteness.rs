//! Finite-or-infinite verdicts for subsets of the naturals.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::Serializer;
use serde::Serialize;

/// Description of an infinite family of naturals contained in a set.
///
/// Every variant names a concrete infinite family: all sufficiently large
/// members of it belong to the set the witness is attached to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The map has constant tail `value`; every large natural belongs.
    ConstantTail { value: u64 },
    /// Every large natural congruent to one of `residues` mod `modulus` belongs.
    Residues { modulus: u64, residues: Vec<u64> },
    /// Tail residue classes whose images collide mod `modulus`, with a concrete
    /// pair of distinct naturals beyond the stability window sharing one image.
    Collision {
        modulus: u64,
        residues: Vec<u64>,
        pair: (u64, u64),
    },
}

impl Witness {
    /// True when the witnessed classes cover every residue, i.e. all large n.
    pub fn covers_all(&self) -> bool {
        match self {
            Witness::ConstantTail { .. } => true,
            Witness::Residues { modulus, residues }
            | Witness::Collision {
                modulus, residues, ..
            } => residues.len() as u64 == *modulus,
        }
    }

    /// Whether `n` lies in one of the witnessed residue classes.
    pub fn contains_class_of(&self, n: u64) -> bool {
        match self {
            Witness::ConstantTail { .. } => true,
            Witness::Residues { modulus, residues }
            | Witness::Collision {
                modulus, residues, ..
            } => residues.contains(&(n % modulus)),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ConstantTail { value } => write!(f, "constant tail {value}"),
            Witness::Residues { modulus, residues } => {
                if residues.len() as u64 == *modulus {
                    write!(f, "all n")
                } else {
                    write!(f, "residue {} mod {modulus}", join(residues))
                }
            }
            Witness::Collision {
                modulus,
                residues,
                pair,
            } => write!(
                f,
                "residue {} mod {modulus} collide, e.g. {} and {}",
                join(residues),
                pair.0,
                pair.1
            ),
        }
    }
}

fn join(items: &[u64]) -> String {
    items
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Either an exact finite set or an infinite verdict carrying a witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FinitenessResult {
    Finite(BTreeSet<u64>),
    Infinite(Witness),
}

impl FinitenessResult {
    pub fn is_finite(&self) -> bool {
        matches!(self, FinitenessResult::Finite(_))
    }

    pub fn finite(&self) -> Option<&BTreeSet<u64>> {
        match self {
            FinitenessResult::Finite(s) => Some(s),
            FinitenessResult::Infinite(_) => None,
        }
    }

    pub fn into_finite(self) -> Option<BTreeSet<u64>> {
        match self {
            FinitenessResult::Finite(s) => Some(s),
            FinitenessResult::Infinite(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            FinitenessResult::Finite(_) => None,
            FinitenessResult::Infinite(w) => Some(w),
        }
    }
}

/// Finite sets serialize as ascending arrays, infinite verdicts as `"infinite"`.
impl Serialize for FinitenessResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            FinitenessResult::Finite(set) => set.serialize(serializer),
            FinitenessResult::Infinite(_) => serializer.serialize_str("infinite"),
        }
    }
}

impl fmt::Display for FinitenessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinitenessResult::Finite(set) => {
                write!(f, "{{{}}}", join(&set.iter().copied().collect::<Vec<_>>()))
            }
            FinitenessResult::Infinite(w) => write!(f, "infinite ({w})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serializes_finite_and_infinite() {
        let fin = FinitenessResult::Finite([3, 1, 2].into_iter().collect());
        assert_eq!(serde_json::to_string(&fin).unwrap(), "[1,2,3]");
        let inf = FinitenessResult::Infinite(Witness::ConstantTail { value: 0 });
        assert_eq!(serde_json::to_string(&inf).unwrap(), "\"infinite\"");
    }

    #[test]
    fn witness_display() {
        let all = Witness::Residues {
            modulus: 2,
            residues: vec![0, 1],
        };
        assert_eq!(all.to_string(), "all n");
        assert!(all.covers_all());
        let one = Witness::Residues {
            modulus: 2,
            residues: vec![1],
        };
        assert_eq!(one.to_string(), "residue 1 mod 2");
        assert!(one.contains_class_of(7));
        assert!(!one.contains_class_of(8));
    }
}
