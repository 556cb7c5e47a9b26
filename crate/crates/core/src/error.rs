use thiserror::Error;

use crate::finiteness::Witness;

/// Failures raised by map construction, analysis and the constructive procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("invalid tail: {0}")]
    InvalidTail(String),

    #[error("totality violated: tail value is negative at keys {keys:?} with no exception entry")]
    Totality { keys: Vec<u64> },

    #[error("preimage of {value} is infinite (constant tail)")]
    InfinitePreimage { value: u64 },

    #[error("not near-injective: monoset complement infinite, witness {witness}")]
    NotNearInjective { witness: Witness },

    #[error("not a near-bijection: {which} complement infinite, witness {witness}")]
    NotNearBijection {
        which: &'static str,
        witness: Witness,
    },

    #[error("index is {0}, expected 0 (map is not almost bijective)")]
    IndexNonzero(i64),

    #[error("index is {0}, expected a non-positive index")]
    IndexPositive(i64),

    #[error("index is {0}, expected a non-negative index")]
    IndexNegative(i64),

    #[error("indices differ: ind(f) = {0}, ind(g) = {1}")]
    IndexMismatch(i64, i64),

    #[error("not surjective: range complement is {0:?}")]
    NotSurjective(Vec<u64>),

    #[error("fibers do not match over {value}: |f fiber| = {f_size}, |g fiber| = {g_size}")]
    FibersMismatch {
        value: u64,
        f_size: usize,
        g_size: usize,
    },

    #[error("construction check failed: {0}")]
    CheckFailed(String),

    #[error("finite map invalid: {0}")]
    InvalidFiniteMap(String),
}
