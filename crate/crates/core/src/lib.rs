//! Exact index calculus for near-bijections of the natural numbers.
//!
//! Self-maps of ℕ are represented by an eventual tail rule (a periodic family
//! of shifts, or a constant) together with a finite exception table. This class
//! is closed under composition and contains the successor map, its left inverse,
//! the pair swap and the constant maps, which is enough to compute monosets,
//! ranges, the integer index, the constructive repair and reduction procedures,
//! and the quotient group of almost-equality classes with its index
//! homomorphism onto ℤ. A brute-force oracle over finite sets checks the
//! counting identities the infinite theory rests on.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod finiteness;
pub mod maps;
pub mod oracle;
pub mod quotient;
pub mod sample;

pub use analysis::{
    classify, complements, index, monoset_complement, range_complement, Classification, MapProfile,
};
pub use error::MapError;
pub use finiteness::{FinitenessResult, Witness};
pub use maps::{canonicalize, SelfMap, TailSpec};
