//! Free-group words, canonical conjugacy classes and automorphisms.
//!
//! Text encoding: `a`..`z` are the generators, uppercase letters their inverses,
//! so `abAB` is the commutator `a b a^-1 b^-1`.

mod automorphism;
mod class;
mod enumerate;
mod word;

pub use automorphism::FreeAutomorphism;
pub use class::CyclicClass;
pub use enumerate::classes_up_to;
pub use word::{Letter, Word, WordText, MAX_TEXT_RANK};

pub(crate) use class::smallest_period;

/// Convenience: canonical class of `u`.
pub fn canonical_class(u: &Word, oriented: bool) -> crate::Result<CyclicClass> {
    CyclicClass::new(u, oriented)
}
