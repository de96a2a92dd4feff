//! Word metrics of finite symmetric generating sets of a free group.

mod ball;
mod genset;
mod metric;

pub(crate) use ball::word_bytes;
pub use ball::{conj_length, enumerate_ball, sphere_sizes, Ball, SphereWalker, DEFAULT_MEMORY_CAP};
pub use genset::GenSet;
pub use metric::{ClassLengthTable, WordMetric};

use crate::error::{Error, Result};
use crate::words::Word;

/// Default search budget used when verifying that a set generates.
pub const DEFAULT_GENERATION_BUDGET: u32 = 8;

pub fn build_genset<S: AsRef<str>>(rank: usize, words: &[S], budget: u32) -> Result<GenSet> {
    GenSet::build(rank, words, budget)
}

/// Exact `|g|_S` (length of the element, not its class) by meet in the middle.
pub fn word_length(g: &Word, genset: &GenSet, budget: u32) -> Result<u32> {
    if g.rank() != genset.rank() {
        return Err(Error::RankMismatch {
            left: genset.rank(),
            right: g.rank(),
        });
    }
    genset::mitm_length(genset.elements(), genset.rank(), g, budget)
        .ok_or(Error::BudgetExceeded { budget })
}
