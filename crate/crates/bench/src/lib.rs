//! Shared fixtures for the benchmarks.

use curvecount_core::words::classes_up_to;
use curvecount_core::{CyclicClass, Word};

/// Every `stride`-th unoriented rank-2 class of length exactly `len`.
pub fn sample_classes(len: usize, stride: usize) -> Vec<CyclicClass> {
    classes_up_to(2, len, false)
        .into_iter()
        .filter(|c| c.len() == len)
        .step_by(stride.max(1))
        .collect()
}

/// `g c g^-1` for the word `by`: a representative that needs cyclic reduction.
pub fn conjugated(c: &CyclicClass, by: &str) -> Word {
    let g = Word::parse(2, by).expect("valid word");
    g.multiply(c.word())
        .and_then(|w| w.multiply(&g.inverse()))
        .expect("same rank")
}
