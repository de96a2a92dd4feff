use rayon::prelude::*;

use super::class::CyclicClass;
use super::word::{Letter, Word};

/// Every conjugacy class of standard length `1..=max_len`, sorted.
pub fn classes_up_to(rank: usize, max_len: usize, oriented: bool) -> Vec<CyclicClass> {
    let mut out: Vec<CyclicClass> = (0..2 * rank as u8)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut stack = vec![Letter::from_code(first)];
            extend(rank, max_len, oriented, &mut stack, &mut found);
            found
        })
        .collect();
    out.par_sort_unstable();
    out
}

fn extend(
    rank: usize,
    max_len: usize,
    oriented: bool,
    stack: &mut Vec<Letter>,
    found: &mut Vec<CyclicClass>,
) {
    let first = stack[0];
    let last = *stack.last().expect("nonempty");
    if last != first.inverse() || stack.len() == 1 {
        let word = Word::from_reduced(rank, stack.clone());
        let class = CyclicClass::from_cyclically_reduced(word, oriented);
        if class.word().letters() == stack.as_slice() {
            found.push(class);
        }
    }
    if stack.len() == max_len {
        return;
    }
    for code in 0..2 * rank as u8 {
        let l = Letter::from_code(code);
        // A canonical word starts with its least letter.
        if l == last.inverse() || l < first {
            continue;
        }
        stack.push(l);
        extend(rank, max_len, oriented, stack, found);
        stack.pop();
    }
}
