use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

/// Finite symmetric generating set `S` of a free group, as words in the standard basis.
#[derive(Clone, PartialEq, Eq)]
pub struct GenSet {
    rank: usize,
    elements: Vec<Word>,
    /// Longest element in the standard basis.
    max_element_len: usize,
    /// Largest `S`-length of a standard generator.
    max_generator_length: u32,
}

impl GenSet {
    /// Takes the symmetric closure of `words` and checks that every standard
    /// generator has `S`-length at most `budget`.
    pub fn new(rank: usize, words: Vec<Word>, budget: u32) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Config("rank must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for w in words {
            if w.rank() != rank {
                return Err(Error::RankMismatch {
                    left: rank,
                    right: w.rank(),
                });
            }
            if w.is_identity() {
                continue;
            }
            set.insert(w.inverse());
            set.insert(w);
        }
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let elements: Vec<Word> = set.into_iter().collect();
        let max_element_len = elements.iter().map(Word::len).max().unwrap_or(0);

        let mut max_generator_length = 0;
        for g in 0..rank {
            let x = Word::generator(rank, g);
            match mitm_length(&elements, rank, &x, budget) {
                Some(d) => max_generator_length = max_generator_length.max(d),
                None => {
                    return Err(Error::NotGenerating {
                        generator: x.to_text(),
                        budget,
                    })
                }
            }
        }
        Ok(GenSet {
            rank,
            elements,
            max_element_len,
            max_generator_length,
        })
    }

    /// Parses text-encoded words (e.g. `["a", "b", "aaaaa"]`).
    pub fn build<S: AsRef<str>>(rank: usize, texts: &[S], budget: u32) -> Result<Self> {
        if texts.is_empty() {
            return Err(Error::EmptySet);
        }
        let words = texts
            .iter()
            .map(|t| Word::parse(rank, t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        GenSet::new(rank, words, budget)
    }

    /// The standard basis and its inverses.
    pub fn standard(rank: usize) -> Self {
        let elements = (0..2 * rank)
            .map(|code| Word::from_reduced(rank, vec![Letter::from_code(code as u8)]))
            .collect();
        GenSet {
            rank,
            elements,
            max_element_len: 1,
            max_generator_length: 1,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Sorted, symmetric, duplicate-free.
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max_element_len(&self) -> usize {
        self.max_element_len
    }

    pub fn max_generator_length(&self) -> u32 {
        self.max_generator_length
    }

    pub fn is_standard(&self) -> bool {
        self.max_element_len == 1 && self.elements.len() == 2 * self.rank
    }

    /// Every vertex of every `S`-geodesic from `1` to `h` lies within this
    /// standard-basis distance of the tree geodesic `[1, h]`.
    ///
    /// An excursion into a branch at `q` leaves from a vertex at tree distance
    /// `α <= M - 1` before `q` and returns to one at `β <= M - 1` after it; the
    /// geodesic spends at most `K (α + β)` steps in between and moves at most
    /// `M` per step, so the depth is at most `(MK - 1)(M - 1)`.
    pub fn excursion_depth(&self) -> u32 {
        let m = self.max_element_len as u32;
        let k = self.max_generator_length;
        (m * k).saturating_sub(1) * m.saturating_sub(1)
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.elements.iter().map(Word::to_text).collect()
    }
}

impl fmt::Debug for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GenSet(rank {}, {{", self.rank)?;
        for (i, w) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "}})")
    }
}

/// Exact `S`-length of `g` by meet in the middle, or `None` above `budget`.
///
/// If `|g|_S = k` then the midpoint `u` of a geodesic satisfies
/// `|u|_S, |u^-1 g|_S <= ceil(k/2)`, so growing one ball to radius
/// `ceil(k/2)` and looking up `u^-1 g` finds `k`; no pair can undercut it.
pub(crate) fn mitm_length(elements: &[Word], rank: usize, g: &Word, budget: u32) -> Option<u32> {
    if g.is_identity() {
        return Some(0);
    }
    let mut lengths: HashMap<Word, u32> = HashMap::new();
    let identity = Word::identity(rank);
    lengths.insert(identity.clone(), 0);
    let mut frontier = vec![identity];
    let max_radius = budget.div_ceil(2);
    for radius in 1..=max_radius {
        let mut next = Vec::new();
        for v in &frontier {
            for s in elements {
                let w = v.mul_unchecked(s);
                if !lengths.contains_key(&w) {
                    lengths.insert(w.clone(), radius);
                    next.push(w);
                }
            }
        }
        frontier = next;
        let best = lengths
            .iter()
            .filter_map(|(u, du)| {
                let rest = u.inverse().mul_unchecked(g);
                lengths.get(&rest).map(|dr| du + dr)
            })
            .min();
        if let Some(best) = best {
            return (best <= budget).then_some(best);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_basis() {
        let s = GenSet::build(2, &["a", "b"], 4).unwrap();
        assert_eq!(s.to_texts(), ["a", "A", "b", "B"]);
        assert_eq!(s, GenSet::standard(2));
        assert!(s.is_standard());
        assert_eq!(s.excursion_depth(), 0);
    }

    #[test]
    fn fifth_power_set_has_six_elements() {
        let s = GenSet::build(2, &["a", "b", "aaaaa"], 4).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s.max_element_len(), 5);
        assert_eq!(s.max_generator_length(), 1);
    }

    #[test]
    fn missing_generator_is_reported() {
        assert!(matches!(
            GenSet::build(2, &["a"], 6),
            Err(Error::NotGenerating { .. })
        ));
        assert!(matches!(
            GenSet::build::<&str>(2, &[], 6),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn generators_reached_only_through_products() {
        // a = (ab) B, b reachable directly.
        let s = GenSet::build(2, &["ab", "b"], 4).unwrap();
        assert_eq!(s.max_generator_length(), 2);
        assert_eq!(s.excursion_depth(), 3);
    }

    #[test]
    fn mitm_examples() {
        let s = GenSet::build(2, &["a", "b", "aaaaa"], 4).unwrap();
        let g = Word::parse(2, "aaaaaaaaaab").unwrap();
        assert_eq!(mitm_length(s.elements(), 2, &g, 10), Some(3));
        let a3 = Word::parse(2, "aaa").unwrap();
        assert_eq!(mitm_length(s.elements(), 2, &a3, 10), Some(3));
        let a4 = Word::parse(2, "aaaa").unwrap();
        assert_eq!(mitm_length(s.elements(), 2, &a4, 10), Some(2));
        assert_eq!(mitm_length(s.elements(), 2, &a3, 2), None);
    }
}
