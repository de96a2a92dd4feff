use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{CyclicClass, Letter, Word};

use super::ball::{conj_length, word_bytes, SphereWalker, DEFAULT_MEMORY_CAP};
use super::genset::{mitm_length, GenSet};

/// Region searches are used while the tree neighbourhood per geodesic vertex
/// stays below this size.
const MAX_REGION_FANOUT: u64 = 4096;

/// Exact word lengths and translation lengths for one generating set.
///
/// Two exact routes are available:
///
/// - a region search: shortest `S`-paths restricted to the tree neighbourhood
///   of radius [`GenSet::excursion_depth`] around the standard geodesic, which
///   contains every `S`-geodesic;
/// - a class table built by scanning a Cayley ball once, recording for every
///   conjugacy class the first radius at which it appears.
///
/// Translation lengths use the region route when the neighbourhood is small
/// and the table otherwise.
pub struct WordMetric {
    genset: GenSet,
    excursion_depth: u32,
    memory_cap: u64,
    table: Option<ClassLengthTable>,
    ys: Vec<Word>,
}

/// First radius at which each (unoriented) conjugacy class meets the ball.
#[derive(Clone, Debug)]
pub struct ClassLengthTable {
    radius: u32,
    lengths: HashMap<CyclicClass, u32>,
}

impl ClassLengthTable {
    pub fn build(genset: &GenSet, radius: u32, memory_cap: u64) -> Result<Self> {
        let mut lengths: HashMap<CyclicClass, u32> = HashMap::new();
        let mut walker = SphereWalker::new(genset, memory_cap);
        let mut table_bytes = 0u64;
        for k in 1..=radius {
            walker.set_retained_bytes(table_bytes);
            let sphere = walker.advance()?;
            let mut classes: Vec<CyclicClass> = sphere
                .par_iter()
                .map(|g| CyclicClass::new(g, false).expect("nonidentity beyond radius 0"))
                .collect();
            classes.par_sort_unstable();
            classes.dedup();
            for class in classes {
                if let std::collections::hash_map::Entry::Vacant(e) = lengths.entry(class) {
                    table_bytes += word_bytes(e.key().len()) + 16;
                    e.insert(k);
                }
            }
        }
        Ok(ClassLengthTable { radius, lengths })
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// `Some(length)` when the class meets the ball, `None` when its
    /// translation length exceeds the table radius.
    pub fn get(&self, c: &CyclicClass) -> Option<u32> {
        if c.is_oriented() {
            self.lengths.get(&c.with_orientation(false)).copied()
        } else {
            self.lengths.get(c).copied()
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CyclicClass, u32)> {
        self.lengths.iter().map(|(c, k)| (c, *k))
    }
}

impl WordMetric {
    pub fn new(genset: GenSet) -> Self {
        let excursion_depth = genset.excursion_depth();
        let ys = standard_ball(genset.rank(), genset.max_element_len() / 2);
        WordMetric {
            genset,
            excursion_depth,
            memory_cap: DEFAULT_MEMORY_CAP,
            table: None,
            ys,
        }
    }

    pub fn with_memory_cap(mut self, cap: u64) -> Self {
        self.memory_cap = cap;
        self
    }

    /// Precomputes a class table of the given radius.
    pub fn with_class_table(mut self, radius: u32) -> Result<Self> {
        self.table = Some(ClassLengthTable::build(
            &self.genset,
            radius,
            self.memory_cap,
        )?);
        Ok(self)
    }

    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    pub fn memory_cap(&self) -> u64 {
        self.memory_cap
    }

    pub fn class_table(&self) -> Option<&ClassLengthTable> {
        self.table.as_ref()
    }

    /// Whether the region route is used for this generating set.
    pub fn uses_region_search(&self) -> bool {
        let branching = (2 * self.genset.rank() as u64).saturating_sub(1).max(1);
        branching
            .checked_pow(self.excursion_depth)
            .is_some_and(|fanout| fanout <= MAX_REGION_FANOUT)
    }

    /// Lower bound on `|g|_S` from the standard length.
    fn length_lower_bound(&self, standard_len: usize) -> u32 {
        standard_len.div_ceil(self.genset.max_element_len()) as u32
    }

    /// Exact `|g|_S` by meet in the middle.
    pub fn word_length(&self, g: &Word, budget: u32) -> Result<u32> {
        self.check_rank(g.rank())?;
        if self.uses_region_search() {
            return self
                .region_length(g, budget)
                .ok_or(Error::BudgetExceeded { budget });
        }
        mitm_length(self.genset.elements(), self.genset.rank(), g, budget)
            .ok_or(Error::BudgetExceeded { budget })
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if rank != self.genset.rank() {
            return Err(Error::RankMismatch {
                left: self.genset.rank(),
                right: rank,
            });
        }
        Ok(())
    }

    /// Shortest `S`-path from `1` to `h` inside the tree neighbourhood of
    /// `[1, h]`; exact by the excursion bound. `None` above `budget`.
    pub(crate) fn region_length(&self, h: &Word, budget: u32) -> Option<u32> {
        if h.is_identity() {
            return Some(0);
        }
        let depth = self.excursion_depth as usize;
        let m = self.genset.max_element_len();
        let target_len = h.len();
        let identity = Word::identity(h.rank());
        let mut seen: HashSet<Word> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        for d in 1..=budget {
            let mut next = Vec::new();
            for v in &frontier {
                for s in self.genset.elements() {
                    let w = v.mul_unchecked(s);
                    let prefix = w.common_prefix_len(h);
                    if prefix == target_len && w.len() == target_len {
                        return Some(d);
                    }
                    if w.len() - prefix > depth {
                        continue;
                    }
                    let remaining = (w.len() + target_len - 2 * prefix).div_ceil(m) as u32;
                    if d + remaining > budget {
                        continue;
                    }
                    if seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                return None;
            }
            frontier = next;
        }
        None
    }

    /// Exact translation length `l_S(c)`, or `None` if it exceeds `budget`.
    pub fn translation_length(&self, c: &CyclicClass, budget: u32) -> Result<Option<u32>> {
        self.check_rank(c.rank())?;
        if self.length_lower_bound(c.len()) > budget {
            return Ok(None);
        }
        if self.uses_region_search() {
            return Ok(self.near_axis_length(c.word(), budget));
        }
        if let Some(table) = &self.table {
            if let Some(k) = table.get(c) {
                return Ok((k <= budget).then_some(k));
            }
            if table.radius() >= budget {
                return Ok(None);
            }
        }
        match conj_length(c, &self.genset, budget, self.memory_cap) {
            Ok(k) => Ok(Some(k)),
            Err(Error::BudgetExceeded { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Like [`translation_length`](Self::translation_length) but treats a
    /// result above the budget as an error.
    pub fn conj_length(&self, c: &CyclicClass, budget: u32) -> Result<u32> {
        self.translation_length(c, budget)?
            .ok_or(Error::BudgetExceeded { budget })
    }

    /// Translation length of the class of the cyclically reduced word `core`
    /// via representatives near its axis.
    ///
    /// A shortest loop from `x` to `γx` maps to a tree path that crosses the
    /// axis of `γ`; some vertex of the loop sits within `floor(M/2)` of that
    /// crossing. Rotating the loop to start there and translating along the
    /// axis, the loop becomes an `S`-geodesic for `y^-1 r y` with `r` a rotation
    /// of `core` and `|y| <= floor(M/2)`.
    fn near_axis_length(&self, core: &Word, budget: u32) -> Option<u32> {
        debug_assert!(core.is_cyclically_reduced());
        let lower = self.length_lower_bound(core.len());
        let m = self.genset.max_element_len();
        let period = crate::words::smallest_period(core.letters());
        let mut seen: HashSet<Word> = HashSet::new();
        let mut best: Option<u32> = None;
        let mut limit = budget;
        for k in 0..period {
            let rotation = core.rotate(k);
            for y in &self.ys {
                let h = y.inverse().mul_unchecked(&rotation).mul_unchecked(y);
                if h.len().div_ceil(m) as u32 > limit || !seen.insert(h.clone()) {
                    continue;
                }
                if let Some(d) = self.region_length(&h, limit) {
                    best = Some(d);
                    if d == lower {
                        return best;
                    }
                    limit = d - 1;
                }
            }
        }
        best
    }
}

/// All reduced words of standard length at most `radius`.
fn standard_ball(rank: usize, radius: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(rank)];
    let mut frontier = vec![Word::identity(rank)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for code in 0..2 * rank as u8 {
                let l = Letter::from_code(code);
                if w.last() == Some(l.inverse()) {
                    continue;
                }
                let mut letters = w.letters().to_vec();
                letters.push(l);
                next.push(Word::from_reduced(rank, letters));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
