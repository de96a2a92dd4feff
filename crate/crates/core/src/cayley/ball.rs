use std::collections::HashMap;
use std::mem::size_of;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::words::{CyclicClass, Word};

use super::genset::GenSet;

/// Default memory cap for ball enumeration: 8 GiB.
pub const DEFAULT_MEMORY_CAP: u64 = 8 << 30;

/// Rough heap footprint of one stored ball element.
pub(crate) fn word_bytes(len: usize) -> u64 {
    (size_of::<Word>() + len.next_multiple_of(8) + 16) as u64
}

/// Breadth-first walk through the spheres of the Cayley graph of `S`.
///
/// Only the two most recent spheres are retained: in a Cayley graph a
/// neighbour of a vertex in sphere `k` lies in sphere `k - 1`, `k` or `k + 1`,
/// so those two suffice for deduplication. Spheres are sorted, which makes the
/// output independent of how the work is split across threads.
pub struct SphereWalker<'a> {
    genset: &'a GenSet,
    previous: Vec<Word>,
    current: Vec<Word>,
    radius: u32,
    memory_cap: u64,
    retained_bytes: u64,
}

impl<'a> SphereWalker<'a> {
    pub fn new(genset: &'a GenSet, memory_cap: u64) -> Self {
        SphereWalker {
            genset,
            previous: Vec::new(),
            current: vec![Word::identity(genset.rank())],
            radius: 0,
            memory_cap,
            retained_bytes: 0,
        }
    }

    /// Bytes the caller keeps from earlier spheres; counted against the cap.
    pub fn set_retained_bytes(&mut self, bytes: u64) {
        self.retained_bytes = bytes;
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// The sphere at the current radius.
    pub fn sphere(&self) -> &[Word] {
        &self.current
    }

    pub fn into_sphere(self) -> Vec<Word> {
        self.current
    }

    /// Advances to the next sphere.
    pub fn advance(&mut self) -> Result<&[Word]> {
        let elements = self.genset.elements();
        let longest =
            self.current.iter().map(Word::len).max().unwrap_or(0) + self.genset.max_element_len();
        let held = sphere_bytes(&self.previous) + sphere_bytes(&self.current);
        // Collecting the candidates briefly holds two copies of their headers.
        let per_candidate = word_bytes(longest) + size_of::<Word>() as u64;
        let candidate_bytes = self.current.len() as u64 * elements.len() as u64 * per_candidate;
        let needed = self.retained_bytes + held + candidate_bytes;
        if needed > self.memory_cap {
            return Err(Error::MemoryBudgetExceeded {
                needed,
                cap: self.memory_cap,
            });
        }

        let previous = &self.previous;
        let current = &self.current;
        let candidates: Vec<Word> = current
            .par_iter()
            .flat_map_iter(|g| {
                elements.iter().filter_map(move |s| {
                    let h = g.mul_unchecked(s);
                    let known =
                        previous.binary_search(&h).is_ok() || current.binary_search(&h).is_ok();
                    (!known).then_some(h)
                })
            })
            .collect();

        let mut next = candidates;
        next.par_sort_unstable();
        next.dedup();
        next.shrink_to_fit();

        self.previous = std::mem::replace(&mut self.current, next);
        self.radius += 1;
        Ok(&self.current)
    }
}

pub(crate) fn sphere_bytes(sphere: &[Word]) -> u64 {
    sphere.iter().map(|w| word_bytes(w.len())).sum()
}

/// Metric ball `{g : |g|_S <= radius}` with exact lengths.
#[derive(Clone, Debug)]
pub struct Ball {
    genset: GenSet,
    spheres: Vec<Vec<Word>>,
}

impl Ball {
    pub fn genset(&self) -> &GenSet {
        &self.genset
    }

    pub fn radius(&self) -> u32 {
        self.spheres.len() as u32 - 1
    }

    /// Sorted elements at exact distance `k`.
    pub fn sphere(&self, k: u32) -> &[Word] {
        &self.spheres[k as usize]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `S`-length of `g` if it lies in the ball.
    pub fn length_of(&self, g: &Word) -> Option<u32> {
        self.spheres
            .iter()
            .position(|sphere| sphere.binary_search(g).is_ok())
            .map(|k| k as u32)
    }

    /// Elements with their lengths, by increasing length then word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, u32)> {
        self.spheres
            .iter()
            .enumerate()
            .flat_map(|(k, sphere)| sphere.iter().map(move |w| (w, k as u32)))
    }

    pub fn to_map(&self) -> HashMap<Word, u32> {
        self.iter().map(|(w, k)| (w.clone(), k)).collect()
    }
}

/// The exact ball of radius `radius`.
pub fn enumerate_ball(genset: &GenSet, radius: u32, memory_cap: u64) -> Result<Ball> {
    let mut walker = SphereWalker::new(genset, memory_cap);
    let mut spheres = vec![walker.sphere().to_vec()];
    let mut stored = sphere_bytes(&spheres[0]);
    for _ in 0..radius {
        walker.set_retained_bytes(stored);
        let sphere = walker.advance()?.to_vec();
        stored += sphere_bytes(&sphere);
        spheres.push(sphere);
    }
    Ok(Ball {
        genset: genset.clone(),
        spheres,
    })
}

/// Sizes of the spheres of radius `0..=radius`.
pub fn sphere_sizes(genset: &GenSet, radius: u32, memory_cap: u64) -> Result<Vec<usize>> {
    let mut walker = SphereWalker::new(genset, memory_cap);
    let mut sizes = vec![1];
    for _ in 0..radius {
        sizes.push(walker.advance()?.len());
    }
    Ok(sizes)
}

/// Translation length of a conjugacy class by scanning spheres of increasing
/// radius until some element of the class appears.
pub fn conj_length(c: &CyclicClass, genset: &GenSet, budget: u32, memory_cap: u64) -> Result<u32> {
    let target = c.with_orientation(false);
    let mut walker = SphereWalker::new(genset, memory_cap);
    // Every element has standard length at most M times its S-length.
    let min_radius = c.len().div_ceil(genset.max_element_len()) as u32;
    for radius in 1..=budget {
        let sphere = walker.advance()?;
        if radius < min_radius {
            continue;
        }
        let hit = sphere.par_iter().any(|g| {
            g.cyclic_len() == target.len()
                && CyclicClass::new(g, false).is_ok_and(|class| class == target)
        });
        if hit {
            return Ok(radius);
        }
    }
    Err(Error::BudgetExceeded { budget })
}
