use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{word_bytes, SphereWalker, WordMetric};
use crate::error::{Error, Result};
use crate::stable::{stable_length, PowerSchedule, StableLengthEstimate};
use crate::surface::{
    is_essential, orbit_ball_with_window, self_intersection, DEFAULT_ORBIT_SLACK,
};
use crate::words::{classes_up_to, CyclicClass};

use super::config::{Classifier, Enumeration, Experiment, ExperimentConfig, LengthKind};

/// `N(L)` and `N(L) / L^e` for one length bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    #[serde(rename = "L")]
    pub l: u32,
    pub count: u64,
    pub normalized: f64,
    /// No search budget cut this row short.
    pub complete: bool,
}

/// Curve counts for `L = 0..=L_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct CountSeries {
    /// Absent for series read back from CSV.
    pub config: Option<ExperimentConfig>,
    pub rows: Vec<CountRow>,
}

impl CountSeries {
    pub fn row(&self, l: u32) -> Option<&CountRow> {
        self.rows.iter().find(|r| r.l == l)
    }

    pub fn counts(&self) -> Vec<u64> {
        self.rows.iter().map(|r| r.count).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| r.complete)
    }
}

fn normalized(count: u64, l: u32, exponent: u32) -> f64 {
    if l == 0 {
        0.0
    } else {
        count as f64 / (l as f64).powi(exponent as i32)
    }
}

/// Counts curves of the type of `gamma0` by length.
pub fn count_curves(cfg: &ExperimentConfig) -> Result<CountSeries> {
    let exp = cfg.prepare()?;
    let (lengths, flags) = match cfg.resolved_enumeration() {
        Enumeration::Ball => ball_route(&exp)?,
        _ => classes_route(&exp)?,
    };
    let exponent = exp.sig.exponent();
    let rows = (0..=cfg.l_max)
        .map(|l| {
            let count = lengths.iter().filter(|&&k| k <= l).count() as u64;
            CountRow {
                l,
                count,
                normalized: normalized(count, l, exponent),
                complete: flags(l),
            }
        })
        .collect();
    Ok(CountSeries {
        config: Some(cfg.clone()),
        rows,
    })
}

type RowFlags = Box<dyn Fn(u32) -> bool>;

/// Longest standard length of a curve with `l_S <= L_max`.
fn standard_bound(exp: &Experiment) -> usize {
    exp.genset.max_element_len() * exp.config.l_max as usize
}

/// The orbit of `gamma0` out to the standard-length bound, and whether the
/// search finished.
fn orbit_candidates(exp: &Experiment) -> Result<(Vec<CyclicClass>, bool)> {
    let mcg = exp.mcg.as_ref().expect("orbit classifier has generators");
    let bound = standard_bound(exp);
    let window = exp
        .config
        .budgets
        .orbit_window
        .unwrap_or(bound + DEFAULT_ORBIT_SLACK);
    let orbit = orbit_ball_with_window(
        &exp.gamma0,
        mcg,
        bound,
        window,
        exp.config.budgets.orbit_nodes,
    )?;
    let complete = orbit.is_complete();
    Ok((orbit.classes.into_iter().collect(), complete))
}

/// Essential classes with the self-intersection number of `gamma0`.
fn invariant_candidates(exp: &Experiment) -> Result<Vec<CyclicClass>> {
    let bound = standard_bound(exp);
    let rank = exp.sig.rank();
    let branching = (2 * rank - 1) as f64;
    let words = 2.0 * rank as f64 * branching.powi(bound as i32 - 1);
    let needed = (words / bound as f64 * word_bytes(bound) as f64) as u64;
    if needed > exp.config.budgets.memory {
        return Err(Error::MemoryBudgetExceeded {
            needed,
            cap: exp.config.budgets.memory,
        });
    }
    let target = self_intersection(&exp.gamma0, &exp.sig);
    Ok(classes_up_to(rank, bound, exp.config.oriented())
        .into_par_iter()
        .filter(|c| is_essential(c, &exp.peripheral) && self_intersection(c, &exp.sig) == target)
        .collect())
}

fn classes_route(exp: &Experiment) -> Result<(Vec<u32>, RowFlags)> {
    let (candidates, orbit_complete) = match exp.config.classifier {
        Classifier::Orbit => orbit_candidates(exp)?,
        Classifier::Invariant => (invariant_candidates(exp)?, true),
    };
    let l_max = exp.config.l_max;
    let mut metric = WordMetric::new(exp.genset.clone()).with_memory_cap(exp.config.budgets.memory);
    if !metric.uses_region_search() {
        metric = metric.with_class_table(l_max)?;
    }
    match exp.config.length_kind {
        LengthKind::Translation => {
            let lengths = candidates
                .par_iter()
                .map(|c| metric.translation_length(c, l_max))
                .collect::<Result<Vec<_>>>()?;
            let lengths = lengths.into_iter().flatten().collect();
            Ok((lengths, Box::new(move |_| orbit_complete)))
        }
        LengthKind::StableUpper => {
            let n_max = exp.config.budgets.power_n_max.max(1);
            let budget = l_max.saturating_mul(n_max);
            let estimates: Vec<StableLengthEstimate> = candidates
                .par_iter()
                .map(|c| stable_length(c, &metric, &PowerSchedule::Doubling, n_max, budget))
                .collect::<Result<_>>()?;
            let lengths: Vec<u32> = estimates
                .iter()
                .map(|e| e.upper.ceil().to_integer() as u32)
                .collect();
            // Counting by the upper bound can miss a class only when its
            // bracket straddles the row's length.
            let open: Vec<(f64, f64)> = estimates
                .iter()
                .filter(|e| !e.exact || e.partial)
                .map(|e| (ratio_f64(e.lower), ratio_f64(e.upper)))
                .collect();
            let flags = move |l: u32| {
                let l = l as f64;
                orbit_complete && !open.iter().any(|&(lo, hi)| lo <= l && l < hi)
            };
            Ok((lengths, Box::new(flags)))
        }
    }
}

fn ratio_f64(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn ball_route(exp: &Experiment) -> Result<(Vec<u32>, RowFlags)> {
    let oriented = exp.config.oriented();
    let (orbit, complete) = match exp.config.classifier {
        Classifier::Orbit => {
            let (classes, complete) = orbit_candidates(exp)?;
            (Some(classes.into_iter().collect::<BTreeSet<_>>()), complete)
        }
        Classifier::Invariant => (None, true),
    };
    let target = self_intersection(&exp.gamma0, &exp.sig);
    let matches = |c: &CyclicClass| match &orbit {
        Some(set) => set.contains(c),
        None => is_essential(c, &exp.peripheral) && self_intersection(c, &exp.sig) == target,
    };

    let mut counted: BTreeSet<CyclicClass> = BTreeSet::new();
    let mut lengths = Vec::new();
    let mut walker = SphereWalker::new(&exp.genset, exp.config.budgets.memory);
    for radius in 1..=exp.config.l_max {
        let sphere = walker.advance()?;
        let mut classes: Vec<CyclicClass> = sphere
            .par_iter()
            .map(|g| CyclicClass::new(g, oriented).expect("nonidentity beyond radius 0"))
            .collect();
        classes.par_sort_unstable();
        classes.dedup();
        let fresh: Vec<CyclicClass> = classes
            .into_par_iter()
            .filter(|c| !counted.contains(c) && matches(c))
            .collect();
        lengths.extend(std::iter::repeat_n(radius, fresh.len()));
        counted.extend(fresh);
    }
    Ok((lengths, Box::new(move |_| complete)))
}
