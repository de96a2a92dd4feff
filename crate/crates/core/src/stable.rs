//! Stable length `||γ||_S = lim l_S(γ^n)/n` and its linear extension to rational currents.
//!
//! `n -> l_S(γ^n)` is subadditive, so by Fekete's lemma the limit equals
//! `inf_n l_S(γ^n)/n`: every sampled power gives a certified upper bound. The
//! lower bound `|γ| / M` (cyclically reduced standard length over the longest
//! generator) holds because each `S`-letter advances at most `M` tree edges.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cayley::WordMetric;
use crate::error::{Error, Result};
use crate::words::CyclicClass;

/// Which powers `n` are sampled.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum PowerSchedule {
    /// `1, 2, 4, 8, ...` up to `n_max`.
    #[default]
    Doubling,
    /// Every `n` in `1..=n_max`.
    All,
    /// Explicit list (positive, increasing); `n_max` is ignored.
    Explicit(Vec<u32>),
}

impl PowerSchedule {
    pub fn powers(&self, n_max: u32) -> Vec<u32> {
        match self {
            PowerSchedule::Doubling => std::iter::successors(Some(1u32), |n| n.checked_mul(2))
                .take_while(|&n| n <= n_max)
                .collect(),
            PowerSchedule::All => (1..=n_max).collect(),
            PowerSchedule::Explicit(ns) => ns.clone(),
        }
    }
}

fn ratio_string<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Certified bracket `[lower, upper]` around a stable length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StableLengthEstimate {
    #[serde(serialize_with = "ratio_string")]
    pub lower: Rational64,
    #[serde(serialize_with = "ratio_string")]
    pub upper: Rational64,
    /// `(n, l_S(γ^n))` pairs.
    pub samples: Vec<(u32, u32)>,
    /// `lower == upper`, or the doubling heuristic fired.
    pub exact: bool,
    /// `exact` rests on the doubling heuristic rather than a matching bracket.
    pub heuristic: bool,
    /// Some scheduled power exceeded the length budget.
    pub partial: bool,
}

impl StableLengthEstimate {
    /// The stable length, when the estimate is exact.
    pub fn value(&self) -> Option<Rational64> {
        self.exact.then_some(self.upper)
    }

    pub fn is_certified(&self) -> bool {
        self.lower == self.upper
    }
}

/// Exact `l_S(γ^n)` for each requested `n`.
pub fn power_lengths(
    c: &CyclicClass,
    metric: &WordMetric,
    ns: &[u32],
    budget: u32,
) -> Result<Vec<(u32, u32)>> {
    check_schedule(ns)?;
    ns.iter()
        .map(|&n| Ok((n, metric.conj_length(&c.power(n), budget)?)))
        .collect()
}

fn check_schedule(ns: &[u32]) -> Result<()> {
    if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(format!(
            "powers must be positive and increasing, got {ns:?}"
        )));
    }
    Ok(())
}

/// Bracket for `||c||_S` from the sampled powers.
///
/// Stops early once the upper bound meets the lower bound. A power whose
/// length exceeds `budget`, or whose search exceeds the memory cap, ends the
/// schedule and marks the result partial; if the first power already fails,
/// the error is returned.
pub fn stable_length(
    c: &CyclicClass,
    metric: &WordMetric,
    schedule: &PowerSchedule,
    n_max: u32,
    budget: u32,
) -> Result<StableLengthEstimate> {
    let ns = schedule.powers(n_max.max(1));
    check_schedule(&ns)?;
    let m = metric.genset().max_element_len() as i64;
    let lower = Rational64::new(c.len() as i64, m);
    let mut upper: Option<Rational64> = None;
    let mut samples = Vec::with_capacity(ns.len());
    let mut partial = false;
    let mut first_length: Option<u32> = None;
    for n in ns {
        // l(γ^n) <= n l(γ) by subadditivity.
        let cap = first_length.map_or(budget, |l1| budget.min(l1.saturating_mul(n)));
        let measured = match metric.translation_length(&c.power(n), cap) {
            Err(Error::MemoryBudgetExceeded { .. }) if upper.is_some() => None,
            other => other?,
        };
        match measured {
            Some(len) => {
                first_length.get_or_insert(len);
                samples.push((n, len));
                let candidate = Rational64::new(len as i64, n as i64);
                let best = upper.map_or(candidate, |u| u.min(candidate));
                upper = Some(best);
                if best == lower {
                    break;
                }
            }
            None => {
                partial = true;
                break;
            }
        }
    }
    let Some(upper) = upper else {
        return Err(Error::BudgetExceeded { budget });
    };
    let certified = upper == lower;
    let heuristic = !certified && doubling_stabilized(&samples);
    Ok(StableLengthEstimate {
        lower,
        upper,
        samples,
        exact: certified || heuristic,
        heuristic,
        partial,
    })
}

/// `l(γ^{4n}) = 2 l(γ^{2n}) = 4 l(γ^n)` at the top of the sampled powers.
fn doubling_stabilized(samples: &[(u32, u32)]) -> bool {
    let Some(&(top, top_len)) = samples.last() else {
        return false;
    };
    if top % 4 != 0 {
        return false;
    }
    let find = |n: u32| samples.iter().find(|(m, _)| *m == n).map(|(_, l)| *l);
    match (find(top / 2), find(top / 4)) {
        (Some(half), Some(quarter)) => top_len == 2 * half && half == 2 * quarter,
        _ => false,
    }
}

/// Finite nonnegative rational combination of curves.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Current {
    terms: BTreeMap<CyclicClass, Rational64>,
}

impl Current {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(class: CyclicClass, weight: Rational64) -> Result<Self> {
        Current::from_terms([(class, weight)])
    }

    /// Merges repeated classes; weights must be positive.
    pub fn from_terms(terms: impl IntoIterator<Item = (CyclicClass, Rational64)>) -> Result<Self> {
        let mut current = Current::new();
        for (class, weight) in terms {
            if weight <= Rational64::from_integer(0) {
                return Err(Error::Config(format!(
                    "current weights must be positive, got {weight} on {class}"
                )));
            }
            *current
                .terms
                .entry(class)
                .or_insert_with(|| Rational64::from_integer(0)) += weight;
        }
        Ok(current)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicClass, &Rational64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn weight(&self, class: &CyclicClass) -> Rational64 {
        self.terms.get(class).copied().unwrap_or_default()
    }

    pub fn add(&self, other: &Current) -> Current {
        let mut terms = self.terms.clone();
        for (class, w) in &other.terms {
            *terms
                .entry(class.clone())
                .or_insert_with(|| Rational64::from_integer(0)) += *w;
        }
        Current { terms }
    }

    /// `t * self`; `t` must be positive.
    pub fn scale(&self, t: Rational64) -> Result<Current> {
        Current::from_terms(self.terms.iter().map(|(c, w)| (c.clone(), *w * t)))
    }

    /// Orientation reversal, class by class.
    pub fn flip(&self) -> Current {
        let mut terms = BTreeMap::new();
        for (class, w) in &self.terms {
            *terms
                .entry(class.inverse())
                .or_insert_with(|| Rational64::from_integer(0)) += *w;
        }
        Current { terms }
    }
}

impl fmt::Debug for Current {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (class, w) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{w}·{class}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Bracket for the stable length of a current.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurrentEstimate {
    #[serde(serialize_with = "ratio_string")]
    pub lower: Rational64,
    #[serde(serialize_with = "ratio_string")]
    pub upper: Rational64,
    pub exact: bool,
    pub heuristic: bool,
}

impl CurrentEstimate {
    pub fn value(&self) -> Option<Rational64> {
        self.exact.then_some(self.upper)
    }
}

/// Weighted sum of per-class brackets.
pub fn stable_length_current(
    mu: &Current,
    metric: &WordMetric,
    schedule: &PowerSchedule,
    n_max: u32,
    budget: u32,
) -> Result<CurrentEstimate> {
    if mu.is_empty() {
        return Err(Error::Config("empty current".into()));
    }
    let terms: Vec<(&CyclicClass, &Rational64)> = mu.terms().collect();
    let estimates = terms
        .par_iter()
        .map(|(class, _)| stable_length(class, metric, schedule, n_max, budget))
        .collect::<Result<Vec<_>>>()?;
    let zero = Rational64::from_integer(0);
    let mut out = CurrentEstimate {
        lower: zero,
        upper: zero,
        exact: true,
        heuristic: false,
    };
    for ((_, w), e) in terms.iter().zip(&estimates) {
        out.lower += **w * e.lower;
        out.upper += **w * e.upper;
        out.exact &= e.exact;
        out.heuristic |= e.heuristic;
    }
    Ok(out)
}

pub fn flip(mu: &Current) -> Current {
    mu.flip()
}

/// `l_S(γ) >= upper`, the trivial half of the sandwich bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SandwichRecord {
    pub ell: u32,
    #[serde(serialize_with = "ratio_string")]
    pub upper: Rational64,
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Rational64,
}

pub fn check_sandwich(
    c: &CyclicClass,
    metric: &WordMetric,
    schedule: &PowerSchedule,
    n_max: u32,
    budget: u32,
) -> Result<SandwichRecord> {
    let ell = metric.conj_length(c, budget)?;
    let estimate = stable_length(c, metric, schedule, n_max, budget)?;
    Ok(SandwichRecord {
        ell,
        upper: estimate.upper,
        ratio: estimate.upper / Rational64::from_integer(ell as i64),
    })
}
