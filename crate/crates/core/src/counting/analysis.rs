use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::series::CountSeries;

/// Rows used by [`fit_exponent`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FitWindow {
    /// Top half of the lengths with a nonzero count.
    #[default]
    Auto,
    /// Inclusive range of lengths.
    Range(u32, u32),
}

impl std::str::FromStr for FitWindow {
    type Err = Error;

    /// `auto` or `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(FitWindow::Auto);
        }
        let parsed = s
            .split_once(':')
            .and_then(|(lo, hi)| Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?)));
        match parsed {
            Some((lo, hi)) if lo <= hi => Ok(FitWindow::Range(lo, hi)),
            _ => Err(Error::Config(format!(
                "window must be `auto` or `lo:hi`, got {s:?}"
            ))),
        }
    }
}

/// Least-squares line through `(log L, log N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (u32, u32),
}

pub fn fit_exponent(series: &CountSeries, window: FitWindow) -> Result<FitResult> {
    let mut points: Vec<(u32, u64)> = series
        .rows
        .iter()
        .filter(|r| r.l > 0 && r.count > 0)
        .map(|r| (r.l, r.count))
        .collect();
    points.sort_unstable();
    match window {
        FitWindow::Auto => {
            let keep = points.len().div_ceil(2);
            points.drain(..points.len() - keep);
        }
        FitWindow::Range(lo, hi) => points.retain(|&(l, _)| lo <= l && l <= hi),
    }
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} nonzero rows in the fit window, need 3",
            points.len()
        )));
    }
    let xs: Vec<f64> = points.iter().map(|&(l, _)| (l as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, n)| (n as f64).ln()).collect();
    let n = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let syy: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (1.0 - residual / syy).clamp(0.0, 1.0)
    };
    Ok(FitResult {
        slope,
        intercept,
        r_squared,
        window: (points[0].0, points[points.len() - 1].0),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    #[serde(rename = "L")]
    pub l: u32,
    pub n1: u64,
    pub n2: u64,
    /// `n1 / n2`, undefined while `n2 = 0`.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioSeries {
    pub rows: Vec<RatioRow>,
    /// [`relative_variation`] of the ratios over the last quarter of the rows
    /// where it is defined.
    pub stabilization: Option<f64>,
}

impl RatioSeries {
    pub fn ratios_in(&self, lo: u32, hi: u32) -> Vec<f64> {
        self.rows
            .iter()
            .filter(|r| lo <= r.l && r.l <= hi)
            .filter_map(|r| r.ratio)
            .collect()
    }
}

/// `(max - min) / min`; zero for a constant sequence.
pub fn relative_variation(values: &[f64]) -> Option<f64> {
    let min = values.iter().copied().reduce(f64::min)?;
    let max = values.iter().copied().reduce(f64::max)?;
    if min <= 0.0 {
        return None;
    }
    Some((max - min) / min)
}

/// Row-wise `N1(L) / N2(L)` for two series that differ only in `gamma0`.
pub fn ratio_series(s1: &CountSeries, s2: &CountSeries) -> Result<RatioSeries> {
    if let (Some(c1), Some(c2)) = (&s1.config, &s2.config) {
        let mut a = c1.clone();
        let mut b = c2.clone();
        a.gamma0.clear();
        b.gamma0.clear();
        a.output = None;
        b.output = None;
        if a != b {
            return Err(Error::ConfigMismatch(
                "series come from configs that differ beyond gamma0".into(),
            ));
        }
    }
    let l1: Vec<u32> = s1.rows.iter().map(|r| r.l).collect();
    let l2: Vec<u32> = s2.rows.iter().map(|r| r.l).collect();
    if l1 != l2 {
        return Err(Error::ConfigMismatch(
            "series have different length grids".into(),
        ));
    }
    let rows: Vec<RatioRow> = s1
        .rows
        .iter()
        .zip(&s2.rows)
        .map(|(a, b)| RatioRow {
            l: a.l,
            n1: a.count,
            n2: b.count,
            ratio: (b.count > 0).then(|| a.count as f64 / b.count as f64),
        })
        .collect();
    let defined: Vec<f64> = rows.iter().filter_map(|r| r.ratio).collect();
    let tail = defined.len().div_ceil(4);
    let stabilization = relative_variation(&defined[defined.len() - tail..]);
    Ok(RatioSeries {
        rows,
        stabilization,
    })
}
