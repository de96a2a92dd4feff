//! Counting curves of a fixed type by word-metric length, and the analysis
//! of the resulting series.
//!
//! Two enumeration routes produce identical series. The ball route walks the
//! Cayley ball of `S` sphere by sphere and canonicalizes every element; its
//! cost grows with the ball. The classes route lists the candidate classes
//! (the orbit of `gamma0`, or every class with the right self-intersection)
//! up to standard length `M * L_max` and measures each one; since
//! `|c| <= M * l_S(c)` no curve is missed.

mod analysis;
mod config;
mod export;
mod series;
mod verify;

pub use analysis::{
    fit_exponent, ratio_series, relative_variation, FitResult, FitWindow, RatioRow, RatioSeries,
};
pub use config::{
    Budgets, Classifier, Enumeration, Experiment, ExperimentConfig, LengthKind, Orientation,
    SurfaceSpec,
};
pub use export::{
    export, fit_json, read_series_csv, series_csv, write_ratio_csv, write_series_csv, Exportable,
    Format,
};
pub use series::{count_curves, CountRow, CountSeries};
pub use verify::{verify_paper_example, Check, VerificationReport};
