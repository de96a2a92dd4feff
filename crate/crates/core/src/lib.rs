//! Counting curves on surfaces with boundary by word-metric translation length.
//!
//! The crate is organized bottom-up:
//!
//! - [`words`]: free-group words, cyclic words and automorphisms;
//! - [`cayley`]: generating sets, Cayley balls and exact word/translation lengths;
//! - [`stable`]: stable length of curves and of rational currents;
//! - [`surface`]: surface signatures, essential curves, self-intersection and
//!   mapping class group orbits;
//! - [`counting`]: the experiment driver producing count series and fits.

pub mod cayley;
pub mod counting;
mod error;
pub mod stable;
pub mod surface;
pub mod words;

pub use cayley::{Ball, GenSet, WordMetric};
pub use error::{Error, Result};

pub use stable::{Current, StableLengthEstimate};
pub use surface::{MCGGens, PeripheralStructure, SurfaceSig};
pub use words::{CyclicClass, FreeAutomorphism, Letter, Word};
