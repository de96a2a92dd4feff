//! Compact orientable surfaces with boundary and curves on them.
//!
//! A surface of genus `g` with `r >= 1` boundary components has free
//! fundamental group of rank `2g + r - 1`, generated by `a1, b1, ..., ag, bg,
//! d1, ..., d(r-1)` in that letter order. The boundary classes are
//! `d1, ..., d(r-1)` and `dr = ([a1,b1] ... [ag,bg] d1 ... d(r-1))^-1`.

mod intersection;
mod mcg;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{CyclicClass, Letter, Word};

pub use intersection::{self_intersection, RibbonGraph};
pub use mcg::{
    apply_certificate, mcg_generators, orbit_ball, orbit_ball_with_window, same_type,
    AutomorphismSpec, CurveTypeKey, MCGGens, OrbitBall, SameType, DEFAULT_ORBIT_SLACK,
};

/// Signature `(g, r)` of a surface satisfying `3g + r > 3` and `r >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSig {
    genus: u32,
    boundary: u32,
}

impl SurfaceSig {
    pub fn new(genus: u32, boundary: u32) -> Result<Self> {
        if boundary == 0 {
            return Err(Error::ClosedSurfaceUnsupported);
        }
        if 3 * genus + boundary <= 3 {
            return Err(Error::HypothesisViolated { genus, boundary });
        }
        Ok(SurfaceSig { genus, boundary })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    /// Growth exponent `6g - 6 + 2r` of curve counts.
    pub fn exponent(&self) -> u32 {
        6 * self.genus + 2 * self.boundary - 6
    }

    /// Rank `2g + r - 1` of the fundamental group.
    pub fn rank(&self) -> usize {
        (2 * self.genus + self.boundary - 1) as usize
    }
}

impl fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, r={})", self.genus, self.boundary)
    }
}

/// The `r` boundary classes, unoriented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeripheralStructure {
    boundary_classes: Vec<CyclicClass>,
}

impl PeripheralStructure {
    pub fn boundary_classes(&self) -> &[CyclicClass] {
        &self.boundary_classes
    }

    pub fn rank(&self) -> usize {
        self.boundary_classes[0].rank()
    }

    /// Whether `c` (either orientation) is a boundary class.
    pub fn is_boundary(&self, c: &CyclicClass) -> bool {
        let c = c.with_orientation(false);
        self.boundary_classes.contains(&c)
    }
}

/// Boundary word `[a1,b1] ... [ag,bg] d1 ... d(r-1)`; its inverse is `dr`.
pub(crate) fn boundary_product(sig: &SurfaceSig) -> Word {
    let rank = sig.rank();
    let mut letters = Vec::with_capacity(4 * sig.genus as usize + sig.boundary as usize);
    for i in 0..sig.genus as usize {
        let (a, b) = (Letter::new(2 * i, false), Letter::new(2 * i + 1, false));
        letters.extend([a, b, a.inverse(), b.inverse()]);
    }
    for j in 0..sig.boundary as usize - 1 {
        letters.push(Letter::new(2 * sig.genus as usize + j, false));
    }
    Word::reduce(rank, letters).expect("letters are within rank")
}

pub fn make_surface(genus: u32, boundary: u32) -> Result<(SurfaceSig, PeripheralStructure)> {
    let sig = SurfaceSig::new(genus, boundary)?;
    let rank = sig.rank();
    let mut boundary_classes: Vec<CyclicClass> = (0..boundary as usize - 1)
        .map(|j| CyclicClass::new(&Word::generator(rank, 2 * genus as usize + j), false))
        .collect::<Result<_>>()?;
    boundary_classes.push(CyclicClass::new(&boundary_product(&sig).inverse(), false)?);
    Ok((sig, PeripheralStructure { boundary_classes }))
}

/// False for boundary classes and their powers.
pub fn is_essential(c: &CyclicClass, peripheral: &PeripheralStructure) -> bool {
    let (root, _) = c.primitive_root();
    !peripheral.is_boundary(&root)
}
