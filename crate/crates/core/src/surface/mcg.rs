use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{CyclicClass, FreeAutomorphism};

use super::{is_essential, self_intersection, PeripheralStructure, SurfaceSig};

/// Default slack between the reported length bound and the orbit search window.
pub const DEFAULT_ORBIT_SLACK: usize = 4;

/// One entry of a user automorphism file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSpec {
    pub name: String,
    pub images: Vec<String>,
}

/// Mapping classes given as free-group automorphisms that preserve the boundary.
#[derive(Clone, Debug)]
pub struct MCGGens {
    sig: SurfaceSig,
    peripheral: PeripheralStructure,
    gens: Vec<FreeAutomorphism>,
}

impl MCGGens {
    /// Validates each automorphism against the peripheral structure and adds
    /// missing inverses.
    pub fn new(
        sig: SurfaceSig,
        peripheral: PeripheralStructure,
        autos: Vec<FreeAutomorphism>,
    ) -> Result<Self> {
        if autos.is_empty() {
            return Err(Error::Config("no mapping class generators".into()));
        }
        for f in &autos {
            check_peripheral(f, &sig, &peripheral)?;
        }
        let mut gens = autos.clone();
        for f in &autos {
            let inv = f.inverse();
            if !gens.iter().any(|g| g.name() == inv.name()) {
                gens.push(inv);
            }
        }
        Ok(MCGGens {
            sig,
            peripheral,
            gens,
        })
    }

    /// Twists `Ta: b -> ba`, `Tb: a -> ab` and the inversion `iota: a -> A`,
    /// with their inverses, for the once-holed torus.
    pub fn builtin(sig: SurfaceSig, peripheral: PeripheralStructure) -> Result<Self> {
        if (sig.genus(), sig.boundary()) != (1, 1) {
            return Err(Error::UnsupportedSignature {
                genus: sig.genus(),
                boundary: sig.boundary(),
            });
        }
        let autos = vec![
            FreeAutomorphism::parse("Ta", &["a", "ba"])?,
            FreeAutomorphism::parse("Tb", &["ab", "b"])?,
            FreeAutomorphism::parse("iota", &["A", "b"])?,
        ];
        MCGGens::new(sig, peripheral, autos)
    }

    pub fn from_specs(
        sig: SurfaceSig,
        peripheral: PeripheralStructure,
        specs: &[AutomorphismSpec],
    ) -> Result<Self> {
        let autos = specs
            .iter()
            .map(|s| {
                let images: Vec<&str> = s.images.iter().map(String::as_str).collect();
                if images.len() != sig.rank() {
                    return Err(Error::InvalidAutomorphism {
                        name: s.name.clone(),
                        reason: format!("expected {} images, got {}", sig.rank(), images.len()),
                    });
                }
                FreeAutomorphism::parse(s.name.clone(), &images)
            })
            .collect::<Result<Vec<_>>>()?;
        MCGGens::new(sig, peripheral, autos)
    }

    /// Reads a JSON list of `{"name", "images"}` objects.
    pub fn from_json_file(
        sig: SurfaceSig,
        peripheral: PeripheralStructure,
        path: &Path,
    ) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let specs: Vec<AutomorphismSpec> = serde_json::from_str(&text)?;
        MCGGens::from_specs(sig, peripheral, &specs)
    }

    pub fn sig(&self) -> &SurfaceSig {
        &self.sig
    }

    pub fn peripheral(&self) -> &PeripheralStructure {
        &self.peripheral
    }

    pub fn gens(&self) -> &[FreeAutomorphism] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Always true: construction adds every missing inverse.
    pub fn closure_under_inverse(&self) -> bool {
        true
    }

    fn by_name(&self, name: &str) -> Option<&FreeAutomorphism> {
        self.gens.iter().find(|g| g.name() == name)
    }
}

fn check_peripheral(
    f: &FreeAutomorphism,
    sig: &SurfaceSig,
    peripheral: &PeripheralStructure,
) -> Result<()> {
    if f.rank() != sig.rank() {
        return Err(Error::InvalidAutomorphism {
            name: f.name().into(),
            reason: format!("rank {} on a surface of rank {}", f.rank(), sig.rank()),
        });
    }
    for d in peripheral.boundary_classes() {
        let image = f.apply_class(d);
        if !peripheral.is_boundary(&image) {
            return Err(Error::InvalidAutomorphism {
                name: f.name().into(),
                reason: format!("boundary class {d} maps to non-peripheral {image}"),
            });
        }
    }
    Ok(())
}

/// Built-in generators, or the validated contents of `user_file`.
pub fn mcg_generators(
    sig: &SurfaceSig,
    peripheral: &PeripheralStructure,
    user_file: Option<&Path>,
) -> Result<MCGGens> {
    match user_file {
        Some(path) => MCGGens::from_json_file(*sig, peripheral.clone(), path),
        None => MCGGens::builtin(*sig, peripheral.clone()),
    }
}

/// Orbit elements found by a bounded breadth-first search.
#[derive(Clone, Debug)]
pub struct OrbitBall {
    /// Orbit classes of standard length at most the requested bound.
    pub classes: BTreeSet<CyclicClass>,
    /// Orbit classes visited, including those in the slack window.
    pub visited: usize,
    /// The node budget cut the search short.
    pub truncated: bool,
    pub len_bound: usize,
    pub window: usize,
}

impl OrbitBall {
    pub fn contains(&self, c: &CyclicClass) -> bool {
        self.classes.contains(c)
    }

    pub fn is_complete(&self) -> bool {
        !self.truncated
    }
}

/// [`orbit_ball_with_window`] with window `len_bound + DEFAULT_ORBIT_SLACK`.
pub fn orbit_ball(
    gamma0: &CyclicClass,
    gens: &MCGGens,
    len_bound: usize,
    node_budget: usize,
) -> Result<OrbitBall> {
    orbit_ball_with_window(
        gamma0,
        gens,
        len_bound,
        len_bound + DEFAULT_ORBIT_SLACK,
        node_budget,
    )
}

/// Breadth-first search of the orbit of `gamma0` through classes of standard
/// length at most `window`, reporting those of length at most `len_bound`.
///
/// Orbit elements reachable only through longer classes are missed; a search
/// that hits `node_budget` is flagged as truncated.
pub fn orbit_ball_with_window(
    gamma0: &CyclicClass,
    gens: &MCGGens,
    len_bound: usize,
    window: usize,
    node_budget: usize,
) -> Result<OrbitBall> {
    if !is_essential(gamma0, gens.peripheral()) {
        return Err(Error::NotEssential {
            word: gamma0.word().to_text(),
        });
    }
    if window < len_bound {
        return Err(Error::Config(format!(
            "orbit window {window} is below the length bound {len_bound}"
        )));
    }
    let mut visited: BTreeSet<CyclicClass> = BTreeSet::new();
    let mut truncated = false;
    let mut frontier = Vec::new();
    if gamma0.len() <= window {
        visited.insert(gamma0.clone());
        frontier.push(gamma0.clone());
    }
    while !frontier.is_empty() {
        let mut next: Vec<CyclicClass> = frontier
            .par_iter()
            .flat_map_iter(|c| gens.gens().iter().map(move |f| f.apply_class(c)))
            .filter(|c| c.len() <= window)
            .collect();
        next.par_sort_unstable();
        next.dedup();
        next.retain(|c| !visited.contains(c));
        let room = node_budget.saturating_sub(visited.len());
        if next.len() > room {
            next.truncate(room);
            truncated = true;
        }
        visited.extend(next.iter().cloned());
        if truncated {
            break;
        }
        frontier = next;
    }
    let count = visited.len();
    let classes = visited
        .into_iter()
        .filter(|c| c.len() <= len_bound)
        .collect();
    Ok(OrbitBall {
        classes,
        visited: count,
        truncated,
        len_bound,
        window,
    })
}

/// Outcome of [`same_type`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SameType {
    /// Generator names applied in order take the first class to the second.
    Yes(Vec<String>),
    /// No path found within the budget; not a proof that the types differ.
    NoWithinBudget,
}

/// Bidirectional search for a mapping class taking `c1` to `c2`.
///
/// Both searches stay within standard length `max(|c1|, |c2|) + DEFAULT_ORBIT_SLACK`
/// and visit at most `budget` classes in total.
pub fn same_type(c1: &CyclicClass, c2: &CyclicClass, gens: &MCGGens, budget: usize) -> SameType {
    if c1 == c2 {
        return SameType::Yes(Vec::new());
    }
    let window = c1.len().max(c2.len()) + DEFAULT_ORBIT_SLACK;
    // class -> (predecessor, generator index) on each side
    let mut parents: [BTreeMap<CyclicClass, Option<(CyclicClass, usize)>>; 2] =
        [BTreeMap::new(), BTreeMap::new()];
    parents[0].insert(c1.clone(), None);
    parents[1].insert(c2.clone(), None);
    let mut queues = [VecDeque::from([c1.clone()]), VecDeque::from([c2.clone()])];
    let mut side = 0;
    while parents[0].len() + parents[1].len() < budget {
        if queues[side].is_empty() {
            side = 1 - side;
            if queues[side].is_empty() {
                break;
            }
        }
        let layer: Vec<CyclicClass> = queues[side].drain(..).collect();
        for c in layer {
            for (k, f) in gens.gens().iter().enumerate() {
                let image = f.apply_class(&c);
                if image.len() > window || parents[side].contains_key(&image) {
                    continue;
                }
                parents[side].insert(image.clone(), Some((c.clone(), k)));
                if parents[1 - side].contains_key(&image) {
                    return SameType::Yes(certificate(&parents, &image, gens));
                }
                queues[side].push_back(image);
            }
        }
        side = 1 - side;
    }
    SameType::NoWithinBudget
}

fn certificate(
    parents: &[BTreeMap<CyclicClass, Option<(CyclicClass, usize)>>; 2],
    meet: &CyclicClass,
    gens: &MCGGens,
) -> Vec<String> {
    let mut forward = Vec::new();
    let mut at = meet.clone();
    while let Some(Some((prev, k))) = parents[0].get(&at) {
        forward.push(gens.gens()[*k].name().to_string());
        at = prev.clone();
    }
    forward.reverse();
    let mut at = meet.clone();
    while let Some(Some((prev, k))) = parents[1].get(&at) {
        let inverse = gens.gens()[*k].inverse();
        let name = gens
            .by_name(inverse.name())
            .map_or_else(|| inverse.name().to_string(), |g| g.name().to_string());
        forward.push(name);
        at = prev.clone();
    }
    forward
}

/// Applies a certificate from [`same_type`].
pub fn apply_certificate(c: &CyclicClass, path: &[String], gens: &MCGGens) -> Option<CyclicClass> {
    path.iter().try_fold(c.clone(), |c, name| {
        Some(gens.by_name(name)?.apply_class(&c))
    })
}

/// What a class is compared on when counting curves of one type.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveTypeKey {
    /// Mapping class group orbit of the given essential class.
    Orbit(CyclicClass),
    /// Self-intersection number only; coarser than the orbit.
    Invariant(u64),
}

impl CurveTypeKey {
    pub fn orbit(gamma0: &CyclicClass, peripheral: &PeripheralStructure) -> Result<Self> {
        if !is_essential(gamma0, peripheral) {
            return Err(Error::NotEssential {
                word: gamma0.word().to_text(),
            });
        }
        Ok(CurveTypeKey::Orbit(gamma0.clone()))
    }

    pub fn invariant(gamma0: &CyclicClass, sig: &SurfaceSig) -> Self {
        CurveTypeKey::Invariant(self_intersection(gamma0, sig))
    }
}
