use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cayley::{GenSet, DEFAULT_GENERATION_BUDGET, DEFAULT_MEMORY_CAP};
use crate::error::{Error, Result};
use crate::surface::{
    is_essential, make_surface, mcg_generators, MCGGens, PeripheralStructure, SurfaceSig,
};
use crate::words::CyclicClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub genus: u32,
    pub boundary: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classifier {
    /// Same mapping class group orbit as `gamma0`.
    #[default]
    Orbit,
    /// Same self-intersection number as `gamma0`.
    Invariant,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LengthKind {
    #[default]
    Translation,
    /// Certified upper bound on the stable length.
    StableUpper,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Oriented,
    #[default]
    Unoriented,
}

/// How candidate curves are produced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Enumeration {
    /// `classes` for the orbit classifier or stable lengths, `ball` otherwise.
    #[default]
    Auto,
    /// Scan the Cayley ball sphere by sphere and canonicalize every element.
    Ball,
    /// List candidate classes by standard length, then measure each one.
    Classes,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Budgets {
    /// Bytes available for ball enumeration.
    #[serde(default = "default_memory")]
    pub memory: u64,
    /// Classes the orbit search may visit.
    #[serde(default = "default_orbit_nodes")]
    pub orbit_nodes: usize,
    /// Largest power sampled for stable lengths.
    #[serde(default = "default_power_n_max")]
    pub power_n_max: u32,
    /// Standard-length window of the orbit search; defaults to the length
    /// bound plus four.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbit_window: Option<usize>,
}

fn default_memory() -> u64 {
    DEFAULT_MEMORY_CAP
}

fn default_orbit_nodes() -> usize {
    2_000_000
}

fn default_power_n_max() -> u32 {
    16
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            memory: default_memory(),
            orbit_nodes: default_orbit_nodes(),
            power_n_max: default_power_n_max(),
            orbit_window: None,
        }
    }
}

/// One counting experiment, as read from a JSON config file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub surface: SurfaceSpec,
    pub gens: Vec<String>,
    pub gamma0: String,
    #[serde(default)]
    pub classifier: Classifier,
    #[serde(default)]
    pub length_kind: LengthKind,
    #[serde(rename = "L_max")]
    pub l_max: u32,
    #[serde(default)]
    pub orientation: Orientation,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// JSON automorphism file replacing the built-in generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<PathBuf>,
    #[serde(default)]
    pub enumeration: Enumeration,
}

impl ExperimentConfig {
    /// Standard-basis experiment on `(g, r)` with defaults elsewhere.
    pub fn new(genus: u32, boundary: u32, gens: &[&str], gamma0: &str, l_max: u32) -> Self {
        ExperimentConfig {
            surface: SurfaceSpec { genus, boundary },
            gens: gens.iter().map(|s| s.to_string()).collect(),
            gamma0: gamma0.into(),
            classifier: Classifier::default(),
            length_kind: LengthKind::default(),
            l_max,
            orientation: Orientation::default(),
            budgets: Budgets::default(),
            output: None,
            automorphisms: None,
            enumeration: Enumeration::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn oriented(&self) -> bool {
        self.orientation == Orientation::Oriented
    }

    /// The route `Auto` resolves to.
    pub fn resolved_enumeration(&self) -> Enumeration {
        match self.enumeration {
            Enumeration::Auto
                if self.classifier == Classifier::Orbit
                    || self.length_kind == LengthKind::StableUpper =>
            {
                Enumeration::Classes
            }
            Enumeration::Auto => Enumeration::Ball,
            e => e,
        }
    }

    /// Checks the config and builds the objects it describes.
    pub fn prepare(&self) -> Result<Experiment> {
        if self.l_max < 1 {
            return Err(Error::Config("L_max must be at least 1".into()));
        }
        if self.resolved_enumeration() == Enumeration::Ball
            && self.length_kind == LengthKind::StableUpper
        {
            return Err(Error::Config(
                "stable-upper lengths need the classes enumeration".into(),
            ));
        }
        let (sig, peripheral) = make_surface(self.surface.genus, self.surface.boundary)?;
        let genset = GenSet::build(sig.rank(), &self.gens, DEFAULT_GENERATION_BUDGET)?;
        let gamma0 = CyclicClass::parse(sig.rank(), &self.gamma0, self.oriented())?;
        if !is_essential(&gamma0, &peripheral) {
            return Err(Error::NotEssential {
                word: self.gamma0.clone(),
            });
        }
        let mcg = match self.classifier {
            Classifier::Orbit => Some(mcg_generators(
                &sig,
                &peripheral,
                self.automorphisms.as_deref(),
            )?),
            Classifier::Invariant => None,
        };
        Ok(Experiment {
            config: self.clone(),
            sig,
            peripheral,
            genset,
            gamma0,
            mcg,
        })
    }
}

/// A validated config with its surface, generating set and generators.
#[derive(Clone, Debug)]
pub struct Experiment {
    pub config: ExperimentConfig,
    pub sig: SurfaceSig,
    pub peripheral: PeripheralStructure,
    pub genset: GenSet,
    pub gamma0: CyclicClass,
    pub mcg: Option<MCGGens>,
}
