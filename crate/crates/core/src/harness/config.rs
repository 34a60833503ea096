//! Experiment configuration: a flat TOML key/value file.
//!
//! ```toml
//! nx = 4                      # base cells (power of two)
//! ny = 4                      # fiber cells (power of two)
//! base = "cycle"              # identity | cycle | cycles | perm | random
//! base_cycles = [3, 5]        # base = "cycles": consecutive cycles of these lengths
//! base_perm = [1, 2, 3, 0]    # base = "perm": image table
//! base_scale = 4              # base = "random": every cycle at least this long
//! extension = "simple"        # trivial | simple | explicit | random
//! partition = [0, 0, 1, 1]    # simple: block label per base cell
//! block_perms = [[0, 1, 2, 3], [1, 0, 2, 3]]  # simple: one fiber permutation per block
//! fibers = [[...], ...]       # explicit: one fiber permutation per base cell
//! random_fibers = 3           # random: how many base cells get a random fiber (default all)
//! m = [10, 100]
//! n_min = 1
//! n_max = 8
//! subset = [0, 1]             # default: every base cell
//! seed = 42                   # required by any "random" choice
//! ```

use std::path::Path;

use serde::Deserialize;

use super::generate::{random_aperiodic, random_extension, rng_from_seed};
use super::HarnessError;
use crate::cohomology::{simple_cocycle, SimplePartition};
use crate::measure::{CellSet, CellSpace, Perm};
use crate::skew::SkewProduct;

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    Identity,
    Cycle,
    Cycles,
    Perm,
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtensionKind {
    Trivial,
    Simple,
    Explicit,
    Random,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub nx: usize,
    pub ny: usize,
    pub base: BaseKind,
    pub base_cycles: Option<Vec<usize>>,
    pub base_perm: Option<Vec<usize>>,
    pub base_scale: Option<usize>,
    pub extension: ExtensionKind,
    pub partition: Option<Vec<usize>>,
    pub block_perms: Option<Vec<Vec<usize>>>,
    pub fibers: Option<Vec<Vec<usize>>>,
    pub random_fibers: Option<usize>,
    #[serde(default = "default_m")]
    pub m: Vec<u64>,
    #[serde(default = "default_n_min")]
    pub n_min: usize,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    pub subset: Option<Vec<usize>>,
    pub seed: Option<u64>,
}

fn default_m() -> Vec<u64> {
    vec![10]
}

fn default_n_min() -> usize {
    1
}

fn default_n_max() -> usize {
    16
}

/// A configuration resolved into concrete model objects.
#[derive(Debug, Clone)]
pub struct Instance {
    pub skew: SkewProduct,
    pub partition: Option<SimplePartition>,
    pub subset: CellSet,
    pub ms: Vec<u64>,
    pub n_min: usize,
    pub n_max: usize,
}

fn field_err(field: &'static str, message: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config { field, message: message.to_string() }
}

fn require<T: Clone>(value: &Option<T>, field: &'static str, when: &str) -> Result<T, HarnessError> {
    value.clone().ok_or_else(|| field_err(field, format!("required when {when}")))
}

fn perm_field(field: &'static str, forward: Vec<usize>, cells: usize) -> Result<Perm, HarnessError> {
    if forward.len() != cells {
        return Err(field_err(field, format!("expected {cells} entries, found {}", forward.len())));
    }
    Perm::from_forward(forward).map_err(|e| field_err(field, e))
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ExperimentConfig, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        ExperimentConfig::from_toml_str(&text)
    }

    fn seed(&self, what: &str) -> Result<u64, HarnessError> {
        self.seed.ok_or_else(|| field_err("seed", format!("required when {what} is random")))
    }

    pub fn build(&self) -> Result<Instance, HarnessError> {
        let xs = CellSpace::new(self.nx).map_err(|e| field_err("nx", e))?;
        let ys = CellSpace::new(self.ny).map_err(|e| field_err("ny", e))?;
        // Base and extension draw from separate streams so that changing one
        // does not reshuffle the other.
        let base = match self.base {
            BaseKind::Identity => Perm::identity(xs),
            BaseKind::Cycle => Perm::rotation(xs, 1),
            BaseKind::Cycles => {
                let lengths = require(&self.base_cycles, "base_cycles", "base = \"cycles\"")?;
                Perm::with_cycle_type(xs, &lengths).map_err(|e| field_err("base_cycles", e))?
            }
            BaseKind::Perm => {
                perm_field("base_perm", require(&self.base_perm, "base_perm", "base = \"perm\"")?, self.nx)?
            }
            BaseKind::Random => {
                let scale = self.base_scale.unwrap_or(1);
                let mut rng = rng_from_seed(self.seed("base")?);
                random_aperiodic(xs, scale, &mut rng).map_err(|e| field_err("base_scale", e))?
            }
        };
        let mut partition = None;
        let skew = match self.extension {
            ExtensionKind::Trivial => SkewProduct::trivial(base, ys),
            ExtensionKind::Simple => {
                let labels = require(&self.partition, "partition", "extension = \"simple\"")?;
                if labels.len() != self.nx {
                    return Err(field_err("partition", format!("expected {} labels, found {}", self.nx, labels.len())));
                }
                let perms = require(&self.block_perms, "block_perms", "extension = \"simple\"")?
                    .into_iter()
                    .map(|f| perm_field("block_perms", f, self.ny))
                    .collect::<Result<Vec<_>, _>>()?;
                let part = SimplePartition::from_labels(&labels, perms).map_err(|e| field_err("partition", e))?;
                let r = simple_cocycle(&base, &part).map_err(|e| field_err("partition", e))?;
                partition = Some(part);
                r
            }
            ExtensionKind::Explicit => {
                let fibers = require(&self.fibers, "fibers", "extension = \"explicit\"")?
                    .into_iter()
                    .map(|f| perm_field("fibers", f, self.ny))
                    .collect::<Result<Vec<_>, _>>()?;
                SkewProduct::new(base, fibers).map_err(|e| field_err("fibers", e))?
            }
            ExtensionKind::Random => {
                let seed = self.seed("extension")?;
                let mut rng = rng_from_seed(seed.wrapping_add(0x9e37_79b9_7f4a_7c15));
                random_extension(base, ys, self.random_fibers, &mut rng).map_err(|e| field_err("random_fibers", e))?
            }
        };
        let subset = match &self.subset {
            None => CellSet::all(xs),
            Some(cells) => {
                let set = CellSet::new(xs, cells.iter().copied()).map_err(|e| field_err("subset", e))?;
                if set.is_empty() {
                    return Err(field_err("subset", "must not be empty"));
                }
                set
            }
        };
        if self.m.is_empty() || self.m.contains(&0) {
            return Err(field_err("m", "needs at least one positive value"));
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(field_err("n_min", format!("need 1 <= n_min <= n_max (got {}..={})", self.n_min, self.n_max)));
        }
        Ok(Instance { skew, partition, subset, ms: self.m.clone(), n_min: self.n_min, n_max: self.n_max })
    }
}
