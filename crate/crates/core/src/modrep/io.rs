//! On-disk module format: `{"dim":n,"generators":[...],"p":p,"r":r}`.
//!
//! Only the raw matrices are stored; validity is re-established on load.

use serde::{Deserialize, Serialize};

use super::{Limits, ModuleRep};
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Field order matches the canonical (sorted) key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    pub generators: Vec<Vec<Vec<u32>>>,
    pub p: u32,
    pub r: usize,
}

impl ModuleFile {
    pub fn from_module(m: &ModuleRep) -> Self {
        ModuleFile {
            dim: m.dim(),
            generators: m.gens().iter().map(|g| g.row_vecs()).collect(),
            p: m.p(),
            r: m.r(),
        }
    }

    /// Shape and range checks, then frame validation.
    pub fn into_module(self, limits: &Limits) -> Result<ModuleRep> {
        if self.generators.len() != self.r {
            return Err(Error::Parse(format!(
                "r = {} but {} generators",
                self.r,
                self.generators.len()
            )));
        }
        let mut gens = Vec::with_capacity(self.r);
        for (i, g) in self.generators.iter().enumerate() {
            if g.len() != self.dim || g.iter().any(|row| row.len() != self.dim) {
                return Err(Error::Parse(format!(
                    "generator {} is not {}x{}",
                    i + 1,
                    self.dim,
                    self.dim
                )));
            }
            if let Some(&x) = g.iter().flatten().find(|&&x| x >= self.p) {
                return Err(Error::Parse(format!(
                    "entry {x} of generator {} is not in [0, {})",
                    i + 1,
                    self.p
                )));
            }
            gens.push(Mat::from_rows(g).map_err(|e| Error::Parse(e.to_string()))?);
        }
        if self.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        ModuleRep::with_limits(self.p, gens, limits)
    }
}

/// Canonical serialization: compact, sorted keys, trailing newline.
pub fn module_to_json(m: &ModuleRep) -> String {
    let mut s = serde_json::to_string(&ModuleFile::from_module(m)).expect("plain data");
    s.push('\n');
    s
}

pub fn module_from_json(s: &str, limits: &Limits) -> Result<ModuleRep> {
    let f: ModuleFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    f.into_module(limits)
}
