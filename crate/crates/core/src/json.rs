//! JSON input schemas: posets as `{"elements": [...], "covers":
//! [["upper","lower"], ...]}`, lattices as either a poset or the
//! shortcut `{"type": "idn", "d": D, "n": N}`, and square-free ideals
//! as `{"n_vars": k, "generators": [[...], ...]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dlattice::{DistributiveLattice, LatticeError};
use crate::grassmann::{idn, GrassmannError};
use crate::multiplicity::SqFreeIdeal;
use crate::poset::{Poset, PosetSpec};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] crate::poset::PosetError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error("i/o error reading {0}: {1}")]
    Io(String, std::io::Error),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum IdnTag {
    #[serde(rename = "idn")]
    Idn,
}

/// Lattice input: the I_{d,n} shortcut or an explicit poset.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Idn {
        #[serde(rename = "type")]
        tag: IdnTag,
        d: u32,
        n: u32,
    },
    Poset(PosetSpec),
}

impl LatticeSpec {
    pub fn build(&self) -> Result<DistributiveLattice, JsonError> {
        match self {
            LatticeSpec::Idn { d, n, .. } => Ok(idn(*d, *n)?),
            LatticeSpec::Poset(spec) => {
                Ok(DistributiveLattice::from_poset(Poset::from_spec(spec.clone())?)?)
            }
        }
    }
}

pub fn lattice_from_str(s: &str) -> Result<DistributiveLattice, JsonError> {
    let spec: LatticeSpec = serde_json::from_str(s)?;
    spec.build()
}

pub fn lattice_from_file(path: &str) -> Result<DistributiveLattice, JsonError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| JsonError::Io(path.to_string(), e))?;
    lattice_from_str(&text)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SqFreeIdealSpec {
    pub n_vars: usize,
    pub generators: Vec<Vec<usize>>,
}

impl SqFreeIdealSpec {
    pub fn build(&self) -> SqFreeIdeal {
        SqFreeIdeal::new(self.n_vars, self.generators.clone())
    }
}

pub fn ideal_from_str(s: &str) -> Result<SqFreeIdeal, JsonError> {
    let spec: SqFreeIdealSpec = serde_json::from_str(s)?;
    Ok(spec.build())
}
