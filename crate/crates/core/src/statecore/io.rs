//! JSON state files: `{ "dims": [d1, ...], "matrix": [[re, im], ...] }`,
//! matrix entries in row-major order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statecore::matrix::{ComplexMatrix, C64};
use crate::statecore::state::QuantumState;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub matrix: Vec<[f64; 2]>,
}

impl StateFile {
    pub fn from_matrix(dims: &[usize], m: &ComplexMatrix) -> Self {
        StateFile {
            dims: dims.to_vec(),
            matrix: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Shape checks only; returns `Error::Parse` for malformed data.
    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.dims.is_empty() {
            return Err(Error::Parse("empty dims".into()));
        }
        let d: usize = self.dims.iter().product();
        let n = self.matrix.len();
        if n != d * d {
            let side = (n as f64).sqrt().round() as usize;
            let what = if side * side == n { "dimension-inconsistent" } else { "non-square" };
            return Err(Error::Parse(format!(
                "{what} matrix: {n} entries, dims {:?} need {}",
                self.dims,
                d * d
            )));
        }
        let data = self.matrix.iter().map(|&[re, im]| C64::new(re, im)).collect();
        ComplexMatrix::from_vec(d, d, data).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_state(&self) -> Result<QuantumState> {
        let m = self.to_matrix()?;
        QuantumState::new(self.dims.clone(), m)
    }
}

pub fn state_to_json(state: &QuantumState) -> String {
    serde_json::to_string_pretty(&StateFile::from_matrix(state.dims(), state.matrix()))
        .expect("state serializes")
}

pub fn parse_state_file(text: &str) -> Result<StateFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates a state; parse failures are `Error::Parse`,
/// invariant failures `Error::InvalidState`.
pub fn state_from_json(text: &str) -> Result<QuantumState> {
    parse_state_file(text)?.to_state()
}

pub fn read_state(path: &Path) -> Result<QuantumState> {
    state_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_state(path: &Path, state: &QuantumState) -> Result<()> {
    std::fs::write(path, state_to_json(state))?;
    Ok(())
}
