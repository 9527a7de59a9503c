//! State files: JSON with dims and a row-major list of `[re, im]` pairs.

use std::fs;
use std::path::Path;

use gqd_core::{CMatrix, DensityMatrix, C64};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const STATE_SCHEMA: &str = "gqd.state/1";

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub schema: String,
    pub dims: [usize; 2],
    pub matrix: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix, metadata: Option<Metadata>) -> Result<Self, CliError> {
        let (d1, d2) = rho.bipartite_dims()?;
        let m = rho.matrix();
        let n = m.nrows();
        let matrix = (0..n * n)
            .map(|k| {
                let z = m[(k / n, k % n)];
                [z.re, z.im]
            })
            .collect();
        Ok(Self {
            schema: STATE_SCHEMA.into(),
            dims: [d1, d2],
            matrix,
            metadata,
        })
    }

    /// Validated state; every violated invariant is named in the error.
    pub fn to_state(&self) -> Result<DensityMatrix, CliError> {
        if self.schema != STATE_SCHEMA {
            return Err(CliError::InvalidInput(format!(
                "unsupported schema {:?}, expected {STATE_SCHEMA:?}",
                self.schema
            )));
        }
        let [d1, d2] = self.dims;
        let n = d1.checked_mul(d2).unwrap_or(0);
        if d1 < 2 || d2 < 2 || self.matrix.len() != n * n {
            return Err(CliError::InvalidInput(format!(
                "dims {d1}x{d2} need {} entries, found {}",
                n * n,
                self.matrix.len()
            )));
        }
        let m = CMatrix::from_fn(n, n, |r, c| {
            let [re, im] = self.matrix[r * n + c];
            C64::new(re, im)
        });
        Ok(DensityMatrix::new(vec![d1, d2], m)?)
    }

    /// SHA-256 of the canonical serialization of dims and entries.
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_vec(&(&self.dims, &self.matrix)).expect("serializable");
        hex::encode(Sha256::digest(canonical))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn read_state_file(path: &Path) -> Result<StateFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_state(path: &Path) -> Result<(DensityMatrix, StateFile), CliError> {
    let file = read_state_file(path)?;
    Ok((file.to_state()?, file))
}

pub fn write_state_file(path: &Path, file: &StateFile) -> Result<(), CliError> {
    fs::write(path, file.to_json() + "\n")?;
    Ok(())
}
