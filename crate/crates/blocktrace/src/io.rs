//! The on-disk JSON formats: matrix files with declared block structure and
//! the fuzz-report wrapper, plus atomic file writes so replay files are
//! never observed half-written.
//!
//! Numbers round-trip exactly: serialization uses the shortest decimal that
//! parses back to the same double.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::blockops::BlockMatrix;
use crate::matrix::{Complex64, ComplexMatrix};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Wire form of a block matrix: `n*k` rows of `n*k` `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_block(block: &BlockMatrix) -> Self {
        let d = block.dim();
        let data = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let z = block.mat.get(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { schema_version: SCHEMA_VERSION, n: block.n, k: block.k, data }
    }

    pub fn to_block(&self) -> Result<BlockMatrix> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Usage(format!(
                "unsupported schema_version {}, expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if self.n == 0 || self.k == 0 {
            return Err(Error::Usage("n and k must be positive".into()));
        }
        let d = self.n * self.k;
        if self.data.len() != d {
            return Err(Error::Usage(format!(
                "expected {d} rows for n={}, k={}, found {}",
                self.n,
                self.k,
                self.data.len()
            )));
        }
        let mut entries = Vec::with_capacity(d * d);
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Usage(format!(
                    "row {i} has {} entries, expected {d}",
                    row.len()
                )));
            }
            for (j, pair) in row.iter().enumerate() {
                if !pair[0].is_finite() || !pair[1].is_finite() {
                    return Err(Error::Usage(format!(
                        "non-finite entry at row {i}, column {j}"
                    )));
                }
                entries.push(Complex64::new(pair[0], pair[1]));
            }
        }
        BlockMatrix::new(self.n, self.k, ComplexMatrix::new(d, entries)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Usage(format!("matrix file parse failure: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix files always serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }
}

/// Reads a matrix file straight into a block matrix.
pub fn read_block(path: &Path) -> Result<BlockMatrix> {
    MatrixFile::read(path)?.to_block()
}

/// Writes through a sibling temporary file and renames into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| Error::Usage(format!("cannot move {} into place: {e}", tmp.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blockops::tests::random_block;
    use crate::randgen::GenClass;

    #[test]
    fn round_trip_is_byte_identical() {
        let block = random_block(GenClass::General, 2, 3, 77);
        let file = MatrixFile::from_block(&block);
        let text = file.to_json();
        let reparsed = MatrixFile::from_json(&text).unwrap();
        assert_eq!(reparsed.to_json(), text);
        assert_eq!(reparsed.to_block().unwrap().mat.entries(), block.mat.entries());
    }

    #[test]
    fn short_row_is_rejected_with_position() {
        let text = r#"{"schema_version":1,"n":1,"k":2,"data":[[[1,0],[0,0]],[[0,0]]]}"#;
        let err = MatrixFile::from_json(text).unwrap().to_block().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 1"), "{msg}");
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = MatrixFile::from_json("{\"schema_version\":1,").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") && msg.contains("column"), "{msg}");
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let text = r#"{"schema_version":1,"n":2,"k":2,"data":[[[1,0]]]}"#;
        assert!(MatrixFile::from_json(text).unwrap().to_block().is_err());
    }

    #[test]
    fn atomic_write_replaces_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let block = random_block(GenClass::Psd, 2, 2, 3);
        MatrixFile::from_block(&block).write(&path).unwrap();
        let back = read_block(&path).unwrap();
        assert_eq!(back.mat.entries(), block.mat.entries());
        assert!(!path.with_extension("tmp").exists());
    }
}
