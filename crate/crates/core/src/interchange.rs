//! JSON interchange format for semigroups:
//!
//! ```json
//! {"n": 2, "table": [[0, 1], [1, 1]], "E": [0, 1], "names": ["1", "z"]}
//! ```
//!
//! `table` is row-major with `table[i][j] = i·j`. `E` and `names` are
//! optional.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ehresmann::EhresmannStructure;
use crate::semigroup::{FiniteSemigroup, SemigroupError};

#[derive(Debug, Error)]
pub enum InterchangeError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("n = {n} but the table has {rows} rows")]
    SizeMismatch { n: usize, rows: usize },
    #[error("E contains {index}, outside 0..{n}")]
    EOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(rename = "E", default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl SemigroupFile {
    pub fn parse(json: &str) -> Result<Self, InterchangeError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Validates the table and returns the semigroup with the optional `E`.
    pub fn into_semigroup(self) -> Result<(FiniteSemigroup, Option<Vec<usize>>), InterchangeError> {
        if self.table.len() != self.n {
            return Err(InterchangeError::SizeMismatch { n: self.n, rows: self.table.len() });
        }
        let mut s = FiniteSemigroup::new(self.table)?;
        if let Some(names) = self.names {
            s = s.with_names(names)?;
        }
        if let Some(&index) = self.e.iter().flatten().find(|&&x| x >= self.n) {
            return Err(InterchangeError::EOutOfRange { index, n: self.n });
        }
        Ok((s, self.e))
    }

    pub fn from_semigroup(s: &FiniteSemigroup, e: Option<&[usize]>) -> Self {
        SemigroupFile {
            n: s.size(),
            table: s.rows(),
            e: e.map(<[usize]>::to_vec),
            names: s.names().map(<[String]>::to_vec),
        }
    }

    pub fn from_structure(es: &EhresmannStructure) -> Self {
        Self::from_semigroup(es.semigroup(), Some(es.e()))
    }
}
