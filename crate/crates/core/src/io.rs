//! JSON form of matrices and coefficient tables.
//!
//! Every number is written twice: `exact` in the canonical scalar grammar and
//! `re`/`im` as floats. Readers use only `exact`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::clebsch::{CgIndex, EpsilonTable};
use crate::scalar::{ExactScalar, ParseScalarError};
use crate::space::{LinOp, SpaceError, SpaceLabel};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ParseScalarError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryJson {
    pub exact: String,
    pub re: f64,
    pub im: f64,
}

impl EntryJson {
    pub fn new(x: &ExactScalar) -> Self {
        let z = x.to_complex();
        Self { exact: x.to_string(), re: z.re, im: z.im }
    }
}

/// Rows index the codomain basis, columns the domain basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub domain: SpaceLabel,
    pub codomain: SpaceLabel,
    pub entries: Vec<Vec<EntryJson>>,
}

impl MatrixJson {
    pub fn from_linop(a: &LinOp) -> Self {
        let entries = (0..a.rows()).map(|i| (0..a.cols()).map(|j| EntryJson::new(a.get(i, j))).collect()).collect();
        Self { domain: a.domain().clone(), codomain: a.codomain().clone(), entries }
    }

    pub fn to_linop(&self) -> Result<LinOp, IoError> {
        let cols = self.domain.dim();
        let mut flat = Vec::with_capacity(cols * self.entries.len());
        for (row, entries) in self.entries.iter().enumerate() {
            if entries.len() != cols {
                return Err(IoError::Ragged { row, expected: cols, found: entries.len() });
            }
            for e in entries {
                flat.push(e.exact.parse::<ExactScalar>()?);
            }
        }
        Ok(LinOp::from_rows(self.domain.clone(), self.codomain.clone(), flat)?)
    }
}

pub fn matrix_to_json(a: &LinOp) -> String {
    serde_json::to_string_pretty(&MatrixJson::from_linop(a)).expect("serializable")
}

pub fn matrix_from_json(text: &str) -> Result<LinOp, IoError> {
    serde_json::from_str::<MatrixJson>(text)?.to_linop()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonEntryJson {
    pub i: u32,
    pub j: u32,
    pub exact: String,
    pub float: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonTableJson {
    pub index: CgIndex,
    pub values: Vec<EpsilonEntryJson>,
}

impl EpsilonTableJson {
    pub fn from_table(t: &EpsilonTable) -> Self {
        let values = t
            .iter()
            .map(|(i, j, v)| EpsilonEntryJson { i, j, exact: v.to_string(), float: v.to_f64() })
            .collect();
        Self { index: t.index(), values }
    }

    pub fn to_table(&self) -> Result<EpsilonTable, IoError> {
        let mut values = BTreeMap::new();
        for e in &self.values {
            values.insert((e.i, e.j), e.exact.parse::<ExactScalar>()?);
        }
        Ok(EpsilonTable::from_values(self.index, values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clebsch::{alpha_closed, epsilon_table};

    #[test]
    fn matrix_roundtrip() {
        let a = alpha_closed(CgIndex::new(2, 1, 1).unwrap());
        assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn ragged_rejected() {
        let text = r#"{"domain":[{"kind":"plain","degree":1}],"codomain":[{"kind":"plain","degree":1}],
            "entries":[[{"exact":"0","re":0,"im":0}],[]]}"#;
        assert!(matches!(matrix_from_json(text), Err(IoError::Ragged { .. })));
    }

    #[test]
    fn table_roundtrip() {
        let t = epsilon_table(CgIndex::new(3, 2, 1).unwrap());
        let json = serde_json::to_string(&EpsilonTableJson::from_table(&t)).unwrap();
        let back: EpsilonTableJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_table().unwrap(), *t);
    }
}
