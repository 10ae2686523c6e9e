//! JSON document form of a presentation.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "dim": 1,
//!   "states": ["P"],
//!   "init": ["1"],
//!   "shifts": { "00": [["1"]], "01": [["1"]], "10": [["1"]], "11": [["0"]] },
//!   "select": ["1"]
//! }
//! ```
//!
//! Shift matrices are row-major; column `j` holds the coordinates of the
//! shifted state `j`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Presentation, ShiftMatrix, LETTERS};
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub field: String,
    pub dim: usize,
    pub states: Vec<String>,
    pub init: Vec<String>,
    pub shifts: BTreeMap<String, Vec<Vec<String>>>,
    pub select: Vec<String>,
}

fn key(s: usize, t: usize) -> String {
    format!("{s}{t}")
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        let strings = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect();
        let shifts = LETTERS
            .iter()
            .map(|&(s, t)| {
                let m = p.shift_matrix(s, t).to_dense(p.field());
                let rows = (0..m.rows()).map(|i| strings(m.row(i))).collect();
                (key(s, t), rows)
            })
            .collect();
        PresentationFile {
            field: p.field().tag(),
            dim: p.dim(),
            states: p.names().to_vec(),
            init: strings(p.init()),
            shifts,
            select: strings(p.select()),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation> {
        let field: Field = self.field.parse()?;
        let parse_vec = |v: &[String]| -> Result<Vec<Scalar>> {
            v.iter().map(|x| Scalar::parse(x, field)).collect()
        };
        let init = parse_vec(&self.init)?;
        let select = parse_vec(&self.select)?;
        if init.len() != self.dim || select.len() != self.dim || self.states.len() != self.dim {
            return Err(Error::Format(format!("vectors must have length {}", self.dim)));
        }
        let mut shifts = Vec::with_capacity(4);
        for &(s, t) in &LETTERS {
            let k = key(s, t);
            let rows = self
                .shifts
                .get(&k)
                .ok_or_else(|| Error::Format(format!("missing shift matrix \"{k}\"")))?;
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(Error::Format(format!(
                    "shift matrix \"{k}\" must be {0}x{0}",
                    self.dim
                )));
            }
            let rows = rows
                .iter()
                .map(|r| parse_vec(r))
                .collect::<Result<Vec<_>>>()?;
            let m = DenseMatrix::from_rows(field, rows)?;
            shifts.push(ShiftMatrix::from_dense(&m)?);
        }
        let shifts: [ShiftMatrix; 4] = shifts.try_into().expect("four letters");
        Presentation::new(field, init, shifts, select, self.states.clone())
    }
}

impl Presentation {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PresentationFile::from_presentation(self))
            .expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.to_presentation()
    }
}
