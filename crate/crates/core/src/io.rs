//! Export formats shared by the command-line front end.

use serde::{Deserialize, Serialize};

use crate::asm::AsmRow;
use crate::dynamics::IntensityMatrix;
use crate::error::{Error, Result};
use crate::paths::Model;
use crate::stationary::DetailedStats;

/// Sparse generator with the index table of its configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntensityExport {
    pub model: Model,
    #[serde(rename = "L")]
    pub l: usize,
    /// Heights of the configuration at each index.
    pub index: Vec<Vec<i32>>,
    /// `(row, col, value)`, column-major.
    pub triplets: Vec<(usize, usize, i64)>,
}

impl From<&IntensityMatrix> for IntensityExport {
    fn from(h: &IntensityMatrix) -> Self {
        IntensityExport {
            model: h.spec.model,
            l: h.spec.l,
            index: h.paths.iter().map(|p| p.heights().to_vec()).collect(),
            triplets: h.triplets(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelEntry {
    #[serde(rename = "N")]
    pub n: i32,
    #[serde(rename = "S")]
    pub s: String,
    #[serde(rename = "M")]
    pub m: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaEntry {
    pub h0: i32,
    #[serde(rename = "M")]
    pub m: i32,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinEntry {
    pub h0: i32,
    pub value: String,
}

/// Level sums and maxima, plus the model B refinements by left height.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetailedRecord {
    pub model: Model,
    #[serde(rename = "L")]
    pub l: usize,
    pub levels: Vec<LevelEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sigma: Vec<SigmaEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub min_by_h0: Vec<MinEntry>,
}

impl DetailedRecord {
    pub fn new(model: Model, l: usize, d: &DetailedStats) -> Self {
        DetailedRecord {
            model,
            l,
            levels: d
                .s_ln
                .iter()
                .map(|(&n, s)| LevelEntry {
                    n,
                    s: s.to_string(),
                    m: d.m_ln[&n].to_string(),
                })
                .collect(),
            sigma: d
                .sigma
                .iter()
                .map(|(&(h0, m), v)| SigmaEntry {
                    h0,
                    m,
                    value: v.to_string(),
                })
                .collect(),
            min_by_h0: d
                .min_by_h0
                .iter()
                .map(|(&h0, v)| MinEntry {
                    h0,
                    value: v.to_string(),
                })
                .collect(),
        }
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

fn to_string(w: csv::Writer<Vec<u8>>) -> Result<String> {
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

/// `row,col,value` lines.
pub fn intensity_csv(h: &IntensityMatrix) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["row", "col", "value"]).map_err(csv_err)?;
    for (r, c, v) in h.triplets() {
        w.serialize((r, c, v)).map_err(csv_err)?;
    }
    to_string(w)
}

/// `n,A,AV,AVH,AHT` with empty cells where a class is empty.
pub fn asm_table_csv(rows: &[AsmRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    to_string(w)
}

/// Output formats, one per line, printed by `--schema`.
pub const SCHEMAS: &[(&str, &str)] = &[
    (
        "path",
        r#"{"L": int, "family": "Dyck"|"Ballot"|"AnchoredCross", "heights": [int, ...]}"#,
    ),
    (
        "intensity",
        r#"{"model": "A"|"B"|"C", "L": int, "index": [[int, ...], ...], "triplets": [[row, col, value], ...]}; CSV: row,col,value"#,
    ),
    (
        "stationary",
        r#"{"model": ..., "L": int, "weights": [{"heights": [int, ...], "weight": "<decimal>"}], "S": "<decimal>", "m": "<decimal>", "M": "<decimal>"}"#,
    ),
    (
        "detailed",
        r#"{"model": ..., "L": int, "levels": [{"N": int, "S": "<decimal>", "M": "<decimal>"}], "sigma": [{"h0": int, "M": int, "value": "<decimal>"}], "min_by_h0": [{"h0": int, "value": "<decimal>"}]}"#,
    ),
    (
        "orbit",
        r#"{"generator": [int, ...], "level": int, "side": "left"|"right", "members": [{"heights": [...], "weight": "<decimal>"}], "sum": "<decimal>", "expected"?: "<decimal>", "pass"?: bool}"#,
    ),
    (
        "lattice",
        r#"CSV: header "n\m,<m>,..."; one row per n descending; cells "p/q", "p" or empty when undefined"#,
    ),
    (
        "poly",
        r#"{"family": "F"|"G", "m": int, "n": int, "poly": "85x^2+42xy+6y^2"} (descending in x, then y)"#,
    ),
    (
        "asm",
        r#"CSV: n,A,AV,AVH,AHT as decimal strings, empty where the class is empty"#,
    ),
    (
        "verify",
        r#"{"id": string, "models": [...], "l_range": [lo, hi], "instances": [{"label": string, "L": int, "lhs": "<decimal>", "rhs": "<decimal>", "pass": bool}], "notes"?: [string], "pass": bool}"#,
    ),
    (
        "simulate",
        r#"{"model": ..., "L": int, "steps": int, "burn_in": int, "seed": int, "rng": string, "counts": [int, ...], "tv": float, "max_rel_err": float|null, "avalanche": {"<desorbed>": count}}; CSV: desorbed,count"#,
    ),
];

pub fn schema_text() -> String {
    SCHEMAS.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::intensity_matrix;

    #[test]
    fn intensity_round_trip() {
        let h = intensity_matrix(Model::A, 4).unwrap();
        let e = IntensityExport::from(&h);
        let back: IntensityExport =
            serde_json::from_str(&serde_json::to_string(&e).unwrap()).unwrap();
        assert_eq!(back, e);
        let csv = intensity_csv(&h).unwrap();
        assert_eq!(csv.lines().next(), Some("row,col,value"));
        assert_eq!(csv.lines().count(), 1 + h.triplets().len());
    }

    #[test]
    fn asm_csv_header() {
        let csv = asm_table_csv(&crate::asm::asm_table(3).unwrap()).unwrap();
        assert_eq!(csv.lines().next(), Some("n,A,AV,AVH,AHT"));
        assert_eq!(csv.lines().nth(2), Some("2,2,,,2"));
    }
}
