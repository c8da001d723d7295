//! JSON matrix documents.
//!
//! One document per file:
//!
//! ```json
//! {"kind": "so4_coeffs",  "data": [f12, f13, f14, f23, f24, f34]}
//! {"kind": "so4_matrix",  "data": [[..4..], [..4..], [..4..], [..4..]]}
//! {"kind": "so4_matrix",  "orthogonal": true, "data": [[..]]}
//! {"kind": "su2_vec",     "data": [x1, x2, x3]}
//! {"kind": "su2_matrix",  "data": [[[re, im], [re, im]], [[re, im], [re, im]]]}
//! ```
//!
//! A plain `so4_matrix` must be antisymmetric; with `"orthogonal": true` it
//! must be orthogonal instead. Both are checked to [`INGEST_TOL`].

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::CliError;
use crate::algebra::{Complex64, Mat2c, Mat4r, So4Coeffs, Vec3};
use crate::magic::SplitPair;

/// Shape tolerance applied when reading `so4_matrix` documents.
pub const INGEST_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixDocument {
    So4Coeffs(So4Coeffs),
    /// Antisymmetric generator.
    So4Matrix(Mat4r),
    /// Group element, tagged `"orthogonal": true`.
    So4Orthogonal(Mat4r),
    Su2Vec(Vec3),
    Su2Matrix(Mat2c),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: String,
    data: Value,
    #[serde(default)]
    orthogonal: Option<bool>,
}

fn payload<T: serde::de::DeserializeOwned>(
    kind: &str,
    data: Value,
    shape: &str,
) -> Result<T, CliError> {
    serde_json::from_value(data)
        .map_err(|e| CliError::Schema(format!("{kind} payload must be {shape}: {e}")))
}

impl MatrixDocument {
    pub fn kind(&self) -> &'static str {
        match self {
            MatrixDocument::So4Coeffs(_) => "so4_coeffs",
            MatrixDocument::So4Matrix(_) | MatrixDocument::So4Orthogonal(_) => "so4_matrix",
            MatrixDocument::Su2Vec(_) => "su2_vec",
            MatrixDocument::Su2Matrix(_) => "su2_matrix",
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: Value = serde_json::from_str(text).map_err(CliError::from_json)?;
        Self::from_value(value)
    }

    pub fn from_value(value: Value) -> Result<Self, CliError> {
        let raw: RawDocument = serde_json::from_value(value)
            .map_err(|e| CliError::Schema(format!("not a matrix document: {e}")))?;
        let kind = raw.kind.as_str();
        if raw.orthogonal.is_some() && kind != "so4_matrix" {
            return Err(CliError::Schema(format!(
                "\"orthogonal\" is only meaningful for so4_matrix, not {kind}"
            )));
        }
        match kind {
            "so4_coeffs" => {
                let a: [f64; 6] = payload(kind, raw.data, "6 numbers")?;
                Ok(MatrixDocument::So4Coeffs(So4Coeffs::from_array(a)))
            }
            "so4_matrix" => {
                let rows: [[f64; 4]; 4] = payload(kind, raw.data, "a 4×4 array of numbers")?;
                let m = Mat4r::from_rows(rows);
                if raw.orthogonal == Some(true) {
                    let defect = m.orthogonality_defect();
                    if defect.is_nan() || defect > INGEST_TOL {
                        return Err(CliError::Schema(format!(
                            "so4_matrix marked orthogonal has ‖MᵀM − I‖ = {defect:e}"
                        )));
                    }
                    Ok(MatrixDocument::So4Orthogonal(m))
                } else {
                    let defect = m.antisymmetry_defect();
                    if defect.is_nan() || defect > INGEST_TOL {
                        return Err(CliError::Schema(format!(
                            "so4_matrix is not antisymmetric (max |M + Mᵀ| = {defect:e})"
                        )));
                    }
                    Ok(MatrixDocument::So4Matrix(m))
                }
            }
            "su2_vec" => {
                let a: [f64; 3] = payload(kind, raw.data, "3 numbers")?;
                Ok(MatrixDocument::Su2Vec(Vec3::from_array(a)))
            }
            "su2_matrix" => {
                let rows: [[[f64; 2]; 2]; 2] =
                    payload(kind, raw.data, "a 2×2 array of [re, im] pairs")?;
                Ok(MatrixDocument::Su2Matrix(Mat2c::from_fn(|i, j| {
                    Complex64::new(rows[i][j][0], rows[i][j][1])
                })))
            }
            other => Err(CliError::Schema(format!(
                "unknown kind {other:?} (expected so4_coeffs, so4_matrix, su2_vec or su2_matrix)"
            ))),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            MatrixDocument::So4Coeffs(c) => json!({ "kind": self.kind(), "data": c.to_array() }),
            MatrixDocument::So4Matrix(m) => json!({ "kind": self.kind(), "data": m.rows() }),
            MatrixDocument::So4Orthogonal(m) => {
                json!({ "kind": self.kind(), "orthogonal": true, "data": m.rows() })
            }
            MatrixDocument::Su2Vec(v) => json!({ "kind": self.kind(), "data": v.to_array() }),
            MatrixDocument::Su2Matrix(m) => {
                let rows: Vec<Vec<[f64; 2]>> =
                    m.rows().iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect();
                json!({ "kind": self.kind(), "data": rows })
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            MatrixDocument::So4Coeffs(c) => c.to_array().iter().all(|x| x.is_finite()),
            MatrixDocument::So4Matrix(m) | MatrixDocument::So4Orthogonal(m) => m.is_finite(),
            MatrixDocument::Su2Vec(v) => v.is_finite(),
            MatrixDocument::Su2Matrix(m) => m.is_finite(),
        }
    }
}

/// Output of `split`, accepted back by `merge`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitDocument {
    pub self_dual: [f64; 3],
    pub anti_self_dual: [f64; 3],
}

impl From<SplitPair> for SplitDocument {
    fn from(p: SplitPair) -> Self {
        SplitDocument { self_dual: p.a1.to_array(), anti_self_dual: p.a2.to_array() }
    }
}

impl From<SplitDocument> for SplitPair {
    fn from(d: SplitDocument) -> Self {
        SplitPair::new(Vec3::from_array(d.self_dual), Vec3::from_array(d.anti_self_dual))
    }
}
