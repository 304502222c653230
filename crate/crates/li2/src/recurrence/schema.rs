//! JSON wire format for recurrences.
//!
//! ```json
//! {
//!   "order": 1,
//!   "offset": 0,
//!   "coefficients": [[-1.0], [[2.0, 0.5]]]
//! }
//! ```
//!
//! `coefficients[j][m]` is the coefficient of `n^m` in `P_j`; each scalar is
//! either a JSON number (real) or a two-element array `[re, im]`. Numbers are
//! parsed as binary64 bit-exactly.

use super::{Polynomial, Recurrence, RecurrenceError};
use crate::scalar::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field \"coefficients\" must hold order+1 = {expected} arrays, found {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("invalid recurrence: {0}")]
    Invalid(#[from] RecurrenceError),
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarRepr {
    Real(f64),
    Complex([f64; 2]),
}

impl From<ScalarRepr> for Complex<f64> {
    fn from(r: ScalarRepr) -> Self {
        match r {
            ScalarRepr::Real(v) => Complex::new(v, 0.0),
            ScalarRepr::Complex([re, im]) => Complex::new(re, im),
        }
    }
}

impl From<Complex<f64>> for ScalarRepr {
    fn from(z: Complex<f64>) -> Self {
        if z.im == 0.0 && !z.im.is_sign_negative() {
            ScalarRepr::Real(z.re)
        } else {
            ScalarRepr::Complex([z.re, z.im])
        }
    }
}

/// Serialized form of a [`Recurrence`] over complex binary64.
#[derive(Debug, Serialize, Deserialize)]
pub struct RecurrenceFile {
    pub order: usize,
    #[serde(default)]
    pub offset: usize,
    pub coefficients: Vec<Vec<ScalarRepr>>,
}

impl TryFrom<RecurrenceFile> for Recurrence<Complex<f64>> {
    type Error = SchemaError;

    fn try_from(file: RecurrenceFile) -> Result<Self, SchemaError> {
        if file.coefficients.len() != file.order + 1 {
            return Err(SchemaError::CoefficientCount {
                expected: file.order + 1,
                found: file.coefficients.len(),
            });
        }
        let coeffs = file
            .coefficients
            .into_iter()
            .map(|poly| Polynomial::new(poly.into_iter().map(Complex::from).collect()))
            .collect();
        Ok(Recurrence::new(coeffs, file.offset)?)
    }
}

impl From<&Recurrence<Complex<f64>>> for RecurrenceFile {
    fn from(rec: &Recurrence<Complex<f64>>) -> Self {
        RecurrenceFile {
            order: rec.order(),
            offset: rec.offset(),
            coefficients: rec
                .coefficients()
                .iter()
                .map(|p| p.coeffs().iter().map(|&c| ScalarRepr::from(c)).collect())
                .collect(),
        }
    }
}

pub fn recurrence_from_json(text: &str) -> Result<Recurrence<Complex<f64>>, SchemaError> {
    let file: RecurrenceFile = serde_json::from_str(text)?;
    file.try_into()
}

pub fn recurrence_to_json(rec: &Recurrence<Complex<f64>>) -> String {
    serde_json::to_string_pretty(&RecurrenceFile::from(rec)).expect("schema serializes")
}
