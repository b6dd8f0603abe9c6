//! Exact arithmetic in `Z[t]`.

mod cyclotomic;
mod laurent;
mod parse;
mod poly;
mod resultant;

pub use cyclotomic::cyclotomic;
pub use laurent::LaurentPoly;
pub use parse::{parse_poly, ParsePolyError};
pub use poly::IntPoly;
pub use resultant::{resultant, sylvester_matrix};

use num_bigint::BigInt;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("resultant of the zero polynomial is undefined")]
    ZeroInput,
    #[error("n must be >= 1 (got {0})")]
    InvalidIndex(u64),
}

impl IntPoly {
    /// JSON form: ascending coefficients as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Option<IntPoly> {
        let coeffs = v.as_array()?.iter().map(|c| c.as_str()?.parse::<BigInt>().ok()).collect::<Option<Vec<_>>>()?;
        Some(IntPoly::from_coeffs(coeffs))
    }
}
