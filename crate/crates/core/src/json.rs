//! JSON helpers shared by the report types.

use num_bigint::BigInt;
use serde_json::Value;

/// An exact JSON number for an arbitrary-precision integer.
pub fn int_value(n: &BigInt) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal integers are valid JSON numbers")
}
