//! Serde helpers enforcing the report encoding rules: reals carry 17
//! significant digits, counts are decimal strings so JSON consumers cannot
//! lose precision.

use serde::{Serialize, Serializer};

fn real_to_number(v: f64) -> Option<serde_json::Number> {
    // {:.16e} always yields a valid JSON number literal
    v.is_finite()
        .then(|| serde_json::Number::from_string_unchecked(format!("{v:.16e}")))
}

/// Serialize an f64 with 17 significant digits (non-finite values become
/// strings, which plain JSON cannot carry as numbers).
pub mod real {
    use super::*;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        match real_to_number(*v) {
            Some(n) => n.serialize(s),
            None => s.serialize_str(&v.to_string()),
        }
    }
}

/// `Option<f64>` variant of [`real`]; `None` serializes as null.
pub mod real_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => real::serialize(x, s),
            None => s.serialize_none(),
        }
    }
}

/// Serialize a u64 count as a decimal string.
pub mod count {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }
}

/// Format an f64 for CSV cells: same 17-significant-digit convention.
pub fn csv_real(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}
