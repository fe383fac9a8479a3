//! Polynomial arguments: `16,8,164` or `{"coeffs": ["16", 8, "6.62"]}`.

use hurwitz_core::poly::{parse_rational, Polynomial};
use num_traits::Zero;
use serde_json::Value;

use crate::Failure;

fn json_coeffs(text: &str) -> Result<Vec<String>, Failure> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad JSON: {e}")))?;
    let arr = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::usage("JSON input needs a \"coeffs\" array"))?;
    arr.iter()
        .map(|c| match c {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Failure::usage(format!(
                "coefficient {other} is not a number"
            ))),
        })
        .collect()
}

/// Parses an ascending (or, with `descending`, highest-first) coefficient
/// list. A zero leading coefficient is rejected rather than stripped.
pub fn parse_poly(text: &str, descending: bool) -> Result<Polynomial, Failure> {
    let text = text.trim();
    let raw: Vec<String> = if text.starts_with('{') {
        json_coeffs(text)?
    } else {
        text.split(',').map(|s| s.trim().to_string()).collect()
    };
    if raw.is_empty() || raw.iter().all(String::is_empty) {
        return Err(Failure::usage("empty coefficient list"));
    }
    let mut coeffs = raw
        .iter()
        .map(|s| {
            parse_rational(s).map_err(|_| Failure::usage(format!("cannot parse coefficient {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if descending {
        coeffs.reverse();
    }
    if coeffs.last().is_some_and(Zero::is_zero) {
        return Err(Failure::usage(
            "leading coefficient is zero (coefficients are lowest degree first; see --descending)",
        ));
    }
    Ok(Polynomial::new(coeffs)?)
}
