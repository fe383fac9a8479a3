use hurwitz_core::poly::{format_rational, rational_to_f64, Polynomial};
use hurwitz_core::stability::MinorSequence;
use serde::Serialize;

pub fn emit<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

/// Floating-point rendering of the coefficients, for display only.
pub fn decimals(p: &Polynomial) -> Vec<f64> {
    p.coeffs().iter().map(rational_to_f64).collect()
}

pub fn minors_line(m: &MinorSequence) -> String {
    m.deltas()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let exact = format_rational(d);
            let approx = rational_to_f64(d);
            if exact.contains('/') {
                format!("Δ{} = {exact} (≈ {approx:e})", i + 1)
            } else {
                format!("Δ{} = {exact}", i + 1)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}
