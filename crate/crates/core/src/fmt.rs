//! Deterministic float formatting for CSV and JSON surfaces: shortest
//! round-trip representation of the value rounded to 9 significant digits,
//! locale-independent with '.' as the decimal separator.

/// Round to 9 significant decimal digits.
pub fn round_sig9(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(8 - exp);
    (x * scale).round() / scale
}

/// Fixed formatting: 9 significant digits, shortest form that round-trips.
pub fn fmt_g9(x: f64) -> String {
    if x.is_nan() {
        return "NaN".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let r = round_sig9(x);
    let mut s = format!("{r}");
    // normalize negative zero
    if s == "-0" {
        s = "0".to_string();
    }
    s
}
