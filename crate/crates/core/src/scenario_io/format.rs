//! Locale-independent numeric formatting for CLI and CSV output.

/// Formats `v` with `digits` significant digits, keeping trailing zeros
/// (C's `%#.*g`).
pub fn significant(v: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // Round once in scientific form to learn the decimal exponent after
    // rounding, then lay the digits out in fixed notation when it fits.
    let sci = format!("{:.*e}", digits - 1, v);
    let (_, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Shortest round-trip representation, with `inf` for infinities.
pub fn shortest(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    format!("{v}")
}
