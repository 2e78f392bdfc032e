//! Canonical text formatting for every emitted number.
//!
//! All CSV and report output goes through `format_sci` so repeated runs with
//! identical configuration produce byte-identical files.

/// Fixed 12-significant-digit scientific notation, e.g. `1.50000000000e0`.
pub fn format_sci(x: f64) -> String {
    // Normalize negative zero so equal values render identically.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.11e}", x)
}

/// Parses a float previously written by `format_sci` (plain `f64` syntax).
pub fn parse_sci(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_sci(1.5), "1.50000000000e0");
        assert_eq!(format_sci(-0.0), "0.00000000000e0");
        assert_eq!(format_sci(0.0125), "1.25000000000e-2");
        assert_eq!(format_sci(6.02214076e23), "6.02214076000e23");
    }

    #[test]
    fn round_trips() {
        for &x in &[0.0, 1.0, -3.25e-7, 9.999999999e9, 2.0 / 3.0] {
            let s = format_sci(x);
            let y = parse_sci(&s).unwrap();
            assert_eq!(format_sci(y), s);
        }
    }
}
