//! Fixed float formatting for every emitted file.

/// Rounds to 10 significant digits and prints the shortest string that
/// reads back as that rounded value.
pub fn sig10(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.9e}").parse().unwrap();
    if rounded == 0.0 {
        return "0".to_string();
    }
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::sig10;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig10(1.368_742_123_456_7), "1.368742123");
        assert_eq!(sig10(0.5), "0.5");
        assert_eq!(sig10(0.0), "0");
        assert_eq!(sig10(-0.0), "0");
        assert_eq!(sig10(123456789012.0), "123456789000");
    }
}
