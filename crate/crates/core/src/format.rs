//! Fixed six-decimal number formatting shared by the CSV and JSON writers.

use serde::Serializer;
use serde_json::value::RawValue;

/// Displays a float with six decimals; infinities become `inf` / `-inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed6(pub f64);

impl std::fmt::Display for Fixed6 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v = self.0;
        if v.is_nan() {
            f.write_str("nan")
        } else if v.is_infinite() {
            f.write_str(if v > 0.0 { "inf" } else { "-inf" })
        } else {
            // avoid "-0.000000"
            let s = format!("{v:.6}");
            if s.trim_start_matches('-')
                .chars()
                .all(|c| c == '0' || c == '.')
            {
                f.write_str("0.000000")
            } else {
                f.write_str(&s)
            }
        }
    }
}

impl serde::Serialize for Fixed6 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        fixed6(&self.0, s)
    }
}

/// Serde helper: finite values become JSON numbers with exactly six
/// decimals, non-finite values become the strings `"inf"`, `"-inf"`, `"nan"`.
pub fn fixed6<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    let text = Fixed6(*v).to_string();
    if v.is_finite() {
        let raw = RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
        serde::Serialize::serialize(&raw, s)
    } else {
        s.serialize_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats() {
        assert_eq!(Fixed6(1.0).to_string(), "1.000000");
        assert_eq!(Fixed6(-1e-9).to_string(), "0.000000");
        assert_eq!(Fixed6(f64::INFINITY).to_string(), "inf");
        assert_eq!(
            serde_json::to_string(&Fixed6(2.0 / 3.0)).unwrap(),
            "0.666667"
        );
        assert_eq!(
            serde_json::to_string(&Fixed6(f64::INFINITY)).unwrap(),
            "\"inf\""
        );
    }
}
