//! Plain-decimal formatting with a fixed number of significant digits, used by
//! every CSV emitter so reruns are byte-identical.

/// Format with 12 significant digits; the CSV-wide convention.
pub fn sig12(x: f64) -> String {
    sig(x, 12)
}

/// Format `x` in plain decimal with `digits` significant digits.
///
/// Zero prints as "0"; non-finite values print as Rust's Display does. The
/// decimal exponent comes from the exact `{:e}` rendering, so powers of ten
/// land in the right bucket; rounding that carries into an extra digit (e.g.
/// 0.999… at 2 digits → "1.0") is accepted as-is.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = digits as i32 - 1 - exp;
    if decimals >= 0 {
        format!("{x:.*}", decimals as usize)
    } else {
        // |x| ≥ 10^digits: round away the excess integer digits.
        let scale = 10f64.powi(-decimals);
        format!("{:.0}", (x / scale).round() * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_values() {
        assert_eq!(sig12(0.0), "0");
        assert_eq!(sig12(0.3), "0.300000000000");
        assert_eq!(sig12(-0.1), "-0.100000000000");
        assert_eq!(sig12(1.0), "1.00000000000");
        assert_eq!(sig12(1000.0), "1000.00000000");
        assert_eq!(sig12(0.0960364490729867), "0.0960364490730");
        assert_eq!(sig(2.0 / 3.0, 3), "0.667");
        assert_eq!(sig(12345.0, 3), "12300");
        assert_eq!(sig(-12355.0, 3), "-12400");
    }

    #[test]
    fn twelve_digit_output_is_stable_and_reparses_close() {
        for &x in &[
            3.0 / (std::f64::consts::PI * std::f64::consts::PI),
            6079.2710185,
            1e-9,
        ] {
            let s = sig12(x);
            let back: f64 = s.parse().unwrap();
            assert!((back - x).abs() <= x.abs() * 1e-11, "{x} -> {s}");
            assert_eq!(s, sig12(x));
        }
    }
}
