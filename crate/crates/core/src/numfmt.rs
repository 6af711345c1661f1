//! Locale-independent number formatting with a fixed count of significant
//! digits, in the style of C's `%.6g`.

pub const OUTPUT_DIGITS: usize = 6;

/// Formats `x` with [`OUTPUT_DIGITS`] significant digits.
pub fn sig6(x: f64) -> String {
    sig(x, OUTPUT_DIGITS)
}

/// `%.{digits}g`: fixed notation for exponents in `[-4, digits)`, scientific
/// otherwise; trailing zeros dropped.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp >= -4 && exp < digits as i32 {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

/// Rounds `x` to [`OUTPUT_DIGITS`] significant digits.
pub fn round6(x: f64) -> f64 {
    if x.is_finite() {
        sig6(x).parse().expect("sig6 output parses")
    } else {
        x
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig6(70.41), "70.41");
        assert_eq!(sig6(1144.4318367), "1144.43");
        assert_eq!(sig6(122344.37335), "122344");
        assert_eq!(sig6(1234567.0), "1.23457e6");
        assert_eq!(sig6(4.2029708678e-30), "4.20297e-30");
        assert_eq!(sig6(0.0001), "0.0001");
        assert_eq!(sig6(0.00001234), "1.234e-5");
        assert_eq!(sig6(-2.5), "-2.5");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(999999.7), "1e6");
    }

    #[test]
    fn rounding_round_trips() {
        assert_eq!(round6(1144.4318367), 1144.43);
        assert_eq!(round6(f64::INFINITY), f64::INFINITY);
    }
}
