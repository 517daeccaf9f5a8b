//! Fixed-precision number rendering for text and CSV output.

/// Significant digits in human-facing output.
pub const SIG_DIGITS: usize = 10;

/// Formats `x` with [`SIG_DIGITS`] significant digits, `%g` style: plain
/// notation for exponents in `-5..10`, scientific otherwise, trailing zeros
/// removed.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ten_significant_digits() {
        assert_eq!(sig(0.07173243712), "0.07173243712");
        assert_eq!(sig(1.4626517459071817), "1.462651746");
        assert_eq!(sig(206.58941888), "206.5894189");
        assert_eq!(sig(0.25), "0.25");
        assert_eq!(sig(0.0), "0");
        assert_eq!(sig(1e-12), "1e-12");
        assert_eq!(sig(-5.79324e-4), "-0.000579324");
        assert_eq!(sig(1.0 / 120.0), "0.008333333333");
        assert_eq!(sig(3.0e12), "3e12");
        assert_eq!(sig(12.0), "12");
    }
}
