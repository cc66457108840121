//! Exact edge weights.
//!
//! Every weight, delta and error value is an exact rational so that
//! optimality checks compare with `==` rather than a tolerance.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Weight = Ratio<i128>;

/// Integer weight.
pub fn w(n: i128) -> Weight {
    Weight::from_integer(n)
}

/// Rational weight `num / den`. Panics if `den == 0`.
pub fn ratio(num: i128, den: i128) -> Weight {
    Weight::new(num, den)
}

/// Parses a decimal (`3`, `-0.25`, `1.5e0` is rejected) or a `p/q` rational.
pub fn parse_weight(text: &str) -> Result<Weight, String> {
    if let Some((p, q)) = text.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| format!("bad numerator `{p}`"))?;
        let q: i128 = q.trim().parse().map_err(|_| format!("bad denominator `{q}`"))?;
        if q == 0 {
            return Err("zero denominator".into());
        }
        return Ok(Weight::new(p, q));
    }

    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("bad weight `{text}`"));
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("bad weight `{text}`"));
    }

    let overflow = || format!("weight `{text}` out of range");
    let mut numer: i128 = 0;
    let mut denom: i128 = 1;
    for c in int_part.chars().chain(frac_part.chars()) {
        let digit = i128::from(c as u8 - b'0');
        numer = numer.checked_mul(10).and_then(|n| n.checked_add(digit)).ok_or_else(overflow)?;
    }
    for _ in 0..frac_part.len() {
        denom = denom.checked_mul(10).ok_or_else(overflow)?;
    }
    if negative {
        numer = -numer;
    }
    Ok(Weight::new(numer, denom))
}

/// Formats a weight so that [`parse_weight`] reads back the identical value.
///
/// Integers print bare, terminating fractions print as decimals and
/// everything else as `p/q`.
pub fn format_weight(value: &Weight) -> String {
    if value.is_integer() {
        return value.numer().to_string();
    }
    let mut den = *value.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while den % 2 == 0 {
        den /= 2;
        twos += 1;
    }
    while den % 5 == 0 {
        den /= 5;
        fives += 1;
    }
    if den != 1 {
        return format!("{}/{}", value.numer(), value.denom());
    }

    let digits = twos.max(fives);
    let Some(scale) = 10i128.checked_pow(digits) else {
        return format!("{}/{}", value.numer(), value.denom());
    };
    let Some(scaled) = value.numer().abs().checked_mul(scale / value.denom()) else {
        return format!("{}/{}", value.numer(), value.denom());
    };
    let int = scaled / scale;
    let frac = scaled % scale;
    let sign = if value.is_negative() { "-" } else { "" };
    format!("{sign}{int}.{frac:0width$}", width = digits as usize)
}

pub(crate) fn abs(value: Weight) -> Weight {
    if value < Weight::zero() {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_weight("3.0").unwrap(), w(3));
        assert_eq!(parse_weight("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_weight("-2.25").unwrap(), ratio(-9, 4));
        assert_eq!(parse_weight(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_weight("7/21").unwrap(), ratio(1, 3));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "x", "1e3", "1/0", "--1", "1.2.3", "."] {
            assert!(parse_weight(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for value in [w(0), w(42), ratio(1, 3), ratio(-7, 8), ratio(1, 10), ratio(123, 1024)] {
            assert_eq!(parse_weight(&format_weight(&value)).unwrap(), value);
        }
        assert_eq!(format_weight(&ratio(3, 8)), "0.375");
        assert_eq!(format_weight(&ratio(2, 3)), "2/3");
    }
}
