//! Exact combinatorial primitives and rational parsing/printing helpers.

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

/// Exact `n!`.
pub fn factorial(n: u32) -> Rational {
    Rational::from(Integer::factorial(n).complete())
}

/// Exact integer binomial coefficient `(n choose k)`.
pub fn binomial_int(n: u32, k: u32) -> Integer {
    Integer::binomial_u(n, k).complete()
}

/// Parses a rational from `"a/b"`, integer, or decimal notation
/// (`"0.3"` → `3/10`, exponents like `"2.5e-3"` accepted).
///
/// Returns `None` when the string is not an exact rational literal.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = num.trim().parse::<Integer>().ok()?;
        let d = den.trim().parse::<Integer>().ok()?;
        if d == 0 {
            return None;
        }
        return Some(Rational::from((n, d)));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mantissa_int = if joined.is_empty() { Integer::new() } else { joined.parse::<Integer>().ok()? };
    let shift = exponent - frac_part.len() as i32;
    let mut value = Rational::from(mantissa_int);
    if shift >= 0 {
        value *= Rational::from(Integer::from(10).pow(shift as u32));
    } else {
        value /= Rational::from(Integer::from(10).pow(shift.unsigned_abs()));
    }
    if sign < 0 {
        value = -value;
    }
    Some(value)
}

/// True when the rational is an integer fitting in `i64`.
pub fn as_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Rational::from(1));
        assert_eq!(factorial(5), Rational::from(120));
        assert_eq!(factorial(20), Rational::from(2432902008176640000i64));
    }

    #[test]
    fn integer_binomials_satisfy_pascal_rule() {
        for n in 1u32..=12 {
            for k in 1..=n {
                let lhs = binomial_int(n, k);
                let rhs = binomial_int(n - 1, k - 1) + binomial_int(n - 1, k);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.3"), Some(Rational::from((3, 10))));
        assert_eq!(parse_rational("-2"), Some(Rational::from(-2)));
        assert_eq!(parse_rational("5/2"), Some(Rational::from((5, 2))));
        assert_eq!(parse_rational("2.5e-3"), Some(Rational::from((1, 400))));
        assert_eq!(parse_rational("1e2"), Some(Rational::from(100)));
        assert_eq!(parse_rational(".25"), Some(Rational::from((1, 4))));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }
}
