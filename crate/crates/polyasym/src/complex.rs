//! Configurable-precision complex arithmetic.
//!
//! [`HPComplex`] wraps an MPC complex value and enforces the precision
//! contract used throughout the crate: the result of a binary operation
//! carries the maximum of the operand precisions, and precision never drops
//! below [`MIN_PRECISION`] bits.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use rug::float::Round;
use rug::{Complex, Float, Rational};

use crate::field::Coeff;

/// Smallest working precision the crate accepts.
pub const MIN_PRECISION: u32 = 64;

/// log₂(2π), used by [`working_precision`].
const LOG2_TWO_PI: f64 = 2.651_496_129_472_319;

/// Working precision for evaluating a degree-`n` expansion at a `target`
/// precision: `target + 32 + ⌈n log₂(2π)⌉` guard bits, covering the scale
/// disparities introduced by prefactors like `(2π)^{−n}`.
pub fn working_precision(target: u32, n: u32) -> u32 {
    let extra = (f64::from(n) * LOG2_TWO_PI).ceil() as u32;
    (target + 32 + extra).max(MIN_PRECISION)
}

fn pi_cache() -> &'static Mutex<HashMap<u32, Float>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Float>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// π at the requested precision, computed once per precision and cached.
pub fn pi_float(prec: u32) -> Float {
    let prec = prec.max(MIN_PRECISION);
    let mut cache = pi_cache().lock().expect("pi cache poisoned");
    cache
        .entry(prec)
        .or_insert_with(|| Float::with_val(prec, rug::float::Constant::Pi))
        .clone()
}

/// A complex number with explicit working precision in bits.
#[derive(Clone, PartialEq)]
pub struct HPComplex {
    inner: Complex,
}

impl HPComplex {
    /// Zero at the given precision.
    pub fn new(prec: u32) -> Self {
        HPComplex { inner: Complex::new(prec.max(MIN_PRECISION)) }
    }

    pub fn from_complex(inner: Complex) -> Self {
        HPComplex { inner }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        HPComplex { inner: Complex::with_val(prec.max(MIN_PRECISION), v) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        HPComplex { inner: Complex::with_val(prec.max(MIN_PRECISION), (re, im)) }
    }

    /// Exact rational converted at the given precision (correctly rounded).
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        HPComplex { inner: Complex::with_val(prec.max(MIN_PRECISION), r) }
    }

    pub fn from_rationals(re: &Rational, im: &Rational, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let re = Float::with_val(prec, re);
        let im = Float::with_val(prec, im);
        HPComplex { inner: Complex::with_val(prec, (re, im)) }
    }

    pub fn from_float(re: Float) -> Self {
        let prec = re.prec().max(MIN_PRECISION);
        HPComplex { inner: Complex::with_val(prec, re) }
    }

    /// π at the given precision as a complex value.
    pub fn pi(prec: u32) -> Self {
        HPComplex::from_float(pi_float(prec))
    }

    /// The imaginary unit at the given precision.
    pub fn i(prec: u32) -> Self {
        HPComplex::from_f64(0.0, 1.0, prec)
    }

    pub fn prec(&self) -> u32 {
        self.inner.prec().0.max(self.inner.prec().1)
    }

    /// The same value re-rounded to the given precision (never below the
    /// floor). Used to return results computed at elevated working precision
    /// back at the precision the caller asked for.
    pub fn rounded(&self, prec: u32) -> Self {
        HPComplex { inner: Complex::with_val(prec.max(MIN_PRECISION), &self.inner) }
    }

    pub fn real(&self) -> &Float {
        self.inner.real()
    }

    pub fn imag(&self) -> &Float {
        self.inner.imag()
    }

    pub fn into_inner(self) -> Complex {
        self.inner
    }

    pub fn inner(&self) -> &Complex {
        &self.inner
    }

    fn join(a: &Self, b: &Self) -> u32 {
        a.prec().max(b.prec())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = Self::join(self, rhs);
        HPComplex { inner: Complex::with_val(p, &self.inner + &rhs.inner) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = Self::join(self, rhs);
        HPComplex { inner: Complex::with_val(p, &self.inner - &rhs.inner) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = Self::join(self, rhs);
        HPComplex { inner: Complex::with_val(p, &self.inner * &rhs.inner) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let p = Self::join(self, rhs);
        HPComplex { inner: Complex::with_val(p, &self.inner / &rhs.inner) }
    }

    pub fn neg(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), -&self.inner) }
    }

    pub fn conj(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.conj_ref()) }
    }

    pub fn scale_i64(&self, v: i64) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), &self.inner * v) }
    }

    pub fn is_zero(&self) -> bool {
        self.inner.real().is_zero() && self.inner.imag().is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.inner.imag().is_zero()
    }

    /// |self| as a real float at this value's precision.
    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.inner.abs_ref())
    }

    pub fn exp(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.exp_ref()) }
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.ln_ref()) }
    }

    pub fn sin(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.sin_ref()) }
    }

    pub fn cos(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.cos_ref()) }
    }

    pub fn sqrt(&self) -> Self {
        HPComplex { inner: Complex::with_val(self.prec(), self.inner.sqrt_ref()) }
    }

    /// Principal-branch power `self^exponent` via `exp(exponent · ln self)`.
    pub fn pow(&self, exponent: &Self) -> Self {
        if exponent.is_zero() {
            return self.one_like();
        }
        if self.is_zero() {
            return self.zero_like();
        }
        exponent.mul(&self.ln()).exp()
    }

    /// Exact integer power by binary exponentiation (no branch cuts involved).
    pub fn pow_i64(&self, e: i64) -> Self {
        let p = self.prec();
        if e == 0 {
            return HPComplex::from_i64(1, p);
        }
        if self.is_zero() {
            assert!(e > 0, "zero cannot be raised to a negative power");
            return HPComplex::new(p);
        }
        let mut base = if e < 0 {
            HPComplex::from_i64(1, p).div(self)
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = HPComplex::from_i64(1, p);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// True when `self` equals an integer exactly; returns it when it fits.
    pub fn as_integer(&self) -> Option<i64> {
        if !self.is_real() {
            return None;
        }
        let re = self.real();
        if !re.is_integer() {
            return None;
        }
        re.to_integer().and_then(|i| i.to_i64())
    }

    /// Relative distance `|self − other| / max(|other|, 1)` as an f64 exponent
    /// helper for tests and error columns.
    pub fn rel_error(&self, reference: &Self) -> Float {
        let p = Self::join(self, reference);
        let diff = self.sub(reference).abs();
        let denom = reference.abs();
        let one = Float::with_val(p, 1);
        let denom = if denom < 1u32 { one } else { denom };
        Float::with_val(p, diff / denom)
    }

    /// Parses `"a"`, `"bi"`, `"a+bi"`, `"a-bi"` with decimal or rational parts.
    pub fn parse(s: &str, prec: u32) -> Option<Self> {
        let s: String = s.trim().chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return None;
        }
        if let Some(rest) = s.strip_suffix('i') {
            // Split an explicit real part from the imaginary term: find the
            // last '+'/'-' that is not the leading sign and not an exponent.
            let bytes = rest.as_bytes();
            let mut split = None;
            for idx in (1..bytes.len()).rev() {
                let b = bytes[idx];
                if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                    split = Some(idx);
                    break;
                }
            }
            let (re_str, im_str) = match split {
                Some(idx) => (&rest[..idx], &rest[idx..]),
                None => ("0", rest),
            };
            let im_str = match im_str {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                other => other.to_string(),
            };
            let re = crate::rational::parse_rational(re_str)?;
            let im = crate::rational::parse_rational(&im_str)?;
            Some(HPComplex::from_rationals(&re, &im, prec))
        } else {
            let re = crate::rational::parse_rational(&s)?;
            Some(HPComplex::from_rationals(&re, &Rational::new(), prec))
        }
    }

    /// Renders one float with `digits` significant decimal digits,
    /// round-half-even, in plain or exponent notation as appropriate.
    fn float_to_decimal(f: &Float, digits: usize) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        if f.is_nan() {
            return "nan".to_string();
        }
        if f.is_infinite() {
            return if f.is_sign_negative() { "-inf" } else { "inf" }.to_string();
        }
        let (sign, digits_str, exp) = f.to_sign_string_exp_round(10, Some(digits), Round::Nearest);
        let sign = if sign { "-" } else { "" };
        let trimmed = digits_str.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        let exp = exp.unwrap_or(0);
        // exp is the position of the decimal point: value = 0.digits × 10^exp.
        if exp >= 1 && (exp as usize) <= digits + 2 && (exp as usize) >= trimmed.len() {
            let int_part = format!("{trimmed:0<width$}", width = exp as usize);
            format!("{sign}{int_part}")
        } else if exp >= 1 && (exp as usize) <= digits + 2 {
            format!("{sign}{}.{}", &trimmed[..exp as usize], &trimmed[exp as usize..])
        } else if exp <= 0 && exp > -4 {
            format!("{sign}0.{}{}", "0".repeat(exp.unsigned_abs() as usize), trimmed)
        } else {
            let mantissa = if trimmed.len() == 1 {
                trimmed.to_string()
            } else {
                format!("{}.{}", &trimmed[..1], &trimmed[1..])
            };
            format!("{sign}{mantissa}e{}", exp - 1)
        }
    }

    /// Decimal rendering with a digit count derived from the precision
    /// (`⌊bits · log₁₀2⌋`), round-half-even; complex values as `re+imi`.
    pub fn to_decimal_string(&self) -> String {
        let digits = (f64::from(self.prec()) * std::f64::consts::LOG10_2).floor() as usize;
        self.to_decimal_string_with(digits.max(6))
    }

    /// Decimal rendering with an explicit significant-digit count.
    pub fn to_decimal_string_with(&self, digits: usize) -> String {
        let re = Self::float_to_decimal(self.real(), digits);
        if self.is_real() {
            return re;
        }
        let im = Self::float_to_decimal(self.imag(), digits);
        if let Some(stripped) = im.strip_prefix('-') {
            format!("{re}-{stripped}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl fmt::Debug for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HPComplex({} @ {} bits)", self.to_decimal_string_with(17), self.prec())
    }
}

impl fmt::Display for HPComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

impl Coeff for HPComplex {
    fn zero_like(&self) -> Self {
        HPComplex::new(self.prec())
    }

    fn one_like(&self) -> Self {
        HPComplex::from_i64(1, self.prec())
    }

    fn from_i64_like(&self, v: i64) -> Self {
        HPComplex::from_i64(v, self.prec())
    }

    fn is_zero(&self) -> bool {
        HPComplex::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        HPComplex::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        HPComplex::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        HPComplex::mul(self, rhs)
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(!HPComplex::is_zero(rhs), "division by complex zero");
        HPComplex::div(self, rhs)
    }

    fn neg(&self) -> Self {
        HPComplex::neg(self)
    }

    fn pow_value(&self, exponent: &Self) -> Option<Self> {
        Some(self.pow(exponent))
    }
}
