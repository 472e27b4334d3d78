//! The coefficient-field abstraction shared by the series engine and the
//! oracle.
//!
//! Series code never constructs field elements out of thin air: every zero,
//! one, or small integer is derived from an existing element (the
//! "prototype"), so that precision (for floating complex coefficients) and
//! truncation order (for polynomial coefficients) propagate automatically.

use rug::ops::Pow;
use rug::Rational;

/// A field of series coefficients.
///
/// Implementations: exact rationals, high-precision complex numbers, and
/// truncated polynomials over either (for symbolic-in-`z` computations).
pub trait Coeff: Clone + std::fmt::Debug {
    /// Zero with the same precision/shape as `self`.
    fn zero_like(&self) -> Self;
    /// One with the same precision/shape as `self`.
    fn one_like(&self) -> Self;
    /// A small integer with the same precision/shape as `self`.
    fn from_i64_like(&self, v: i64) -> Self;
    /// True when the element is exactly zero.
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Field division. Panics on a zero (or non-invertible) divisor; callers
    /// validate divisors via the series-level preconditions.
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self^exponent` when representable in this field: integer exponents
    /// always work, and a base of exactly one works for any exponent.
    /// Floating fields use the principal branch. `None` when the power has no
    /// exact representative.
    fn pow_value(&self, exponent: &Self) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::new()
    }

    fn one_like(&self) -> Self {
        Rational::from(1)
    }

    fn from_i64_like(&self, v: i64) -> Self {
        Rational::from(v)
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational::from(self + rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational::from(self - rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational::from(self * rhs)
    }

    fn div(&self, rhs: &Self) -> Self {
        assert!(*rhs != 0, "division by zero rational");
        Rational::from(self / rhs)
    }

    fn neg(&self) -> Self {
        Rational::from(-self)
    }

    fn pow_value(&self, exponent: &Self) -> Option<Self> {
        if *self == 1 {
            return Some(Rational::from(1));
        }
        if !exponent.is_integer() {
            return None;
        }
        let e = exponent.numer().to_i32()?;
        if *self == 0 {
            return if e > 0 { Some(Rational::new()) } else { None };
        }
        Some(Rational::from(self.pow(e)))
    }
}

/// `a (a+1) ⋯ (a+k−1)`, the rising factorial; `1` when `k = 0`.
pub fn pochhammer<F: Coeff>(a: &F, k: u32) -> F {
    let mut acc = a.one_like();
    let mut factor = a.clone();
    for _ in 0..k {
        acc = acc.mul(&factor);
        factor = factor.add(&factor.one_like());
    }
    acc
}

/// `a^k` for a non-negative integer exponent, by binary exponentiation.
pub fn pow_usize<F: Coeff>(a: &F, k: usize) -> F {
    let mut acc = a.one_like();
    let mut base = a.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    acc
}

/// Binomial coefficient with a general (possibly non-integer) upper argument,
/// evaluated as `pochhammer(n−k+1, k) / k!`.
pub fn binomial<F: Coeff>(n: &F, k: u32) -> F {
    let start = n.sub(&n.from_i64_like(i64::from(k) - 1));
    let mut kfact = n.one_like();
    for j in 1..=i64::from(k) {
        kfact = kfact.mul(&n.from_i64_like(j));
    }
    pochhammer(&start, k).div(&kfact)
}
