//! The gamma function for complex arguments at arbitrary precision.
//!
//! Computed by the shifted Stirling series: the argument is raised by a
//! recurrence until its real part is large enough for the asymptotic series
//! `lnΓ(x) = (x−½)ln x − x + ½ln 2π + Σ_j B_{2j}/(2j(2j−1)x^{2j−1})` to reach
//! the working precision, and arguments left of `Re x = 1/2` go through the
//! reflection formula `Γ(x)Γ(1−x) = π/sin(πx)`. The Bernoulli numbers come
//! from the exact oracle and are cached across calls.

use crate::complex::{pi_float, HPComplex};
use crate::oracle::bernoulli_numbers;
use crate::{Error, Result};
use rug::{Float, Rational};
use std::sync::{Mutex, OnceLock};

static EVEN_BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// `B_2, B_4, …, B_{2·count}` from the exact oracle, cached.
fn even_bernoulli(count: usize) -> Vec<Rational> {
    let cache = EVEN_BERNOULLI.get_or_init(|| Mutex::new(Vec::new()));
    let mut guard = cache.lock().unwrap();
    if guard.len() < count {
        *guard = bernoulli_numbers(2 * count)
            .into_iter()
            .skip(2)
            .step_by(2)
            .collect();
    }
    guard[..count].to_vec()
}

/// `Γ(x)`. Errors on the poles at `x = 0, −1, −2, …`.
pub fn gamma(x: &HPComplex) -> Result<HPComplex> {
    let work = x.prec() + 32;
    let x = HPComplex::from_complex(rug::Complex::with_val(work, x.inner()));
    if let Some(k) = x.as_integer() {
        if k <= 0 {
            return Err(Error::OutOfDomain(format!("gamma has a pole at {k}")));
        }
    }
    let half = Float::with_val(work, 0.5);
    if *x.real() < half {
        // Reflection: Γ(x) = π / (sin(πx) · Γ(1−x)).
        let pi = HPComplex::pi(work);
        let reflected = gamma(&HPComplex::from_i64(1, work).sub(&x))?;
        return Ok(pi.div(&pi.mul(&x).sin().mul(&reflected)));
    }
    // Raise the argument until Stirling converges at this precision, then
    // divide the shift factors back out: Γ(x) = Γ(x+s) / (x(x+1)⋯(x+s−1)).
    let threshold = (0.12 * f64::from(work)).ceil() + 5.0;
    let shift = (threshold - x.real().to_f64()).ceil().max(0.0) as i64;
    let mut log_gamma = stirling_log_gamma(&x.add(&HPComplex::from_i64(shift, work)));
    for k in 0..shift {
        log_gamma = log_gamma.sub(&x.add(&HPComplex::from_i64(k, work)).ln());
    }
    Ok(log_gamma.exp())
}

/// `1/Γ(x)`, entire: zero at the poles of `Γ`.
pub fn reciprocal_gamma(x: &HPComplex) -> HPComplex {
    match gamma(x) {
        Ok(value) => HPComplex::from_i64(1, x.prec()).div(&value),
        Err(_) => HPComplex::new(x.prec()),
    }
}

/// The Stirling series for `lnΓ(x)`, valid once `Re x` clears the shift
/// threshold chosen in [`gamma`]. The branch of the result is unspecified;
/// callers only ever exponentiate it.
fn stirling_log_gamma(x: &HPComplex) -> HPComplex {
    let work = x.prec();
    let pi = pi_float(work);
    let half = HPComplex::from_f64(0.5, 0.0, work);
    let ln_two_pi = Float::with_val(work, 2 * pi).ln();
    let mut acc = x
        .sub(&half)
        .mul(&x.ln())
        .sub(x)
        .add(&HPComplex::from_float(ln_two_pi / 2u32));
    let inv = HPComplex::from_i64(1, work).div(x);
    let inv_sq = inv.mul(&inv);
    // Terms shrink until 2j ≈ 2π|x|; the threshold guarantees the series
    // bottoms out below the working precision before that.
    let max_terms = (3.3 * x.real().to_f64()) as usize + 4;
    let numbers = even_bernoulli(max_terms);
    let mut power = inv;
    let cutoff = Float::with_val(work, Float::i_exp(1, -(work as i32)));
    for (idx, b2j) in numbers.iter().enumerate() {
        let j = (idx + 1) as i64;
        let term = HPComplex::from_rational(b2j, work)
            .mul(&power)
            .div(&HPComplex::from_i64(2 * j * (2 * j - 1), work));
        acc = acc.add(&term);
        if term.abs() < cutoff {
            break;
        }
        power = power.mul(&inv_sq);
    }
    acc
}
