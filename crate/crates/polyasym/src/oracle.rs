//! Ground-truth values of the generalized Bernoulli and Euler polynomials.
//!
//! `B_n^μ(z)` and `E_n^μ(z)` are produced from one generating-function series
//! build of order `n` — exact whenever the coefficient field is exact — plus
//! exact finite sums for negative integer order `−m` and the raise-order and
//! derivative recurrences as cross-checks. Every approximation module in this
//! crate is measured against these values.

use crate::approx::{ApproxValue, Confidence, Method};
use crate::complex::HPComplex;
use crate::field::{binomial, pochhammer, pow_usize, Coeff};
use crate::series::{exp_series, expm1_over_s, PowerSeries};
use crate::{Error, Result};
use rug::{Float, Rational};

/// All of `B_0^μ(z) … B_{n_max}^μ(z)` at once.
///
/// The values are `n!` times the Taylor coefficients of
/// `(w/(e^w − 1))^μ · e^{wz}`, built as one series of order `n_max`.
pub fn bernoulli_values<F: Coeff>(n_max: usize, mu: &F, z: &F) -> Result<Vec<F>> {
    let base = expm1_over_s(mu, n_max).pow(&mu.neg())?;
    Ok(scale_by_factorials(base.mul(&exp_series(z, n_max))))
}

/// All of `E_0^μ(z) … E_{n_max}^μ(z)` at once, from the series
/// `((e^w + 1)/2)^{−μ} · e^{wz}`.
pub fn euler_values<F: Coeff>(n_max: usize, mu: &F, z: &F) -> Result<Vec<F>> {
    // (e^w + 1)/2 = 1 + Σ_{k≥1} w^k/(2·k!). Folding the 2^μ prefactor into
    // the base keeps the constant term at exactly 1, so the power stays in
    // the field for any μ.
    let mut coeffs = Vec::with_capacity(n_max + 1);
    coeffs.push(mu.one_like());
    let half = mu.one_like().div(&mu.from_i64_like(2));
    let mut factorial = mu.one_like();
    for k in 1..=n_max {
        factorial = factorial.mul(&mu.from_i64_like(k as i64));
        coeffs.push(half.div(&factorial));
    }
    let base = PowerSeries::new(coeffs).pow(&mu.neg())?;
    Ok(scale_by_factorials(base.mul(&exp_series(z, n_max))))
}

/// Converts Taylor coefficients `c_k` into values `k! · c_k`.
fn scale_by_factorials<F: Coeff>(series: PowerSeries<F>) -> Vec<F> {
    let one = series.coeff(0).one_like();
    let mut factorial = one.clone();
    let mut values = Vec::with_capacity(series.order() + 1);
    for (k, c) in series.into_coeffs().into_iter().enumerate() {
        if k > 0 {
            factorial = factorial.mul(&one.from_i64_like(k as i64));
        }
        values.push(c.mul(&factorial));
    }
    values
}

/// Exact `B_n^{−m}(z)` from the finite sum
/// `n!/(n+m)! · Σ_{r=0}^{m} (−1)^{m−r} C(m,r) (z+r)^{n+m}`.
pub fn bernoulli_neg_int<F: Coeff>(n: usize, m: usize, z: &F) -> F {
    let m_f = z.from_i64_like(m as i64);
    let mut sum = z.zero_like();
    for r in 0..=m {
        let term = binomial(&m_f, r as u32)
            .mul(&pow_usize(&z.add(&z.from_i64_like(r as i64)), n + m));
        sum = if (m - r) % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
    }
    // n!/(n+m)! = 1/((n+1)(n+2)⋯(n+m))
    sum.div(&pochhammer(&z.from_i64_like(n as i64 + 1), m as u32))
}

/// Exact `E_n^{−m}(z)` from the finite sum `2^{−m} Σ_{r=0}^{m} C(m,r) (z+r)^n`.
pub fn euler_neg_int<F: Coeff>(n: usize, m: usize, z: &F) -> F {
    let m_f = z.from_i64_like(m as i64);
    let mut sum = z.zero_like();
    for r in 0..=m {
        sum = sum.add(
            &binomial(&m_f, r as u32).mul(&pow_usize(&z.add(&z.from_i64_like(r as i64)), n)),
        );
    }
    sum.div(&pow_usize(&z.from_i64_like(2), m))
}

/// `B_n^{μ+1}(z)` from the order-`μ` values via the recurrence
/// `μ B_n^{μ+1}(z) = (μ−n) B_n^μ(z) + n (z−μ) B_{n−1}^μ(z)`.
pub fn bernoulli_raise_order<F: Coeff>(n: usize, mu: &F, z: &F) -> Result<F> {
    if mu.is_zero() {
        return Err(Error::OutOfDomain(
            "raise-order recurrence divides by the order; it needs μ ≠ 0".into(),
        ));
    }
    if n == 0 {
        return Ok(mu.one_like());
    }
    let values = bernoulli_values(n, mu, z)?;
    let n_f = mu.from_i64_like(n as i64);
    let rhs = mu
        .sub(&n_f)
        .mul(&values[n])
        .add(&n_f.mul(&z.sub(mu)).mul(&values[n - 1]));
    Ok(rhs.div(mu))
}

/// Checks `d/dz B_n^μ(z) = n B_{n−1}^μ(z)` two independent ways: as an exact
/// identity between polynomials in `z` (the oracle run over the polynomial
/// ring), and by evaluating the symbolic polynomial at the supplied point
/// against a direct scalar oracle run.
pub fn bernoulli_derivative_check(n: usize, mu: &Rational, z: &Rational) -> bool {
    if n == 0 {
        // d/dz B_0 = 0 = 0 · B_{−1}, vacuously true.
        return true;
    }
    let zero = Rational::new();
    let mu_poly = PowerSeries::constant(mu, n);
    let z_poly = PowerSeries::identity(&zero, n);
    let Ok(values) = bernoulli_values(n, &mu_poly, &z_poly) else {
        return false;
    };
    let derivative = values[n].derivative();
    let scaled = values[n - 1]
        .truncate(n - 1)
        .scale(&Rational::from(n as u32));
    if !derivative.sub(&scaled).coeffs().iter().all(Coeff::is_zero) {
        return false;
    }
    let Ok(scalar) = bernoulli_values(n, mu, z) else {
        return false;
    };
    values[n].eval(z) == scalar[n]
}

/// Saddle-point estimate of `B_n^{−m}(z)`:
/// `(1 − e^{−w₀})^m · n!/(n+m)! · (z+m)^{n+m}` with `w₀ = (n+m)/(z+m)`.
///
/// The recorded `error_estimate` is the *relative* bound `e^{−Re w₀} (m+1)`;
/// it is meaningful only when `Re w₀` is large and positive. Exposed as a
/// heuristic confirmation, never as ground truth.
pub fn saddle_estimate_neg_int(n: usize, m: usize, z: &HPComplex) -> Result<ApproxValue> {
    let prec = z.prec();
    let z_m = z.add(&HPComplex::from_i64(m as i64, prec));
    if z_m.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "saddle point (n+m)/(z+m) is undefined at z = −{m}"
        )));
    }
    let one = HPComplex::from_i64(1, prec);
    let fac_ratio = one.div(&pochhammer(&HPComplex::from_i64(n as i64 + 1, prec), m as u32));
    let w0 = HPComplex::from_i64((n + m) as i64, prec).div(&z_m);
    let value = one
        .sub(&w0.neg().exp())
        .pow_i64(m as i64)
        .mul(&fac_ratio)
        .mul(&z_m.pow_i64((n + m) as i64));
    if m == 0 {
        return Ok(ApproxValue::exact(value, Method::Saddle));
    }
    let estimate = (-w0.real().clone()).exp() * Float::with_val(prec, m as u32 + 1);
    Ok(ApproxValue {
        value,
        method: Method::Saddle,
        terms_used: 1,
        error_estimate: estimate,
        confidence: Confidence::Asymptotic,
    })
}

/// The classical Bernoulli numbers `B_0 … B_{n_max}` (that is, `B_n^1(0)`),
/// exact.
pub fn bernoulli_numbers(n_max: usize) -> Vec<Rational> {
    let one = Rational::from(1);
    bernoulli_values(n_max, &one, &Rational::new())
        .expect("integer order never leaves the rational field")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn degree_zero_is_one_for_any_order() {
        for (mu, z) in [(rat(3, 7), rat(-2, 5)), (rat(-4, 1), rat(1, 3))] {
            assert_eq!(bernoulli_values(0, &mu, &z).unwrap()[0], 1);
            assert_eq!(euler_values(0, &mu, &z).unwrap()[0], 1);
        }
    }

    #[test]
    fn degree_one_is_z_minus_half_order() {
        let mu = rat(3, 7);
        let z = rat(2, 5);
        // z − μ/2 = 2/5 − 3/14 = 13/70 for both families.
        assert_eq!(bernoulli_values(1, &mu, &z).unwrap()[1], rat(13, 70));
        assert_eq!(euler_values(1, &mu, &z).unwrap()[1], rat(13, 70));
    }

    #[test]
    fn classical_polynomials_from_symbolic_run() {
        // Run the oracle over polynomials in z: μ = 1 gives the classical
        // B_2(z) = z² − z + 1/6 and E_2(z) = z² − z.
        let zero = Rational::new();
        let mu = PowerSeries::constant(&Rational::from(1), 2);
        let z = PowerSeries::identity(&zero, 2);
        let b = bernoulli_values(2, &mu, &z).unwrap();
        assert_eq!(b[2].coeffs(), &[rat(1, 6), rat(-1, 1), rat(1, 1)]);
        let e = euler_values(2, &mu, &z).unwrap();
        assert_eq!(e[2].coeffs(), &[rat(0, 1), rat(-1, 1), rat(1, 1)]);
    }

    #[test]
    fn classical_euler_vanishes_at_one_half() {
        // E_1(z) = z − 1/2.
        let values = euler_values(1, &Rational::from(1), &rat(1, 2)).unwrap();
        assert_eq!(values[1], 0);
    }

    #[test]
    fn finite_sum_trivial_cases() {
        let z = rat(5, 3);
        assert_eq!(bernoulli_neg_int(4, 0, &z), pow_usize(&z, 4));
        assert_eq!(euler_neg_int(4, 0, &z), pow_usize(&z, 4));
        assert_eq!(bernoulli_neg_int(1, 1, &Rational::new()), rat(1, 2));
        assert_eq!(euler_neg_int(2, 1, &Rational::new()), rat(1, 2));
    }

    #[test]
    fn finite_sums_match_series_oracle() {
        let z = rat(1, 3);
        let b = bernoulli_values(4, &rat(-2, 1), &z).unwrap();
        assert_eq!(bernoulli_neg_int(4, 2, &z), b[4]);
        let z = rat(1, 7);
        let e = euler_values(5, &rat(-3, 1), &z).unwrap();
        assert_eq!(euler_neg_int(5, 3, &z), e[5]);
    }

    #[test]
    fn raise_order_recurrence() {
        // μ=1, n=2, z=0: (1−2)·B_2(0) + 2(0−1)·B_1(0) = −1/6 + 1 = 5/6.
        let raised = bernoulli_raise_order(2, &Rational::from(1), &Rational::new()).unwrap();
        assert_eq!(raised, rat(5, 6));
        assert_eq!(
            raised,
            bernoulli_values(2, &Rational::from(2), &Rational::new()).unwrap()[2]
        );
        // n=1 collapses to z − (μ+1)/2 for any μ.
        let mu = rat(5, 9);
        let z = rat(-3, 4);
        let expected = z.sub(&mu.add(&Rational::from(1)).div(&Rational::from(2)));
        assert_eq!(bernoulli_raise_order(1, &mu, &z).unwrap(), expected);
        assert!(matches!(
            bernoulli_raise_order(3, &Rational::new(), &z),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn derivative_identity_holds() {
        assert!(bernoulli_derivative_check(1, &rat(2, 3), &rat(1, 5)));
        assert!(bernoulli_derivative_check(2, &Rational::from(1), &Rational::new()));
        assert!(bernoulli_derivative_check(9, &rat(5, 3), &rat(-3, 2)));
    }

    #[test]
    fn saddle_estimate_exact_when_m_is_zero() {
        let z = HPComplex::from_i64(3, 128);
        let est = saddle_estimate_neg_int(5, 0, &z).unwrap();
        assert_eq!(est.confidence, Confidence::Exact);
        assert!(est.value.sub(&HPComplex::from_i64(243, 128)).is_zero());
    }

    #[test]
    fn saddle_estimate_accuracy_at_moderate_degree() {
        // n=40, m=2, z=3: w₀ = 42/5 = 8.4. The estimate agrees with the exact
        // finite sum to a relative error of 2.7959…×10⁻⁴ — about four
        // significant digits, within the e^{−w₀}(m+1) ≈ 6.746×10⁻⁴ bound.
        let prec = 192;
        let z = HPComplex::from_i64(3, prec);
        let est = saddle_estimate_neg_int(40, 2, &z).unwrap();
        let exact = bernoulli_neg_int(40, 2, &rat(3, 1));
        let rel = est
            .value
            .rel_error(&HPComplex::from_rational(&exact, prec))
            .to_f64();
        assert!((rel - 2.79590950614e-4).abs() < 1e-12, "relative error {rel}");
        assert!(rel < est.error_estimate.to_f64());
        assert!((est.error_estimate.to_f64() - 6.74601972537e-4).abs() < 1e-12);
    }

    #[test]
    fn saddle_estimate_rejects_degenerate_point() {
        let z = HPComplex::from_i64(-2, 96);
        assert!(matches!(
            saddle_estimate_neg_int(10, 2, &z),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn generating_function_round_trip() {
        // series_pow((e^w−1)/w, μ) · Σ B_k^μ(z) w^k/k! must reproduce e^{zw}
        // coefficient-by-coefficient, exactly.
        let mu = rat(2, 3);
        let z = rat(1, 4);
        let order = 12;
        let values = bernoulli_values(order, &mu, &z).unwrap();
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut factorial = Rational::from(1);
        for (k, v) in values.iter().enumerate() {
            if k > 0 {
                factorial *= k as u32;
            }
            coeffs.push(v.div(&factorial));
        }
        let product = expm1_over_s(&mu, order)
            .pow(&mu)
            .unwrap()
            .mul(&PowerSeries::new(coeffs));
        let expected = exp_series(&z, order);
        assert!(product.sub(&expected).coeffs().iter().all(Coeff::is_zero));
    }

    #[test]
    fn classical_bernoulli_numbers() {
        let numbers = bernoulli_numbers(12);
        assert_eq!(numbers[0], 1);
        assert_eq!(numbers[1], rat(-1, 2));
        assert_eq!(numbers[2], rat(1, 6));
        assert_eq!(numbers[3], 0);
        assert_eq!(numbers[8], rat(-1, 30));
        assert_eq!(numbers[12], rat(-691, 2730));
    }
}
