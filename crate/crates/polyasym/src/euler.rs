//! Large-degree approximations of the generalized Euler polynomials
//! `E_n^μ(z)`, mirroring the Bernoulli suite in [`crate::bernoulli`] with the
//! structural differences the `(e^w + 1)^μ` denominator forces: the
//! generating function's poles sit at odd multiples of `πi`, the finite sum
//! for negative integer order carries no alternating signs, and the loop /
//! two-point machinery works at `±πi` with `π`-based weights.
//!
//! The approximation families:
//!
//! * [`neg_int_leading`] — `E_n^{−m}(z) = 2^{−m} Σ_r C(m,r)(z+r)^n`, with the
//!   same `Re z` vs `−m/2` region split as the Bernoulli case.
//! * [`fourier_e1`] / [`fourier_em`] — residue series over the odd poles
//!   `(2k+1)πi`, with coefficient polynomials `ε_k^m` ([`epsilon_coeff`])
//!   built from low-degree generalized *Bernoulli* values (the residues land
//!   on `(Berdef)`-type data even though the target is an Euler polynomial).
//! * [`watson_expansion`] — inverse-power expansion with coefficients `h_k`
//!   from series composition ([`watson_h_coeffs`]).
//! * [`twopoint_expansion`] — joint expansion around `w = ±πi` in powers of
//!   `(w² + π²)` (convergent) or `(w² + π²)/w²` (asymptotic).
//!
//! Error-estimate conventions match the Bernoulli module: relative for the
//! leading forms, absolute first-omitted-term (with a short nonzero scan)
//! for every series method.

use crate::approx::{region_classify, ApproxValue, Confidence, Method, RegionCase};
use crate::complex::{working_precision, HPComplex};
use crate::field::pochhammer;
use crate::gamma::gamma;
use crate::oracle;
use crate::params::{ExpansionParams, Family};
use crate::rational::{binomial_int, factorial};
use crate::series::{exp_series, expm1_over_s, PowerSeries};
use crate::twopoint::{two_point_expand, LocalSeries, TwoPointFlavor};
use crate::{Error, Result};
use rug::{Float, Rational};

/// How many indices past the truncation point the tail scan inspects when
/// forming the first-omitted-term estimate.
const TAIL_SCAN: i64 = 6;

/// Dominant terms of the finite sum for `E_n^{−m}(z) = 2^{−m}Σ_r C(m,r)(z+r)^n`,
/// per region of `Re z` (same split as the Bernoulli case):
///
/// * `Re z > −m/2`: `2^{−m}(z+m)^n` dominates,
/// * `Re z = −m/2`: the `r = 0` and `r = m` terms tie,
/// * `Re z < −m/2`: `2^{−m}z^n` dominates.
///
/// The error estimate is relative (largest omitted term over the kept sum);
/// `m = 0` reduces to `z^n` exactly. All terms carry positive binomial
/// weights, but the kept boundary pair can still cancel for odd `n` (e.g.
/// `m = 2`, `z = −1`), which fails with [`Error::DegenerateInput`].
pub fn neg_int_leading(n: u32, m: u32, z: &HPComplex) -> Result<ApproxValue> {
    let target = z.prec();
    if m == 0 {
        return Ok(ApproxValue::exact(z.pow_i64(i64::from(n)), Method::LeadingForm));
    }
    let wp = working_precision(target, n + m);
    let z = z.rounded(wp);
    let kept: &[u32] = match region_classify(m, &z) {
        RegionCase::UpperDominant => &[m],
        RegionCase::Boundary => &[0, m],
        RegionCase::LowerDominant => &[0],
    };
    let mut kept_sum = HPComplex::new(wp);
    let mut omitted = Float::with_val(wp, 0);
    for r in 0..=m {
        let weight = Rational::from(binomial_int(m, r));
        let term = z
            .add(&HPComplex::from_i64(i64::from(r), wp))
            .pow_i64(i64::from(n))
            .mul(&HPComplex::from_rational(&weight, wp));
        if kept.contains(&r) {
            kept_sum = kept_sum.add(&term);
        } else {
            omitted = omitted.max(&term.abs());
        }
    }
    if kept_sum.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "dominant terms cancel exactly at n={n}, m={m}; evaluate the full finite sum instead"
        )));
    }
    let estimate = Float::with_val(target, omitted / kept_sum.abs());
    let scale = HPComplex::from_i64(2, wp).pow_i64(i64::from(m));
    let confidence = if estimate.is_zero() { Confidence::Exact } else { Confidence::Asymptotic };
    Ok(ApproxValue {
        value: kept_sum.div(&scale).rounded(target),
        method: Method::LeadingForm,
        terms_used: kept.len() as u32,
        error_estimate: estimate,
        confidence,
    })
}

/// Partial Fourier sum for the classical polynomials `E_n(z)`:
///
/// `E_n(z) ≈ 4 n! Σ_{k=0}^{K} sin((2k+1)πz − nπ/2) / ((2k+1)π)^{n+1}`.
///
/// For `n = 0` the series converges only in the strip `0 < Re z < 1` and the
/// input is rejected outside it; for `n ≥ 1` it converges on real
/// `z ∈ [0, 1]` (tagged Convergent there) and is the dominant-pole
/// approximation elsewhere.
pub fn fourier_e1(n: u32, z: &HPComplex, k_max: u32) -> Result<ApproxValue> {
    if n == 0 && !(z.real().clone() > 0u32 && z.real().clone() < 1u32) {
        return Err(Error::OutOfDomain(
            "for n = 0 the pole series requires 0 < Re z < 1".into(),
        ));
    }
    let target = z.prec();
    let wp = working_precision(target, n + 1);
    let zw = z.rounded(wp);
    let pref = HPComplex::from_rational(&factorial(n), wp).scale_i64(4);
    let mut total = HPComplex::new(wp);
    for k in 0..=i64::from(k_max) {
        total = total.add(&classical_term(n, &zw, k, wp));
    }
    let mut tail = Float::with_val(wp, 0);
    for k in (i64::from(k_max) + 1)..=(i64::from(k_max) + TAIL_SCAN) {
        tail = tail.max(&classical_term(n, &zw, k, wp).abs());
    }
    let x = z.real().clone();
    let on_segment = z.is_real()
        && if n == 0 { x > 0u32 && x < 1u32 } else { x >= 0u32 && x <= 1u32 };
    Ok(ApproxValue {
        value: pref.mul(&total).rounded(target),
        method: Method::Fourier,
        terms_used: k_max + 1,
        error_estimate: Float::with_val(target, pref.abs() * tail),
        confidence: if on_segment { Confidence::Convergent } else { Confidence::Asymptotic },
    })
}

/// One term `sin((2k+1)πz − nπ/2) / ((2k+1)π)^{n+1}`.
fn classical_term(n: u32, z: &HPComplex, k: i64, wp: u32) -> HPComplex {
    let pi = HPComplex::pi(wp);
    let angle = pi
        .scale_i64(2 * k + 1)
        .mul(z)
        .sub(&pi.mul(&HPComplex::from_rational(&(Rational::from(n) / 2), wp)));
    angle.sin().div(&pi.scale_i64(2 * k + 1).pow_i64(i64::from(n) + 1))
}

/// Residue coefficient of the order-`m` odd-pole series, closed form:
///
/// `ε_k^m(n,z) = [2^{m−1}/((2k+1)πi)^{m−1}] C(n+m−1,m−1) Σ_{ν=0}^{m−1}
///               B_ν^m(z) C(m−1,ν) (n+m−ν−1)!/(n+m−1)! (−(2k+1)πi)^ν`,
///
/// where the `B_ν^m(z)` are low-degree generalized *Bernoulli* values from
/// the oracle (the local expansion of `(e^w+1)^{−m}` at an odd pole is a
/// Bernoulli-type generating function). `ε_k^1 = 1` for all `k`. Negative
/// `k` addresses the conjugate poles, paired as `(k, −1−k)` by
/// [`fourier_em`].
pub fn epsilon_coeff(m: u32, n: u32, z: &HPComplex, k: i64) -> Result<HPComplex> {
    let form = EpsilonClosedForm::build(m, n, z, z.prec())?;
    Ok(form.eval(k))
}

/// Precomputed ν-products of the residue coefficient; evaluation at a pole
/// index `k` is a Horner loop in `−(2k+1)πi` divided by `((2k+1)πi)^{m−1}`.
struct EpsilonClosedForm {
    lead: HPComplex,
    terms: Vec<HPComplex>,
    m: u32,
    wp: u32,
}

impl EpsilonClosedForm {
    fn build(m: u32, n: u32, z: &HPComplex, wp: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::OutOfDomain(format!(
                "residue coefficients need m >= 1 (got m={m})"
            )));
        }
        let mu = HPComplex::from_i64(i64::from(m), wp);
        let low = oracle::bernoulli_values((m - 1) as usize, &mu, &z.rounded(wp))?;
        let mut terms = Vec::with_capacity(m as usize);
        for (nu, b) in low.iter().enumerate() {
            let weight = Rational::from(binomial_int(m - 1, nu as u32));
            // (n+m−ν−1)!/(n+m−1)! = 1/((n+m−1)(n+m−2)⋯(n+m−ν)).
            let falling = pochhammer(
                &HPComplex::from_i64(i64::from(n + m - nu as u32), wp),
                nu as u32,
            );
            terms.push(b.mul(&HPComplex::from_rational(&weight, wp)).div(&falling));
        }
        let lead = HPComplex::from_rational(
            &(Rational::from(binomial_int(n + m - 1, m - 1))
                * Rational::from(rug::Integer::from(1) << (m - 1))),
            wp,
        );
        Ok(EpsilonClosedForm { lead, terms, m, wp })
    }

    fn eval(&self, k: i64) -> HPComplex {
        let node = HPComplex::i(self.wp).mul(&HPComplex::pi(self.wp)).scale_i64(2 * k + 1);
        let x = node.neg();
        let mut acc = HPComplex::new(self.wp);
        for t in self.terms.iter().rev() {
            acc = acc.mul(&x).add(t);
        }
        self.lead.mul(&acc).div(&node.pow_i64(i64::from(self.m) - 1))
    }
}

/// Partial odd-pole series for positive integer order `m ≥ 1`:
///
/// `E_n^m(z) = 2 n! Σ_k ε_k^m(n,z) e^{(2k+1)πiz} / ((2k+1)πi)^{n+1}`,
///
/// summed over conjugate pole pairs `(k, −1−k)` for `k = 0..K` so that real
/// inputs assemble to real values. The error estimate scans the first few
/// omitted pairs; the series converges for real `z ∈ (0, 1)` and is
/// asymptotic in `n` elsewhere.
pub fn fourier_em(n: u32, m: u32, z: &HPComplex, k_max: u32) -> Result<ApproxValue> {
    if m < 1 {
        return Err(Error::OutOfDomain(format!(
            "odd-pole series needs m >= 1 (got m={m})"
        )));
    }
    if n < 1 {
        return Err(Error::OutOfDomain(format!(
            "odd-pole series needs n >= 1 (got n={n})"
        )));
    }
    let target = z.prec();
    let wp = working_precision(target, n);
    let zw = z.rounded(wp);
    let form = EpsilonClosedForm::build(m, n, &zw, wp)?;
    let pref = HPComplex::from_rational(&factorial(n), wp).scale_i64(2);
    let mut total = HPComplex::new(wp);
    for k in 0..=i64::from(k_max) {
        total = total.add(&pole_pair(&form, n, &zw, k, wp));
    }
    let mut tail = Float::with_val(wp, 0);
    for k in (i64::from(k_max) + 1)..=(i64::from(k_max) + TAIL_SCAN) {
        tail = tail.max(&pole_pair(&form, n, &zw, k, wp).abs());
    }
    let inside = z.is_real() && z.real().clone() > 0u32 && z.real().clone() < 1u32;
    Ok(ApproxValue {
        value: pref.mul(&total).rounded(target),
        method: Method::Fourier,
        terms_used: k_max + 1,
        error_estimate: Float::with_val(target, pref.abs() * tail),
        confidence: if inside { Confidence::Convergent } else { Confidence::Asymptotic },
    })
}

/// The conjugate pole pair
/// `ε_k e^{(2k+1)πiz}/((2k+1)πi)^{n+1} + ε_{−1−k} e^{−(2k+1)πiz}/(−(2k+1)πi)^{n+1}`.
fn pole_pair(form: &EpsilonClosedForm, n: u32, z: &HPComplex, k: i64, wp: u32) -> HPComplex {
    let node = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(2 * k + 1);
    let plus = form.eval(k).mul(&node.mul(z).exp()).div(&node.pow_i64(i64::from(n) + 1));
    let minus = form
        .eval(-1 - k)
        .mul(&node.mul(z).neg().exp())
        .div(&node.neg().pow_i64(i64::from(n) + 1));
    plus.add(&minus)
}

/// Taylor coefficients of the loop integrand factor
///
/// `h(s) = e^{zu} (πis/(e^u − 1))^μ` with `u = ±πi(e^s − 1)`
///
/// (`upper` picks the sign), via `πis/(e^u − 1) = 1/(E(s)·E(u(s)))` with
/// `E(x) = (e^x − 1)/x`. Unlike the Bernoulli loop factor there is no
/// `e^{μs}` term: the pole substitution `w = πi e^s` contributes its
/// order-`n+1` power to the kernel, not to the integrand.
fn loop_h_series(
    mu: &HPComplex,
    z: &HPComplex,
    order: usize,
    upper: bool,
    wp: u32,
) -> Result<PowerSeries<HPComplex>> {
    let order = order.max(1);
    let one = HPComplex::from_i64(1, wp);
    let sign = if upper { 1 } else { -1 };
    let lead = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(sign);
    let mut u_coeffs = exp_series(&one, order).into_coeffs();
    u_coeffs[0] = HPComplex::new(wp);
    let u = PowerSeries::new(u_coeffs).scale(&lead);
    let e_of_s = expm1_over_s(&one, order);
    let e_of_u = e_of_s.compose(&u)?;
    let base = e_of_s.mul(&e_of_u);
    let powered = base.pow(&mu.neg())?;
    let growth = u.scale(z).exp()?;
    Ok(powered.mul(&growth))
}

/// The upper-loop coefficients `h_0..h_K` of the inverse-power expansion,
/// generated by series arithmetic at the stated precision. `h_0 = 1` exactly.
pub fn watson_h_coeffs(
    mu: &HPComplex,
    z: &HPComplex,
    k_max: u32,
    precision: u32,
) -> Result<Vec<HPComplex>> {
    let series = loop_h_series(mu, z, k_max as usize, true, precision)?;
    Ok(series.coeffs()[..=k_max as usize].to_vec())
}

/// Corrected closed forms of the first four loop-expansion coefficients
/// (`ζ = (z − μ/2)π`):
///
/// * `h₀ = 1`
/// * `h₁ = −μ/2 + iζ`
/// * `h₂ = (3μ² + (π² − 1)μ − 12ζ²)/24 + i(1 − μ)ζ/2`
/// * `h₃ = (−μ³ + (1 − π²)μ² + 2(π² + 6ζ²)μ − 24ζ²)/48
///        + iζ(3μ² + (π² − 7)μ − 4ζ² + 4)/24`
///
/// All four agree with [`watson_h_coeffs`] to working precision. The `k = 2`
/// and `k = 3` *real parts* differ from the commonly tabulated forms, which
/// are corrupt (see [`h_tabulated_forms`]); the imaginary parts and the
/// `k ≤ 1` rows are as tabulated.
pub fn h_reference_forms(mu: &HPComplex, z: &HPComplex) -> Vec<HPComplex> {
    let prec = mu.prec().max(z.prec());
    let one = HPComplex::from_i64(1, prec);
    let i = HPComplex::i(prec);
    let pi = HPComplex::pi(prec);
    let two = HPComplex::from_i64(2, prec);
    let zeta = z.sub(&mu.div(&two)).mul(&pi);
    let pi2 = pi.mul(&pi);
    let zeta2 = zeta.mul(&zeta);
    let mu2 = mu.mul(mu);
    let h1 = mu.div(&two).neg().add(&i.mul(&zeta));
    let h2 = mu2
        .scale_i64(3)
        .add(&pi2.sub(&one).mul(mu))
        .sub(&zeta2.scale_i64(12))
        .div(&HPComplex::from_i64(24, prec))
        .add(&i.mul(&one.sub(mu)).mul(&zeta).div(&two));
    let h3 = h3_real_core(mu, &zeta, prec).add(
        &i.mul(&zeta)
            .mul(
                &mu2.scale_i64(3)
                    .add(&pi2.sub(&HPComplex::from_i64(7, prec)).mul(mu))
                    .sub(&zeta2.scale_i64(4))
                    .add(&HPComplex::from_i64(4, prec)),
            )
            .div(&HPComplex::from_i64(24, prec)),
    );
    vec![one, h1, h2, h3]
}

/// The polynomial `(−μ³ + (1−π²)μ² + 2(π²+6ζ²)μ − 24ζ²)/48` shared by the
/// corrected `h₃` (as is) and the tabulated `h₃` (multiplied by a stray `z`).
fn h3_real_core(mu: &HPComplex, zeta: &HPComplex, prec: u32) -> HPComplex {
    let one = HPComplex::from_i64(1, prec);
    let pi = HPComplex::pi(prec);
    let pi2 = pi.mul(&pi);
    let zeta2 = zeta.mul(zeta);
    let mu2 = mu.mul(mu);
    mu2.mul(mu)
        .neg()
        .add(&one.sub(&pi2).mul(&mu2))
        .add(&pi2.add(&zeta2.scale_i64(6)).scale_i64(2).mul(mu))
        .sub(&zeta2.scale_i64(24))
        .div(&HPComplex::from_i64(48, prec))
}

/// The loop-coefficient table as commonly tabulated, retained only as a
/// comparison target: the `h₂` real part is garbled
/// (`(3(1−2π²)μ² + (13π² − 12ζπ − 1)μ − 12ζ²)/24`) and the `h₃` real part
/// carries a stray leading factor `z`; both fail against the generated
/// coefficients by `O(1)` margins, while every other entry matches.
pub fn h_tabulated_forms(mu: &HPComplex, z: &HPComplex) -> Vec<HPComplex> {
    let prec = mu.prec().max(z.prec());
    let one = HPComplex::from_i64(1, prec);
    let i = HPComplex::i(prec);
    let pi = HPComplex::pi(prec);
    let two = HPComplex::from_i64(2, prec);
    let zeta = z.sub(&mu.div(&two)).mul(&pi);
    let pi2 = pi.mul(&pi);
    let zeta2 = zeta.mul(&zeta);
    let mu2 = mu.mul(mu);
    let h1 = mu.div(&two).neg().add(&i.mul(&zeta));
    let h2_re = one
        .sub(&pi2.scale_i64(2))
        .mul(&mu2)
        .scale_i64(3)
        .add(&pi2.scale_i64(13).sub(&zeta.mul(&pi).scale_i64(12)).sub(&one).mul(mu))
        .sub(&zeta2.scale_i64(12))
        .div(&HPComplex::from_i64(24, prec));
    let h2 = h2_re.add(&i.mul(&one.sub(mu)).mul(&zeta).div(&two));
    let h3 = h3_real_core(mu, &zeta, prec).mul(z).add(
        &i.mul(&zeta)
            .mul(
                &mu2.scale_i64(3)
                    .add(&pi2.sub(&HPComplex::from_i64(7, prec)).mul(mu))
                    .sub(&zeta2.scale_i64(4))
                    .add(&HPComplex::from_i64(4, prec)),
            )
            .div(&HPComplex::from_i64(24, prec)),
    );
    vec![one, h1, h2, h3]
}

/// Loop-integral expansion for non-integer order:
///
/// `E_n^μ(z) ≈ [2^μ n! n^{μ−1} / (π^{n+μ} Γ(μ))] Σ_{k=0}^{K} (1−μ)_k n^{−k}
///             (e^{iχ} h_k^{(+)} + e^{−iχ} h_k^{(−)})`,
///
/// where `χ = (z − μ/2)π − nπ/2` and `h_k^{(±)}` come from the upper/lower
/// loop. For real inputs the two loops are conjugate and the sum is twice a
/// real part (giving the familiar `2^{μ+1}` prefactor on the cosine form);
/// both loops are evaluated independently so complex parameters work
/// unchanged. Integer `μ` is rejected as in the Bernoulli case.
pub fn watson_expansion(
    n: u32,
    mu: &HPComplex,
    z: &HPComplex,
    k_max: u32,
    precision: u32,
) -> Result<ApproxValue> {
    if n < 1 {
        return Err(Error::OutOfDomain(format!("loop expansion needs n >= 1 (got n={n})")));
    }
    if let Some(m) = mu.as_integer() {
        return Err(Error::IntegerOrder(format!(
            "loop expansion degenerates at integer order mu = {m}; use the finite sum \
             (mu <= 0) or the odd-pole series (mu >= 1) instead"
        )));
    }
    let wp = working_precision(precision, n);
    let muw = mu.rounded(wp);
    let zw = z.rounded(wp);
    let order = k_max as usize + 1;
    let h_up = loop_h_series(&muw, &zw, order, true, wp)?;
    let h_lo = loop_h_series(&muw, &zw, order, false, wp)?;
    let params = ExpansionParams::new(Family::Euler, n, &muw, &zw);
    let i_chi = HPComplex::i(wp).mul(&params.chi);
    let e_plus = i_chi.exp();
    let e_minus = i_chi.neg().exp();
    let one = HPComplex::from_i64(1, wp);
    let nn = HPComplex::from_i64(i64::from(n), wp);
    let mut weight = one.clone();
    let mut sum = HPComplex::new(wp);
    let mut tail = Float::with_val(wp, 0);
    for k in 0..=order {
        let term = e_plus
            .mul(h_up.coeff(k))
            .add(&e_minus.mul(h_lo.coeff(k)))
            .mul(&weight);
        if k <= k_max as usize {
            sum = sum.add(&term);
        } else {
            tail = term.abs();
        }
        weight = weight.mul(&one.sub(&muw).add(&HPComplex::from_i64(k as i64, wp))).div(&nn);
    }
    let pref = HPComplex::from_i64(2, wp)
        .pow(&muw)
        .mul(&HPComplex::from_rational(&factorial(n), wp))
        .mul(&nn.pow(&muw.sub(&one)))
        .div(&HPComplex::pi(wp).pow(&nn.add(&muw)))
        .div(&gamma(&muw)?);
    Ok(ApproxValue {
        value: pref.mul(&sum).rounded(precision),
        method: Method::Watson,
        terms_used: k_max + 1,
        error_estimate: Float::with_val(precision, pref.abs() * tail),
        confidence: Confidence::Asymptotic,
    })
}

/// Local data for the two-point expansion around `w = ±πi`: the function
///
/// `f(w) = [(w² + π²) / (2π(e^w + 1))]^μ e^{wz}`,
///
/// analytic at both points because `(w² + π²)` cancels the zeros of
/// `e^w + 1`. The bracket's value at `±πi` is `∓i`, and the branch reached
/// by continuation from `w = 0` (bracket `π/4 > 0`) coincides with the
/// principal one there, so — unlike the Bernoulli neighborhood — no branch
/// correction is needed; the constant `(∓i)^μ e^{±πiz} = e^{±iζ}` is still
/// attached explicitly to keep the powered series unit-normalized.
struct PoleNeighborhood {
    mu: HPComplex,
    z: HPComplex,
    prec: u32,
}

impl LocalSeries for PoleNeighborhood {
    fn center(&self) -> HPComplex {
        HPComplex::pi(self.prec)
    }

    fn local_series(&self, upper: bool, order: usize) -> Result<PowerSeries<HPComplex>> {
        let wp = self.prec;
        let one = HPComplex::from_i64(1, wp);
        let zero = HPComplex::new(wp);
        let sign = if upper { 1 } else { -1 };
        let w0 = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(sign);
        // In v = w − w₀: w² + π² = v(v + 2w₀) and e^w + 1 = 1 − e^v =
        // −v·E(v), so the bracket is −(v + 2w₀)/(2π E(v)).
        let order = order.max(1);
        let mut lin = vec![zero.clone(); order + 1];
        lin[0] = w0.scale_i64(2);
        lin[1] = one.clone();
        let g = PowerSeries::new(lin)
            .mul(&expm1_over_s(&one, order).inverse()?)
            .scale(&one.div(&HPComplex::pi(wp).scale_i64(-2)));
        let g0 = g.coeff(0).clone();
        let unit = PowerSeries::new(g.coeffs().iter().map(|c| c.div(&g0)).collect());
        let powered = unit.pow(&self.mu)?;
        let two = HPComplex::from_i64(2, wp);
        let zeta = self.z.sub(&self.mu.div(&two)).mul(&HPComplex::pi(wp));
        let phase = HPComplex::i(wp).mul(&zeta).scale_i64(sign).exp();
        Ok(powered.mul(&exp_series(&self.z, order)).scale(&phase))
    }
}

/// The first `k_max + 1` two-point coefficient pairs `(γ_k, δ_k)` of the
/// chosen flavor, as produced by the peeling recursion at the stated
/// precision. [`two_point_reference_forms`] gives the closed forms of the
/// first three pairs for cross-checking.
pub fn twopoint_pairs(
    mu: &HPComplex,
    z: &HPComplex,
    k_max: u32,
    flavor: TwoPointFlavor,
    precision: u32,
) -> Result<Vec<(HPComplex, HPComplex)>> {
    let local = PoleNeighborhood {
        mu: mu.rounded(precision),
        z: z.rounded(precision),
        prec: precision,
    };
    let series = two_point_expand(&local, flavor, k_max as usize, precision)?;
    Ok(series.pairs)
}

/// The convergent-flavor weight `Ψ_k^{(n)}`: zero for odd (or negative)
/// superscript, and `(−1)^N π^{2k−2μ−2N} (μ−k)_N / N!` for `n = 2N`.
pub fn psi_standard(k: u32, superscript: i64, mu: &HPComplex, prec: u32) -> HPComplex {
    if superscript < 0 || superscript % 2 == 1 {
        return HPComplex::new(prec);
    }
    let half = (superscript / 2) as u32;
    let pi = HPComplex::pi(prec);
    let expo = HPComplex::from_i64(2 * (i64::from(k) - i64::from(half)), prec)
        .sub(&mu.scale_i64(2));
    let shifted = mu.sub(&HPComplex::from_i64(i64::from(k), prec));
    let mut v = pi
        .pow(&expo)
        .mul(&pochhammer(&shifted, half))
        .div(&HPComplex::from_rational(&factorial(half), prec));
    if half % 2 == 1 {
        v = v.neg();
    }
    v
}

/// The asymptotic-flavor weight `Ψ̃_k^{(n)}`: zero for odd (or negative)
/// superscript, and `(−1)^{N+k} π^{−2μ−2N} (μ−k)_{N+k} / (N+k)!` for
/// `n = 2N`; for positive integer `μ = m` it vanishes identically for
/// `k ≥ m`, truncating the sum.
pub fn psi_tilde(k: u32, superscript: i64, mu: &HPComplex, prec: u32) -> HPComplex {
    if superscript < 0 || superscript % 2 == 1 {
        return HPComplex::new(prec);
    }
    let half = (superscript / 2) as u32;
    let pi = HPComplex::pi(prec);
    let expo = mu
        .scale_i64(2)
        .add(&HPComplex::from_i64(2 * i64::from(half), prec))
        .neg();
    let shifted = mu.sub(&HPComplex::from_i64(i64::from(k), prec));
    let mut v = pi
        .pow(&expo)
        .mul(&pochhammer(&shifted, half + k))
        .div(&HPComplex::from_rational(&factorial(half + k), prec));
    if (half + k) % 2 == 1 {
        v = v.neg();
    }
    v
}

/// Two-point expansion around `w = ±πi`:
///
/// `E_n^μ(z) = (4π)^μ n! Σ_k [γ_k Ψ_k^{(n)} + δ_k Ψ_k^{(n−1)}]`,
///
/// assembled with both coefficient rows; the weight with odd superscript
/// vanishes identically, so even `n` draws only on the even-part `γ_k` and
/// odd `n` only on the odd-part `δ_k`. Flavors and integer-order rejections
/// mirror the Bernoulli case: the Standard series is convergent, the Tilde
/// one asymptotic (truncating by itself at positive integer `μ = m`, after
/// which the reported first-omitted-term estimate is zero even though the
/// truncated expansion retains its asymptotic error).
pub fn twopoint_expansion(
    n: u32,
    mu: &HPComplex,
    z: &HPComplex,
    k_max: u32,
    flavor: TwoPointFlavor,
    precision: u32,
) -> Result<ApproxValue> {
    if let Some(m) = mu.as_integer() {
        match flavor {
            TwoPointFlavor::Standard => {
                return Err(Error::IntegerOrder(format!(
                    "two-point sum degenerates at integer order mu = {m}: the weights vanish \
                     through k = N+m-1 and the sum starts at k = N+m; use the finite sum \
                     (mu <= 0), the odd-pole series (mu >= 1), or the tilde flavor (mu >= 1)"
                )));
            }
            TwoPointFlavor::Tilde if m <= 0 => {
                return Err(Error::IntegerOrder(format!(
                    "tilde two-point sum needs mu >= 1 at integer order (got mu = {m}); \
                     use the finite sum instead"
                )));
            }
            TwoPointFlavor::Tilde => {}
        }
    }
    let wp = working_precision(precision, n);
    let muw = mu.rounded(wp);
    let zw = z.rounded(wp);
    let local = PoleNeighborhood { mu: muw.clone(), z: zw, prec: wp };
    let series = two_point_expand(&local, flavor, k_max as usize + 1, wp)?;
    let weight = |k: u32, superscript: i64| match flavor {
        TwoPointFlavor::Standard => psi_standard(k, superscript, &muw, wp),
        TwoPointFlavor::Tilde => psi_tilde(k, superscript, &muw, wp),
    };
    let contribution = |k: u32| {
        let (a, b) = &series.pairs[k as usize];
        a.mul(&weight(k, i64::from(n)))
            .add(&b.mul(&weight(k, i64::from(n) - 1)))
    };
    let mut sum = HPComplex::new(wp);
    let mut terms_used = 0u32;
    for k in 0..=k_max {
        let term = contribution(k);
        if !term.is_zero() {
            terms_used += 1;
        }
        sum = sum.add(&term);
    }
    let next = contribution(k_max + 1);
    let pref = HPComplex::pi(wp)
        .scale_i64(4)
        .pow(&muw)
        .mul(&HPComplex::from_rational(&factorial(n), wp));
    let (method, confidence) = match flavor {
        TwoPointFlavor::Standard => (Method::TwoPoint, Confidence::Convergent),
        TwoPointFlavor::Tilde => (Method::TwoPointTilde, Confidence::Asymptotic),
    };
    Ok(ApproxValue {
        value: pref.mul(&sum).rounded(precision),
        method,
        terms_used,
        error_estimate: Float::with_val(precision, pref.abs() * next.abs()),
        confidence,
    })
}

/// Exact successive-weight ratio of the convergent flavor,
/// `Ψ_{k+1}^{(2N)} / Ψ_k^{(2N)} = π²(μ−k−1)/(μ−k−1+N)` — `O(1/N)` for fixed
/// non-integer `μ`. (A commonly tabulated version has numerator `μ−k`; the
/// Pochhammer algebra and the generated weights both give `μ−k−1`, matching
/// the Bernoulli mirror.)
pub fn twopoint_ratio_check(half_n: u32, mu: &HPComplex, k: u32) -> Result<HPComplex> {
    let prec = mu.prec();
    let shifted = mu.sub(&HPComplex::from_i64(i64::from(k) + 1, prec));
    let denom = shifted.add(&HPComplex::from_i64(i64::from(half_n), prec));
    if denom.is_zero() {
        return Err(Error::DegenerateInput(format!(
            "weight ratio has a pole at mu - k - 1 + N = 0 (k={k}, N={half_n})"
        )));
    }
    let pi = HPComplex::pi(prec);
    Ok(pi.mul(&pi).mul(&shifted).div(&denom))
}

/// Closed forms of the first three two-point coefficient pairs `(γ_k, δ_k)`,
/// with `ζ = (z − μ/2)π` and `η = μ − 2z`; cross-checks for the pairs
/// produced by the peeling recursion (all six agree with the generated
/// coefficients).
pub fn two_point_reference_forms(mu: &HPComplex, z: &HPComplex) -> Vec<(HPComplex, HPComplex)> {
    let prec = mu.prec().max(z.prec());
    let one = HPComplex::from_i64(1, prec);
    let two = HPComplex::from_i64(2, prec);
    let pi = HPComplex::pi(prec);
    let zeta = z.sub(&mu.div(&two)).mul(&pi);
    let eta = mu.sub(&z.scale_i64(2));
    let c = zeta.cos();
    let s = zeta.sin();
    let pi2 = pi.mul(&pi);
    let pi3 = pi2.mul(&pi);
    let pi4 = pi2.mul(&pi2);
    let pi5 = pi4.mul(&pi);
    let mu2 = mu.mul(mu);
    let eta2 = eta.mul(&eta);

    let g0 = c.clone();
    let d0 = s.div(&pi);

    // γ₁ = −[μ cos ζ + πη sin ζ]/(4π²)
    let g1 = mu.mul(&c).add(&pi.mul(&eta).mul(&s)).div(&pi2.scale_i64(4)).neg();
    // δ₁ = [πη cos ζ + (2 − μ) sin ζ]/(4π³)
    let d1 = pi.mul(&eta).mul(&c).add(&two.sub(mu).mul(&s)).div(&pi3.scale_i64(4));
    // γ₂ = [(−9μ − 3π²η² + π²μ + 3μ²) cos ζ + 6πη(μ−1) sin ζ]/(96π⁴)
    let g2_poly = mu
        .scale_i64(-9)
        .sub(&pi2.mul(&eta2).scale_i64(3))
        .add(&mu.mul(&pi2))
        .add(&mu2.scale_i64(3));
    let g2 = g2_poly
        .mul(&c)
        .add(&pi.scale_i64(6).mul(&eta).mul(&mu.sub(&one)).mul(&s))
        .div(&pi4.scale_i64(96));
    // δ₂ = [6πη(3−μ) cos ζ + (36 − 21μ + 3μ² + π²μ − 3π²η²) sin ζ]/(96π⁵)
    let d2_poly = HPComplex::from_i64(36, prec)
        .sub(&mu.scale_i64(21))
        .add(&mu2.scale_i64(3))
        .add(&mu.mul(&pi2))
        .sub(&pi2.mul(&eta2).scale_i64(3));
    let d2 = pi
        .scale_i64(6)
        .mul(&eta)
        .mul(&HPComplex::from_i64(3, prec).sub(mu))
        .mul(&c)
        .add(&d2_poly.mul(&s))
        .div(&pi5.scale_i64(96));

    vec![(g0, d0), (g1, d1), (g2, d2)]
}
