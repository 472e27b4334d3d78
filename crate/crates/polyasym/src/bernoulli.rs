//! Large-degree approximations of the generalized Bernoulli polynomials
//! `B_n^μ(z)`, each measured against the exact oracle in [`crate::oracle`].
//!
//! Four approximation families live here, split by the nature of the order μ:
//!
//! * [`neg_int_leading`] — for negative integer order `μ = −m` the polynomial
//!   collapses to a finite sum of `m + 1` powers; one or two of them dominate
//!   for large `n`, selected by the position of `Re z` relative to `−m/2`.
//! * [`fourier_b1`] / [`fourier_bm`] — for positive integer order the
//!   generating function is meromorphic with poles at `w = 2πik`, and summing
//!   residues gives a Fourier series whose coefficient polynomials `β_k^m`
//!   are built two independent ways ([`beta_coeff`] closed form,
//!   [`beta_coeff_recurrence`] order-raising recurrence).
//! * [`watson_expansion`] — for non-integer order, a loop-integral expansion
//!   in inverse powers of `n` whose coefficients `g_k` come from power-series
//!   composition ([`watson_g_coeffs`]) rather than hand algebra.
//! * [`twopoint_expansion`] — expansions around the two dominant poles
//!   `w = ±2πi` jointly: a convergent flavor in powers of `(w² + 4π²)` and an
//!   asymptotic flavor in powers of `(w² + 4π²)/w²`.
//!
//! Error estimates follow one convention per contract: the region leading
//! forms record a *relative* estimate (next-largest term over the kept sum);
//! every series method records the *absolute* magnitude of the first omitted
//! term, with a short scan past the truncation point so that a term that
//! happens to vanish (e.g. `cos(πk/2)` at quarter-integer `z`) does not
//! masquerade as an exact result.

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

/// Dominant terms of the finite sum for `B_n^{−m}(z)`, per region of `Re z`:
///
/// * `Re z > −m/2`: the `r = m` term `(z+m)^{n+m}` wins,
/// * `Re z = −m/2`: the `r = 0` and `r = m` terms tie,
/// * `Re z < −m/2`: the `r = 0` term `(−1)^m z^{n+m}` wins,
///
/// all scaled by `n!/(n+m)!`. The error estimate is relative: the largest
/// omitted term over the kept sum. `m = 0` reduces to `z^n` exactly.
///
/// Fails with [`Error::DegenerateInput`] when the kept terms cancel exactly
/// (on the boundary the two kept powers can be equal and opposite, e.g.
/// `m = 2`, `z = −1`, odd `n`); the full finite sum in
/// [`oracle::bernoulli_neg_int`] is the fallback there.
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
        let mut term = z
            .add(&HPComplex::from_i64(i64::from(r), wp))
            .pow_i64(i64::from(n + m))
            .mul(&HPComplex::from_rational(&weight, wp));
        if (m - r) % 2 == 1 {
            term = term.neg();
        }
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
    let scale = pochhammer(&HPComplex::from_i64(i64::from(n) + 1, wp), m);
    let confidence = if estimate.is_zero() { Confidence::Exact } else { Confidence::Asymptotic };
    Ok(ApproxValue {
        value: kept_sum.div(&scale).rounded(target),
        method: Method::LeadingForm,
        terms_used: kept.len() as u32,
        error_estimate: estimate,
        confidence,
    })
}

/// Partial Fourier sum for the classical polynomials `B_n(z)`:
///
/// `B_n(z) ≈ 2(−1)^{N+1} n! Σ_{k=1}^{K} cos(2πkz)/(2πk)^n` for even `n = 2N`,
/// with `sin` in place of `cos` for odd `n = 2N + 1`.
///
/// For `n = 1` the series converges only in the strip `0 < Re z < 1` and the
/// input is rejected outside it. Convergent (as tagged on the result) means
/// real `z ∈ [0, 1]`; elsewhere the partial sum is still the dominant-pole
/// approximation but the tail grows with `|Im z|`.
pub fn fourier_b1(n: u32, z: &HPComplex, k_max: u32) -> Result<ApproxValue> {
    if n < 1 {
        return Err(Error::OutOfDomain(format!("pole series needs n >= 1 (got n={n})")));
    }
    if k_max < 1 {
        return Err(Error::OutOfDomain("pole series needs at least one term".into()));
    }
    if n == 1 && !(z.real().clone() > 0u32 && z.real().clone() < 1u32) {
        return Err(Error::OutOfDomain(
            "for n = 1 the pole series requires 0 < Re z < 1".into(),
        ));
    }
    let target = z.prec();
    let wp = working_precision(target, n);
    let zw = z.rounded(wp);
    let half = n / 2;
    let mut pref = HPComplex::from_rational(&factorial(n), wp).scale_i64(2);
    if half % 2 == 0 {
        pref = pref.neg();
    }
    let mut total = HPComplex::new(wp);
    for k in 1..=i64::from(k_max) {
        total = total.add(&classical_term(n, &zw, k, wp));
    }
    let mut tail = Float::with_val(wp, 0);
    for k in (i64::from(k_max) + 1)..=(i64::from(k_max) + TAIL_SCAN) {
        tail = tail.max(&classical_term(n, &zw, k, wp).abs());
    }
    let on_segment =
        z.is_real() && z.real().clone() >= 0u32 && z.real().clone() <= 1u32;
    Ok(ApproxValue {
        value: pref.mul(&total).rounded(target),
        method: Method::Fourier,
        terms_used: k_max,
        error_estimate: Float::with_val(target, pref.abs() * tail),
        confidence: if on_segment { Confidence::Convergent } else { Confidence::Asymptotic },
    })
}

/// One term `cos(2πkz)/(2πk)^n` (even `n`) or `sin(2πkz)/(2πk)^n` (odd `n`).
fn classical_term(n: u32, z: &HPComplex, k: i64, wp: u32) -> HPComplex {
    let two_pi_k = HPComplex::pi(wp).scale_i64(2 * k);
    let angle = two_pi_k.mul(z);
    let osc = if n % 2 == 0 { angle.cos() } else { angle.sin() };
    osc.div(&two_pi_k.pow_i64(i64::from(n)))
}

/// Residue coefficient of the order-`m` pole series, closed form:
///
/// `β_k^m(n,z) = (−1)^{m−1} C(n−1,m−1) Σ_{ν=0}^{m−1} B_ν^m(z) C(m−1,ν)
///               (−2πik)^ν / ((n−1)(n−2)⋯(n−ν))`,
///
/// with the low-degree values `B_ν^m(z)` taken from the oracle. `β_k^1 = 1`
/// for all `k, n, z`.
pub fn beta_coeff(m: u32, n: u32, z: &HPComplex, k: i64) -> Result<HPComplex> {
    if k == 0 {
        return Err(Error::OutOfDomain("residue coefficients are indexed by k != 0".into()));
    }
    let form = BetaClosedForm::build(m, n, z, z.prec())?;
    Ok(form.eval(k))
}

/// Precomputed ν-products of the residue coefficient; evaluating at a pole
/// index `k` is then a short Horner loop in `(−2πik)`.
struct BetaClosedForm {
    lead: HPComplex,
    terms: Vec<HPComplex>,
    wp: u32,
}

impl BetaClosedForm {
    fn build(m: u32, n: u32, z: &HPComplex, wp: u32) -> Result<Self> {
        if m < 1 || m > n {
            return Err(Error::OutOfDomain(format!(
                "residue coefficients need 1 <= m <= n (got m={m}, n={n})"
            )));
        }
        let mu = HPComplex::from_i64(i64::from(m), wp);
        let low = oracle::bernoulli_values((m - 1) as usize, &mu, &z.rounded(wp))?;
        let mut terms = Vec::with_capacity(m as usize);
        for (nu, b) in low.iter().enumerate() {
            let weight = Rational::from(binomial_int(m - 1, nu as u32));
            // (n−ν−1)!/(n−1)! = 1/((n−1)(n−2)⋯(n−ν)), an empty product at ν=0.
            let falling =
                pochhammer(&HPComplex::from_i64(i64::from(n - nu as u32), wp), nu as u32);
            terms.push(b.mul(&HPComplex::from_rational(&weight, wp)).div(&falling));
        }
        let mut lead = HPComplex::from_rational(&Rational::from(binomial_int(n - 1, m - 1)), wp);
        if m % 2 == 0 {
            lead = lead.neg();
        }
        Ok(BetaClosedForm { lead, terms, wp })
    }

    fn eval(&self, k: i64) -> HPComplex {
        let x = HPComplex::i(self.wp).mul(&HPComplex::pi(self.wp)).scale_i64(-2 * k);
        let mut acc = HPComplex::new(self.wp);
        for t in self.terms.iter().rev() {
            acc = acc.mul(&x).add(t);
        }
        self.lead.mul(&acc)
    }
}

/// `β_k^m` as an explicit polynomial in `z` (coefficient of `z^j` at index
/// `j`), computed from the closed form by running the oracle over the
/// polynomial coefficient field.
pub fn beta_polynomial(m: u32, n: u32, k: i64, prec: u32) -> Result<PowerSeries<HPComplex>> {
    if m < 1 || m > n {
        return Err(Error::OutOfDomain(format!(
            "residue coefficients need 1 <= m <= n (got m={m}, n={n})"
        )));
    }
    if k == 0 {
        return Err(Error::OutOfDomain("residue coefficients are indexed by k != 0".into()));
    }
    let order = (m as usize).saturating_sub(1).max(1);
    let one = HPComplex::from_i64(1, prec);
    let mu_poly = PowerSeries::constant(&HPComplex::from_i64(i64::from(m), prec), order);
    let z_poly = PowerSeries::identity(&one, order);
    let low = oracle::bernoulli_values((m - 1) as usize, &mu_poly, &z_poly)?;
    let x = HPComplex::i(prec).mul(&HPComplex::pi(prec)).scale_i64(-2 * k);
    let mut power = one.clone();
    let mut acc = PowerSeries::zero(&one, order);
    for (nu, b) in low.iter().enumerate() {
        let weight = Rational::from(binomial_int(m - 1, nu as u32));
        let falling =
            pochhammer(&HPComplex::from_i64(i64::from(n - nu as u32), prec), nu as u32);
        let scalar = HPComplex::from_rational(&weight, prec).mul(&power).div(&falling);
        acc = acc.add(&b.scale(&scalar));
        power = power.mul(&x);
    }
    let mut lead = HPComplex::from_rational(&Rational::from(binomial_int(n - 1, m - 1)), prec);
    if m % 2 == 0 {
        lead = lead.neg();
    }
    Ok(acc.scale(&lead))
}

/// `β_k^m` as a polynomial in `z`, built instead by the order-raising
/// recurrence (seeded with `β_k^1 = 1`):
///
/// `j β_k^{j+1} = [j − n + 2πik(z − j)] β_k^j + (z − j) dβ_k^j/dz`.
///
/// Carrying the polynomial explicitly keeps the `z`-derivative exact; the
/// result must agree with [`beta_polynomial`] coefficient by coefficient.
pub fn beta_polynomial_recurrence(
    m: u32,
    n: u32,
    k: i64,
    prec: u32,
) -> Result<PowerSeries<HPComplex>> {
    if m < 1 {
        return Err(Error::OutOfDomain("the recurrence starts at m = 1".into()));
    }
    if k == 0 {
        return Err(Error::OutOfDomain("residue coefficients are indexed by k != 0".into()));
    }
    let order = (m as usize).saturating_sub(1).max(1);
    let one = HPComplex::from_i64(1, prec);
    let zero = HPComplex::new(prec);
    let two_pi_i_k = HPComplex::i(prec).mul(&HPComplex::pi(prec)).scale_i64(2 * k);
    let mut beta = PowerSeries::constant(&one, order);
    for j in 1..i64::from(m) {
        // [j − n + 2πik(z − j)] as a linear polynomial in z.
        let c0 = HPComplex::from_i64(j - i64::from(n), prec).sub(&two_pi_i_k.scale_i64(j));
        let mut lin = vec![zero.clone(); order + 1];
        lin[0] = c0;
        lin[1] = two_pi_i_k.clone();
        let lin = PowerSeries::new(lin);
        // (z − j), also linear.
        let mut zlin = vec![zero.clone(); order + 1];
        zlin[0] = HPComplex::from_i64(-j, prec);
        zlin[1] = one.clone();
        let zlin = PowerSeries::new(zlin);
        let mut dcoeffs = beta.derivative().into_coeffs();
        dcoeffs.resize(order + 1, zero.clone());
        let dbeta = PowerSeries::new(dcoeffs);
        let num = lin.mul(&beta).add(&zlin.mul(&dbeta));
        beta = num.scale(&one.div(&HPComplex::from_i64(j, prec)));
    }
    Ok(beta)
}

/// Point evaluation of [`beta_polynomial_recurrence`] at `z`.
pub fn beta_coeff_recurrence(m: u32, n: u32, z: &HPComplex, k: i64) -> Result<HPComplex> {
    Ok(beta_polynomial_recurrence(m, n, k, z.prec())?.eval(z))
}

/// Partial pole series for positive integer order `1 ≤ m < n`:
///
/// `B_n^m(z) = −n! Σ_{k≠0} β_k^m(n,z) e^{2πikz} / (2πik)^n`,
///
/// summed in conjugate pairs `±k` for `k = 1..K`. The error estimate scans
/// the first few omitted pairs; the series converges for real `z ∈ (0, 1)`
/// and is asymptotic in `n` elsewhere.
pub fn fourier_bm(n: u32, m: u32, z: &HPComplex, k_max: u32) -> Result<ApproxValue> {
    if m < 1 || m >= n {
        return Err(Error::OutOfDomain(format!(
            "pole series for integer order needs 1 <= m < n (got m={m}, n={n})"
        )));
    }
    if k_max < 1 {
        return Err(Error::OutOfDomain("pole series needs at least one pair".into()));
    }
    let target = z.prec();
    let wp = working_precision(target, n);
    let zw = z.rounded(wp);
    let form = BetaClosedForm::build(m, n, &zw, wp)?;
    let n_fact = HPComplex::from_rational(&factorial(n), wp);
    let mut total = HPComplex::new(wp);
    for k in 1..=i64::from(k_max) {
        total = total.add(&pole_pair(&form, n, &zw, k, wp));
    }
    let mut tail = Float::with_val(wp, 0);
    for k in (i64::from(k_max) + 1)..=(i64::from(k_max) + TAIL_SCAN) {
        tail = tail.max(&pole_pair(&form, n, &zw, k, wp).abs());
    }
    let inside = z.is_real() && z.real().clone() > 0u32 && z.real().clone() < 1u32;
    Ok(ApproxValue {
        value: n_fact.mul(&total).neg().rounded(target),
        method: Method::Fourier,
        terms_used: k_max,
        error_estimate: Float::with_val(target, n_fact.abs() * tail),
        confidence: if inside { Confidence::Convergent } else { Confidence::Asymptotic },
    })
}

/// The `+k`/`−k` residue pair `β_k e^{2πikz}/(2πik)^n + β_{−k} e^{−2πikz}/(−2πik)^n`.
fn pole_pair(form: &BetaClosedForm, n: u32, z: &HPComplex, k: i64, wp: u32) -> HPComplex {
    let node = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(2 * k);
    let plus = form.eval(k).mul(&node.mul(z).exp()).div(&node.pow_i64(i64::from(n)));
    let minus = form
        .eval(-k)
        .mul(&node.mul(z).neg().exp())
        .div(&node.neg().pow_i64(i64::from(n)));
    plus.add(&minus)
}

/// Taylor coefficients of the loop integrand factor
///
/// `g(s) = (2πis/(e^u − 1))^μ e^{zu + μs}` with `u = ±2πi(e^s − 1)`
///
/// (`upper` picks the sign), computed by series composition via the identity
/// `2πis/(e^u − 1) = 1/(E(s)·E(u(s)))` with `E(x) = (e^x − 1)/x`, which keeps
/// every constant term at exactly one so no branch choices arise.
fn loop_g_series(
    mu: &HPComplex,
    z: &HPComplex,
    order: usize,
    upper: bool,
    wp: u32,
) -> Result<PowerSeries<HPComplex>> {
    let order = order.max(1);
    let one = HPComplex::from_i64(1, wp);
    let sign = if upper { 1 } else { -1 };
    let lead = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(2 * sign);
    // u(s) = ±2πi(e^s − 1): zero the constant of e^s and scale.
    let mut u_coeffs = exp_series(&one, order).into_coeffs();
    u_coeffs[0] = HPComplex::new(wp);
    let u = PowerSeries::new(u_coeffs).scale(&lead);
    let e_of_s = expm1_over_s(&one, order);
    let e_of_u = e_of_s.compose(&u)?;
    let base = e_of_s.mul(&e_of_u);
    let powered = base.pow(&mu.neg())?;
    // exponent zu + μs.
    let mut expo = u.scale(z).into_coeffs();
    expo[1] = expo[1].add(mu);
    let growth = PowerSeries::new(expo).exp()?;
    Ok(powered.mul(&growth))
}

/// The upper-loop coefficients `g_0..g_K` of the inverse-power expansion,
/// generated by series arithmetic at the stated precision. `g_0 = 1` exactly.
pub fn watson_g_coeffs(
    mu: &HPComplex,
    z: &HPComplex,
    k_max: u32,
    precision: u32,
) -> Result<Vec<HPComplex>> {
    let series = loop_g_series(mu, z, k_max as usize, true, precision)?;
    Ok(series.coeffs()[..=k_max as usize].to_vec())
}

/// Closed forms of the first four loop-expansion coefficients, kept as
/// cross-checks for the generated ones (`ζ = (z − μ/2)π`):
///
/// * `g₀ = 1`
/// * `g₁ = μ/2 + 2iζ`
/// * `g₂ = (3μ² + (4π² − 1)μ − 48ζ²)/24 + i(1 + μ)ζ`
/// * `g₃ = (μ³ + (4π² − 1)μ² + 8(π² − 6ζ²)μ − 96ζ²)/48
///        + iζ(3μ² + (4π² + 5)μ − 16ζ² + 4)/12`
///
/// All four rows agree with [`watson_g_coeffs`] to working precision.
pub fn g_reference_forms(mu: &HPComplex, z: &HPComplex) -> Vec<HPComplex> {
    let prec = mu.prec().max(z.prec());
    let one = HPComplex::from_i64(1, prec);
    let i = HPComplex::i(prec);
    let pi = HPComplex::pi(prec);
    let two = HPComplex::from_i64(2, prec);
    let zeta = z.sub(&mu.div(&two)).mul(&pi);
    let pi2 = pi.mul(&pi);
    let zeta2 = zeta.mul(&zeta);
    let mu2 = mu.mul(mu);
    let g1 = mu.div(&two).add(&i.mul(&zeta).scale_i64(2));
    let g2_re = mu2
        .scale_i64(3)
        .add(&pi2.scale_i64(4).sub(&one).mul(mu))
        .sub(&zeta2.scale_i64(48))
        .div(&HPComplex::from_i64(24, prec));
    let g2 = g2_re.add(&i.mul(&one.add(mu)).mul(&zeta));
    let mu3 = mu2.mul(mu);
    let g3_re = mu3
        .add(&pi2.scale_i64(4).sub(&one).mul(&mu2))
        .add(&pi2.sub(&zeta2.scale_i64(6)).scale_i64(8).mul(mu))
        .sub(&zeta2.scale_i64(96))
        .div(&HPComplex::from_i64(48, prec));
    let g3_im = zeta
        .mul(
            &mu2.scale_i64(3)
                .add(&pi2.scale_i64(4).add(&HPComplex::from_i64(5, prec)).mul(mu))
                .sub(&zeta2.scale_i64(16))
                .add(&HPComplex::from_i64(4, prec)),
        )
        .div(&HPComplex::from_i64(12, prec));
    let g3 = g3_re.add(&i.mul(&g3_im));
    vec![one, g1, g2, g3]
}

/// Loop-integral expansion for non-integer order:
///
/// `B_n^μ(z) ≈ [n! n^{μ−1} / ((2π)^n Γ(μ))] Σ_{k=0}^{K} (1−μ)_k n^{−k}
///             (e^{iχ} g_k^{(+)} + e^{−iχ} g_k^{(−)})`,
///
/// where `χ = (2z − μ)π − nπ/2` and `g_k^{(±)}` are the coefficients from
/// the upper/lower loop. For real `μ, z` the lower-loop terms are the
/// conjugates of the upper ones and the sum is twice a real part; both loops
/// are evaluated independently so complex parameters work unchanged.
///
/// Integer `μ` is rejected: `Γ(μ)` poles (μ ≤ 0) or the vanishing
/// Pochhammer weights (μ ≥ 1) make the expansion degenerate there, and the
/// finite sum / pole series cover those orders exactly.
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
             (mu <= 0) or the pole series (mu >= 1) instead"
        )));
    }
    let wp = working_precision(precision, n);
    let muw = mu.rounded(wp);
    let zw = z.rounded(wp);
    let order = k_max as usize + 1;
    let g_up = loop_g_series(&muw, &zw, order, true, wp)?;
    let g_lo = loop_g_series(&muw, &zw, order, false, wp)?;
    let params = ExpansionParams::new(Family::Bernoulli, n, &muw, &zw);
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
            .mul(g_up.coeff(k))
            .add(&e_minus.mul(g_lo.coeff(k)))
            .mul(&weight);
        if k <= k_max as usize {
            sum = sum.add(&term);
        } else {
            tail = term.abs();
        }
        // (1−μ)_{k+1}/n^{k+1} from (1−μ)_k/n^k.
        weight = weight.mul(&one.sub(&muw).add(&HPComplex::from_i64(k as i64, wp))).div(&nn);
    }
    let pref = HPComplex::from_rational(&factorial(n), wp)
        .mul(&nn.pow(&muw.sub(&one)))
        .div(&HPComplex::pi(wp).scale_i64(2).pow_i64(i64::from(n)))
        .div(&gamma(&muw)?);
    Ok(ApproxValue {
        value: pref.mul(&sum).rounded(precision),
        method: Method::Watson,
        terms_used: k_max + 1,
        error_estimate: Float::with_val(precision, pref.abs() * tail),
        confidence: Confidence::Asymptotic,
    })
}

/// Local data for the two-point expansion around `w = ±2πi`: the function
///
/// `f(w) = [w(w² + 4π²) / (8π²(e^w − 1))]^μ e^{wz}`,
///
/// which is analytic at both points because `(w² + 4π²)` cancels the simple
/// zeros of `e^w − 1` there. The branch of the `μ`-th power is fixed by
/// continuity along a path from `w = 0`, where the bracket is `1`: at
/// `w = ±2πi` the bracket has wound to `e^{∓iπ}`, *not* the principal
/// `−1 → e^{+iπ}`, so the power is applied to the unit-normalized series and
/// the constant `e^{∓iπμ} e^{±2πiz} = e^{±2iζ}` is attached explicitly.
struct PoleNeighborhood {
    mu: HPComplex,
    z: HPComplex,
    prec: u32,
}

impl LocalSeries for PoleNeighborhood {
    fn center(&self) -> HPComplex {
        HPComplex::pi(self.prec).scale_i64(2)
    }

    fn local_series(&self, upper: bool, order: usize) -> Result<PowerSeries<HPComplex>> {
        let wp = self.prec;
        let one = HPComplex::from_i64(1, wp);
        let zero = HPComplex::new(wp);
        let sign = if upper { 1 } else { -1 };
        let w0 = HPComplex::i(wp).mul(&HPComplex::pi(wp)).scale_i64(2 * sign);
        // In the local variable v = w − w₀:
        // w(w² + 4π²)/(e^w − 1) = (v + 2w₀)(v + w₀) / E(v), E(v) = (e^v − 1)/v,
        // using e^w = e^v and (w − w₀)(w + w₀) = v(v + 2w₀).
        let order = order.max(1);
        let mut lin1 = vec![zero.clone(); order + 1];
        lin1[0] = w0.scale_i64(2);
        lin1[1] = one.clone();
        let mut lin2 = vec![zero.clone(); order + 1];
        lin2[0] = w0.clone();
        lin2[1] = one.clone();
        let g = PowerSeries::new(lin1)
            .mul(&PowerSeries::new(lin2))
            .mul(&expm1_over_s(&one, order).inverse()?);
        // Unit-normalize by dividing each coefficient by the constant term
        // directly (c/c is exactly 1 in the rounded field), so the power
        // below never consults the principal branch of a negative constant.
        let g0 = g.coeff(0).clone();
        let unit = PowerSeries::new(g.coeffs().iter().map(|c| c.div(&g0)).collect());
        let powered = unit.pow(&self.mu)?;
        // Branch-corrected constant: (bracket at w₀)^μ · e^{w₀z} = e^{±2iζ}.
        let two = HPComplex::from_i64(2, wp);
        let zeta = self.z.sub(&self.mu.div(&two)).mul(&HPComplex::pi(wp));
        let phase = HPComplex::i(wp).mul(&zeta).scale_i64(2 * sign).exp();
        Ok(powered.mul(&exp_series(&self.z, order)).scale(&phase))
    }
}

/// The first `k_max + 1` two-point coefficient pairs `(α_k, β_k)` of the
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

/// The convergent-flavor weight `Φ_k^{(2N)} = (−1)^N (2π)^{2k−2μ−2N} (μ−k)_N / N!`
/// (the odd-superscript weights vanish identically and never enter the
/// assembled sums).
pub fn phi_standard(k: u32, half_n: u32, mu: &HPComplex, prec: u32) -> HPComplex {
    let two_pi = HPComplex::pi(prec).scale_i64(2);
    let expo = HPComplex::from_i64(2 * (i64::from(k) - i64::from(half_n)), prec)
        .sub(&mu.scale_i64(2));
    let shifted = mu.sub(&HPComplex::from_i64(i64::from(k), prec));
    let mut v = two_pi
        .pow(&expo)
        .mul(&pochhammer(&shifted, half_n))
        .div(&HPComplex::from_rational(&factorial(half_n), prec));
    if half_n % 2 == 1 {
        v = v.neg();
    }
    v
}

/// The asymptotic-flavor weight
/// `Φ̃_k^{(2N)} = (−1)^{N+k} (2π)^{−2μ−2N} (μ−k)_{N+k} / (N+k)!`; for positive
/// integer `μ = m` it vanishes identically for `k ≥ m`, truncating the sum.
pub fn phi_tilde(k: u32, half_n: u32, mu: &HPComplex, prec: u32) -> HPComplex {
    let two_pi = HPComplex::pi(prec).scale_i64(2);
    let expo = mu
        .scale_i64(2)
        .add(&HPComplex::from_i64(2 * i64::from(half_n), prec))
        .neg();
    let shifted = mu.sub(&HPComplex::from_i64(i64::from(k), prec));
    let mut v = two_pi
        .pow(&expo)
        .mul(&pochhammer(&shifted, half_n + k))
        .div(&HPComplex::from_rational(&factorial(half_n + k), prec));
    if (half_n + k) % 2 == 1 {
        v = v.neg();
    }
    v
}

/// Two-point expansion around `w = ±2πi`:
///
/// `B_n^μ(z) = n! 2^{3μ} π^{2μ} Σ_k c_k Φ_k`,
///
/// where for even `n` the `c_k` are the even-part coefficients `a_k` paired
/// with `Φ_k^{(n)}`, and for odd `n` the odd-part coefficients `b_k` paired
/// with `Φ_k^{(n−1)}`. The Standard flavor is a convergent series; the Tilde
/// flavor is asymptotic, and for positive integer `μ = m` it truncates by
/// itself after `m` terms (the reported first-omitted-term estimate is then
/// zero even though the truncated expansion retains its asymptotic error).
///
/// Integer `μ` is rejected for the Standard flavor (the weight ratios grow
/// like `n` there instead of shrinking) and for `μ ≤ 0` in the Tilde flavor;
/// the finite sum / pole series cover those orders.
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
                    "two-point sum degenerates at integer order mu = {m}; use the finite sum \
                     (mu <= 0), the pole series (mu >= 1), or the tilde flavor (mu >= 1)"
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
    let half_n = n / 2;
    let weight = |k: u32| match flavor {
        TwoPointFlavor::Standard => phi_standard(k, half_n, &muw, wp),
        TwoPointFlavor::Tilde => phi_tilde(k, half_n, &muw, wp),
    };
    let pick = |pair: &(HPComplex, HPComplex)| {
        if n % 2 == 0 {
            pair.0.clone()
        } else {
            pair.1.clone()
        }
    };
    let mut sum = HPComplex::new(wp);
    let mut terms_used = 0u32;
    for k in 0..=k_max {
        let term = pick(&series.pairs[k as usize]).mul(&weight(k));
        if !term.is_zero() {
            terms_used += 1;
        }
        sum = sum.add(&term);
    }
    let next = pick(&series.pairs[k_max as usize + 1]).mul(&weight(k_max + 1));
    let pref = HPComplex::from_rational(&factorial(n), wp)
        .mul(&HPComplex::from_i64(2, wp).pow(&muw.scale_i64(3)))
        .mul(&HPComplex::pi(wp).pow(&muw.scale_i64(2)));
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
/// `Φ_{k+1}^{(2N)} / Φ_k^{(2N)} = 4π²(μ−k−1)/(μ−k−1+N)` — `O(1/N)` for fixed
/// non-integer `μ`, but `O(N)` again at integer `μ` once `k` passes the zero
/// run, which is why the Standard flavor rejects integer orders.
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
    Ok(pi.mul(&pi).scale_i64(4).mul(&shifted).div(&denom))
}

/// Closed forms of the first three two-point coefficient pairs `(α_k, β_k)`,
/// with `ζ = (z − μ/2)π` and `η = μ − 2z`; used as cross-checks for the pairs
/// produced by the peeling recursion. All six agree with the generated
/// coefficients (unlike the loop-coefficient table, whose `k = 3` row is
/// corrupt).
pub fn two_point_reference_forms(mu: &HPComplex, z: &HPComplex) -> Vec<(HPComplex, HPComplex)> {
    let prec = mu.prec().max(z.prec());
    let one = HPComplex::from_i64(1, prec);
    let two = HPComplex::from_i64(2, prec);
    let pi = HPComplex::pi(prec);
    let zeta = z.sub(&mu.div(&two)).mul(&pi);
    let eta = mu.sub(&z.scale_i64(2));
    let c = zeta.scale_i64(2).cos();
    let s = zeta.scale_i64(2).sin();
    let pi2 = pi.mul(&pi);
    let pi3 = pi2.mul(&pi);
    let pi4 = pi2.mul(&pi2);
    let pi5 = pi4.mul(&pi);
    let mu2 = mu.mul(mu);
    let eta2 = eta.mul(&eta);

    let a0 = c.clone();
    let b0 = s.div(&pi.scale_i64(2));

    // α₁ = −[3μ cos2ζ + 2πη sin2ζ]/(16π²)
    let a1 = mu
        .scale_i64(3)
        .mul(&c)
        .add(&pi.scale_i64(2).mul(&eta).mul(&s))
        .div(&pi2.scale_i64(16))
        .neg();
    // β₁ = [2πη cos2ζ + (2 − 3μ) sin2ζ]/(32π³)
    let b1 = pi
        .scale_i64(2)
        .mul(&eta)
        .mul(&c)
        .add(&two.sub(&mu.scale_i64(3)).mul(&s))
        .div(&pi3.scale_i64(32));
    // α₂ = [(−12π²η² + 4μπ² − 33μ + 27μ²) cos2ζ + 12πη(3μ−1) sin2ζ]/(1536π⁴)
    let a2_poly = pi2
        .mul(&eta2)
        .scale_i64(-12)
        .add(&mu.mul(&pi2).scale_i64(4))
        .sub(&mu.scale_i64(33))
        .add(&mu2.scale_i64(27));
    let a2 = a2_poly
        .mul(&c)
        .add(&pi.scale_i64(12).mul(&eta).mul(&mu.scale_i64(3).sub(&one)).mul(&s))
        .div(&pi4.scale_i64(1536));
    // β₂ = [−36πη(μ−1) cos2ζ + (36 − 69μ + 27μ² + 4μπ² − 12π²η²) sin2ζ]/(3072π⁵)
    let b2_poly = HPComplex::from_i64(36, prec)
        .sub(&mu.scale_i64(69))
        .add(&mu2.scale_i64(27))
        .add(&mu.mul(&pi2).scale_i64(4))
        .sub(&pi2.mul(&eta2).scale_i64(12));
    let b2 = pi
        .scale_i64(-36)
        .mul(&eta)
        .mul(&mu.sub(&one))
        .mul(&c)
        .add(&b2_poly.mul(&s))
        .div(&pi5.scale_i64(3072));

    vec![(a0, b0), (a1, b1), (a2, b2)]
}
