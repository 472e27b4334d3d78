//! Two-point Taylor expansions around `w = ±ic`.
//!
//! A function analytic at both points expands as
//!
//! * Standard flavor: `f(w) = Σ_k (a_k + w·b_k) (w² + c²)^k`,
//! * Tilde flavor:    `f(w) = Σ_k (a_k + w·b_k) ((w² + c²)/w²)^k`,
//!
//! with the coefficient pairs produced by a recursion that peels one factor
//! per step: `f_{k+1}(w) = (f_k(w) − a_k − w·b_k)/(w² + c²)`, the Tilde
//! variant multiplying each step by `w²` to absorb the extra denominator.
//! Derivatives at `±ic` are never formed symbolically; instead the caller
//! supplies local Taylor series of `f` at both points and the recursion
//! operates on those.

use crate::complex::HPComplex;
use crate::field::Coeff;
use crate::series::PowerSeries;
use crate::Result;

/// Which expansion family a [`TwoPointSeries`] represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoPointFlavor {
    /// Powers of `(w² + c²)`; convergent inside `|w| < c` overlap regions.
    Standard,
    /// Powers of `((w² + c²)/w²)`; asymptotic flavor.
    Tilde,
}

impl TwoPointFlavor {
    pub fn name(self) -> &'static str {
        match self {
            TwoPointFlavor::Standard => "standard",
            TwoPointFlavor::Tilde => "tilde",
        }
    }
}

/// Coefficient pairs `(a_k, b_k)` of a two-point expansion with centers `±ic`.
#[derive(Debug, Clone)]
pub struct TwoPointSeries {
    pub pairs: Vec<(HPComplex, HPComplex)>,
    /// The positive real half-distance `c` between the expansion points `±ic`.
    pub center: HPComplex,
    pub flavor: TwoPointFlavor,
}

impl TwoPointSeries {
    /// Resums the truncated expansion at a point `w`.
    pub fn eval(&self, w: &HPComplex) -> HPComplex {
        let prec = w.prec().max(self.center.prec());
        let w2c2 = w.mul(w).add(&self.center.mul(&self.center));
        let ratio = match self.flavor {
            TwoPointFlavor::Standard => w2c2,
            TwoPointFlavor::Tilde => w2c2.div(&w.mul(w)),
        };
        let mut acc = HPComplex::new(prec);
        let mut power = HPComplex::from_i64(1, prec);
        for (a, b) in &self.pairs {
            acc = acc.add(&a.add(&w.mul(b)).mul(&power));
            power = power.mul(&ratio);
        }
        acc
    }
}

/// Supplies the local Taylor series of the expanded function at `+ic`
/// (`upper = true`) or `−ic`, in the local variable `v = w ∓ ic`, to the
/// requested order.
pub trait LocalSeries {
    fn local_series(&self, upper: bool, order: usize) -> Result<PowerSeries<HPComplex>>;
    /// The half-distance `c` (the expansion points are `±ic`).
    fn center(&self) -> HPComplex;
}

/// Computes coefficient pairs `(a_0..a_K, b_0..b_K)` of the two-point
/// expansion of `f` by the peeling recursion, reading each pair off the
/// constant terms of the local series at `±ic`:
///
/// `a_k = (f_k(ic) + f_k(−ic))/2`, `b_k = (f_k(ic) − f_k(−ic))/(2ic)`.
///
/// The local series are built once at order `K + 2` and lose one order per
/// peeling step, which leaves a two-order cushion above the `K` steps.
pub fn two_point_expand(
    f: &dyn LocalSeries,
    flavor: TwoPointFlavor,
    k_max: usize,
    prec: u32,
) -> Result<TwoPointSeries> {
    let order = k_max + 2;
    let mut upper = f.local_series(true, order)?;
    let mut lower = f.local_series(false, order)?;
    let center = f.center();
    let i = HPComplex::i(prec);
    let w_upper = i.mul(&center);
    let w_lower = w_upper.neg();
    let two = HPComplex::from_i64(2, prec);
    let mut pairs = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let fu = upper.coeff(0).clone();
        let fl = lower.coeff(0).clone();
        let a = fu.add(&fl).div(&two);
        let b = fu.sub(&fl).div(&two.mul(&w_upper));
        pairs.push((a.clone(), b.clone()));
        if k == k_max {
            break;
        }
        upper = peel(&upper, &a, &b, &w_upper, flavor);
        lower = peel(&lower, &a, &b, &w_lower, flavor);
    }
    Ok(TwoPointSeries { pairs, center, flavor })
}

/// One recursion step on a local series at `w₀`: subtract `a + w·b`, divide
/// by `w² + c² = v (v + 2w₀)`, and for the Tilde flavor multiply back by
/// `w² = (w₀ + v)²`. Works in the local variable `v = w − w₀`.
fn peel(
    local: &PowerSeries<HPComplex>,
    a: &HPComplex,
    b: &HPComplex,
    w0: &HPComplex,
    flavor: TwoPointFlavor,
) -> PowerSeries<HPComplex> {
    let mut coeffs = local.coeffs().to_vec();
    // f − a − (w₀ + v)·b adjusts the constant and linear coefficients; the
    // constant becomes exactly zero analytically, so it is dropped by the
    // shift (its numerical residue is rounding noise).
    coeffs[0] = coeffs[0].sub(a).sub(&w0.mul(b));
    if coeffs.len() > 1 {
        coeffs[1] = coeffs[1].sub(b);
    }
    let shifted = PowerSeries::new(coeffs).shift_down();
    let divided = shifted.div_linear(&w0.scale_i64(2));
    match flavor {
        TwoPointFlavor::Standard => divided,
        TwoPointFlavor::Tilde => {
            // Multiply by (w₀ + v)² without changing the truncation order.
            let proto = divided.coeff(0).clone();
            let order = divided.order();
            let mut lin = PowerSeries::zero(&proto, order);
            let mut lin_coeffs = lin.coeffs().to_vec();
            lin_coeffs[0] = w0.clone();
            if order >= 1 {
                lin_coeffs[1] = proto.one_like();
            }
            lin = PowerSeries::new(lin_coeffs);
            divided.mul(&lin).mul(&lin)
        }
    }
}
