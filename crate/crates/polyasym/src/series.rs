//! Truncated power-series arithmetic over any [`Coeff`] field.
//!
//! A series of order `N` stores coefficients `c_0..c_N` of `s^0..s^N`.
//! Binary operations truncate to the smaller operand order; `log`, `exp`,
//! `pow`, and composition enforce their constant-term preconditions and
//! report violations as [`Error`](crate::Error) values.

use crate::field::Coeff;
use crate::{Error, Result};

/// A truncated Taylor series `Σ_{k=0}^{N} c_k s^k`.
#[derive(Debug, Clone)]
pub struct PowerSeries<F: Coeff> {
    coeffs: Vec<F>,
}

impl<F: Coeff> PowerSeries<F> {
    /// Builds a series from coefficients `c_0..c_N`; the list must be nonempty.
    pub fn new(coeffs: Vec<F>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant coefficient");
        PowerSeries { coeffs }
    }

    /// The zero series of the given order, shaped like `proto`.
    pub fn zero(proto: &F, order: usize) -> Self {
        PowerSeries { coeffs: vec![proto.zero_like(); order + 1] }
    }

    /// The constant series `c` of the given order.
    pub fn constant(c: &F, order: usize) -> Self {
        let mut coeffs = vec![c.zero_like(); order + 1];
        coeffs[0] = c.clone();
        PowerSeries { coeffs }
    }

    /// The identity series `s` of the given order (order ≥ 1).
    pub fn identity(proto: &F, order: usize) -> Self {
        assert!(order >= 1, "identity series needs order >= 1");
        let mut coeffs = vec![proto.zero_like(); order + 1];
        coeffs[1] = proto.one_like();
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &F {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    fn proto(&self) -> &F {
        &self.coeffs[0]
    }

    /// Truncates (or keeps) the series at the given order.
    pub fn truncate(&self, order: usize) -> Self {
        let take = (order + 1).min(self.coeffs.len());
        PowerSeries { coeffs: self.coeffs[..take].to_vec() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].add(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|k| self.coeffs[k].sub(&rhs.coeffs[k])).collect();
        PowerSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(Coeff::neg).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        PowerSeries { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Cauchy product truncated to the smaller operand order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let zero = self.proto().zero_like();
        let mut coeffs = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ConstantTermZero);
        }
        let n = self.order();
        let inv_c0 = c0.one_like().div(c0);
        let mut coeffs = vec![c0.zero_like(); n + 1];
        coeffs[0] = inv_c0.clone();
        for k in 1..=n {
            let mut acc = c0.zero_like();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&coeffs[k - j]));
            }
            coeffs[k] = acc.neg().mul(&inv_c0);
        }
        Ok(PowerSeries { coeffs })
    }

    /// Termwise derivative, one order lower.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries { coeffs: vec![self.proto().zero_like()] };
        }
        let coeffs = (1..=self.order())
            .map(|k| self.coeffs[k].mul(&self.proto().from_i64_like(k as i64)))
            .collect();
        PowerSeries { coeffs }
    }

    /// Termwise antiderivative with zero constant term, one order higher.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(self.proto().zero_like());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.div(&self.proto().from_i64_like(k as i64 + 1)));
        }
        PowerSeries { coeffs }
    }

    /// Series logarithm; requires constant term exactly one. Computed as
    /// `∫ a'/a`, so the result has zero constant term.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].sub(&self.proto().one_like()).is_zero() {
            return Err(Error::ConstantTermNotOne);
        }
        if self.order() == 0 {
            return Ok(PowerSeries { coeffs: vec![self.proto().zero_like()] });
        }
        let quotient = self.derivative().mul(&self.inverse()?.truncate(self.order() - 1));
        Ok(quotient.integrate())
    }

    /// Series exponential; requires constant term exactly zero.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero);
        }
        let n = self.order();
        let mut coeffs = vec![self.proto().zero_like(); n + 1];
        coeffs[0] = self.proto().one_like();
        for k in 1..=n {
            let mut acc = self.proto().zero_like();
            for j in 1..=k {
                let weighted = self.coeffs[j].mul(&self.proto().from_i64_like(j as i64));
                acc = acc.add(&weighted.mul(&coeffs[k - j]));
            }
            coeffs[k] = acc.div(&self.proto().from_i64_like(k as i64));
        }
        Ok(PowerSeries { coeffs })
    }

    /// General power `a^μ = c₀^μ · exp(μ · log(a/c₀))` with the field's
    /// principal value of `c₀^μ`. Requires a nonzero constant term; in the
    /// exact rational field the constant-term power must itself be exact.
    pub fn pow(&self, mu: &F) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::ConstantTermZero);
        }
        let c0_pow = c0
            .pow_value(mu)
            .ok_or_else(|| Error::IrrationalPower(format!("{c0:?} ^ {mu:?}")))?;
        // Normalize by direct division so the constant term is exactly one
        // even in rounded fields (c/c rounds to 1; c·(1/c) need not).
        let normalized = PowerSeries::new(self.coeffs.iter().map(|c| c.div(c0)).collect());
        let result = normalized.log()?.scale(mu).exp()?;
        Ok(result.scale(&c0_pow))
    }

    /// Composition `outer ∘ inner` by Horner accumulation. Requires
    /// `inner(0) = 0` and inner order ≥ outer order.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ConstantTermNotZero);
        }
        if inner.order() < self.order() {
            return Err(Error::ComposeOrder { outer: self.order(), inner: inner.order() });
        }
        let n = self.order();
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::constant(&self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Evaluates the truncated series at a point by Horner's rule.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = self.coeffs[self.order()].clone();
        for k in (0..self.order()).rev() {
            acc = acc.mul(x).add(&self.coeffs[k]);
        }
        acc
    }

    /// Shifts the series down by one power of `s` (exact division by `s`),
    /// discarding the constant term. The result is one order lower.
    pub fn shift_down(&self) -> Self {
        assert!(self.order() >= 1, "cannot shift a constant series down");
        PowerSeries { coeffs: self.coeffs[1..].to_vec() }
    }

    /// Divides by the linear factor `c0 + s` (c0 ≠ 0), same order.
    pub fn div_linear(&self, c0: &F) -> Self {
        assert!(!c0.is_zero(), "division by a linear factor with zero constant");
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        let mut prev: Option<F> = None;
        for c in &self.coeffs {
            let next = match prev {
                Some(ref p) => c.sub(p).div(c0),
                None => c.div(c0),
            };
            coeffs.push(next.clone());
            prev = Some(next);
        }
        PowerSeries { coeffs }
    }
}

/// The series `(e^s − 1)/s` with coefficients `1/(k+1)!`, the standard route
/// around the removable singularity of `s/(e^s − 1)` at the origin.
pub fn expm1_over_s<F: Coeff>(proto: &F, order: usize) -> PowerSeries<F> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut factorial = proto.one_like();
    for k in 0..=order {
        factorial = factorial.mul(&proto.from_i64_like(k as i64 + 1));
        coeffs.push(proto.one_like().div(&factorial));
    }
    PowerSeries::new(coeffs)
}

/// The exponential series `e^{cs} = Σ c^k s^k / k!`.
pub fn exp_series<F: Coeff>(c: &F, order: usize) -> PowerSeries<F> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = c.one_like();
    coeffs.push(term.clone());
    for k in 1..=order {
        term = term.mul(c).div(&c.from_i64_like(k as i64));
        coeffs.push(term.clone());
    }
    PowerSeries::new(coeffs)
}

impl<F: Coeff> Coeff for PowerSeries<F> {
    fn zero_like(&self) -> Self {
        PowerSeries::zero(self.proto(), self.order())
    }

    fn one_like(&self) -> Self {
        PowerSeries::constant(&self.proto().one_like(), self.order())
    }

    fn from_i64_like(&self, v: i64) -> Self {
        PowerSeries::constant(&self.proto().from_i64_like(v), self.order())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Coeff::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        PowerSeries::add(self, rhs)
    }

    fn sub(&self, rhs: &Self) -> Self {
        PowerSeries::sub(self, rhs)
    }

    fn mul(&self, rhs: &Self) -> Self {
        PowerSeries::mul(self, rhs)
    }

    fn div(&self, rhs: &Self) -> Self {
        let constant_divisor = rhs.coeffs.iter().skip(1).all(Coeff::is_zero);
        assert!(
            constant_divisor && !rhs.coeffs[0].is_zero(),
            "polynomial coefficients divide only by nonzero constants"
        );
        self.scale(&rhs.coeffs[0].one_like().div(&rhs.coeffs[0]))
    }

    fn neg(&self) -> Self {
        PowerSeries::neg(self)
    }

    fn pow_value(&self, exponent: &Self) -> Option<Self> {
        let self_constant = self.coeffs.iter().skip(1).all(Coeff::is_zero);
        let exp_constant = exponent.coeffs.iter().skip(1).all(Coeff::is_zero);
        if !self_constant || !exp_constant {
            return None;
        }
        let value = self.coeffs[0].pow_value(&exponent.coeffs[0])?;
        Some(PowerSeries::constant(&value, self.order()))
    }
}
