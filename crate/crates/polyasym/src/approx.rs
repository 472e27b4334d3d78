//! The unit of exchange between approximation methods and the comparison
//! harness, plus the region classification for negative-integer-order leading
//! forms.

use std::fmt;

use rug::Float;

use crate::complex::HPComplex;

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Oracle,
    FiniteSum,
    Fourier,
    Watson,
    TwoPoint,
    TwoPointTilde,
    Saddle,
    LeadingForm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::FiniteSum => "finite-sum",
            Method::Fourier => "fourier",
            Method::Watson => "watson",
            Method::TwoPoint => "twopoint",
            Method::TwoPointTilde => "twopoint-tilde",
            Method::Saddle => "saddle",
            Method::LeadingForm => "leading-form",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" => Ok(Method::Oracle),
            "finite-sum" => Ok(Method::FiniteSum),
            "fourier" => Ok(Method::Fourier),
            "watson" => Ok(Method::Watson),
            "twopoint" => Ok(Method::TwoPoint),
            "twopoint-tilde" => Ok(Method::TwoPointTilde),
            "saddle" => Ok(Method::Saddle),
            "leading-form" => Ok(Method::LeadingForm),
            other => Err(format!(
                "unknown method '{other}' (expected oracle, finite-sum, fourier, watson, twopoint, twopoint-tilde, or saddle)"
            )),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How much the error estimate can be trusted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Confidence {
    /// The value is exact (finite sum or exact series oracle).
    Exact,
    /// The series converges; adding terms reaches any accuracy.
    Convergent,
    /// Divergent expansion: the estimate is of the order of the first
    /// omitted term, optimal truncation applies.
    Asymptotic,
}

impl Confidence {
    pub fn name(self) -> &'static str {
        match self {
            Confidence::Exact => "exact",
            Confidence::Convergent => "convergent",
            Confidence::Asymptotic => "asymptotic",
        }
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An approximation result with its provenance and error metadata.
#[derive(Debug, Clone)]
pub struct ApproxValue {
    pub value: HPComplex,
    pub method: Method,
    pub terms_used: u32,
    /// Magnitude of the first omitted (nonzero) term, or 0 for exact values.
    pub error_estimate: Float,
    pub confidence: Confidence,
}

impl ApproxValue {
    pub fn exact(value: HPComplex, method: Method) -> Self {
        let prec = value.prec();
        ApproxValue {
            value,
            method,
            terms_used: 0,
            error_estimate: Float::new(prec),
            confidence: Confidence::Exact,
        }
    }
}

/// Which end of the finite sum dominates for negative integer order `−m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionCase {
    /// `Re(z) > −m/2`: the `r = m` term dominates.
    UpperDominant,
    /// `Re(z) = −m/2`: the `r = 0` and `r = m` terms dominate jointly.
    Boundary,
    /// `Re(z) < −m/2`: the `r = 0` term dominates.
    LowerDominant,
}

impl RegionCase {
    pub fn name(self) -> &'static str {
        match self {
            RegionCase::UpperDominant => "upper-dominant",
            RegionCase::Boundary => "boundary",
            RegionCase::LowerDominant => "lower-dominant",
        }
    }
}

/// Classifies `Re(z)` against `−m/2`, treating `|Re(z) + m/2| ≤ 2^{−p/2}`
/// as on the boundary (exact boundaries are measure-zero in floating input).
pub fn region_classify(m: u32, z: &HPComplex) -> RegionCase {
    let prec = z.prec();
    let shifted = Float::with_val(prec, z.real() + Float::with_val(prec, f64::from(m) / 2.0));
    let tol = Float::with_val(prec, Float::i_exp(1, -i32::try_from(prec / 2).unwrap_or(i32::MAX)));
    let abs_shifted = shifted.clone().abs();
    if abs_shifted <= tol {
        RegionCase::Boundary
    } else if shifted > 0 {
        RegionCase::UpperDominant
    } else {
        RegionCase::LowerDominant
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_cases() {
        let prec = 128;
        let z = |v: f64| HPComplex::from_f64(v, 0.0, prec);
        assert_eq!(region_classify(2, &z(1.0)), RegionCase::UpperDominant);
        assert_eq!(region_classify(2, &z(-1.0)), RegionCase::Boundary);
        assert_eq!(region_classify(2, &z(-3.0)), RegionCase::LowerDominant);
        // Near-boundary within 2^{−p/2} counts as boundary.
        let near = HPComplex::from_f64(-1.0 + 1e-25, 0.0, prec);
        assert_eq!(region_classify(2, &near), RegionCase::Boundary);
        // Imaginary part does not affect the classification.
        let complex_z = HPComplex::from_f64(0.25, 7.0, prec);
        assert_eq!(region_classify(1, &complex_z), RegionCase::UpperDominant);
    }
}
