//! Arbitrary-precision generalized Bernoulli polynomials `B_n^μ(z)` and Euler
//! polynomials `E_n^μ(z)`, together with their large-degree approximations.
//!
//! The exact values come from truncated power-series arithmetic applied to the
//! generating functions
//!
//! ```text
//! w^μ e^{wz} / (e^w − 1)^μ = Σ B_n^μ(z) w^n / n!
//! 2^μ e^{wz} / (e^w + 1)^μ = Σ E_n^μ(z) w^n / n!
//! ```
//!
//! and serve as the oracle against which every approximation in
//! [`bernoulli`] and [`euler`] is measured: finite sums for negative integer
//! order, Fourier/residue expansions for positive integer order, loop-integral
//! (Watson) expansions for general order, and two-point Taylor expansions
//! around the dominant poles.
//!
//! Coefficient arithmetic is generic over [`field::Coeff`], with exact
//! rational, high-precision complex, and polynomial (series-in-`z`)
//! implementations.

pub mod approx;
pub mod bernoulli;
pub mod complex;
pub mod euler;
pub mod field;
pub mod gamma;
pub mod oracle;
pub mod params;
pub mod rational;
pub mod series;
pub mod twopoint;

use std::fmt;

/// Library crate version, exposed for reproducibility manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use approx::{ApproxValue, Confidence, Method, RegionCase};
pub use complex::HPComplex;
pub use params::{ExpansionParams, Family};
pub use rug::Rational;
pub use series::PowerSeries;
pub use twopoint::{TwoPointFlavor, TwoPointSeries};

/// Errors shared by the series engine, the oracle, and the expansion modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A series operation required a nonzero constant term.
    ConstantTermZero,
    /// `log` requires the constant term to be exactly one.
    ConstantTermNotOne,
    /// `exp` and composition require the (inner) constant term to be zero.
    ConstantTermNotZero,
    /// Composition needs the inner series order to be at least the outer order.
    ComposeOrder { outer: usize, inner: usize },
    /// Raising to this exponent is not representable in the exact rational field.
    IrrationalPower(String),
    /// The requested expansion is invalid at integer order; the message names
    /// the integer-order methods to use instead.
    IntegerOrder(String),
    /// A precondition on the parameter domain was violated.
    OutOfDomain(String),
    /// The inputs make the requested quantity undefined (e.g. a vanishing
    /// leading term or an undefined saddle point).
    DegenerateInput(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ConstantTermZero => write!(f, "series operation requires a nonzero constant term"),
            Error::ConstantTermNotOne => write!(f, "series logarithm requires constant term exactly 1"),
            Error::ConstantTermNotZero => {
                write!(f, "series exponential/composition requires constant term exactly 0")
            }
            Error::ComposeOrder { outer, inner } => write!(
                f,
                "composition needs inner order >= outer order (outer {outer}, inner {inner})"
            ),
            Error::IrrationalPower(msg) => write!(f, "exponent not representable exactly: {msg}"),
            Error::IntegerOrder(msg) => write!(f, "integer order not supported here: {msg}"),
            Error::OutOfDomain(msg) => write!(f, "parameter out of domain: {msg}"),
            Error::DegenerateInput(msg) => write!(f, "degenerate input: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Result alias for library operations.
pub type Result<T> = std::result::Result<T, Error>;
