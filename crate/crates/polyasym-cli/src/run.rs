//! Parameter handling and per-method evaluation behind the subcommands.
//!
//! Inputs stay in the exact rational field as long as possible: a real `--mu`
//! or `--z` is kept as a [`Rational`] alongside its complex rendering, so the
//! oracle and the finite sums can return exact fractions.

use std::str::FromStr;

use rug::Float;

use polyasym::complex::{working_precision, MIN_PRECISION};
use polyasym::rational::{as_i64, parse_rational};
use polyasym::{
    bernoulli, euler, oracle, ApproxValue, Confidence, Family, HPComplex, Method, Rational,
    TwoPointFlavor,
};

use crate::output::{Cell, Table};

/// Working precision in bits when neither `--precision` nor
/// `POLYASYM_PRECISION` is given.
pub const DEFAULT_PRECISION: u32 = 256;

/// Largest precision the harness accepts.
pub const MAX_PRECISION: u32 = 1 << 20;

/// Failures mapped onto process exit codes: usage 2, domain 3, I/O 4.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed flags, unparsable values, bad config files.
    Usage(String),
    /// Structurally valid request outside a method's parameter domain.
    Domain(String),
    /// Filesystem failures reading configs or writing outputs.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Domain(m) | CliError::Io(m) => m,
        }
    }
}

impl From<polyasym::Error> for CliError {
    fn from(e: polyasym::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Resolves the working precision: `--precision` wins over
/// `POLYASYM_PRECISION`, which wins over [`DEFAULT_PRECISION`].
pub fn resolve_precision(flag: Option<u32>) -> Result<u32, CliError> {
    let (value, source) = match flag {
        Some(p) => (p, "--precision"),
        None => match std::env::var("POLYASYM_PRECISION") {
            Ok(raw) => {
                let p = raw.trim().parse::<u32>().map_err(|_| {
                    CliError::Usage(format!(
                        "POLYASYM_PRECISION must be an unsigned bit count (got '{raw}')"
                    ))
                })?;
                (p, "POLYASYM_PRECISION")
            }
            Err(std::env::VarError::NotPresent) => return Ok(DEFAULT_PRECISION),
            Err(e) => return Err(CliError::Usage(format!("POLYASYM_PRECISION: {e}"))),
        },
    };
    if (MIN_PRECISION..=MAX_PRECISION).contains(&value) {
        Ok(value)
    } else {
        Err(CliError::Usage(format!(
            "{source} must be between {MIN_PRECISION} and {MAX_PRECISION} bits (got {value})"
        )))
    }
}

/// A scalar parameter: exact rational when the input text is real and exactly
/// representable, always available as a complex value at the target precision.
#[derive(Debug, Clone)]
pub struct ParamValue {
    pub text: String,
    pub rational: Option<Rational>,
    pub complex: HPComplex,
}

/// Parses `--mu`/`--z` style values: `"3/10"`, `"-2"`, `"0.25"`, `"1.5+0.25i"`.
pub fn parse_param(name: &str, input: &str, precision: u32) -> Result<ParamValue, CliError> {
    let text = input.trim().to_string();
    if let Some(r) = parse_rational(&text) {
        let complex = HPComplex::from_rational(&r, precision);
        return Ok(ParamValue { text, rational: Some(r), complex });
    }
    match HPComplex::parse(&text, precision) {
        Some(complex) => Ok(ParamValue { text, rational: None, complex }),
        None => Err(CliError::Usage(format!(
            "cannot parse --{name} '{input}' (expected a rational like 3/10, a decimal, or a complex value like 1.5+0.25i)"
        ))),
    }
}

/// Parses `--n-range A:B:step` into the inclusive list `A, A+step, ..., <= B`.
pub fn parse_n_range(s: &str) -> Result<Vec<u32>, CliError> {
    let err =
        || CliError::Usage(format!("--n-range must be A:B:step with A <= B and step >= 1 (got '{s}')"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let a: u32 = parts[0].trim().parse().map_err(|_| err())?;
    let b: u32 = parts[1].trim().parse().map_err(|_| err())?;
    let step: u32 = parts[2].trim().parse().map_err(|_| err())?;
    if step == 0 || b < a {
        return Err(err());
    }
    Ok((a..=b).step_by(step as usize).collect())
}

/// Parses a comma-separated method list, deduplicated and sorted by name (the
/// deterministic row order used by `compare` and `report`).
pub fn parse_methods(s: &str) -> Result<Vec<Method>, CliError> {
    let mut methods: Vec<Method> = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let method = Method::from_str(part).map_err(CliError::Usage)?;
        if !methods.contains(&method) {
            methods.push(method);
        }
    }
    if methods.is_empty() {
        return Err(CliError::Usage(
            "--methods needs at least one method name".to_string(),
        ));
    }
    methods.sort_by_key(|m| m.name());
    Ok(methods)
}

/// One evaluated point: the value (kept as an exact fraction when the whole
/// computation stayed rational) plus the producing method's accounting.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub value: HPComplex,
    pub exact: Option<Rational>,
    pub terms_used: u32,
    pub error_estimate: Float,
    pub confidence: Confidence,
}

impl Outcome {
    fn from_approx(a: ApproxValue) -> Self {
        Outcome {
            value: a.value,
            exact: None,
            terms_used: a.terms_used,
            error_estimate: a.error_estimate,
            confidence: a.confidence,
        }
    }

    fn exact_rational(r: Rational, terms_used: u32, precision: u32) -> Self {
        Outcome {
            value: HPComplex::from_rational(&r, precision),
            exact: Some(r),
            terms_used,
            error_estimate: Float::new(precision.max(MIN_PRECISION)),
            confidence: Confidence::Exact,
        }
    }

    /// Rendering for the `value` column: exact fraction when available,
    /// precision-derived decimal digits otherwise.
    pub fn value_text(&self) -> String {
        match &self.exact {
            Some(r) => r.to_string(),
            None => self.value.to_decimal_string(),
        }
    }
}

/// Short decimal rendering (6 significant digits) for error columns.
pub fn fmt_float(f: &Float) -> String {
    HPComplex::from_float(f.clone()).to_decimal_string_with(6)
}

/// Full precision-derived rendering for coefficient columns.
fn fmt_float_full(f: &Float) -> String {
    HPComplex::from_float(f.clone()).to_decimal_string()
}

fn integer_order(mu: &ParamValue) -> Option<i64> {
    match &mu.rational {
        Some(r) => as_i64(r),
        None => mu.complex.as_integer(),
    }
}

/// `mu = -m` with `m >= 0`, as the finite sums and the saddle estimate need.
fn nonpositive_order(mu: &ParamValue, what: &str) -> Result<u32, CliError> {
    match integer_order(mu) {
        Some(v) if v <= 0 => Ok(u32::try_from(-v).expect("nonnegative")),
        _ => Err(CliError::Domain(format!(
            "{what} requires integer order mu = -m with m >= 0 (got mu = {})",
            mu.text
        ))),
    }
}

/// `mu = m` with `m >= 1`, as the pole series need.
fn positive_order(mu: &ParamValue, what: &str) -> Result<u32, CliError> {
    match integer_order(mu) {
        Some(v) if v >= 1 => Ok(u32::try_from(v).expect("positive")),
        _ => Err(CliError::Domain(format!(
            "{what} requires integer order mu = m >= 1 (got mu = {})",
            mu.text
        ))),
    }
}

/// The exact generating-series value `B_n^mu(z)` or `E_n^mu(z)`; stays in the
/// rational field whenever both parameters are rational.
pub fn oracle_outcome(
    family: Family,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    precision: u32,
) -> Result<Outcome, CliError> {
    if let (Some(mr), Some(zr)) = (&mu.rational, &z.rational) {
        let values = match family {
            Family::Bernoulli => oracle::bernoulli_values(n as usize, mr, zr)?,
            Family::Euler => oracle::euler_values(n as usize, mr, zr)?,
        };
        let value = values.into_iter().nth(n as usize).expect("oracle returns n+1 values");
        return Ok(Outcome::exact_rational(value, 0, precision));
    }
    let wp = working_precision(precision, n);
    let muc = mu.complex.rounded(wp);
    let zc = z.complex.rounded(wp);
    let values = match family {
        Family::Bernoulli => oracle::bernoulli_values(n as usize, &muc, &zc)?,
        Family::Euler => oracle::euler_values(n as usize, &muc, &zc)?,
    };
    let value = values.into_iter().nth(n as usize).expect("oracle returns n+1 values");
    Ok(Outcome {
        value: value.rounded(precision),
        exact: None,
        terms_used: 0,
        error_estimate: Float::new(precision.max(MIN_PRECISION)),
        confidence: Confidence::Exact,
    })
}

fn finite_sum_outcome(
    family: Family,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    precision: u32,
) -> Result<Outcome, CliError> {
    let m = nonpositive_order(mu, "finite-sum")?;
    if let Some(zr) = &z.rational {
        let value = match family {
            Family::Bernoulli => oracle::bernoulli_neg_int(n as usize, m as usize, zr),
            Family::Euler => oracle::euler_neg_int(n as usize, m as usize, zr),
        };
        return Ok(Outcome::exact_rational(value, m + 1, precision));
    }
    let zc = z.complex.rounded(working_precision(precision, n));
    let value = match family {
        Family::Bernoulli => oracle::bernoulli_neg_int(n as usize, m as usize, &zc),
        Family::Euler => oracle::euler_neg_int(n as usize, m as usize, &zc),
    };
    Ok(Outcome {
        value: value.rounded(precision),
        exact: None,
        terms_used: m + 1,
        error_estimate: Float::new(precision.max(MIN_PRECISION)),
        confidence: Confidence::Exact,
    })
}

fn fourier_outcome(
    family: Family,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    terms: Option<u32>,
    precision: u32,
) -> Result<Outcome, CliError> {
    let m = positive_order(mu, "fourier")?;
    let zc = z.complex.rounded(precision);
    let k_max = terms.unwrap_or(16);
    let approx = match (family, m) {
        (Family::Bernoulli, 1) => bernoulli::fourier_b1(n, &zc, k_max)?,
        (Family::Bernoulli, _) => bernoulli::fourier_bm(n, m, &zc, k_max)?,
        (Family::Euler, 1) => euler::fourier_e1(n, &zc, k_max)?,
        (Family::Euler, _) => euler::fourier_em(n, m, &zc, k_max)?,
    };
    Ok(Outcome::from_approx(approx))
}

fn twopoint_outcome(
    family: Family,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    terms: Option<u32>,
    flavor: TwoPointFlavor,
    precision: u32,
) -> Result<Outcome, CliError> {
    let k_max = terms.unwrap_or(12);
    let approx = match family {
        Family::Bernoulli => {
            bernoulli::twopoint_expansion(n, &mu.complex, &z.complex, k_max, flavor, precision)?
        }
        Family::Euler => {
            euler::twopoint_expansion(n, &mu.complex, &z.complex, k_max, flavor, precision)?
        }
    };
    Ok(Outcome::from_approx(approx))
}

/// Evaluates one (family, method, n, mu, z) point.
pub fn evaluate(
    family: Family,
    method: Method,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    terms: Option<u32>,
    precision: u32,
) -> Result<Outcome, CliError> {
    match method {
        Method::Oracle => oracle_outcome(family, n, mu, z, precision),
        Method::FiniteSum => finite_sum_outcome(family, n, mu, z, precision),
        Method::Fourier => fourier_outcome(family, n, mu, z, terms, precision),
        Method::Watson => {
            let k_max = terms.unwrap_or(3);
            let approx = match family {
                Family::Bernoulli => {
                    bernoulli::watson_expansion(n, &mu.complex, &z.complex, k_max, precision)?
                }
                Family::Euler => {
                    euler::watson_expansion(n, &mu.complex, &z.complex, k_max, precision)?
                }
            };
            Ok(Outcome::from_approx(approx))
        }
        Method::TwoPoint => {
            twopoint_outcome(family, n, mu, z, terms, TwoPointFlavor::Standard, precision)
        }
        Method::TwoPointTilde => {
            twopoint_outcome(family, n, mu, z, terms, TwoPointFlavor::Tilde, precision)
        }
        Method::Saddle => {
            if family == Family::Euler {
                return Err(CliError::Domain(
                    "the saddle-point estimate is only available for the bernoulli family"
                        .to_string(),
                ));
            }
            let m = nonpositive_order(mu, "saddle")?;
            let zc = z.complex.rounded(precision);
            let approx = oracle::saddle_estimate_neg_int(n as usize, m as usize, &zc)?;
            Ok(Outcome::from_approx(approx))
        }
        Method::LeadingForm => {
            let m = nonpositive_order(mu, "leading-form")?;
            let zc = z.complex.rounded(precision);
            let approx = match family {
                Family::Bernoulli => bernoulli::neg_int_leading(n, m, &zc)?,
                Family::Euler => euler::neg_int_leading(n, m, &zc)?,
            };
            Ok(Outcome::from_approx(approx))
        }
    }
}

/// Absolute and relative error cells of `outcome` against `reference`.
///
/// Exact values that agree as rationals print literal zeros; a zero reference
/// leaves the relative column empty rather than dividing by zero.
pub fn error_cells(outcome: &Outcome, reference: &Outcome) -> (Cell, Cell, Option<f64>) {
    if let (Some(a), Some(b)) = (&outcome.exact, &reference.exact) {
        if a == b {
            return (Cell::Text("0".to_string()), Cell::Text("0".to_string()), Some(0.0));
        }
    }
    let diff = outcome.value.sub(&reference.value).abs();
    let abs_cell = Cell::Text(fmt_float(&diff));
    let ref_abs = reference.value.abs();
    if ref_abs.is_zero() {
        return (abs_cell, Cell::Empty, None);
    }
    let prec = diff.prec().max(ref_abs.prec());
    let rel = Float::with_val(prec, &diff / &ref_abs);
    let rel_f64 = rel.to_f64();
    (abs_cell, Cell::Text(fmt_float(&rel)), Some(rel_f64))
}

/// `eval`: a single-row table with the five reporting columns.
pub fn eval_table(
    family: Family,
    method: Method,
    n: u32,
    mu: &ParamValue,
    z: &ParamValue,
    terms: Option<u32>,
    precision: u32,
) -> Result<Table, CliError> {
    let outcome = evaluate(family, method, n, mu, z, terms, precision)?;
    let mut table = Table::new(vec!["value", "method", "terms_used", "error_estimate", "confidence"]);
    table.rows.push(vec![
        Cell::Text(outcome.value_text()),
        Cell::Text(method.name().to_string()),
        Cell::Int(i64::from(outcome.terms_used)),
        Cell::Text(fmt_float(&outcome.error_estimate)),
        Cell::Text(outcome.confidence.name().to_string()),
    ]);
    Ok(table)
}

/// `compare`: one row per (n, method), n ascending then method name ascending,
/// with errors measured against the exact oracle.
pub fn compare_table(
    family: Family,
    ns: &[u32],
    mu: &ParamValue,
    z: &ParamValue,
    methods: &[Method],
    terms: Option<u32>,
    precision: u32,
) -> Result<Table, CliError> {
    let mut table = Table::new(vec![
        "n",
        "method",
        "value",
        "abs_err",
        "rel_err",
        "error_estimate",
        "terms_used",
    ]);
    for &n in ns {
        let reference = oracle_outcome(family, n, mu, z, precision)?;
        for &method in methods {
            let outcome = evaluate(family, method, n, mu, z, terms, precision)?;
            let (abs_cell, rel_cell, _) = error_cells(&outcome, &reference);
            table.rows.push(vec![
                Cell::Int(i64::from(n)),
                Cell::Text(method.name().to_string()),
                Cell::Text(outcome.value_text()),
                abs_cell,
                rel_cell,
                Cell::Text(fmt_float(&outcome.error_estimate)),
                Cell::Int(i64::from(outcome.terms_used)),
            ]);
        }
    }
    Ok(table)
}

/// Which coefficient table `coeffs --kind` dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    /// Loop-expansion coefficients, Bernoulli family.
    G,
    /// Loop-expansion coefficients, Euler family.
    H,
    /// Two-point cosine-side coefficients, Bernoulli family.
    Alpha,
    /// Two-point sine-side coefficients, Bernoulli family.
    Beta,
    /// Two-point cosine-side coefficients, Euler family.
    Gamma,
    /// Two-point sine-side coefficients, Euler family.
    Delta,
    /// Residue-sum coefficients of the integer-order Bernoulli pole series,
    /// with the closed form checked against the recurrence construction.
    BetaResidue,
    /// Residue-sum coefficients of the integer-order Euler pole series.
    Epsilon,
}

impl CoeffKind {
    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::G => "g",
            CoeffKind::H => "h",
            CoeffKind::Alpha => "alpha",
            CoeffKind::Beta => "beta",
            CoeffKind::Gamma => "gamma",
            CoeffKind::Delta => "delta",
            CoeffKind::BetaResidue => "beta-residue",
            CoeffKind::Epsilon => "epsilon",
        }
    }

    pub fn family(self) -> Family {
        match self {
            CoeffKind::G | CoeffKind::Alpha | CoeffKind::Beta | CoeffKind::BetaResidue => {
                Family::Bernoulli
            }
            CoeffKind::H | CoeffKind::Gamma | CoeffKind::Delta | CoeffKind::Epsilon => {
                Family::Euler
            }
        }
    }
}

impl FromStr for CoeffKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(CoeffKind::G),
            "h" => Ok(CoeffKind::H),
            "alpha" => Ok(CoeffKind::Alpha),
            "beta" => Ok(CoeffKind::Beta),
            "gamma" => Ok(CoeffKind::Gamma),
            "delta" => Ok(CoeffKind::Delta),
            "beta-residue" => Ok(CoeffKind::BetaResidue),
            "epsilon" => Ok(CoeffKind::Epsilon),
            other => Err(format!(
                "unknown coefficient kind '{other}' (expected g, h, alpha, beta, gamma, delta, beta-residue, or epsilon)"
            )),
        }
    }
}

/// Rows `k, re, im, closed_form_residual` for coefficients that have reference
/// closed forms over the leading indices; the residual column is left empty
/// past the tabulated range.
fn coeff_rows(coeffs: &[HPComplex], reference: &[HPComplex]) -> Table {
    let mut table = Table::new(vec!["k", "re", "im", "closed_form_residual"]);
    for (k, c) in coeffs.iter().enumerate() {
        let residual = if k < reference.len() {
            Cell::Text(fmt_float(&c.sub(&reference[k]).abs()))
        } else {
            Cell::Empty
        };
        table.rows.push(vec![
            Cell::Int(k as i64),
            Cell::Text(fmt_float_full(c.real())),
            Cell::Text(fmt_float_full(c.imag())),
            residual,
        ]);
    }
    table
}

fn require_n(n: Option<u32>, kind: CoeffKind) -> Result<u32, CliError> {
    n.ok_or_else(|| {
        CliError::Usage(format!(
            "kind '{}' needs --n: these coefficients depend on the degree",
            kind.name()
        ))
    })
}

/// `coeffs`: dumps the selected coefficient table with `k = 0..=k_max`.
pub fn coeffs_table(
    family: Family,
    kind: CoeffKind,
    mu: &ParamValue,
    z: &ParamValue,
    n: Option<u32>,
    k_max: u32,
    precision: u32,
) -> Result<Table, CliError> {
    if kind.family() != family {
        return Err(CliError::Usage(format!(
            "coefficient kind '{}' belongs to the {} family",
            kind.name(),
            kind.family().name()
        )));
    }
    match kind {
        CoeffKind::G => {
            let coeffs = bernoulli::watson_g_coeffs(&mu.complex, &z.complex, k_max, precision)?;
            let reference = bernoulli::g_reference_forms(&mu.complex, &z.complex);
            Ok(coeff_rows(&coeffs, &reference))
        }
        CoeffKind::H => {
            let coeffs = euler::watson_h_coeffs(&mu.complex, &z.complex, k_max, precision)?;
            let reference = euler::h_reference_forms(&mu.complex, &z.complex);
            Ok(coeff_rows(&coeffs, &reference))
        }
        CoeffKind::Alpha | CoeffKind::Beta | CoeffKind::Gamma | CoeffKind::Delta => {
            let (pairs, refs) = match family {
                Family::Bernoulli => (
                    bernoulli::twopoint_pairs(
                        &mu.complex,
                        &z.complex,
                        k_max,
                        TwoPointFlavor::Standard,
                        precision,
                    )?,
                    bernoulli::two_point_reference_forms(&mu.complex, &z.complex),
                ),
                Family::Euler => (
                    euler::twopoint_pairs(
                        &mu.complex,
                        &z.complex,
                        k_max,
                        TwoPointFlavor::Standard,
                        precision,
                    )?,
                    euler::two_point_reference_forms(&mu.complex, &z.complex),
                ),
            };
            let cosine_side = matches!(kind, CoeffKind::Alpha | CoeffKind::Gamma);
            let pick = |pair: &(HPComplex, HPComplex)| {
                if cosine_side { pair.0.clone() } else { pair.1.clone() }
            };
            let coeffs: Vec<HPComplex> = pairs.iter().map(pick).collect();
            let reference: Vec<HPComplex> = refs.iter().map(pick).collect();
            Ok(coeff_rows(&coeffs, &reference))
        }
        CoeffKind::BetaResidue => {
            let n = require_n(n, kind)?;
            let m = positive_order(mu, "beta-residue coefficients")?;
            let zc = z.complex.rounded(precision);
            let mut table = Table::new(vec!["k", "re", "im", "closed_form_residual"]);
            // The residue sum runs over the nonzero pole indices; the mirrored
            // k < 0 coefficients are recovered by conjugation for real z, so
            // the table lists the positive side.
            for k in 1..=i64::from(k_max) {
                let closed = bernoulli::beta_coeff(m, n, &zc, k)?;
                let recurrence = bernoulli::beta_coeff_recurrence(m, n, &zc, k)?;
                let residual = closed.sub(&recurrence).abs();
                table.rows.push(vec![
                    Cell::Int(k),
                    Cell::Text(fmt_float_full(closed.real())),
                    Cell::Text(fmt_float_full(closed.imag())),
                    Cell::Text(fmt_float(&residual)),
                ]);
            }
            Ok(table)
        }
        CoeffKind::Epsilon => {
            let n = require_n(n, kind)?;
            let m = positive_order(mu, "epsilon coefficients")?;
            let zc = z.complex.rounded(precision);
            let mut table = Table::new(vec!["k", "re", "im"]);
            for k in 0..=i64::from(k_max) {
                let value = euler::epsilon_coeff(m, n, &zc, k)?;
                table.rows.push(vec![
                    Cell::Int(k),
                    Cell::Text(fmt_float_full(value.real())),
                    Cell::Text(fmt_float_full(value.imag())),
                ]);
            }
            Ok(table)
        }
    }
}
