//! Report bundles: a line-oriented config declares sweeps; each sweep writes
//! one CSV per method plus a shared markdown manifest.
//!
//! Everything written into the output directory is a pure function of the
//! config text (given a fixed environment): no timestamps, no absolute paths,
//! insertion-ordered sections. Rerunning the same config reproduces the
//! bundle byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use polyasym::{Family, Method};

use crate::output::{Cell, OutputFormat, Table};
use crate::run::{self, CliError};

/// One `[sweep]` section.
#[derive(Debug)]
pub struct Sweep {
    pub name: String,
    pub family: Family,
    pub methods: Vec<Method>,
    pub ns: Vec<u32>,
    pub mus: Vec<String>,
    pub zs: Vec<String>,
    pub terms: Option<u32>,
    pub precision: Option<u32>,
}

/// A parsed config: optional global precision plus the declared sweeps.
#[derive(Debug)]
pub struct ReportConfig {
    pub precision: Option<u32>,
    pub sweeps: Vec<Sweep>,
}

fn config_err(label: &str, line: usize, message: impl AsRef<str>) -> CliError {
    CliError::Usage(format!("{label}:{line}: {}", message.as_ref()))
}

#[derive(Default)]
struct SweepDraft {
    index: usize,
    name: Option<String>,
    family: Option<Family>,
    methods: Option<Vec<Method>>,
    ns: Option<Vec<u32>>,
    mus: Option<Vec<String>>,
    zs: Option<Vec<String>>,
    terms: Option<u32>,
    precision: Option<u32>,
}

impl SweepDraft {
    fn new(index: usize) -> Self {
        SweepDraft { index, ..SweepDraft::default() }
    }

    fn set(&mut self, key: &str, value: &str, label: &str, line: usize) -> Result<(), CliError> {
        match key {
            "name" => {
                let valid = !value.is_empty()
                    && value
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_');
                if !valid {
                    return Err(config_err(
                        label,
                        line,
                        format!("sweep name '{value}' must be nonempty [A-Za-z0-9_-]"),
                    ));
                }
                self.name = Some(value.to_string());
            }
            "family" => {
                self.family =
                    Some(value.parse::<Family>().map_err(|e| config_err(label, line, e))?);
            }
            "method" | "methods" => {
                self.methods = Some(
                    run::parse_methods(value)
                        .map_err(|e| config_err(label, line, e.message()))?,
                );
            }
            "n" => {
                let mut ns = Vec::new();
                for part in value.split(',') {
                    let n: u32 = part.trim().parse().map_err(|_| {
                        config_err(label, line, format!("bad degree '{}'", part.trim()))
                    })?;
                    ns.push(n);
                }
                self.merge_ns(ns, label, line)?;
            }
            "n-range" => {
                let ns =
                    run::parse_n_range(value).map_err(|e| config_err(label, line, e.message()))?;
                self.merge_ns(ns, label, line)?;
            }
            "mu" => self.mus = Some(Self::value_list("mu", value, label, line)?),
            "z" => self.zs = Some(Self::value_list("z", value, label, line)?),
            "terms" => {
                self.terms = Some(value.parse().map_err(|_| {
                    config_err(label, line, format!("terms must be an unsigned integer (got '{value}')"))
                })?);
            }
            "precision" => {
                self.precision = Some(value.parse().map_err(|_| {
                    config_err(label, line, format!("precision must be a bit count (got '{value}')"))
                })?);
            }
            other => {
                return Err(config_err(label, line, format!("unknown sweep key '{other}'")));
            }
        }
        Ok(())
    }

    fn merge_ns(&mut self, ns: Vec<u32>, label: &str, line: usize) -> Result<(), CliError> {
        if self.ns.is_some() {
            return Err(config_err(label, line, "give each sweep only one of n / n-range"));
        }
        self.ns = Some(ns);
        Ok(())
    }

    fn value_list(
        what: &str,
        value: &str,
        label: &str,
        line: usize,
    ) -> Result<Vec<String>, CliError> {
        let mut out = Vec::new();
        for part in value.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            // Validate now so malformed configs fail before any file is written.
            run::parse_param(what, part, 64).map_err(|e| config_err(label, line, e.message()))?;
            out.push(part.to_string());
        }
        if out.is_empty() {
            return Err(config_err(label, line, format!("{what} list is empty")));
        }
        Ok(out)
    }

    fn finish(self, label: &str) -> Result<Sweep, CliError> {
        let missing = |what: &str| {
            CliError::Usage(format!(
                "{label}: [sweep] #{} is missing '{what}'",
                self.index + 1
            ))
        };
        Ok(Sweep {
            name: self.name.unwrap_or_else(|| format!("sweep-{}", self.index + 1)),
            family: self.family.ok_or_else(|| missing("family"))?,
            methods: self.methods.ok_or_else(|| missing("methods"))?,
            ns: self.ns.ok_or_else(|| missing("n or n-range"))?,
            mus: self.mus.ok_or_else(|| missing("mu"))?,
            zs: self.zs.ok_or_else(|| missing("z"))?,
            terms: self.terms,
            precision: self.precision,
        })
    }
}

/// Parses the line-oriented config: `key = value` pairs, `#` comments, and
/// repeated `[sweep]` sections. Only `precision` may appear globally.
pub fn parse_config(text: &str, label: &str) -> Result<ReportConfig, CliError> {
    let mut config = ReportConfig { precision: None, sweeps: Vec::new() };
    let mut current: Option<SweepDraft> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "[sweep]" {
            if let Some(draft) = current.take() {
                config.sweeps.push(draft.finish(label)?);
            }
            current = Some(SweepDraft::new(config.sweeps.len()));
            continue;
        }
        if line.starts_with('[') {
            return Err(config_err(label, line_no, format!("unknown section '{line}'")));
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(config_err(label, line_no, "expected 'key = value'"));
        };
        let (key, value) = (key.trim(), value.trim());
        match current.as_mut() {
            None => match key {
                "precision" => {
                    config.precision = Some(value.parse().map_err(|_| {
                        config_err(
                            label,
                            line_no,
                            format!("precision must be a bit count (got '{value}')"),
                        )
                    })?);
                }
                other => {
                    return Err(config_err(
                        label,
                        line_no,
                        format!("unknown global key '{other}' (only 'precision' may appear before the first [sweep])"),
                    ));
                }
            },
            Some(draft) => draft.set(key, value, label, line_no)?,
        }
    }
    if let Some(draft) = current.take() {
        config.sweeps.push(draft.finish(label)?);
    }
    let mut seen = BTreeSet::new();
    for sweep in &config.sweeps {
        if !seen.insert(sweep.name.clone()) {
            return Err(CliError::Usage(format!(
                "{label}: duplicate sweep name '{}'",
                sweep.name
            )));
        }
    }
    Ok(config)
}

/// Least-squares slope of `y` against `x`; `None` below two distinct points.
fn log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for (x, y) in points {
        numerator += (x - mean_x) * (y - mean_y);
        denominator += (x - mean_x) * (x - mean_x);
    }
    if denominator == 0.0 {
        None
    } else {
        Some(numerator / denominator)
    }
}

struct MethodRun {
    file_name: String,
    rows: usize,
    errors: usize,
    /// One line per (mu, z) group: either a fitted slope or why there is none.
    fit_lines: Vec<String>,
}

fn run_sweep_method(
    sweep: &Sweep,
    method: Method,
    precision: u32,
    out_dir: &Path,
) -> Result<MethodRun, CliError> {
    let mut table = Table::new(vec![
        "n",
        "mu",
        "z",
        "value",
        "abs_err",
        "rel_err",
        "error_estimate",
        "terms_used",
        "error",
    ]);
    let mut errors = 0usize;
    let mut fit_lines = Vec::new();
    for mu_raw in &sweep.mus {
        let mu = run::parse_param("mu", mu_raw, precision)?;
        for z_raw in &sweep.zs {
            let z = run::parse_param("z", z_raw, precision)?;
            let mut fit_points: Vec<(f64, f64)> = Vec::new();
            for &n in &sweep.ns {
                let base = vec![
                    Cell::Int(i64::from(n)),
                    Cell::Text(mu_raw.clone()),
                    Cell::Text(z_raw.clone()),
                ];
                let reference = match run::oracle_outcome(sweep.family, n, &mu, &z, precision) {
                    Ok(r) => r,
                    Err(CliError::Domain(msg)) => {
                        errors += 1;
                        table.rows.push(error_row(base, format!("oracle: {msg}")));
                        continue;
                    }
                    Err(other) => return Err(other),
                };
                match run::evaluate(sweep.family, method, n, &mu, &z, sweep.terms, precision) {
                    Ok(outcome) => {
                        let (abs_cell, rel_cell, rel) = run::error_cells(&outcome, &reference);
                        if let Some(rel) = rel {
                            if n >= 1 && rel.is_finite() && rel > 0.0 {
                                fit_points.push((f64::from(n).log2(), rel.log2()));
                            }
                        }
                        let mut row = base;
                        row.extend([
                            Cell::Text(outcome.value_text()),
                            abs_cell,
                            rel_cell,
                            Cell::Text(run::fmt_float(&outcome.error_estimate)),
                            Cell::Int(i64::from(outcome.terms_used)),
                            Cell::Empty,
                        ]);
                        table.rows.push(row);
                    }
                    Err(CliError::Domain(msg)) => {
                        errors += 1;
                        table.rows.push(error_row(base, msg));
                    }
                    Err(other) => return Err(other),
                }
            }
            let fit = match log_slope(&fit_points) {
                Some(slope) => format!(
                    "slope {slope:.3} over {} points (log2 rel_err vs log2 n)",
                    fit_points.len()
                ),
                None => "not fitted (needs two points with nonzero error)".to_string(),
            };
            fit_lines.push(format!("rate fit (mu={mu_raw}, z={z_raw}): {fit}"));
        }
    }
    let file_name = format!("{}.{}.csv", sweep.name, method.name());
    let path = out_dir.join(&file_name);
    let rendered = table.render(OutputFormat::Csv);
    fs::write(&path, rendered)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(MethodRun { file_name, rows: table.rows.len(), errors, fit_lines })
}

fn error_row(mut base: Vec<Cell>, message: String) -> Vec<Cell> {
    base.extend([
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Text(message),
    ]);
    base
}

fn join_u32(values: &[u32]) -> String {
    values.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
}

/// Runs every sweep in `config_path` into `out_dir` and returns a one-line
/// summary for stdout. Per-point domain failures become CSV error rows and an
/// error count in the manifest; the exit stays 0.
pub fn run_report(config_path: &Path, out_dir: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(config_path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", config_path.display())))?;
    let label = config_path.display().to_string();
    let config = parse_config(&text, &label)?;
    fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", out_dir.display())))?;

    let default_precision = run::resolve_precision(config.precision)?;

    let mut manifest = String::new();
    let mut body = String::new();
    let mut total_rows = 0usize;
    let mut total_errors = 0usize;

    for sweep in &config.sweeps {
        let precision = match sweep.precision {
            Some(p) => run::resolve_precision(Some(p))?,
            None => default_precision,
        };
        let w = &mut body;
        writeln!(w, "## sweep {}\n", sweep.name).unwrap();
        writeln!(w, "- family: {}", sweep.family.name()).unwrap();
        let names: Vec<&str> = sweep.methods.iter().map(|m| m.name()).collect();
        writeln!(w, "- methods: {}", names.join(", ")).unwrap();
        writeln!(w, "- n: {}", join_u32(&sweep.ns)).unwrap();
        writeln!(w, "- mu: {}", sweep.mus.join(", ")).unwrap();
        writeln!(w, "- z: {}", sweep.zs.join(", ")).unwrap();
        match sweep.terms {
            Some(k) => writeln!(w, "- terms: {k}").unwrap(),
            None => writeln!(w, "- terms: method default").unwrap(),
        }
        writeln!(w, "- precision: {precision} bits\n").unwrap();
        for &method in &sweep.methods {
            let run = run_sweep_method(sweep, method, precision, out_dir)?;
            total_rows += run.rows;
            total_errors += run.errors;
            writeln!(w, "### {}\n", method.name()).unwrap();
            writeln!(w, "- file: {}", run.file_name).unwrap();
            writeln!(w, "- rows: {}", run.rows).unwrap();
            writeln!(w, "- errors: {}", run.errors).unwrap();
            for line in &run.fit_lines {
                writeln!(w, "- {line}").unwrap();
            }
            writeln!(w).unwrap();
        }
    }

    let w = &mut manifest;
    writeln!(w, "# polyasym report\n").unwrap();
    writeln!(
        w,
        "- generator: polyasym-cli {} (library {})",
        env!("CARGO_PKG_VERSION"),
        polyasym::VERSION
    )
    .unwrap();
    writeln!(w, "- default precision: {default_precision} bits").unwrap();
    writeln!(w, "- sweeps: {}", config.sweeps.len()).unwrap();
    writeln!(w, "- rows: {total_rows}").unwrap();
    writeln!(w, "- evaluation errors: {total_errors}").unwrap();
    writeln!(w, "\n## config\n").unwrap();
    writeln!(w, "```text").unwrap();
    for line in text.lines() {
        writeln!(w, "{line}").unwrap();
    }
    writeln!(w, "```\n").unwrap();
    manifest.push_str(&body);

    let manifest_path = out_dir.join("manifest.md");
    fs::write(&manifest_path, &manifest)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", manifest_path.display())))?;

    Ok(format!(
        "report: {} sweep(s), {} row(s), {} evaluation error(s) -> {}",
        config.sweeps.len(),
        total_rows,
        total_errors,
        out_dir.display()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# comment
precision = 128

[sweep]
name = demo
family = bernoulli
methods = finite-sum,oracle
n-range = 2:6:2
mu = -2
z = 5/2, 1/3
";

    #[test]
    fn parses_globals_sections_and_lists() {
        let config = parse_config(SAMPLE, "sample").unwrap();
        assert_eq!(config.precision, Some(128));
        assert_eq!(config.sweeps.len(), 1);
        let sweep = &config.sweeps[0];
        assert_eq!(sweep.name, "demo");
        assert_eq!(sweep.family, Family::Bernoulli);
        assert_eq!(sweep.ns, vec![2, 4, 6]);
        assert_eq!(sweep.mus, vec!["-2"]);
        assert_eq!(sweep.zs, vec!["5/2", "1/3"]);
        assert_eq!(sweep.terms, None);
    }

    #[test]
    fn rejects_malformed_configs() {
        assert!(parse_config("shrug = 1\n", "t").is_err());
        assert!(parse_config("[sweep]\nfamily = bernoulli\n", "t").is_err());
        assert!(parse_config("[sweep]\nfamily = klein\n", "t").is_err());
        assert!(parse_config("[sweep]\nnot a pair\n", "t").is_err());
        assert!(parse_config("[section]\n", "t").is_err());
        let dup = format!("{SAMPLE}\n[sweep]\nname = demo\nfamily = euler\nmethods = oracle\nn = 1\nmu = 1\nz = 0\n");
        assert!(parse_config(&dup, "t").is_err());
        // n and n-range together are ambiguous.
        assert!(parse_config(
            "[sweep]\nfamily = euler\nmethods = oracle\nn = 1\nn-range = 1:3:1\nmu = 1\nz = 0\n",
            "t"
        )
        .is_err());
    }

    #[test]
    fn empty_config_means_no_sweeps() {
        let config = parse_config("# nothing here\n", "t").unwrap();
        assert!(config.sweeps.is_empty());
        assert_eq!(config.precision, None);
    }

    #[test]
    fn slope_fits_exact_lines() {
        let points: Vec<(f64, f64)> = (1..=5).map(|i| (i as f64, -2.0 * i as f64 + 1.0)).collect();
        let slope = log_slope(&points).unwrap();
        assert!((slope + 2.0).abs() < 1e-12);
        assert!(log_slope(&points[..1]).is_none());
        assert!(log_slope(&[(1.0, 0.0), (1.0, 1.0)]).is_none());
    }
}
