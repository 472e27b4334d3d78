//! Shared parameters of the large-degree expansions.

use crate::complex::HPComplex;

/// The two polynomial families the crate computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Bernoulli,
    Euler,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bernoulli => "bernoulli",
            Family::Euler => "euler",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "bernoulli" | "b" => Ok(Family::Bernoulli),
            "euler" | "e" => Ok(Family::Euler),
            other => Err(format!("unknown family '{other}' (expected bernoulli or euler)")),
        }
    }
}

/// Degree, order, argument, and the derived phase quantities used by the
/// large-degree expansions:
///
/// * `ζ = (z − μ/2)π` for both families,
/// * `χ = 2ζ − nπ/2` (Bernoulli) or `χ = ζ − nπ/2` (Euler),
/// * `η = μ − 2z`.
#[derive(Debug, Clone)]
pub struct ExpansionParams {
    pub n: u32,
    pub mu: HPComplex,
    pub z: HPComplex,
    pub family: Family,
    pub zeta: HPComplex,
    pub chi: HPComplex,
    pub eta: HPComplex,
}

impl ExpansionParams {
    pub fn new(family: Family, n: u32, mu: &HPComplex, z: &HPComplex) -> Self {
        let prec = mu.prec().max(z.prec());
        let pi = HPComplex::pi(prec);
        let two = HPComplex::from_i64(2, prec);
        let zeta = z.sub(&mu.div(&two)).mul(&pi);
        let half_n_pi = pi.mul(&HPComplex::from_i64(i64::from(n), prec)).div(&two);
        let chi = match family {
            Family::Bernoulli => zeta.scale_i64(2).sub(&half_n_pi),
            Family::Euler => zeta.sub(&half_n_pi),
        };
        let eta = mu.sub(&z.mul(&two));
        ExpansionParams { n, mu: mu.clone(), z: z.clone(), family, zeta, chi, eta }
    }

    pub fn prec(&self) -> u32 {
        self.mu.prec().max(self.z.prec())
    }
}
