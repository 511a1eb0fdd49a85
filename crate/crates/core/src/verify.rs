//! Predictions, point counts and their comparison for the supported varieties.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cone_lq::alpha_star;
use crate::counter::{
    empirical_residue, enumerate_flag_sl3_total, enumerate_p1xp1, enumerate_projective,
    relative_gap, CountTable,
};
use crate::curve_zeta::{projective_line, CurveZeta};
use crate::eisenstein::theorem_lhs;
use crate::error::{Error, Result};
use crate::rational_fn::{q_string, ScaledLimit, Q};
use crate::root_system::{GroupSpec, RootSystem};
use crate::tamagawa::{
    beta, relative_error, tamagawa_closed, tamagawa_truncated, theta_star, TruncatedTau,
};

/// Truncation degree used by [`verify`] for the Euler product.
pub const VERIFY_TRUNCATION: u32 = 12;
pub const TAU_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variety {
    P1,
    P2,
    P1xP1,
    FL3,
}

impl Variety {
    pub fn group(self) -> GroupSpec {
        let s = match self {
            Variety::P1 => "A1",
            Variety::P2 | Variety::FL3 => "A2",
            Variety::P1xP1 => "A1xA1",
        };
        s.parse().expect("built-in group")
    }

    /// Simple roots of the Levi factor, 0-based.
    pub fn levi(self) -> Vec<usize> {
        match self {
            Variety::P2 => vec![1],
            _ => vec![],
        }
    }

    /// Allowed relative gap between the finite-difference estimate and the prediction.
    pub fn estimate_tolerance(self) -> f64 {
        match self {
            Variety::P1 => 0.01,
            Variety::P2 => 0.10,
            Variety::P1xP1 | Variety::FL3 => 0.25,
        }
    }

    /// Counts up to `max_degree`: per factor for `P1xP1`, in total degree for `FL3`.
    pub fn count(self, q: u64, max_degree: u32) -> Result<CountTable> {
        match self {
            Variety::P1 => enumerate_projective(1, q, max_degree),
            Variety::P2 => enumerate_projective(2, q, max_degree),
            Variety::P1xP1 => enumerate_p1xp1(q, max_degree, max_degree),
            Variety::FL3 => enumerate_flag_sl3_total(q, max_degree),
        }
    }
}

impl FromStr for Variety {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "P1" => Ok(Variety::P1),
            "P2" => Ok(Variety::P2),
            "P1XP1" => Ok(Variety::P1xP1),
            "FL3" => Ok(Variety::FL3),
            other => Err(Error::Config(format!(
                "unknown variety {other:?}; expected P1, P2, P1xP1 or FL3"
            ))),
        }
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variety::P1 => "P1",
            Variety::P2 => "P2",
            Variety::P1xP1 => "P1xP1",
            Variety::FL3 => "FL3",
        };
        f.write_str(s)
    }
}

/// Parses `"1,3"` (1-based simple roots, empty allowed) into 0-based indices.
pub fn parse_parabolic(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let i: usize = part
            .parse()
            .map_err(|_| Error::Config(format!("bad simple root index {part:?}")))?;
        if i == 0 {
            return Err(Error::Config("simple roots are numbered from 1".into()));
        }
        out.push(i - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn one_based(levi: &[usize]) -> Vec<usize> {
    levi.iter().map(|i| i + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prediction {
    pub group: String,
    pub parabolic: Vec<usize>,
    pub q: u64,
    pub genus: u32,
    #[serde(with = "q_string")]
    pub alpha_star: Q,
    #[serde(with = "q_string")]
    pub beta: Q,
    pub tau: ScaledLimit,
    pub theta_star: ScaledLimit,
    pub lhs: ScaledLimit,
    pub identity_holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncated_tau: Option<TruncatedTau>,
}

pub fn predict(
    curve: &CurveZeta,
    rs: &RootSystem,
    levi: &[usize],
    truncate: Option<u32>,
) -> Result<Prediction> {
    let pd = rs.parabolic_datum(levi)?;
    let theta = theta_star(curve, rs, levi)?;
    let lhs = theorem_lhs(curve, rs, levi)?;
    Ok(Prediction {
        group: rs.spec().to_string(),
        parabolic: one_based(&pd.levi),
        q: curve.q(),
        genus: curve.genus(),
        alpha_star: alpha_star(&pd),
        beta: beta(&pd),
        tau: tamagawa_closed(curve, rs, levi)?,
        identity_holds: theta == lhs,
        theta_star: theta,
        lhs,
        truncated_tau: truncate
            .map(|d| tamagawa_truncated(curve, rs, levi, d))
            .transpose()?,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalCheck {
    pub exact: Option<ScaledLimit>,
    pub exact_match: Option<bool>,
    pub estimate: f64,
    pub relative_error: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub variety: Variety,
    pub group: String,
    pub parabolic: Vec<usize>,
    pub q: u64,
    pub max_degree: u32,
    pub theta_star: ScaledLimit,
    pub lhs: ScaledLimit,
    pub identity_holds: bool,
    pub tau_truncated_relerr: f64,
    pub tau_truncated_tail: f64,
    pub empirical: EmpiricalCheck,
    pub warnings: Vec<String>,
    pub passed: bool,
}

/// Compares the Eisenstein side, the arithmetic side and the point counts
/// for one variety over `F_q(t)`.
pub fn verify(variety: Variety, q: u64, max_degree: u32) -> Result<VerifyReport> {
    let rs = RootSystem::new(variety.group())?;
    let levi = variety.levi();
    let curve = projective_line(q)?;
    let pd = rs.parabolic_datum(&levi)?;

    let theta = theta_star(&curve, &rs, &levi)?;
    let lhs = theorem_lhs(&curve, &rs, &levi)?;
    let closed_tau = tamagawa_closed(&curve, &rs, &levi)?;
    let truncated = tamagawa_truncated(&curve, &rs, &levi, VERIFY_TRUNCATION)?;
    let tau_err = relative_error(&truncated, &closed_tau)?;

    let table = variety.count(q, max_degree)?;
    let residue = empirical_residue(&table, &pd, q)?;
    let mut warnings = Vec::new();
    let exact_match = residue.exact.as_ref().map(|e| *e == theta);
    let relative = relative_gap(residue.estimate, &theta);
    let threshold = variety.estimate_tolerance();
    let empirical_ok = match exact_match {
        Some(m) => m,
        None => {
            warnings.push(format!(
                "no exact rational fit from {} coefficients; compared the float estimate instead",
                residue.coefficients
            ));
            relative <= threshold
        }
    };
    let identity = theta == lhs;
    let passed = identity && tau_err <= TAU_TOLERANCE && empirical_ok;

    Ok(VerifyReport {
        variety,
        group: rs.spec().to_string(),
        parabolic: one_based(&pd.levi),
        q,
        max_degree,
        theta_star: theta,
        lhs,
        identity_holds: identity,
        tau_truncated_relerr: tau_err,
        tau_truncated_tail: truncated.tail,
        empirical: EmpiricalCheck {
            exact: residue.exact,
            exact_match,
            estimate: residue.estimate,
            relative_error: relative,
            threshold,
            passed: empirical_ok,
        },
        warnings,
        passed,
    })
}
