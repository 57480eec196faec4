use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Every identity the checker knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IdentityId {
    #[serde(rename = "euler-identity")]
    EulerIdentity,
    #[serde(rename = "thm29")]
    Thm29,
    #[serde(rename = "ramanujan47")]
    Ramanujan47,
    #[serde(rename = "eta-modular")]
    EtaModular,
    #[serde(rename = "theta-modular")]
    ThetaModular,
    #[serde(rename = "triple-product")]
    TripleProduct,
    #[serde(rename = "stokes28")]
    Stokes28,
    #[serde(rename = "reflection34")]
    Reflection34,
    #[serde(rename = "lambert67")]
    Lambert67,
    #[serde(rename = "lambert68")]
    Lambert68,
    #[serde(rename = "lambert71")]
    Lambert71,
    #[serde(rename = "lambert72")]
    Lambert72,
    #[serde(rename = "binet74")]
    Binet74,
    #[serde(rename = "binet75")]
    Binet75,
    #[serde(rename = "M-pv")]
    MPv,
}

impl IdentityId {
    pub const ALL: [IdentityId; 15] = [
        Self::EulerIdentity,
        Self::Thm29,
        Self::Ramanujan47,
        Self::EtaModular,
        Self::ThetaModular,
        Self::TripleProduct,
        Self::Stokes28,
        Self::Reflection34,
        Self::Lambert67,
        Self::Lambert68,
        Self::Lambert71,
        Self::Lambert72,
        Self::Binet74,
        Self::Binet75,
        Self::MPv,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::EulerIdentity => "euler-identity",
            Self::Thm29 => "thm29",
            Self::Ramanujan47 => "ramanujan47",
            Self::EtaModular => "eta-modular",
            Self::ThetaModular => "theta-modular",
            Self::TripleProduct => "triple-product",
            Self::Stokes28 => "stokes28",
            Self::Reflection34 => "reflection34",
            Self::Lambert67 => "lambert67",
            Self::Lambert68 => "lambert68",
            Self::Lambert71 => "lambert71",
            Self::Lambert72 => "lambert72",
            Self::Binet74 => "binet74",
            Self::Binet75 => "binet75",
            Self::MPv => "M-pv",
        }
    }

    /// Default pass threshold: sums-only identities are held to 1e-10 or tighter,
    /// single-quadrature identities to 1e-8, derivative-of-quadrature ones to 1e-6/1e-7.
    pub fn default_tolerance(self) -> f64 {
        match self {
            Self::EulerIdentity | Self::TripleProduct => 1e-11,
            Self::EtaModular | Self::ThetaModular | Self::Lambert72 => 1e-10,
            Self::Reflection34 | Self::Binet74 | Self::Binet75 => 1e-10,
            Self::Stokes28 => 1e-9,
            Self::Thm29 | Self::Ramanujan47 => 1e-8,
            Self::Lambert71 => 1e-7,
            Self::Lambert67 | Self::Lambert68 | Self::MPv => 1e-6,
        }
    }

    /// Whether the pass test uses the absolute residual. Additive identities (integrals,
    /// logarithms, sums) are judged absolutely, multiplicative ones relatively.
    pub fn absolute(self) -> bool {
        matches!(self, Self::Stokes28 | Self::Reflection34 | Self::Binet74 | Self::Binet75 | Self::MPv)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| Error::domain(format!("unknown identity '{s}'")))
    }
}

/// The input of one check. Only the fields an identity uses are set.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct CheckInput {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Complex64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
}

impl CheckInput {
    pub fn tau_nu(tau: Complex64, nu: Complex64) -> Self {
        Self { tau: Some(tau), nu: Some(nu), ..Self::default() }
    }

    pub fn tau_only(tau: Complex64) -> Self {
        Self { tau: Some(tau), ..Self::default() }
    }

    pub fn x_q(x: Complex64, q: Complex64) -> Self {
        Self { x: Some(x), q: Some(q), ..Self::default() }
    }

    pub fn lambda(lambda: Complex64) -> Self {
        Self { lambda: Some(lambda), ..Self::default() }
    }

    pub fn alpha_xi(alpha: f64, xi: f64) -> Self {
        Self { alpha: Some(alpha), xi: Some(xi), ..Self::default() }
    }
}

impl fmt::Display for CheckInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let cx = |name: &str, z: Complex64| format!("{name}=({:e},{:e})", z.re, z.im);
        if let Some(z) = self.tau {
            parts.push(cx("tau", z));
        }
        if let Some(z) = self.nu {
            parts.push(cx("nu", z));
        }
        if let Some(z) = self.x {
            parts.push(cx("x", z));
        }
        if let Some(z) = self.q {
            parts.push(cx("q", z));
        }
        if let Some(z) = self.lambda {
            parts.push(cx("lambda", z));
        }
        if let Some(a) = self.alpha {
            parts.push(format!("alpha={a:e}"));
        }
        if let Some(a) = self.xi {
            parts.push(format!("xi={a:e}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The input lies outside the identity's domain.
    Skip,
}

/// Both sides of an identity at one input, with residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_id: IdentityId,
    pub input: CheckInput,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_residual: f64,
    /// `|lhs - rhs| / max(|lhs|, |rhs|, 1e-300)`.
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResidualReport {
    /// Compares `lhs` and `rhs`. Relative identities fall back to the absolute residual
    /// when both sides are below `1e-8`.
    pub fn compare(id: IdentityId, input: CheckInput, lhs: Complex64, rhs: Complex64, tolerance: f64) -> Self {
        let abs_residual = (lhs - rhs).norm();
        let rel_residual = abs_residual / lhs.norm().max(rhs.norm()).max(1e-300);
        let tiny = lhs.norm() < 1e-8 && rhs.norm() < 1e-8;
        let measure = if id.absolute() || tiny { abs_residual } else { rel_residual };
        let pass = measure <= tolerance;
        Self {
            identity_id: id,
            input,
            lhs,
            rhs,
            abs_residual,
            rel_residual,
            tolerance,
            pass,
            status: if pass { Status::Pass } else { Status::Fail },
            note: None,
        }
    }

    pub fn skipped(id: IdentityId, input: CheckInput, tolerance: f64, reason: impl Into<String>) -> Self {
        let zero = Complex64::new(0.0, 0.0);
        Self {
            identity_id: id,
            input,
            lhs: zero,
            rhs: zero,
            abs_residual: 0.0,
            rel_residual: 0.0,
            tolerance,
            pass: false,
            status: Status::Skip,
            note: Some(reason.into()),
        }
    }

    /// A failed evaluation (for instance quadrature non-convergence) recorded as a failure.
    pub fn failed(id: IdentityId, input: CheckInput, tolerance: f64, reason: impl Into<String>) -> Self {
        Self { status: Status::Fail, ..Self::skipped(id, input, tolerance, reason) }
    }
}

/// Counts over a check run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// A run fails if anything fails or if fewer than this fraction of inputs is admissible.
pub const MIN_ADMISSIBLE_FRACTION: f64 = 0.6;

impl CheckSummary {
    pub fn of(reports: &[ResidualReport]) -> Self {
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        Self { passed: count(Status::Pass), failed: count(Status::Fail), skipped: count(Status::Skip) }
    }

    pub fn total(&self) -> usize {
        self.passed + self.failed + self.skipped
    }

    pub fn ok(&self) -> bool {
        let evaluated = self.passed + self.failed;
        self.failed == 0 && self.total() > 0 && evaluated as f64 >= MIN_ADMISSIBLE_FRACTION * self.total() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in IdentityId::ALL {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
            let json = serde_json_like(id);
            assert_eq!(json, id.name());
        }
        assert!("nope".parse::<IdentityId>().is_err());
    }

    fn serde_json_like(id: IdentityId) -> String {
        // the serde name equals the CLI name
        #[derive(Serialize)]
        struct W {
            id: IdentityId,
        }
        let s = toml::to_string(&W { id }).unwrap();
        s.trim().trim_start_matches("id = \"").trim_end_matches('"').to_string()
    }

    #[test]
    fn residual_rules() {
        let id = IdentityId::EtaModular;
        let r = ResidualReport::compare(
            id,
            CheckInput::default(),
            Complex64::new(2.0, 0.0),
            Complex64::new(2.0 + 1e-11, 0.0),
            1e-10,
        );
        assert!(r.pass && (r.rel_residual - 5e-12).abs() < 1e-15);
        let r = ResidualReport::compare(
            id,
            CheckInput::default(),
            Complex64::new(1e-9, 0.0),
            Complex64::new(2e-9, 0.0),
            1e-8,
        );
        assert!(r.pass, "tiny values use the absolute residual");
        let r = ResidualReport::compare(
            id,
            CheckInput::default(),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.1, 0.0),
            1e-10,
        );
        assert!(!r.pass && r.status == Status::Fail);
    }

    #[test]
    fn summary_admissibility_floor() {
        let id = IdentityId::Thm29;
        let pass = ResidualReport::compare(
            id,
            CheckInput::default(),
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 0.0),
            1e-8,
        );
        let skip = ResidualReport::skipped(id, CheckInput::default(), 1e-8, "outside");
        let s = CheckSummary::of(&[pass.clone(), pass.clone(), skip.clone()]);
        assert!(s.ok());
        let s = CheckSummary::of(&[pass, skip.clone(), skip]);
        assert!(!s.ok());
    }
}
