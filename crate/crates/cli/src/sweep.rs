//! `qmod sweep <table>`: the asymptotic-series table and the q -> 1 cost comparison.

use std::f64::consts::{FRAC_PI_4, TAU};

use num_complex::Complex64;
use qmod_core::modularity::{q_to_one_remainder, qpochhammer_modular_eval, theta_series_table, AsymptoticRow};
use qmod_core::qcore::qpochhammer_tau;
use qmod_core::ModularPoint;
use serde::Serialize;

use crate::args::{Format, RunArgs};
use crate::error::{usage, CliError, EXIT_OK};
use crate::output::{json, num, Table};
use crate::{ray_spec, truncation, Outcome};

pub const ASYM_HEADER: [&str; 10] = [
    "alpha",
    "nu_re",
    "nu_im",
    "N",
    "theta_partial_re",
    "theta_partial_im",
    "minus_P_re",
    "minus_P_im",
    "error",
    "bound_rhs",
];

pub const Q_TO_ONE_HEADER: [&str; 9] = [
    "alpha",
    "x_re",
    "x_im",
    "direct_terms",
    "modular_qstar_terms",
    "direct_log_abs",
    "modular_log_abs",
    "rel_diff",
    "limit_remainder",
];

/// Parses `--alpha-list`; an empty list is a usage error.
pub fn alpha_list(a: &RunArgs, default: &[f64]) -> Result<Vec<f64>, CliError> {
    let Some(text) = &a.alpha_list else {
        return Ok(default.to_vec());
    };
    let values = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<f64>().map_err(|_| usage(format!("bad alpha value '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(usage("empty alpha range"));
    }
    if let Some(bad) = values.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
        return Err(usage(format!("alpha values must be positive (got {bad})")));
    }
    Ok(values)
}

#[derive(Debug, Clone, Serialize)]
struct AsymRecord {
    alpha: f64,
    nu_re: f64,
    nu_im: f64,
    #[serde(rename = "N")]
    n: usize,
    theta_partial_re: f64,
    theta_partial_im: f64,
    #[serde(rename = "minus_P_re")]
    minus_p_re: f64,
    #[serde(rename = "minus_P_im")]
    minus_p_im: f64,
    error: f64,
    bound_rhs: f64,
}

impl From<&AsymptoticRow> for AsymRecord {
    fn from(r: &AsymptoticRow) -> Self {
        Self {
            alpha: r.tau.im,
            nu_re: r.nu.re,
            nu_im: r.nu.im,
            n: r.n,
            theta_partial_re: r.theta_partial.re,
            theta_partial_im: r.theta_partial.im,
            minus_p_re: r.minus_p.re,
            minus_p_im: r.minus_p.im,
            error: r.error,
            bound_rhs: r.bound_rhs,
        }
    }
}

impl AsymRecord {
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.alpha),
            num(self.nu_re),
            num(self.nu_im),
            self.n.to_string(),
            num(self.theta_partial_re),
            num(self.theta_partial_im),
            num(self.minus_p_re),
            num(self.minus_p_im),
            num(self.error),
            num(self.bound_rhs),
        ]
    }
}

#[derive(Debug, Clone, Serialize)]
struct QToOneRecord {
    alpha: f64,
    x_re: f64,
    x_im: f64,
    direct_terms: usize,
    modular_qstar_terms: usize,
    /// `log |(x;q)_inf|` from the direct product.
    direct_log_abs: f64,
    /// `log |(x;q)_inf|` from the modular expansion.
    modular_log_abs: f64,
    rel_diff: f64,
    /// `log (x;q)_inf - [log(1-x)/2 - Li2(x)/(2 pi alpha)]`, for real `0 < x < 1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    limit_remainder: Option<f64>,
}

impl QToOneRecord {
    fn cells(&self) -> Vec<String> {
        vec![
            num(self.alpha),
            num(self.x_re),
            num(self.x_im),
            self.direct_terms.to_string(),
            self.modular_qstar_terms.to_string(),
            num(self.direct_log_abs),
            num(self.modular_log_abs),
            num(self.rel_diff),
            self.limit_remainder.map(num).unwrap_or_default(),
        ]
    }
}

fn asym_table(a: &RunArgs) -> Result<Vec<AsymRecord>, CliError> {
    let alphas = alpha_list(a, &[0.2, 0.1, 0.05])?;
    let nu = a.nu().unwrap_or(Complex64::new(0.3, 0.0));
    let taus: Vec<Complex64> = alphas.iter().map(|&al| Complex64::new(0.0, al)).collect();
    let rows = theta_series_table(nu, &taus, a.n_max.unwrap_or(8), a.eps.unwrap_or(FRAC_PI_4), &ray_spec(a, true)?)?;
    Ok(rows.iter().map(AsymRecord::from).collect())
}

fn q_to_one(a: &RunArgs) -> Result<Vec<QToOneRecord>, CliError> {
    let alphas = alpha_list(a, &[0.2, 0.1, 0.05, 0.02, 0.01])?;
    let x = a.x().unwrap_or(Complex64::new(0.5, 0.0));
    if x.norm() == 0.0 {
        return Err(usage("x must be nonzero"));
    }
    let tr = truncation();
    let spec = ray_spec(a, true)?;
    // nu = log x / (2 pi i), principal branch
    let nu = x.ln() / Complex64::new(0.0, TAU);
    alphas
        .iter()
        .map(|&alpha| {
            let tau = Complex64::new(0.0, alpha);
            let direct = qpochhammer_tau(x, tau, &tr)?;
            let modular = qpochhammer_modular_eval(&ModularPoint::new(tau, nu)?, &tr, &spec)?;
            let real_x = x.im == 0.0 && x.re > 0.0 && x.re < 1.0;
            let limit_remainder = if real_x { Some(q_to_one_remainder(alpha, x.re, &tr, &spec)?) } else { None };
            Ok(QToOneRecord {
                alpha,
                x_re: x.re,
                x_im: x.im,
                direct_terms: direct.terms,
                modular_qstar_terms: modular.qstar_terms,
                direct_log_abs: direct.value.norm().ln(),
                modular_log_abs: modular.log_value.re,
                rel_diff: (direct.value - modular.value).norm() / direct.value.norm().max(1e-300),
                limit_remainder,
            })
        })
        .collect()
}

fn render<T: Serialize>(
    records: &[T],
    header: &[&'static str],
    cells: impl Fn(&T) -> Vec<String>,
    format: Format,
) -> Result<String, CliError> {
    let table = || Table { header: header.to_vec(), rows: records.iter().map(&cells).collect() };
    match format {
        Format::Csv => table().to_csv(),
        Format::Text => Ok(table().to_text()),
        Format::Json => json(records),
    }
}

pub fn run(a: &RunArgs) -> Result<Outcome, CliError> {
    let format = a.format.unwrap_or(Format::Csv);
    let text = match a.target.as_str() {
        "asym-table" => render(&asym_table(a)?, &ASYM_HEADER, AsymRecord::cells, format)?,
        "q-to-one" => render(&q_to_one(a)?, &Q_TO_ONE_HEADER, QToOneRecord::cells, format)?,
        other => return Err(usage(format!("unknown sweep target '{other}' (expected asym-table or q-to-one)"))),
    };
    Ok(Outcome { text, code: EXIT_OK })
}
