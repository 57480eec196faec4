//! `qmod eval <target>`: one value with its error estimate.

use num_complex::Complex64;
use qmod_core::modularity::{q_gamma_modular, qpochhammer_modular_eval};
use qmod_core::qcore::{
    eta, euler_series, lambert_l1, lambert_l2, q_gamma, qpochhammer, qpochhammer_tau, theta_product, theta_product_tau,
};
use qmod_core::raysum::{a_n, a_n_ray, big_g, choose_ray, m_almost_modular, p_minus, Half};
use qmod_core::specialfns::dilog;
use qmod_core::{ModularPoint, RaySpec, Truncation};
use serde::Serialize;

use crate::args::{Format, RunArgs};
use crate::error::{usage, CliError, EXIT_OK};
use crate::output::{complex, json, num, Table};
use crate::{ray_spec, truncation, Outcome};

pub const TARGETS: [&str; 13] = [
    "pochhammer-direct",
    "pochhammer-euler",
    "pochhammer-modular",
    "qgamma",
    "eta",
    "theta",
    "li2",
    "G",
    "P",
    "An",
    "L1",
    "L2",
    "M",
];

/// One evaluated value.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRecord {
    pub target: String,
    pub value_re: f64,
    pub value_im: f64,
    /// Absolute error estimate: the certified truncation tail, the quadrature estimate,
    /// or a few ulps for closed forms.
    pub error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
}

fn need<T>(v: Option<T>, flag: &str, target: &str) -> Result<T, CliError> {
    v.ok_or_else(|| usage(format!("{target} needs {flag}")))
}

fn rounding(v: Complex64) -> f64 {
    4.0 * f64::EPSILON * v.norm()
}

fn point(a: &RunArgs) -> Result<ModularPoint, CliError> {
    let tau = need(a.tau(), "--tau-re/--tau-im", &a.target)?;
    Ok(ModularPoint::new(tau, a.nu().unwrap_or_default())?)
}

/// `x` from `--x-*`, or `e^{2 pi i nu}` from `--nu-*`.
fn x_of(a: &RunArgs) -> Result<Complex64, CliError> {
    if let Some(x) = a.x() {
        return Ok(x);
    }
    let nu = need(a.nu(), "--x-re/--x-im or --nu-re/--nu-im", &a.target)?;
    Ok((Complex64::new(0.0, std::f64::consts::TAU) * nu).exp())
}

/// `(alpha, xi)` from `--alpha/--xi`, or from a purely imaginary `tau` and `nu`.
fn alpha_xi(a: &RunArgs) -> Result<(f64, f64), CliError> {
    if let Some(alpha) = a.alpha {
        return Ok((alpha, need(a.xi, "--xi", &a.target)?));
    }
    match (a.tau(), a.nu()) {
        (Some(tau), nu) if tau.re == 0.0 && nu.is_none_or(|n| n.re == 0.0) => {
            Ok((tau.im, nu.map_or(0.0, |n| n.im / tau.im)))
        }
        _ => Err(usage("M needs --alpha and --xi, or purely imaginary tau and nu")),
    }
}

fn product(target: &str, v: qmod_core::qcore::Truncated<Complex64>, tr: &Truncation) -> EvalRecord {
    record(target, v.value, tr.term_tol * v.value.norm().max(1.0), Some(v.terms))
}

fn record(target: &str, value: Complex64, error_estimate: f64, terms: Option<usize>) -> EvalRecord {
    EvalRecord { target: target.to_string(), value_re: value.re, value_im: value.im, error_estimate, terms }
}

/// Evaluates `a.target` at the point described by the flags.
pub fn evaluate(a: &RunArgs) -> Result<EvalRecord, CliError> {
    let tr = truncation();
    let spec = ray_spec(a, true)?;
    let t = a.target.as_str();
    Ok(match t {
        "pochhammer-direct" | "pochhammer-euler" => {
            let x = x_of(a)?;
            let q = match (a.q(), a.tau()) {
                (Some(q), _) => q,
                (None, Some(tau)) => ModularPoint::new(tau, Complex64::default())?.q,
                _ => return Err(usage(format!("{t} needs --q-re/--q-im or --tau-re/--tau-im"))),
            };
            let v = if t == "pochhammer-direct" {
                match (a.q(), a.tau()) {
                    (None, Some(tau)) => qpochhammer_tau(x, tau, &tr)?,
                    _ => qpochhammer(x, q, &tr)?,
                }
            } else {
                euler_series(x, q, &tr)?
            };
            product(t, v, &tr)
        }
        "pochhammer-modular" => {
            let m = qpochhammer_modular_eval(&point(a)?, &tr, &spec)?;
            let err = (m.quad_error + tr.term_tol) * m.value.norm();
            record(t, m.value, err, Some(m.qstar_terms))
        }
        "qgamma" => {
            let z = need(a.z(), "--z-re/--z-im", t)?;
            let v = match (a.q(), a.tau()) {
                (Some(q), _) => q_gamma(z, q, &tr)?,
                (None, Some(tau)) => q_gamma_modular(z, tau, &tr, &spec)?,
                _ => return Err(usage("qgamma needs --q-re/--q-im or --tau-re/--tau-im")),
            };
            record(t, v, tr.term_tol * v.norm().max(1.0), None)
        }
        "eta" => {
            let v = eta(need(a.tau(), "--tau-re/--tau-im", t)?, &tr)?;
            record(t, v, tr.term_tol * v.norm().max(1.0), None)
        }
        "theta" => {
            let x = x_of(a)?;
            let v = match (a.q(), a.tau()) {
                (Some(q), _) => theta_product(q, x, &tr)?,
                (None, Some(tau)) => theta_product_tau(tau, x, &tr)?,
                _ => return Err(usage("theta needs --q-re/--q-im or --tau-re/--tau-im")),
            };
            record(t, v, tr.term_tol * v.norm().max(1.0), None)
        }
        "li2" => {
            let v = dilog(need(a.x(), "--x-re/--x-im", t)?);
            record(t, v, rounding(v), None)
        }
        "G" => {
            let v = big_g(&point(a)?)?;
            record(t, v, rounding(v), None)
        }
        "P" => {
            let p = point(a)?;
            let ray = choose_ray(&p, Half::Lower)?;
            let r = p_minus(&p, &RaySpec { rel_tol: spec.rel_tol, ..ray })?;
            record(t, r.value, r.error, None)
        }
        "An" => {
            let n = need(a.n, "--n", t)?;
            let z = need(a.z(), "--z-re/--z-im", t)?;
            let ray = RaySpec { rel_tol: spec.rel_tol, ..a_n_ray(z)? };
            let v = a_n(n, z, &ray)?;
            record(t, v, spec.rel_tol * v.norm(), None)
        }
        "L1" | "L2" => {
            let p = point(a)?;
            let v = if t == "L1" { lambert_l1(&p, &tr)? } else { lambert_l2(&p, &tr)? };
            record(t, v, tr.term_tol * v.norm().max(1.0), None)
        }
        "M" => {
            let (alpha, xi) = alpha_xi(a)?;
            let v = m_almost_modular(alpha, xi, &spec, &tr)?;
            record(t, Complex64::new(v, 0.0), spec.rel_tol * v.abs().max(1e-300), None)
        }
        _ => {
            return Err(usage(format!("unknown eval target '{t}' (expected one of {})", TARGETS.join(", "))));
        }
    })
}

fn table(r: &EvalRecord) -> Table {
    Table {
        header: vec!["target", "value_re", "value_im", "error_estimate", "terms"],
        rows: vec![vec![
            r.target.clone(),
            num(r.value_re),
            num(r.value_im),
            num(r.error_estimate),
            r.terms.map(|n| n.to_string()).unwrap_or_default(),
        ]],
    }
}

pub fn run(a: &RunArgs) -> Result<Outcome, CliError> {
    let r = evaluate(a)?;
    let text = match a.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!(
                "{} = {}\nerror estimate: {}\n",
                r.target,
                complex(Complex64::new(r.value_re, r.value_im)),
                num(r.error_estimate)
            );
            if let Some(n) = r.terms {
                s.push_str(&format!("terms: {n}\n"));
            }
            s
        }
        Format::Json => json(&[&r])?,
        Format::Csv => table(&r).to_csv()?,
    };
    Ok(Outcome { text, code: EXIT_OK })
}
