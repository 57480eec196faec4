//! The almost-modular term `M(alpha, xi)` of the real-variable expansion, and an
//! independent principal-value evaluation used to validate it.

use std::f64::consts::PI;

use super::pterm::p_minus;
use super::quad::{integrate_half_line, integrate_interval};
use super::ray::{resolve_ray, Half};
use super::RaySpec;
use crate::error::{Error, Result};
use crate::qcore::{log_qpochhammer, ModularPoint, Truncation};
use crate::specialfns::cmath::{c, I, TWO_PI};
use crate::specialfns::hurwitz_zeta;

/// Half-width of the window around the pole `t = 1` in [`pv_m_direct`].
pub const PV_DELTA: f64 = 0.1;
/// Default number of explicit terms in [`pv_m_direct`] before the asymptotic tail.
pub const PV_DEFAULT_TERMS: usize = 40;

const PV_REL_TOL: f64 = 1e-12;

/// `M(alpha, xi) = log(e^{2 pi i xi - 2 pi/alpha}; e^{-2 pi/alpha})_inf + P_-(alpha i, xi alpha i)`.
///
/// The sum is real; its imaginary part is checked against the quadrature tolerance and
/// dropped. An inadmissible `spec.direction_d` is replaced by the chooser's.
pub fn m_almost_modular(alpha: f64, xi: f64, spec: &RaySpec, tr: &Truncation) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() || !xi.is_finite() {
        return Err(Error::domain(format!("M needs alpha > 0 and finite xi (got {alpha}, {xi})")));
    }
    let point = ModularPoint::from_real(alpha, xi)?;
    let q_star = c((-TWO_PI / alpha).exp(), 0.0);
    let xq = (TWO_PI * I * xi - TWO_PI / alpha).exp();
    let log_term = log_qpochhammer(xq, q_star, tr)?.value;
    let ray = resolve_ray(&point, spec, Half::Lower)?;
    let p = p_minus(&point, &ray)?;
    let m = log_term + p.value;
    let slack = 100.0 * (p.error + spec.rel_tol * p.value.norm()) + 1e-13;
    if m.im.abs() > slack {
        return Err(Error::convergence(format!(
            "M has a non-negligible imaginary part {:e} (allowed {:e})",
            m.im, slack
        )));
    }
    Ok(m.re)
}

// sin(2 n xi pi t) / (e^{2 n pi t/alpha} - 1), with its t -> 0 limit xi alpha
fn g_n(n: f64, alpha: f64, xi: f64, t: f64) -> f64 {
    if t == 0.0 {
        return xi * alpha;
    }
    (2.0 * n * xi * PI * t).sin() / (2.0 * n * PI * t / alpha).exp_m1()
}

// PV int_0^inf g_n(t)/(1 - t^2) dt: smooth pieces away from t = 1, and on the window
// the odd part h(1)/(1 - t) of h(t)/(1 - t), h = g/(1 + t), integrates to zero.
fn pv_j(n: f64, alpha: f64, xi: f64) -> Result<f64> {
    let g = |t: f64| g_n(n, alpha, xi, t);
    let h = |t: f64| g(t) / (1.0 + t);
    let h1 = h(1.0);
    let d = PV_DELTA;
    let left = integrate_interval(|t| c(g(t) / (1.0 - t * t), 0.0), 0.0, 1.0 - d, PV_REL_TOL)?;
    let mid = integrate_interval(|t| c((h(t) - h1) / (1.0 - t), 0.0), 1.0 - d, 1.0 + d, PV_REL_TOL)?;
    let right = integrate_half_line(|t| c(g(t) / (1.0 - t * t), 0.0), 1.0 + d, PV_REL_TOL)?;
    Ok(left.value.re + mid.value.re + right.value.re)
}

/// `M` from its principal-value definition:
/// `-sum_n cos(2 n pi xi)/(n (e^{2 n pi/alpha} - 1)) - (2/pi) PV int_0^inf sum_n g_n(t)/n dt/(1 - t^2)`.
///
/// The first `n_terms` integrals are computed by singularity subtraction; the
/// remaining ones are replaced by their large-`n` expansion
/// `sum_k alpha^{2k+1} c_k / n^{2k+2}`, `c_k = int u^{2k} sin(2 pi xi alpha u)/(e^{2 pi u} - 1) du`.
pub fn pv_m_direct(alpha: f64, xi: f64, n_terms: usize) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() || !xi.is_finite() {
        return Err(Error::domain(format!("pv_M needs alpha > 0 and finite xi (got {alpha}, {xi})")));
    }
    if n_terms == 0 {
        return Err(Error::domain("pv_M needs n_terms >= 1"));
    }
    let mut cos_part = 0.0;
    let mut n = 1usize;
    loop {
        let nf = n as f64;
        let term = (2.0 * nf * PI * xi).cos() / (nf * (2.0 * nf * PI / alpha).exp_m1());
        cos_part -= term;
        if term.abs() < 1e-18 || n > 100_000 {
            break;
        }
        n += 1;
    }
    let mut pv = 0.0;
    for n in 1..=n_terms {
        pv += pv_j(n as f64, alpha, xi)? / n as f64;
    }
    let lambda = TWO_PI * xi * alpha;
    for k in 0..4 {
        let ck = integrate_half_line(
            |u| {
                let v = if u == 0.0 {
                    if k == 0 {
                        lambda / TWO_PI
                    } else {
                        0.0
                    }
                } else {
                    u.powi(2 * k) * (lambda * u).sin() / (TWO_PI * u).exp_m1()
                };
                c(v, 0.0)
            },
            0.0,
            PV_REL_TOL,
        )?
        .value
        .re;
        pv += alpha.powi(2 * k + 1) * ck * hurwitz_zeta(2 * k as u32 + 2, n_terms as f64 + 1.0);
    }
    Ok(cos_part - 2.0 / PI * pv)
}
