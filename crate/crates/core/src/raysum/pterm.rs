//! The perturbation term
//! `P(tau, nu) = int_0^{inf e^{id}} sin(nu t/tau)/(e^{it/tau} - 1) f(t) dt/t`
//! and its partial derivatives.

use num_complex::Complex64;

use super::quad::{integrate_ray, QuadResult};
use super::ray::{check_direction, choose_ray, Half, RaySpec};
use super::sin_cos_over_expm1;
use crate::error::{Error, Result};
use crate::qcore::{ModularPoint, Truncation};
use crate::specialfns::cmath::{c, finite, I, TWO_PI};
use crate::specialfns::fn_f_unchecked;

fn p_integrand(point: &ModularPoint) -> impl Fn(Complex64) -> Complex64 + '_ {
    move |t| {
        let (s, _) = sin_cos_over_expm1(point.nu * t / point.tau, I * t / point.tau);
        s * fn_f_unchecked(t) / t
    }
}

/// `P_-`: the ray integral along a direction in `(-pi, 0)`.
pub fn p_minus(point: &ModularPoint, spec: &RaySpec) -> Result<QuadResult> {
    check_direction(point, spec, Half::Lower)?;
    integrate_ray(p_integrand(point), spec)
}

/// `P_+`: the same integrand along a direction in `(0, pi)` below the pole ray `arg tau`.
pub fn p_plus(point: &ModularPoint, spec: &RaySpec) -> Result<QuadResult> {
    check_direction(point, spec, Half::Upper)?;
    if spec.direction_d >= point.tau.arg() {
        return Err(Error::domain(format!(
            "direction {} crosses the pole ray arg tau = {}",
            spec.direction_d,
            point.tau.arg()
        )));
    }
    integrate_ray(p_integrand(point), spec)
}

/// `dP_-/dnu = int cos(nu t/tau)/(e^{it/tau} - 1) f(t) dt / tau`.
pub fn dp_dnu(point: &ModularPoint, spec: &RaySpec) -> Result<QuadResult> {
    check_direction(point, spec, Half::Lower)?;
    let (tau, nu) = (point.tau, point.nu);
    integrate_ray(
        move |t| {
            let (_, co) = sin_cos_over_expm1(nu * t / tau, I * t / tau);
            co * fn_f_unchecked(t) / tau
        },
        spec,
    )
}

/// `dP_-/dtau`, differentiating `sin(w)/(e^u - 1)` with `w = nu t/tau`, `u = it/tau`
/// under the integral sign.
pub fn dp_dtau(point: &ModularPoint, spec: &RaySpec) -> Result<QuadResult> {
    check_direction(point, spec, Half::Lower)?;
    let (tau, nu) = (point.tau, point.nu);
    let tau2 = tau * tau;
    integrate_ray(
        move |t| {
            let u = I * t / tau;
            let (s, co) = sin_cos_over_expm1(nu * t / tau, u);
            let e = crate::specialfns::cmath::inv_expm1(u);
            // [-(nu/tau^2) cos(w) E + (i/tau^2) sin(w) E (1 + E)] f(t)
            (-(nu / tau2) * co + (I / tau2) * s * (1.0 + e)) * fn_f_unchecked(t)
        },
        spec,
    )
}

/// `P_-` along the default chooser's ray.
pub fn perturbation(point: &ModularPoint) -> Result<Complex64> {
    Ok(p_minus(point, &choose_ray(point, Half::Lower)?)?.value)
}

/// `dP_-/dnu` along the default chooser's ray.
pub fn perturbation_dnu(point: &ModularPoint) -> Result<Complex64> {
    Ok(dp_dnu(point, &choose_ray(point, Half::Lower)?)?.value)
}

/// `dP_-/dtau` along the default chooser's ray.
pub fn perturbation_dtau(point: &ModularPoint) -> Result<Complex64> {
    Ok(dp_dtau(point, &choose_ray(point, Half::Lower)?)?.value)
}

/// The Stokes jump `P_- - P_+ = 2i sum_{n>=1} sin(2 n pi nu/tau) / (n (e^{2 n pi i/tau} - 1))`,
/// convergent when `|Im(nu/tau)| < -Im(1/tau)`.
pub fn stokes_sum(point: &ModularPoint, tr: &Truncation) -> Result<Complex64> {
    let s = point.s;
    let lqs = point.log_q_star(); // -2 pi i/tau, Re < 0
    let log_rho = TWO_PI * s.im.abs() + lqs.re;
    if log_rho >= 0.0 {
        return Err(Error::domain(format!(
            "Stokes sum diverges: |Im(nu/tau)| = {} >= -Im(1/tau) = {}",
            s.im.abs(),
            -point.tau.inv().im
        )));
    }
    let rho = log_rho.exp();
    let abs_qs = lqs.re.exp();
    let mut sum = c(0.0, 0.0);
    for n in 1..=tr.max_terms {
        let nf = n as f64;
        // sin(2 pi n s) q*^n / (n (1 - q*^n)), exponents combined before exp
        let a = (TWO_PI * I * nf * s + nf * lqs).exp();
        let b = (-TWO_PI * I * nf * s + nf * lqs).exp();
        let qn = (nf * lqs).exp();
        sum += (a - b) / (2.0 * I) / (nf * (1.0 - qn));
        let next = ((nf + 1.0) * log_rho).exp() / ((nf + 1.0) * (1.0 - abs_qs));
        if next / (1.0 - rho) < tr.term_tol {
            return finite(2.0 * I * sum, "stokes_sum");
        }
    }
    Err(tr.exhausted("stokes_sum"))
}
