//! Each identity as a residual: both sides evaluated independently and compared.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::expansions::{qpochhammer_modular, ramanujan_completed};
use super::report::{CheckInput, IdentityId, ResidualReport};
use crate::error::{Error, Result};
use crate::qcore::{
    euler_series, lambert_l1, lambert_l2, qpochhammer, qpochhammer_tau, theta_laurent_tau, theta_product_tau,
    ModularPoint, Truncation,
};
use crate::raysum::{
    big_g, dp_dnu, dp_dtau, integrate_ray, m_almost_modular, p_minus, p_plus, pv_m_direct, resolve_ray, stokes_sum,
    Half, RaySpec, PV_DEFAULT_TERMS,
};
use crate::specialfns::cmath::{c, inv_expm1, ln, ln_1m, sqrt, I, TWO_PI};
use crate::specialfns::{digamma, dilog, EULER_GAMMA};

/// Which Lambert relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambertRelation {
    /// `L1(tau, nu + tau)` against its modular image.
    Shifted1,
    /// `L2(tau, nu + tau)` against its modular image.
    Shifted2,
    /// `L1(tau, tau)`.
    Diagonal1,
    /// `L2(tau, tau)`.
    Diagonal2,
}

impl LambertRelation {
    fn id(self) -> IdentityId {
        match self {
            Self::Shifted1 => IdentityId::Lambert67,
            Self::Shifted2 => IdentityId::Lambert68,
            Self::Diagonal1 => IdentityId::Lambert71,
            Self::Diagonal2 => IdentityId::Lambert72,
        }
    }
}

/// Turns a computation into a report: domain errors become skips, others failures.
pub(crate) fn settle(
    id: IdentityId,
    input: CheckInput,
    tol: f64,
    sides: Result<(Complex64, Complex64)>,
) -> ResidualReport {
    match sides {
        Ok((lhs, rhs)) => ResidualReport::compare(id, input, lhs, rhs, tol),
        Err(e) if e.is_domain() => ResidualReport::skipped(id, input, tol, e.to_string()),
        Err(e) => ResidualReport::failed(id, input, tol, e.to_string()),
    }
}

/// Product against Euler's series.
pub fn euler_identity_residual(x: Complex64, q: Complex64, tr: &Truncation) -> ResidualReport {
    let id = IdentityId::EulerIdentity;
    let sides = (|| Ok((qpochhammer(x, q, tr)?.value, euler_series(x, q, tr)?.value)))();
    settle(id, CheckInput::x_q(x, q), id.default_tolerance(), sides)
}

/// Direct product against the modular expansion.
pub fn thm29_residual(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> ResidualReport {
    let id = IdentityId::Thm29;
    let sides = (|| {
        // domain first so inadmissible points skip without computing anything
        let rhs = qpochhammer_modular(point, tr, spec)?;
        Ok((qpochhammer_tau(point.x, point.tau, tr)?.value, rhs))
    })();
    settle(id, CheckInput::tau_nu(point.tau, point.nu), id.default_tolerance(), sides)
}

/// Direct product against the completed Ramanujan form.
pub fn ramanujan47_residual(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> ResidualReport {
    let id = IdentityId::Ramanujan47;
    let sides = (|| {
        let rhs = ramanujan_completed(point, tr, spec)?;
        Ok((qpochhammer_tau(point.x, point.tau, tr)?.value, rhs))
    })();
    settle(id, CheckInput::tau_nu(point.tau, point.nu), id.default_tolerance(), sides)
}

/// `(q;q)_inf = q^{-1/24} sqrt(i/tau) (q*)^{1/24} (q*;q*)_inf`.
pub fn eta_modular_residual(tau: Complex64, tr: &Truncation) -> ResidualReport {
    let id = IdentityId::EtaModular;
    let sides = (|| {
        let p = ModularPoint::new(tau, c(0.0, 0.0))?;
        let lhs = qpochhammer_tau(p.q, tau, tr)?.value;
        let qs = qpochhammer_tau(p.q_star, p.tau_star, tr)?.value;
        let rhs = ((-p.log_q() + p.log_q_star()) / 24.0).exp() * sqrt(I / tau) * qs;
        Ok((lhs, rhs))
    })();
    settle(id, CheckInput::tau_only(tau), id.default_tolerance(), sides)
}

fn theta_rhs(p: &ModularPoint, tr: &Truncation) -> Result<Complex64> {
    // q^{1/8} sqrt(i/(tau x)) exp(-(log(x/sqrt q))^2/(2 log q)) theta(q*, x*)
    let lq = p.log_q();
    let l = TWO_PI * I * (p.nu - 0.5 * p.tau);
    let theta_star = theta_product_tau(p.tau_star, p.x_star, tr)?;
    Ok((lq / 8.0 - l * l / (2.0 * lq)).exp() * sqrt(I / (p.tau * p.x)) * theta_star)
}

/// The simplified form `sqrt(i/tau) exp(-(log x)^2/(2 log q)) theta(q*, x*)`.
pub fn theta_modular_simplified(tau: Complex64, nu: Complex64, tr: &Truncation) -> Result<Complex64> {
    let p = ModularPoint::new(tau, nu)?;
    let lx = p.log_x();
    Ok(sqrt(I / tau) * (-lx * lx / (2.0 * p.log_q())).exp() * theta_product_tau(p.tau_star, p.x_star, tr)?)
}

/// `theta(q, x)` against its modular image, with `|Re nu| < 1/2` for principal branches.
pub fn theta_modular_residual(tau: Complex64, nu: Complex64, tr: &Truncation) -> ResidualReport {
    let id = IdentityId::ThetaModular;
    let sides = (|| {
        if !(nu.re.abs() < 0.5) {
            return Err(Error::domain(format!("theta modular check needs |Re nu| < 1/2 (nu = {nu})")));
        }
        let p = ModularPoint::new(tau, nu)?;
        Ok((theta_product_tau(tau, p.x, tr)?, theta_rhs(&p, tr)?))
    })();
    settle(id, CheckInput::tau_nu(tau, nu), id.default_tolerance(), sides)
}

/// Triple product against the Laurent series at `x = e^{2 pi i nu}`.
pub fn triple_product_residual(tau: Complex64, nu: Complex64, tr: &Truncation) -> ResidualReport {
    let id = IdentityId::TripleProduct;
    let sides = (|| {
        let x = (TWO_PI * I * nu).exp();
        Ok((theta_product_tau(tau, x, tr)?, theta_laurent_tau(tau, x, tr)?))
    })();
    settle(id, CheckInput::tau_nu(tau, nu), id.default_tolerance(), sides)
}

/// `P_- - P_+` against the exponentially small sine sum.
pub fn stokes_residual(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> ResidualReport {
    let id = IdentityId::Stokes28;
    let sides = (|| {
        let rhs = stokes_sum(point, tr)?;
        let lo = p_minus(point, &resolve_ray(point, spec, Half::Lower)?)?.value;
        let up = p_plus(point, &resolve_ray(point, spec, Half::Upper)?)?.value;
        Ok((lo - up, rhs))
    })();
    settle(id, CheckInput::tau_nu(point.tau, point.nu), id.default_tolerance(), sides)
}

/// `G(tau, nu) + G(tau, -nu)` against `log(1 - e^{-+2 pi i nu/tau})`.
pub fn reflection_residual(point: &ModularPoint) -> ResidualReport {
    let id = IdentityId::Reflection34;
    let sides = (|| {
        let s = point.s;
        if s.im == 0.0 {
            return Err(Error::domain(format!("reflection needs nu/tau off the real axis (nu/tau = {s})")));
        }
        let neg = ModularPoint::new(point.tau, -point.nu)?;
        let lhs = big_g(point)? + big_g(&neg)?;
        let w = if s.im < 0.0 { -TWO_PI * I * s } else { TWO_PI * I * s };
        Ok((lhs, ln_1m(w.exp())))
    })();
    settle(id, CheckInput::tau_nu(point.tau, point.nu), id.default_tolerance(), sides)
}

fn lambert_sides(
    point: &ModularPoint,
    which: LambertRelation,
    tr: &Truncation,
    spec: &RaySpec,
) -> Result<(Complex64, Complex64)> {
    let tau = point.tau;
    let two_pi_i_tau = TWO_PI * I * tau;
    match which {
        LambertRelation::Diagonal2 => {
            let d = ModularPoint::new(tau, tau)?;
            let ds = ModularPoint::new(d.tau_star, d.tau_star)?;
            let lhs = lambert_l2(&d, tr)?;
            let rhs =
                1.0 / 24.0 + 1.0 / (2.0 * two_pi_i_tau) - 1.0 / (24.0 * tau * tau) + lambert_l2(&ds, tr)? / (tau * tau);
            Ok((lhs, rhs))
        }
        LambertRelation::Diagonal1 => {
            let d = ModularPoint::new(tau, tau)?;
            let ds = ModularPoint::new(d.tau_star, d.tau_star)?;
            let zero = ModularPoint::new(tau, c(0.0, 0.0))?;
            let dp = dp_dnu(&zero, &resolve_ray(&zero, spec, Half::Lower)?)?.value;
            let lhs = lambert_l1(&d, tr)?;
            let rhs = ln(-two_pi_i_tau) / two_pi_i_tau + 0.25 - EULER_GAMMA / two_pi_i_tau - dp / (TWO_PI * I)
                + lambert_l1(&ds, tr)? / tau;
            Ok((lhs, rhs))
        }
        LambertRelation::Shifted1 | LambertRelation::Shifted2 => {
            let nu = point.nu;
            let s = point.s;
            if crate::specialfns::cmath::on_negative_axis(s) {
                return Err(Error::domain(format!("Lambert shift relations need nu/tau off (-inf, 0] (nu/tau = {s})")));
            }
            let shifted = point.shifted()?;
            let star_shifted = ModularPoint::new(point.tau_star, point.nu_star + point.tau_star)?;
            let ray = resolve_ray(point, spec, Half::Lower)?;
            let x = point.x;
            let psi_part = digamma(s + 1.0)? - ln(s) - tau / (2.0 * nu);
            if which == LambertRelation::Shifted1 {
                let dp = dp_dnu(point, &ray)?.value;
                let lhs = lambert_l1(&shifted, tr)?;
                // the x/(2(1-x)) term enters with a minus sign
                let rhs = ln_1m(x) / two_pi_i_tau - x / (2.0 * (1.0 - x))
                    + lambert_l1(&star_shifted, tr)? / tau
                    + (psi_part - tau * dp) / two_pi_i_tau;
                Ok((lhs, rhs))
            } else {
                let dp = dp_dtau(point, &ray)?.value;
                let tau2 = tau * tau;
                let lhs = lambert_l2(&shifted, tr)?;
                let rhs = 1.0 / 24.0 - dilog(x) / (4.0 * PI * PI * tau2) - lambert_l1(&star_shifted, tr)? * nu / tau2
                    + lambert_l2(&star_shifted, tr)? / tau2
                    - nu / (TWO_PI * I * tau2) * (psi_part + tau2 / nu * dp);
                Ok((lhs, rhs))
            }
        }
    }
}

/// A Lambert-series relation as a residual. `point.nu` is ignored for the diagonal ones.
pub fn lambert_relation_residual(
    point: &ModularPoint,
    which: LambertRelation,
    tr: &Truncation,
    spec: &RaySpec,
) -> ResidualReport {
    let id = which.id();
    let input = match which {
        LambertRelation::Diagonal1 | LambertRelation::Diagonal2 => CheckInput::tau_only(point.tau),
        _ => CheckInput::tau_nu(point.tau, point.nu),
    };
    settle(id, input, id.default_tolerance(), lambert_sides(point, which, tr, spec))
}

/// Quadrature against the closed forms of `int sin(lambda u)/(e^{2 pi u} - 1) du`
/// and `int (1 - cos(lambda u))/((e^{2 pi u} - 1) u) du`, `|Im lambda| < 2 pi`.
pub fn binet_residual(lambda: Complex64, cosine: bool, spec: &RaySpec) -> ResidualReport {
    let id = if cosine { IdentityId::Binet75 } else { IdentityId::Binet74 };
    let sides = (|| {
        if !(lambda.im.abs() < TWO_PI) || lambda.norm() == 0.0 {
            return Err(Error::domain(format!(
                "Binet integrals need 0 < |lambda|, |Im lambda| < 2 pi (lambda = {lambda})"
            )));
        }
        let ray = RaySpec { direction_d: 0.0, ..*spec };
        if cosine {
            let q = integrate_ray(
                |u| {
                    let h = (0.5 * lambda * u).sin();
                    2.0 * h * h / u * inv_expm1(TWO_PI * u)
                },
                &ray,
            )?;
            let closed = lambda / 4.0 + 0.5 * ln((1.0 - (-lambda).exp()) / lambda);
            Ok((q.value, closed))
        } else {
            let q = integrate_ray(|u| (lambda * u).sin() * inv_expm1(TWO_PI * u), &ray)?;
            let closed = 0.25 + 0.5 * (inv_expm1(lambda) - lambda.inv());
            Ok((q.value, closed))
        }
    })();
    settle(id, CheckInput::lambda(lambda), id.default_tolerance(), sides)
}

/// The almost-modular decomposition of `M` against its principal-value definition.
pub fn m_pv_residual(alpha: f64, xi: f64, tr: &Truncation, spec: &RaySpec) -> ResidualReport {
    let id = IdentityId::MPv;
    let sides = (|| {
        let a = m_almost_modular(alpha, xi, spec, tr)?;
        let b = pv_m_direct(alpha, xi, PV_DEFAULT_TERMS)?;
        Ok((c(a, 0.0), c(b, 0.0)))
    })();
    settle(id, CheckInput::alpha_xi(alpha, xi), id.default_tolerance(), sides)
}
