//! Ramanujan's divergent series for `-P` and the error table against it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::ModularPoint;
use crate::raysum::{a_n, a_n_ray, k_n, p_minus, resolve_ray, Half, RaySpec};
use crate::specialfns::b2n_over_factorial;
use crate::specialfns::cmath::{c, cot, I, TWO_PI};

/// One row of the `-P` versus partial-sum table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticRow {
    pub tau: Complex64,
    pub nu: Complex64,
    #[serde(rename = "N")]
    pub n: usize,
    pub theta_partial: Complex64,
    pub minus_p: Complex64,
    /// `|minus_p - theta_partial|`.
    pub error: f64,
    /// `C_eps K_N(nu) |tau|^{2N+1} / (2 pi - eps)^{2N}`.
    pub bound_rhs: f64,
}

/// Partial sums `theta_0, ..., theta_N` of
/// `theta = sum_{n>=1} B_{2n} A_n(2 pi i nu) (2 pi i tau)^{2n-1} / (2n)!` (`theta_0 = 0`).
pub fn theta_partial_sums(tau: Complex64, nu: Complex64, n_max: usize, spec: &RaySpec) -> Result<Vec<Complex64>> {
    let z = TWO_PI * I * nu;
    let ray = a_n_ray(z)?;
    let ray = RaySpec { rel_tol: spec.rel_tol, ..ray };
    let lq = TWO_PI * I * tau;
    let mut out = Vec::with_capacity(n_max + 1);
    let mut sum = c(0.0, 0.0);
    out.push(sum);
    for n in 1..=n_max {
        let coeff = b2n_over_factorial(n);
        sum += coeff * a_n(n, z, &ray)? * lq.powi(2 * n as i32 - 1);
        out.push(sum);
    }
    Ok(out)
}

// f(t) - f_N(t) where f(t) = cot(t/2) - 2/t = sum_{n>=1} 2 (-1)^n B_{2n} t^{2n-1}/(2n)!
fn kernel_remainder(t: Complex64, big_n: usize) -> Complex64 {
    let term = |n: usize| {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        2.0 * sign * b2n_over_factorial(n) * t.powi(2 * n as i32 - 1)
    };
    if t.norm() < PI {
        // the tail converges geometrically with ratio |t/(2 pi)|^2 <= 1/4
        let mut sum = c(0.0, 0.0);
        for n in big_n + 1..big_n + 200 {
            let v = term(n);
            sum += v;
            if v.norm() <= 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        let mut f = cot(0.5 * t) - 2.0 / t;
        for n in 1..=big_n {
            f -= term(n);
        }
        f
    }
}

/// Empirical constant `C_eps` for `|f(t) - f_N(t)| <= C_eps |t|^{2N+1} / (2 pi - eps)^{2N}`
/// on the sector `eps <= |arg t| <= pi - eps`, by maximizing over a grid of rays and radii.
///
/// `f` is odd and real on the real axis, so the rays `eps <= arg t <= pi/2` suffice.
pub fn estimate_c_eps(big_n: usize, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 0.5 * PI) {
        return Err(Error::domain(format!("C_eps needs 0 < eps < pi/2 (eps = {eps})")));
    }
    let scale = (TWO_PI - eps).powi(2 * big_n as i32);
    let mut best: f64 = 0.0;
    const RAYS: usize = 48;
    const RADII: usize = 400;
    for i in 0..=RAYS {
        let d = eps + (0.5 * PI - eps) * i as f64 / RAYS as f64;
        for j in 0..=RADII {
            // r from 1e-2 to 1e3, log-spaced
            let r = 10f64.powf(-2.0 + 5.0 * j as f64 / RADII as f64);
            let t = Complex64::from_polar(r, d);
            let v = kernel_remainder(t, big_n).norm() * scale / r.powi(2 * big_n as i32 + 1);
            if v.is_finite() {
                best = best.max(v);
            }
        }
    }
    Ok(best)
}

/// The table of `theta_N` against `-P(tau, nu)` for `N = 0..=n_max` at each `tau`.
pub fn theta_series_table(
    nu: Complex64,
    tau_list: &[Complex64],
    n_max: usize,
    eps: f64,
    spec: &RaySpec,
) -> Result<Vec<AsymptoticRow>> {
    if !(nu.re.abs() < 1.0) {
        return Err(Error::domain(format!("theta table needs |Re nu| < 1 (nu = {nu})")));
    }
    let mut c_eps = Vec::with_capacity(n_max + 1);
    let mut k = Vec::with_capacity(n_max + 1);
    for big_n in 0..=n_max {
        c_eps.push(estimate_c_eps(big_n, eps)?);
        k.push(k_n(big_n, nu, spec)?);
    }
    let mut rows = Vec::with_capacity(tau_list.len() * (n_max + 1));
    for &tau in tau_list {
        let arg = tau.arg();
        if !(arg >= eps && arg <= PI - eps) {
            return Err(Error::domain(format!("tau = {tau} is outside the sector S(eps, pi - eps)")));
        }
        let point = ModularPoint::new(tau, nu)?;
        let minus_p = -p_minus(&point, &resolve_ray(&point, spec, Half::Lower)?)?.value;
        let partial = theta_partial_sums(tau, nu, n_max, spec)?;
        for (big_n, theta) in partial.into_iter().enumerate() {
            let bound_rhs =
                c_eps[big_n] * k[big_n] * tau.norm().powi(2 * big_n as i32 + 1) / (TWO_PI - eps).powi(2 * big_n as i32);
            rows.push(AsymptoticRow {
                tau,
                nu,
                n: big_n,
                theta_partial: theta,
                minus_p,
                error: (minus_p - theta).norm(),
                bound_rhs,
            });
        }
    }
    Ok(rows)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}
