//! The coefficient functions `A_n` and the bound integrals `K_N`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::{integrate_half_line, integrate_ray};
use super::{sin_cos_over_expm1, RaySpec};
use crate::error::{Error, Result};
use crate::qcore::Truncation;
use crate::specialfns::cmath::{c, TWO_PI};
use crate::specialfns::zeta;

const RAY_GRID: f64 = PI / 72.0;

fn a_n_slack(z: Complex64, d: f64) -> f64 {
    TWO_PI * d.cos() - (z * Complex64::from_polar(1.0, d)).im.abs()
}

fn check_a_n_domain(z: Complex64) -> Result<()> {
    if z.re == 0.0 && z.im.abs() >= TWO_PI {
        return Err(Error::domain(format!("A_n is not defined on the cuts z = iy, |y| >= 2 pi (z = {z})")));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::domain(format!("A_n needs a finite argument (z = {z})")));
    }
    Ok(())
}

/// Integration ray for `A_n(z)`: the real axis when `|Im z| < pi`, otherwise the
/// direction `d = k pi/72`, `|d| < pi/2`, maximizing `2 pi cos d - |Im(z e^{id})|`,
/// refined by golden-section search when the grid is too coarse for a thin cone.
pub fn a_n_ray(z: Complex64) -> Result<RaySpec> {
    check_a_n_domain(z)?;
    if z.im.abs() < PI {
        return Ok(RaySpec::along(0.0));
    }
    let mut best = (f64::NEG_INFINITY, 0.0);
    for k in -35..=35 {
        let d = k as f64 * RAY_GRID;
        let s = a_n_slack(z, d);
        if s > best.0 {
            best = (s, d);
        }
    }
    if best.0 > 0.0 {
        return Ok(RaySpec::along(best.1));
    }
    // the slack is concave in d on (-pi/2, pi/2); refine around the grid maximum
    let (mut lo, mut hi) = (best.1 - RAY_GRID, best.1 + RAY_GRID);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..100 {
        let a = hi - g * (hi - lo);
        let b = lo + g * (hi - lo);
        if a_n_slack(z, a) < a_n_slack(z, b) {
            lo = a;
        } else {
            hi = b;
        }
    }
    let d = 0.5 * (lo + hi);
    if a_n_slack(z, d) > 0.0 && d.abs() < 0.5 * PI {
        Ok(RaySpec::along(d))
    } else {
        Err(Error::domain(format!("A_n: no convergent ray for z = {z}")))
    }
}

/// `A_n(z) = (-1)^{n-1} int_0^{inf e^{id}} 2 t^{2n-2} sin(tz)/(e^{2 pi t} - 1) dt`, `n >= 1`.
///
/// The direction `spec.direction_d` must lie in `(-pi/2, pi/2)` with
/// `|Im(z e^{id})| < 2 pi cos d`; [`a_n_ray`] picks one.
pub fn a_n(n: usize, z: Complex64, spec: &RaySpec) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("A_n is defined for n >= 1"));
    }
    check_a_n_domain(z)?;
    let d = spec.direction_d;
    if !(d.abs() < 0.5 * PI) || a_n_slack(z, d) <= 0.0 {
        return Err(Error::domain(format!("A_n: direction {d} does not converge for z = {z}")));
    }
    if z == c(0.0, 0.0) {
        return Ok(z);
    }
    let power = 2 * n as i32 - 2;
    let r = integrate_ray(
        |t| {
            let (s, _) = sin_cos_over_expm1(t * z, TWO_PI * t);
            2.0 * t.powi(power) * s
        },
        spec,
    )?;
    Ok(if n % 2 == 1 { r.value } else { -r.value })
}

/// Power series `A_n(z) = sum_k B_{2(n+k)} z^{2k+1} / (2(n+k) (2k+1)!)` for `|z| < 2 pi`.
pub fn a_n_series(n: usize, z: Complex64, tr: &Truncation) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::domain("A_n is defined for n >= 1"));
    }
    let rho = (z / TWO_PI).norm_sqr();
    if !(rho < 1.0) {
        return Err(Error::domain(format!("A_n series needs |z| < 2 pi (|z| = {})", z.norm())));
    }
    // B_{2m}/(2m) = 2 (-1)^{m+1} zeta(2m) (2m-1)! / (2 pi)^{2m}, so the k = 0 term is
    // 2 (-1)^{n+1} zeta(2n) (2n-1)! / (2 pi)^{2n} z
    let mut lead = 2.0 / TWO_PI;
    for j in 1..2 * n {
        lead *= j as f64 / TWO_PI;
    }
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let mut term = z * (sign * lead * zeta(2 * n as u32));
    let mut sum = term;
    let z2 = z * z / (TWO_PI * TWO_PI);
    for k in 0..tr.max_terms {
        let m = (n + k) as f64;
        let kf = k as f64;
        let ratio = -(2.0 * m + 1.0) * (2.0 * m) / ((2.0 * kf + 3.0) * (2.0 * kf + 2.0)) * zeta(2 * (n + k) as u32 + 2)
            / zeta(2 * (n + k) as u32);
        term *= z2 * ratio;
        sum += term;
        // later ratios tend to rho from above by at most a factor (2m+1)(2m)/((2k+3)(2k+2))
        let growth = rho * (2.0 * m + 3.0) * (2.0 * m + 2.0) / ((2.0 * kf + 5.0) * (2.0 * kf + 4.0));
        if growth < 1.0 && term.norm() * growth / (1.0 - growth) <= tr.term_tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(tr.exhausted("a_n_series"))
}

/// `K_N(nu) = int_0^inf |sinh(nu t)| t^{2N} / (e^t - 1) dt`, finite for `|Re nu| < 1`.
pub fn k_n(big_n: usize, nu: Complex64, spec: &RaySpec) -> Result<f64> {
    if !(nu.re.abs() < 1.0) || !nu.im.is_finite() {
        return Err(Error::domain(format!("K_N diverges unless |Re nu| < 1 (nu = {nu})")));
    }
    if nu == c(0.0, 0.0) {
        return Ok(0.0);
    }
    let power = 2 * big_n as i32;
    let f = |t: f64| {
        let ratio = if t < 1.0 {
            (nu * t).sinh() / t.exp_m1()
        } else {
            // sinh(nu t)/(e^t - 1) without overflow
            (((nu - 1.0) * t).exp() - ((-nu - 1.0) * t).exp()) / (2.0 * -(-t).exp_m1())
        };
        c(ratio.norm() * t.powi(power), 0.0)
    };
    Ok(integrate_half_line(f, 0.0, spec.rel_tol)?.value.re)
}
