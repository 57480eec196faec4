//! `g^+`, the Stirling remainder `G` and its odd part `G*`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::quad::integrate_ray;
use super::RaySpec;
use crate::error::{Error, Result};
use crate::qcore::ModularPoint;
use crate::specialfns::cmath::{finite, ln, on_negative_axis, TWO_PI};
use crate::specialfns::{fn_b_unchecked, log_gamma};

/// Binet remainder `log Gamma(z+1) - (z + 1/2) log z + z - log sqrt(2 pi)`.
pub fn stirling_remainder(z: Complex64) -> Result<Complex64> {
    if on_negative_axis(z) {
        return Err(Error::domain(format!("Stirling remainder needs z off (-inf, 0] (z = {z})")));
    }
    finite(log_gamma(z + 1.0)? - (z + 0.5) * ln(z) + z - 0.5 * (2.0 * PI).ln(), "stirling_remainder")
}

/// The ray `d = -arg(z)/2` used for `g^+(z)`; `Re(z e^{id}) = |z| cos(arg z / 2) > 0`.
pub fn g_plus_ray(z: Complex64) -> Result<RaySpec> {
    if on_negative_axis(z) {
        return Err(Error::domain(format!("g_plus: no admissible ray for z = {z} on (-inf, 0]")));
    }
    Ok(RaySpec::along(-0.5 * z.arg()))
}

/// `g^+(z) = -int_0^{inf e^{id}} B(t) e^{-2 pi z t} dt/t` along `spec.direction_d`,
/// which must satisfy `|d| < pi/2` and `Re(z e^{id}) > 0`.
pub fn g_plus(z: Complex64, spec: &RaySpec) -> Result<Complex64> {
    let d = spec.direction_d;
    let e = Complex64::from_polar(1.0, d);
    if !(d.abs() < 0.5 * PI) || !((z * e).re > 0.0) {
        return Err(Error::domain(format!("g_plus: direction {d} is not admissible for z = {z}")));
    }
    let r = integrate_ray(|t| -fn_b_unchecked(t) * (-TWO_PI * z * t).exp() / t, spec)?;
    Ok(r.value)
}

/// `G(tau, nu) = -log Gamma(s+1) + (s + 1/2) log s - s + log sqrt(2 pi)`, `s = nu/tau`.
pub fn big_g(point: &ModularPoint) -> Result<Complex64> {
    let s = point.s;
    if on_negative_axis(s) {
        return Err(Error::domain(format!("G needs nu/tau off (-inf, 0] (nu/tau = {s})")));
    }
    Ok(-stirling_remainder(s)?)
}

/// `G*(tau, nu) = (G(tau, nu) - G(tau, -nu)) / 2`, defined for `nu/tau` off the real axis
/// and for positive real `nu/tau` through the upper-side limit of `G(tau, -nu)`.
pub fn big_g_star(point: &ModularPoint) -> Result<Complex64> {
    let neg = ModularPoint::new(point.tau, -point.nu)?;
    if point.s.im == 0.0 {
        return Err(Error::domain(format!("G* needs nu/tau off the real axis (nu/tau = {})", point.s)));
    }
    Ok(0.5 * (big_g(point)? - big_g(&neg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::{c, I};
    use proptest::prelude::*;

    fn gp(z: Complex64) -> Complex64 {
        g_plus(z, &g_plus_ray(z).unwrap()).unwrap()
    }

    #[test]
    fn g_plus_is_minus_binet_remainder() {
        for z in [c(2.0, 0.0), c(1.0, 0.0), c(2.5, 0.0), c(1.0, 1.0), c(5.0, -2.0)] {
            let r = gp(z) + stirling_remainder(z).unwrap();
            assert!(r.norm() < 1e-10, "z = {z}: {r}");
        }
        let v = gp(c(10.0, 0.0));
        assert!(v.norm() <= 1.0 / 120.0);
        assert!((v.re + 0.008_330_563_433_360_8).abs() < 1e-13);
    }

    #[test]
    fn g_plus_reflection() {
        // g(z) + g(e^{i pi} z) = log(1 - e^{-2 pi i z}); the rotated argument is reached
        // through the ray d = -arg(e^{i pi} z)/2
        let z = c(0.3, -0.4);
        let zr = -z; // e^{i pi} z lands in the upper half-plane, arg in (0, pi)
        let lhs = gp(z) + gp(zr);
        let rhs = ln(1.0 - (-TWO_PI * I * z).exp());
        assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn g_plus_rejects_cut() {
        assert!(g_plus_ray(c(-1.0, 0.0)).is_err());
        assert!(g_plus(c(1.0, 0.0), &RaySpec::along(1.7)).is_err());
    }

    #[test]
    fn big_g_examples() {
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 1.0)).unwrap();
        let v = big_g(&p).unwrap();
        assert!((v.re - (0.5 * (2.0 * PI).ln() - 1.0)).abs() < 1e-14);
        assert!((v.re + 0.081_061_4).abs() < 1e-7);
        // exp(G) = sqrt(2 pi s) e^{s log s - s} / Gamma(s+1)
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 0.7)).unwrap();
        let s = p.s;
        let rhs = (2.0 * PI * s).sqrt() * (s * ln(s) - s).exp() / log_gamma(s + 1.0).unwrap().exp();
        assert!((big_g(&p).unwrap().exp() - rhs).norm() < 1e-12);
        let bad = ModularPoint::new(c(0.0, 1.0), c(0.0, -0.3)).unwrap();
        assert!(big_g(&bad).unwrap_err().is_domain());
    }

    #[test]
    fn big_g_matches_g_plus() {
        let p = ModularPoint::new(c(0.2, 0.9), c(0.1, 0.2)).unwrap();
        assert!((big_g(&p).unwrap() - gp(p.s)).norm() < 1e-10);
    }

    fn reflection_residual(tau: Complex64, nu: Complex64) -> f64 {
        let p = ModularPoint::new(tau, nu).unwrap();
        let m = ModularPoint::new(tau, -nu).unwrap();
        let s = p.s;
        let rhs = if s.im < 0.0 { ln(1.0 - (-TWO_PI * I * s).exp()) } else { ln(1.0 - (TWO_PI * I * s).exp()) };
        (big_g(&p).unwrap() + big_g(&m).unwrap() - rhs).norm()
    }

    #[test]
    fn reflection_example() {
        assert!(reflection_residual(c(0.0, 1.0), c(0.1, 0.3)) < 1e-10);
    }

    #[test]
    fn g_star_is_odd() {
        let p = ModularPoint::new(c(0.0, 1.0), c(0.1, 0.2)).unwrap();
        let m = ModularPoint::new(c(0.0, 1.0), c(-0.1, -0.2)).unwrap();
        assert!((big_g_star(&p).unwrap() + big_g_star(&m).unwrap()).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn reflection_grid(tr in -1.0f64..1.0, ti in 0.2f64..2.0, nr in -2.0f64..2.0, ni in -2.0f64..2.0) {
            let tau = c(tr, ti);
            let nu = c(nr, ni);
            prop_assume!((nu / tau).im.abs() > 1e-3);
            prop_assert!(reflection_residual(tau, nu) < 1e-10);
        }
    }
}
