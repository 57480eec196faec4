//! Gauss–Legendre panel quadrature along rays `t = r e^{id}` and on finite intervals.

use std::sync::OnceLock;

use num_complex::Complex64;

use super::RaySpec;
use crate::error::{Error, Result};
use crate::specialfns::cmath::c;

/// Absolute floor added to every tolerance test.
pub const ABS_FLOOR: f64 = 1e-15;
/// End of the first panel `[0, R0]`.
pub const R0: f64 = 1e-6;

const MAX_DEPTH: u32 = 40;
/// Integrand evaluations allowed per panel before giving up.
const MAX_PANEL_EVALS: usize = 2_000_000;

/// A quadrature value with its error estimate and work counters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Sum over accepted panels of `|I_32 - I_16|`; a pessimistic bound since it
    /// measures the error of the lower-order rule.
    pub error: f64,
    pub panels: usize,
    pub evals: usize,
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_rule(n: usize) -> Rule {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 1..=n {
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    Rule { nodes, weights }
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| (legendre_rule(16), legendre_rule(32)))
}

fn apply(rule: &Rule, f: &dyn Fn(f64) -> Complex64, a: f64, b: f64) -> Complex64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = c(0.0, 0.0);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        s += f(mid + half * x) * *w;
    }
    s * half
}

#[derive(Default)]
struct Acc {
    value: Complex64,
    error: f64,
    evals: usize,
    exhausted: bool,
}

// Adaptive 16/32-point panel; returns the accepted value of [a, b].
fn adapt(
    f: &dyn Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: &dyn Fn(Complex64) -> f64,
    depth: u32,
    acc: &mut Acc,
) -> Complex64 {
    let (r16, r32) = rules();
    let i16 = apply(r16, f, a, b);
    let i32 = apply(r32, f, a, b);
    acc.evals += 48;
    let diff = (i32 - i16).norm();
    let out_of_budget = depth >= MAX_DEPTH || acc.evals >= MAX_PANEL_EVALS;
    if diff <= tol(i32) || out_of_budget || !diff.is_finite() {
        if out_of_budget && diff > tol(i32) {
            acc.exhausted = true;
        }
        acc.error += diff;
        return i32;
    }
    let m = 0.5 * (a + b);
    let sub = |v: Complex64| 0.5 * tol(v);
    adapt(f, a, m, &sub, depth + 1, acc) + adapt(f, m, b, &sub, depth + 1, acc)
}

/// Integrates `g` along `t = r e^{id}`, `r` in `(0, inf)`, with `d = spec.direction_d`.
///
/// Panels are `[0, R0]` and then `[r, growth * r]`; each is refined by bisection until
/// the 16- and 32-point rules agree. The ray is truncated after two consecutive
/// negligible panels beyond `r = 1`.
pub fn integrate_ray<F>(g: F, spec: &RaySpec) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Complex64,
{
    spec.validate()?;
    let e = Complex64::from_polar(1.0, spec.direction_d);
    let h = |r: f64| g(e * r) * e;
    let mut acc = Acc::default();
    let mut l1 = 0.0;
    let mut quiet = 0;
    let (mut a, mut b) = (0.0, R0);
    for panel in 0..spec.max_panels {
        let scale = l1;
        let tol = |v: Complex64| 0.1 * (spec.rel_tol * v.norm().max(scale) + ABS_FLOOR);
        let mut local = Acc::default();
        let v = adapt(&h, a, b, &tol, 0, &mut local);
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Overflow(format!("ray integrand not finite on [{a}, {b}]")));
        }
        acc.value += v;
        acc.error += local.error;
        acc.evals += local.evals + 1;
        acc.exhausted |= local.exhausted;
        if local.exhausted {
            return Err(Error::convergence(format!("panel [{a}, {b}] did not converge")));
        }
        l1 += v.norm();
        let negligible = 0.1 * (spec.rel_tol * l1 + ABS_FLOOR);
        if b >= 1.0 && v.norm() <= negligible && h(b).norm() * b <= negligible {
            quiet += 1;
            if quiet == 2 {
                return finish(acc, l1, panel + 1, spec.rel_tol);
            }
        } else {
            quiet = 0;
        }
        a = b;
        b *= spec.panel_growth;
    }
    Err(Error::convergence(format!(
        "ray quadrature did not decay within {} panels (d = {})",
        spec.max_panels, spec.direction_d
    )))
}

fn finish(acc: Acc, l1: f64, panels: usize, rel_tol: f64) -> Result<QuadResult> {
    // Cancellation-aware acceptance: the budget scales with the L1 mass of the panels.
    let budget = rel_tol * l1.max(acc.value.norm()) + ABS_FLOOR * panels as f64;
    if acc.exhausted || acc.error > budget {
        return Err(Error::convergence(format!(
            "quadrature error estimate {:e} exceeds tolerance {:e}",
            acc.error, budget
        )));
    }
    Ok(QuadResult { value: acc.value, error: acc.error, panels, evals: acc.evals })
}

/// Adaptive Gauss–Legendre on a finite real interval `[a, b]`.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    if !(a.is_finite() && b.is_finite()) || !(rel_tol > 0.0) {
        return Err(Error::domain("integrate_interval: bounds must be finite and rel_tol positive"));
    }
    let (r16, _) = rules();
    let scale = apply(r16, &f, a, b).norm();
    let tol = |v: Complex64| 0.1 * (rel_tol * v.norm().max(scale) + ABS_FLOOR);
    let mut acc = Acc::default();
    acc.value = adapt(&f, a, b, &tol, 0, &mut acc);
    if !acc.value.re.is_finite() || !acc.value.im.is_finite() {
        return Err(Error::Overflow("interval integrand not finite".into()));
    }
    let l1 = acc.value.norm().max(scale);
    finish(acc, l1, 1, rel_tol)
}

/// `int_a^inf f(t) dt` on the real line via a ray in the shifted variable.
pub fn integrate_half_line<F>(f: F, a: f64, rel_tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    let spec = RaySpec { rel_tol, ..RaySpec::along(0.0) };
    integrate_ray(|t| f(a + t.re), &spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::{inv_expm1, TWO_PI};
    use std::f64::consts::PI;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let (r16, r32) = rules();
        let w16: f64 = r16.weights.iter().sum();
        let w32: f64 = r32.weights.iter().sum();
        assert!((w16 - 2.0).abs() < 1e-14 && (w32 - 2.0).abs() < 1e-14);
        // x^30 on [-1, 1] is integrated exactly by the 16-point rule
        let f = |x: f64| c(x.powi(30), 0.0);
        assert!((apply(r16, &f, -1.0, 1.0).re - 2.0 / 31.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_along_real_axis() {
        let r = integrate_ray(|t| (-TWO_PI * t).exp(), &RaySpec::along(0.0)).unwrap();
        assert!((r.value - 1.0 / TWO_PI).norm() < 1e-15);
        assert!(r.error < 1e-11 * r.value.norm() + 1e-13);
    }

    #[test]
    fn rotated_ray_gives_same_laplace_value() {
        // int_0^inf e^{-zt} dt = 1/z for any ray with Re(z e^{id}) > 0
        let z = c(1.0, 2.0);
        for d in [-0.9, -0.3, 0.0] {
            let r = integrate_ray(|t| (-z * t).exp(), &RaySpec::along(d)).unwrap();
            assert!((r.value - z.inv()).norm() < 1e-13, "d = {d}");
        }
    }

    #[test]
    fn divergent_integrand_fails() {
        let spec = RaySpec { max_panels: 60, ..RaySpec::along(0.0) };
        let err = integrate_ray(|t| (0.1 * t).exp(), &spec).unwrap_err();
        assert!(matches!(err, Error::Convergence(_) | Error::Overflow(_)));
    }

    fn sin_binet(lambda: Complex64) -> Complex64 {
        // int_0^inf sin(lambda u)/(e^{2 pi u} - 1) du
        integrate_ray(|u| (lambda * u).sin() * inv_expm1(TWO_PI * u), &RaySpec::along(0.0)).unwrap().value
    }

    fn cos_binet(lambda: Complex64) -> Complex64 {
        integrate_ray(
            |u| {
                let lu = lambda * u;
                // (1 - cos(lu))/u = 2 sin^2(lu/2)/u, no cancellation at small u
                let s = (0.5 * lu).sin();
                2.0 * s * s / u * inv_expm1(TWO_PI * u)
            },
            &RaySpec::along(0.0),
        )
        .unwrap()
        .value
    }

    #[test]
    fn binet_examples() {
        assert!((sin_binet(c(1.0, 0.0)).re - 0.040_988_3).abs() < 1e-7);
        assert!((cos_binet(c(1.0, 0.0)).re - 0.020_662_4).abs() < 1e-7);
    }

    #[test]
    fn binet_closed_forms() {
        for lambda in [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(1.0, 1.0)] {
            let closed74 = 0.25 + 0.5 * (inv_expm1(lambda) - lambda.inv());
            assert!((sin_binet(lambda) - closed74).norm() < 1e-10, "lambda = {lambda}");
            let closed75 = lambda / 4.0 + 0.5 * ((1.0 - (-lambda).exp()) / lambda).ln();
            assert!((cos_binet(lambda) - closed75).norm() < 1e-10, "lambda = {lambda}");
        }
    }

    #[test]
    fn interval_and_half_line() {
        let r = integrate_interval(|x| c(x.sin(), 0.0), 0.0, PI, 1e-12).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-14);
        let r = integrate_half_line(|x| c((-x).exp(), 0.0), 2.0, 1e-12).unwrap();
        assert!((r.value.re - (-2f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        let g = |t: Complex64| (t * 3.0).sin() * (-t).exp();
        let a = integrate_ray(g, &RaySpec::along(-0.2)).unwrap();
        let b = integrate_ray(g, &RaySpec::along(-0.2)).unwrap();
        assert_eq!(a, b);
    }
}
