use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::ModularPoint;
use crate::specialfns::cmath::I;

/// Quadrature contract for an integral along `[0, inf e^{id})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    pub direction_d: f64,
    pub rel_tol: f64,
    pub panel_growth: f64,
    pub max_panels: usize,
}

impl RaySpec {
    pub const DEFAULT_REL_TOL: f64 = 1e-11;
    pub const DEFAULT_GROWTH: f64 = 2.0;
    pub const DEFAULT_MAX_PANELS: usize = 200;

    /// Default tolerances along direction `d`.
    pub fn along(direction_d: f64) -> Self {
        Self {
            direction_d,
            rel_tol: Self::DEFAULT_REL_TOL,
            panel_growth: Self::DEFAULT_GROWTH,
            max_panels: Self::DEFAULT_MAX_PANELS,
        }
    }

    /// The same tolerances along another direction.
    pub fn with_direction(&self, direction_d: f64) -> Self {
        Self { direction_d, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.panel_growth > 1.0) || self.max_panels == 0 || !self.direction_d.is_finite()
        {
            return Err(Error::domain(format!("invalid ray spec {self:?}")));
        }
        Ok(())
    }
}

impl Default for RaySpec {
    fn default() -> Self {
        Self::along(0.0)
    }
}

/// Which family of directions: `d` in `(-pi, 0)` or `(0, pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Half {
    Lower,
    Upper,
}

/// Decay rate of the perturbation integrand along direction `d`:
/// `Re(e^{id} i/tau) - |Re(e^{id} nu i/tau)|`. Positive means the ray integral converges.
pub fn slack(point: &ModularPoint, d: f64) -> f64 {
    let e = Complex64::from_polar(1.0, d);
    (e * I / point.tau).re - (e * point.nu * I / point.tau).re.abs()
}

/// An interval of directions on which the slack stays at least `margin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleCone {
    pub d_min: f64,
    pub d_max: f64,
    pub margin: f64,
}

impl AdmissibleCone {
    pub fn contains(&self, d: f64) -> bool {
        d > self.d_min && d < self.d_max
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.d_min + self.d_max)
    }
}

const GRID_STEP: f64 = PI / 36.0;
const FINE_STEPS: usize = 1440;

fn half_range(half: Half) -> (f64, f64) {
    match half {
        Half::Lower => (-PI, 0.0),
        Half::Upper => (0.0, PI),
    }
}

fn too_close(point: &ModularPoint, d: f64) -> bool {
    let arg_tau = point.tau.arg();
    let near = |a: f64| (d - a).abs() < GRID_STEP - 1e-12;
    near(0.0) || near(PI) || near(-PI) || near(arg_tau) || near(arg_tau - PI)
}

/// The connected run of directions with slack `>= margin` containing the best direction,
/// located on a fine scan and refined by bisection.
pub fn admissible_cone(point: &ModularPoint, half: Half, margin: f64) -> Result<AdmissibleCone> {
    let (lo, hi) = half_range(half);
    let step = (hi - lo) / FINE_STEPS as f64;
    let at = |k: usize| lo + step * k as f64;
    let (mut best_k, mut best) = (0, f64::NEG_INFINITY);
    for k in 1..FINE_STEPS {
        let s = slack(point, at(k));
        if s > best {
            best = s;
            best_k = k;
        }
    }
    if best <= margin {
        return Err(empty_cone(point, half));
    }
    let ok = |d: f64| slack(point, d) >= margin;
    let mut k_lo = best_k;
    while k_lo > 1 && ok(at(k_lo - 1)) {
        k_lo -= 1;
    }
    let mut k_hi = best_k;
    while k_hi + 1 < FINE_STEPS && ok(at(k_hi + 1)) {
        k_hi += 1;
    }
    let refine = |mut inside: f64, mut outside: f64| {
        for _ in 0..60 {
            let m = 0.5 * (inside + outside);
            if ok(m) {
                inside = m;
            } else {
                outside = m;
            }
        }
        inside
    };
    let d_min = if k_lo == 1 && ok(lo) { lo } else { refine(at(k_lo), at(k_lo - 1)) };
    let d_max = if k_hi + 1 == FINE_STEPS && ok(hi) { hi } else { refine(at(k_hi), at(k_hi + 1)) };
    Ok(AdmissibleCone { d_min, d_max, margin })
}

fn empty_cone(point: &ModularPoint, half: Half) -> Error {
    Error::domain(format!(
        "empty {half:?} cone: no ray direction gives a convergent integral at tau = {}, nu = {}",
        point.tau, point.nu
    ))
}

/// Deterministic ray chooser: argmax of the slack over `d = +-k pi/36`, `k = 1..35`,
/// skipping directions within `pi/36` of `0`, `+-pi` and the pole rays `arg tau`,
/// `arg tau - pi`. Falls back to the middle of the fine-scan cone when the grid misses
/// a thin cone.
pub fn choose_ray(point: &ModularPoint, half: Half) -> Result<RaySpec> {
    let sign = match half {
        Half::Lower => -1.0,
        Half::Upper => 1.0,
    };
    let mut best: Option<(f64, f64)> = None;
    for k in 1..36 {
        let d = sign * k as f64 * GRID_STEP;
        if too_close(point, d) {
            continue;
        }
        let s = slack(point, d);
        if best.is_none_or(|(bs, _)| s > bs) {
            best = Some((s, d));
        }
    }
    match best {
        Some((s, d)) if s > 0.0 => Ok(RaySpec::along(d)),
        _ => {
            let cone = admissible_cone(point, half, 0.0)?;
            Ok(RaySpec::along(cone.mid()))
        }
    }
}

/// `spec` itself when its direction is admissible for `half`, otherwise `spec`'s
/// tolerances along the direction picked by [`choose_ray`].
pub fn resolve_ray(point: &ModularPoint, spec: &RaySpec, half: Half) -> Result<RaySpec> {
    spec.validate()?;
    if check_direction(point, spec, half).is_ok() {
        return Ok(*spec);
    }
    Ok(spec.with_direction(choose_ray(point, half)?.direction_d))
}

/// Checks that `spec.direction_d` lies in `half` and gives a convergent integral.
pub(crate) fn check_direction(point: &ModularPoint, spec: &RaySpec, half: Half) -> Result<()> {
    spec.validate()?;
    let d = spec.direction_d;
    let (lo, hi) = half_range(half);
    if !(d > lo && d < hi) {
        return Err(Error::domain(format!("direction {d} is not in the {half:?} half")));
    }
    if slack(point, d) <= 0.0 {
        return Err(Error::domain(format!(
            "direction {d} is outside the admissible cone at tau = {}, nu = {}",
            point.tau, point.nu
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::c;

    #[test]
    fn real_case_ray() {
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 0.3)).unwrap();
        let spec = choose_ray(&p, Half::Lower).unwrap();
        assert!(spec.direction_d < 0.0 && spec.direction_d > -PI);
        assert!(slack(&p, spec.direction_d) > 0.0);
        // slack = cos d - 0.3 |sin d| peaks at the smallest allowed |d|
        assert!((spec.direction_d + GRID_STEP).abs() < 1e-15);
    }

    #[test]
    fn real_nu_beyond_one_has_empty_cone() {
        let p = ModularPoint::new(c(0.0, 1.0), c(1.2, 0.0)).unwrap();
        assert!(choose_ray(&p, Half::Lower).unwrap_err().is_domain());
        assert!(choose_ray(&p, Half::Upper).unwrap_err().is_domain());
        // the imaginary nu = 1.2i still has a cone: 1.2 |sin d| < cos d near d = 0
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 1.2)).unwrap();
        assert!(choose_ray(&p, Half::Lower).is_ok());
    }

    #[test]
    fn chooser_is_deterministic() {
        let p = ModularPoint::new(c(0.2, 0.9), c(0.1, 0.2)).unwrap();
        assert_eq!(choose_ray(&p, Half::Lower).unwrap(), choose_ray(&p, Half::Lower).unwrap());
    }

    #[test]
    fn upper_avoids_pole_ray() {
        let p = ModularPoint::new(c(0.3, 0.8), c(0.05, 0.1)).unwrap();
        let d = choose_ray(&p, Half::Upper).unwrap().direction_d;
        assert!((d - p.tau.arg()).abs() >= GRID_STEP - 1e-12);
        assert!(d > 0.0 && slack(&p, d) > 0.0);
    }

    #[test]
    fn cone_satisfies_margin() {
        let p = ModularPoint::new(c(0.2, 0.9), c(0.1, 0.2)).unwrap();
        let cone = admissible_cone(&p, Half::Lower, 0.05).unwrap();
        assert!(cone.d_min < cone.d_max);
        for k in 1..100 {
            let d = cone.d_min + (cone.d_max - cone.d_min) * k as f64 / 100.0;
            assert!(slack(&p, d) >= 0.05, "d = {d}");
        }
        assert!(slack(&p, cone.d_min - 1e-3) < 0.05 || cone.d_min <= -PI + 1e-9);
    }

    #[test]
    fn thin_cone_is_found_by_fallback() {
        // real case with large xi: slack = cos d - xi |sin d| is positive only for |d| < atan(1/xi)
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 30.0)).unwrap();
        let spec = choose_ray(&p, Half::Lower).unwrap();
        assert!(slack(&p, spec.direction_d) > 0.0);
    }

    #[test]
    fn resolve_keeps_admissible_directions() {
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 0.3)).unwrap();
        let spec = RaySpec { rel_tol: 1e-9, ..RaySpec::along(-0.3) };
        assert_eq!(resolve_ray(&p, &spec, Half::Lower).unwrap(), spec);
        let r = resolve_ray(&p, &RaySpec { rel_tol: 1e-9, ..RaySpec::default() }, Half::Lower).unwrap();
        assert_eq!(r.rel_tol, 1e-9);
        assert_eq!(r.direction_d, choose_ray(&p, Half::Lower).unwrap().direction_d);
    }

    #[test]
    fn direction_checks() {
        let p = ModularPoint::new(c(0.0, 1.0), c(0.0, 0.3)).unwrap();
        assert!(check_direction(&p, &RaySpec::along(-0.3), Half::Lower).is_ok());
        assert!(check_direction(&p, &RaySpec::along(0.3), Half::Lower).is_err());
        assert!(check_direction(&p, &RaySpec::along(-1.5), Half::Lower).is_err());
        let bad = RaySpec { rel_tol: 0.0, ..RaySpec::along(-0.3) };
        assert!(bad.validate().is_err());
    }
}
