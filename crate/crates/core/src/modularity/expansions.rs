//! Modular-type evaluation of `(x;q)_inf` and the forms derived from it.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::{qpochhammer, ModularPoint, Truncation};
use crate::raysum::{big_g, big_g_star, p_minus, resolve_ray, Half, RaySpec};
use crate::specialfns::cmath::{c, finite, ln, ln_1m, sqrt, TWO_PI};
use crate::specialfns::{dilog, log_gamma};

/// A modular evaluation with its bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularEvaluation {
    /// `(x;q)_inf`.
    pub value: Complex64,
    /// A logarithm of `value` assembled from the individual terms.
    pub log_value: Complex64,
    /// Factors of `(x* q*; q*)_inf` used.
    pub qstar_terms: usize,
    /// Quadrature error estimate of the perturbation term.
    pub quad_error: f64,
}

/// Which anti-symmetrized form to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `sqrt((1-x)/(1-x*))` prefactor, for `Im(nu/tau) > 0`.
    Upper,
    /// `sqrt((1-x)(1-1/x*))/(1-x*)` prefactor, for `Im(nu/tau) < 0`.
    Lower,
}

fn require_admissible(point: &ModularPoint) -> Result<()> {
    if !point.admissible_thm29() {
        return Err(Error::domain(format!(
            "modular expansion needs nu off (-inf,-1] U [1,inf) and nu/tau off (-inf,0] (tau = {}, nu = {})",
            point.tau, point.nu
        )));
    }
    Ok(())
}

// Li2(x)/log q + P(tau, nu) - 2 pi i tau/24, shared by every form; also returns the quadrature error.
fn common_exponent(point: &ModularPoint, spec: &RaySpec) -> Result<(Complex64, f64)> {
    let ray = resolve_ray(point, spec, Half::Lower)?;
    let p = p_minus(point, &ray)?;
    let e = dilog(point.x) / point.log_q() + p.value - point.log_q() / 24.0;
    Ok((e, p.error))
}

/// Evaluates `(x;q)_inf` through
/// `q^{-1/24} sqrt(1-x) (x* q*; q*)_inf exp(Li2(x)/log q + G(tau, nu) + P(tau, nu))`,
/// with `log q = 2 pi i tau` and principal `sqrt(1-x)`.
pub fn qpochhammer_modular_eval(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> Result<ModularEvaluation> {
    require_admissible(point)?;
    let (e, quad_error) = common_exponent(point, spec)?;
    let qs = point.q_star;
    let prod = qpochhammer(point.x_star * qs, qs, tr)?;
    let log_value = e + 0.5 * ln_1m(point.x) + big_g(point)? + ln(prod.value);
    let value = sqrt(1.0 - point.x) * prod.value * (e + big_g(point)?).exp();
    Ok(ModularEvaluation {
        value: finite(value, "qpochhammer_modular")?,
        log_value,
        qstar_terms: prod.terms,
        quad_error,
    })
}

/// `(x;q)_inf` by the modular-type expansion.
pub fn qpochhammer_modular(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> Result<Complex64> {
    Ok(qpochhammer_modular_eval(point, tr, spec)?.value)
}

/// The anti-symmetrized forms built on `G* = (G(tau, nu) - G(tau, -nu))/2` and `(x*; q*)_inf`.
pub fn qpochhammer_modular_variant(
    point: &ModularPoint,
    variant: Variant,
    tr: &Truncation,
    spec: &RaySpec,
) -> Result<Complex64> {
    require_admissible(point)?;
    let im_s = point.s.im;
    let ok = match variant {
        Variant::Upper => im_s > 0.0,
        Variant::Lower => im_s < 0.0,
    };
    if !ok {
        return Err(Error::domain(format!("{variant:?} variant does not apply at nu/tau = {}", point.s)));
    }
    let (e, _) = common_exponent(point, spec)?;
    let xs = point.x_star;
    let body = qpochhammer(xs, point.q_star, tr)?.value * (e + big_g_star(point)?).exp();
    let pref = match variant {
        Variant::Upper => sqrt((1.0 - point.x) / (1.0 - xs)),
        Variant::Lower => sqrt((1.0 - point.x) * (1.0 - xs.inv())) / (1.0 - xs),
    };
    finite(pref * body, "qpochhammer_modular_variant")
}

/// The completed Ramanujan form
/// `sqrt(2 pi s (1-x))/Gamma(s+1) q^{-1/24} e^{s(log s - 1)} e^{Li2(x)/log q + P} (q* x*; q*)_inf`.
pub fn ramanujan_completed(point: &ModularPoint, tr: &Truncation, spec: &RaySpec) -> Result<Complex64> {
    require_admissible(point)?;
    let s = point.s;
    let (e, _) = common_exponent(point, spec)?;
    let qs = point.q_star;
    let prod = qpochhammer(qs * point.x_star, qs, tr)?.value;
    let pref = sqrt(2.0 * PI * s * (1.0 - point.x));
    let expo = e + s * (ln(s) - 1.0) - log_gamma(s + 1.0)?;
    finite(pref * expo.exp() * prod, "ramanujan_completed")
}

/// Jackson's `Gamma_q(z) = (q;q)_inf/(q^z;q)_inf (1-q)^{1-z}` with both products taken
/// through the modular expansion, `q = e^{2 pi i tau}`.
pub fn q_gamma_modular(z: Complex64, tau: Complex64, tr: &Truncation, spec: &RaySpec) -> Result<Complex64> {
    let num = ModularPoint::new(tau, tau)?;
    let den = ModularPoint::new(tau, z * tau)?;
    let a = qpochhammer_modular_eval(&num, tr, spec)?.log_value;
    let b = qpochhammer_modular_eval(&den, tr, spec)?.log_value;
    let log_one_minus_q = ln_1m(num.q);
    finite((a - b + (1.0 - z) * log_one_minus_q).exp(), "q_gamma_modular")
}

/// `log (x;q)_inf - [log(1-x)/2 - Li2(x)/(2 pi alpha)]` at `q = e^{-2 pi alpha}`, real
/// `0 < x < 1`, with the product evaluated on the modular path.
pub fn q_to_one_remainder(alpha: f64, x: f64, tr: &Truncation, spec: &RaySpec) -> Result<f64> {
    if !(alpha > 0.0) || !(x > 0.0 && x < 1.0) {
        return Err(Error::domain(format!("q_to_one_remainder needs alpha > 0 and 0 < x < 1 (got {alpha}, {x})")));
    }
    // x = e^{2 pi i nu} with nu = i log(1/x)/(2 pi)
    let nu = c(0.0, -x.ln() / TWO_PI);
    let point = ModularPoint::new(c(0.0, alpha), nu)?;
    let log_value = qpochhammer_modular_eval(&point, tr, spec)?.log_value;
    let xc = c(x, 0.0);
    let lead = 0.5 * (1.0 - x).ln() - dilog(xc).re / (TWO_PI * alpha);
    Ok(log_value.re - lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{q_gamma, qpochhammer_tau};
    use crate::specialfns::cmath::I;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pt(tr: f64, ti: f64, nr: f64, ni: f64) -> ModularPoint {
        ModularPoint::new(c(tr, ti), c(nr, ni)).unwrap()
    }

    fn direct(p: &ModularPoint) -> Complex64 {
        qpochhammer_tau(p.x, p.tau, &Truncation::default()).unwrap().value
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / a.norm().max(b.norm())
    }

    #[test]
    fn matches_direct_product() {
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        for p in [pt(0.0, 1.0, 0.0, 0.3), pt(0.2, 0.9, 0.1, 0.2), pt(0.0, 0.3, 0.25, 0.0), pt(-0.3, 1.2, 0.1, 0.2)] {
            let m = qpochhammer_modular(&p, &tr, &spec).unwrap();
            assert!(rel(m, direct(&p)) < 1e-9, "at {:?}: {}", (p.tau, p.nu), rel(m, direct(&p)));
        }
    }

    #[test]
    fn near_q_one_uses_few_terms() {
        let p = pt(0.0, 0.05, 0.0, 0.015);
        let m = qpochhammer_modular_eval(&p, &Truncation::default(), &RaySpec::default()).unwrap();
        let d = qpochhammer_tau(p.x, p.tau, &Truncation::new(1e-17, 100_000).unwrap()).unwrap().value;
        assert!(rel(m.value, d) < 1e-8);
        assert!(m.qstar_terms <= 1000);
        assert!((m.log_value.exp() - m.value).norm() < 1e-12 * m.value.norm());
    }

    #[test]
    fn inadmissible_is_domain_error() {
        let p = pt(0.0, 1.0, 1.5, 0.0);
        let e = qpochhammer_modular(&p, &Truncation::default(), &RaySpec::default()).unwrap_err();
        assert!(e.is_domain());
    }

    #[test]
    fn variants_agree_with_main_form() {
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        // nu/tau = 0.2 + 0.1i: Upper side
        let up = pt(0.0, 1.0, -0.1, 0.2);
        let a = qpochhammer_modular_variant(&up, Variant::Upper, &tr, &spec).unwrap();
        assert!(rel(a, qpochhammer_modular(&up, &tr, &spec).unwrap()) < 1e-9);
        assert!(qpochhammer_modular_variant(&up, Variant::Lower, &tr, &spec).is_err());
        // nu/tau = 0.2 - 0.1i: Lower side
        let lo = pt(0.0, 1.0, 0.1, 0.2);
        let b = qpochhammer_modular_variant(&lo, Variant::Lower, &tr, &spec).unwrap();
        assert!(rel(b, qpochhammer_modular(&lo, &tr, &spec).unwrap()) < 1e-9);
        for p in [pt(0.3, 0.8, 0.1, 0.05), pt(0.3, 0.8, 0.3, -0.05)] {
            let v = if p.s.im > 0.0 { Variant::Upper } else { Variant::Lower };
            let a = qpochhammer_modular_variant(&p, v, &tr, &spec).unwrap();
            assert!(rel(a, direct(&p)) < 1e-9);
        }
    }

    #[test]
    fn ramanujan_form_is_a_rearrangement() {
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut n = 0;
        while n < 20 {
            let p = pt(
                rng.gen_range(-0.4..0.4),
                rng.gen_range(0.3..1.5),
                rng.gen_range(-0.4..0.4),
                rng.gen_range(0.05..0.6),
            );
            if !p.admissible_thm29() {
                continue;
            }
            let a = ramanujan_completed(&p, &tr, &spec).unwrap();
            let b = qpochhammer_modular(&p, &tr, &spec).unwrap();
            assert!(rel(a, b) < 1e-12, "{:?}: {}", (p.tau, p.nu), rel(a, b));
            n += 1;
        }
        let p = pt(0.0, 0.1, 0.0, 0.05);
        assert!(rel(ramanujan_completed(&p, &tr, &spec).unwrap(), direct(&p)) < 1e-8);
    }

    #[test]
    fn ramanujan_at_s_one_is_euler_function() {
        let p = pt(0.0, 0.7, 0.0, 0.7);
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        let eta = crate::qcore::eta(p.tau, &tr).unwrap();
        let qq = eta / (PI * I * p.tau / 12.0).exp();
        assert!(rel(ramanujan_completed(&p, &tr, &spec).unwrap(), qq) < 1e-9);
    }

    #[test]
    fn q_gamma_limit() {
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        let gamma = |z: f64| log_gamma(c(z, 0.0)).unwrap().re.exp();
        let alpha = 0.02;
        let tau = c(0.0, alpha);
        let q = c((-TWO_PI * alpha).exp(), 0.0);
        for z in [1.5, 2.5] {
            let m = q_gamma_modular(c(z, 0.0), tau, &tr, &spec).unwrap();
            let d = q_gamma(c(z, 0.0), q, &Truncation::new(1e-17, 100_000).unwrap()).unwrap();
            assert!(rel(m, d) < 1e-9);
            let dev = (m.re / gamma(z) - 1.0).abs();
            if z == 1.5 {
                assert!(dev < 0.01, "z = {z}: {dev}");
            } else {
                // 1 - q = 0.118 here, and the deviation at z = 2.5 is 2.3%
                assert!(dev > 0.02 && dev < 0.03, "z = {z}: {dev}");
            }
        }
        let m = q_gamma_modular(c(2.5, 0.0), c(0.0, 0.005), &tr, &spec).unwrap();
        assert!((m.re / gamma(2.5) - 1.0).abs() < 0.01);
    }

    #[test]
    fn q_to_one_limit() {
        let (tr, spec) = (Truncation::default(), RaySpec::default());
        let a = q_to_one_remainder(0.01, 0.5, &tr, &spec).unwrap();
        let b = q_to_one_remainder(0.005, 0.5, &tr, &spec).unwrap();
        assert!(a.abs() < 1e-2 && b.abs() < a.abs(), "{a} {b}");
        // cross-check the modular log against the direct product where both are cheap
        let q = c((-TWO_PI * 0.01).exp(), 0.0);
        let d = crate::qcore::log_qpochhammer(c(0.5, 0.0), q, &tr).unwrap().value.re;
        let lead = 0.5 * 0.5f64.ln() - dilog(c(0.5, 0.0)).re / (TWO_PI * 0.01);
        assert!((d - lead - a).abs() < 1e-10);
    }
}
