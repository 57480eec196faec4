//! Ray quadrature and every integral-defined quantity: the perturbation term `P`
//! and its derivatives, the Binet-type functions `g^+` and `G`, the coefficient
//! functions `A_n`, the bound integrals `K_N` and the almost-modular term `M`.

mod almost;
mod binet;
mod pterm;
mod quad;
mod ray;
mod series;

pub use almost::{m_almost_modular, pv_m_direct, PV_DEFAULT_TERMS, PV_DELTA};
pub use binet::{big_g, big_g_star, g_plus, g_plus_ray, stirling_remainder};
pub use pterm::{dp_dnu, dp_dtau, p_minus, p_plus, perturbation, perturbation_dnu, perturbation_dtau, stokes_sum};
pub use quad::{integrate_half_line, integrate_interval, integrate_ray, QuadResult, ABS_FLOOR, R0};
pub use ray::{admissible_cone, choose_ray, resolve_ray, slack, AdmissibleCone, Half, RaySpec};
pub use series::{a_n, a_n_ray, a_n_series, k_n};

use num_complex::Complex64;

use crate::specialfns::cmath::{inv_expm1, I};

/// `(sin w, cos w) / (e^u - 1)` without intermediate overflow when `|Im w| < Re u`
/// and both are large, which is the situation along every admissible ray.
pub(crate) fn sin_cos_over_expm1(w: Complex64, u: Complex64) -> (Complex64, Complex64) {
    if u.re > 1.0 {
        let a = (I * w - u).exp();
        let b = (-I * w - u).exp();
        let den = 1.0 - (-u).exp();
        ((a - b) / (2.0 * I * den), (a + b) / (2.0 * den))
    } else {
        let e = inv_expm1(u);
        (w.sin() * e, w.cos() * e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::c;

    #[test]
    fn stable_ratio_matches_naive() {
        for (w, u) in [(c(0.3, 0.2), c(0.5, 0.1)), (c(2.0, -3.0), c(4.0, 1.0)), (c(-1.0, 0.5), c(1.5, -2.0))] {
            let (s, co) = sin_cos_over_expm1(w, u);
            let e = (u.exp() - 1.0).inv();
            assert!((s - w.sin() * e).norm() < 1e-14);
            assert!((co - w.cos() * e).norm() < 1e-14);
        }
        let (s, _) = sin_cos_over_expm1(c(0.0, 800.0), c(900.0, 0.0));
        assert!(s.re.is_finite() && s.im.is_finite() && s.norm() < 1e-40);
    }
}
