//! Identity checks through the public API only.

use proptest::prelude::*;
use qmod_core::modularity::{
    default_inputs, qpochhammer_modular, run_check, theta_modular_simplified, CheckSummary, IdentityId,
};
use qmod_core::qcore::{qpochhammer_tau, theta_product_tau};
use qmod_core::raysum::{choose_ray, p_minus, p_plus, perturbation, stokes_sum, Half};
use qmod_core::{Complex64, ModularPoint, RaySpec, Truncation};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn every_shipped_grid_passes() {
    let (tr, spec) = (Truncation::default(), RaySpec::default());
    for id in IdentityId::ALL {
        let reports = run_check(id, &default_inputs(id).unwrap(), None, &tr, &spec);
        let summary = CheckSummary::of(&reports);
        assert!(summary.ok(), "{id}: {summary:?}");
    }
}

#[test]
fn modular_path_is_cheap_near_q_one() {
    // |q| = e^{-2 pi 0.01}: the direct product needs hundreds of factors, q* almost none
    let p = ModularPoint::new(c(0.0, 0.01), c(0.0, 0.004)).unwrap();
    let tr = Truncation::default();
    let direct = qpochhammer_tau(p.x, p.tau, &tr).unwrap();
    let modular = qpochhammer_modular(&p, &tr, &RaySpec::default()).unwrap();
    assert!(direct.terms > 500);
    assert!((direct.value - modular).norm() / direct.value.norm() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn modular_expansion_matches_product(
        tr_ in -0.4f64..0.4, ti in 0.3f64..1.5, nr in -0.3f64..0.3, ni in 0.02f64..0.3,
    ) {
        let p = ModularPoint::new(c(tr_, ti), c(nr, ni)).unwrap();
        prop_assume!(p.admissible_thm29());
        let tr = Truncation::default();
        let direct = qpochhammer_tau(p.x, p.tau, &tr).unwrap().value;
        let modular = qpochhammer_modular(&p, &tr, &RaySpec::default()).unwrap();
        prop_assert!((direct - modular).norm() / direct.norm() < 1e-8);
    }

    #[test]
    fn p_is_odd_in_nu(ti in 0.4f64..1.5, nr in -0.2f64..0.2, ni in -0.2f64..0.2) {
        let a = perturbation(&ModularPoint::new(c(0.0, ti), c(nr, ni)).unwrap()).unwrap();
        let b = perturbation(&ModularPoint::new(c(0.0, ti), c(-nr, -ni)).unwrap()).unwrap();
        prop_assert!((a + b).norm() < 1e-10);
    }

    #[test]
    fn stokes_jump(tr_ in -0.3f64..0.3, ti in 0.6f64..1.4, nr in -0.1f64..0.1, ni in 0.0f64..0.15) {
        let p = ModularPoint::new(c(tr_, ti), c(nr, ni)).unwrap();
        let lower = p_minus(&p, &choose_ray(&p, Half::Lower).unwrap()).unwrap().value;
        let upper = p_plus(&p, &choose_ray(&p, Half::Upper).unwrap()).unwrap().value;
        let jump = stokes_sum(&p, &Truncation::default()).unwrap();
        prop_assert!((lower - upper - jump).norm() < 1e-9);
    }

    #[test]
    fn theta_modular_simplified_form(tr_ in -0.4f64..0.4, ti in 0.4f64..1.5, nr in -0.3f64..0.3, ni in -0.2f64..0.2) {
        let tau = c(tr_, ti);
        let nu = c(nr, ni);
        let tr = Truncation::default();
        let x = (c(0.0, std::f64::consts::TAU) * nu).exp();
        let lhs = theta_product_tau(tau, x, &tr).unwrap();
        let rhs = theta_modular_simplified(tau, nu, &tr).unwrap();
        prop_assert!((lhs - rhs).norm() / lhs.norm().max(rhs.norm()) < 1e-9);
    }
}
