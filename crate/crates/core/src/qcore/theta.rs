//! Jacobi theta `theta(q, x) = (q, -sqrt(q) x, -sqrt(q)/x; q)_inf = sum_n q^{n^2/2} x^n`.
//!
//! The `_tau` entry points take `sqrt(q) = e^{pi i tau}`. The `q` entry points use the
//! principal square root and therefore reject `q` on the cut `(-inf, 0]`, where the two
//! conventions cannot be told apart.

use num_complex::Complex64;

use super::products::product_with_log_q;
use super::Truncation;
use crate::error::{Error, Result};
use crate::specialfns::cmath::{c, finite, ln, on_negative_axis, I, TWO_PI};

fn log_q_principal(q: Complex64, what: &str) -> Result<Complex64> {
    if !(q.norm() < 1.0) {
        return Err(Error::domain(format!("{what}: |q| must be < 1 (q = {q})")));
    }
    if on_negative_axis(q) {
        return Err(Error::domain(format!(
            "{what}: q = {q} lies on (-inf, 0]; sqrt(q) is ambiguous there, pass tau instead"
        )));
    }
    Ok(ln(q))
}

fn log_q_tau(tau: Complex64, what: &str) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::domain(format!("{what}: Im tau must be positive (tau = {tau})")));
    }
    Ok(TWO_PI * I * tau)
}

fn check_x(x: Complex64, what: &str) -> Result<()> {
    if x.norm() == 0.0 || !x.re.is_finite() || !x.im.is_finite() {
        return Err(Error::domain(format!("{what}: x must be finite and nonzero")));
    }
    Ok(())
}

fn product(lq: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    check_x(x, "theta_product")?;
    let sq = (0.5 * lq).exp();
    let a = product_with_log_q(lq.exp(), lq, tr, "theta_product")?.value;
    let b = product_with_log_q(-sq * x, lq, tr, "theta_product")?.value;
    let d = product_with_log_q(-sq / x, lq, tr, "theta_product")?.value;
    finite(a * b * d, "theta_product")
}

fn laurent(lq: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    check_x(x, "theta_laurent")?;
    let lsq = 0.5 * lq;
    let lx = ln(x);
    let log_m = lx.re.abs();
    let mut sum = c(1.0, 0.0);
    for n in 1..=tr.max_terms {
        let nf = n as f64;
        sum += (nf * nf * lsq + nf * lx).exp() + (nf * nf * lsq - nf * lx).exp();
        // a_k = |q|^{k^2/2} m^k with m = max(|x|, 1/|x|); ratios a_{k+1}/a_k decrease
        let k = nf + 1.0;
        let log_a = k * k * lsq.re + k * log_m;
        let rho = ((2.0 * k + 1.0) * lsq.re + log_m).exp();
        if rho < 1.0 && 2.0 * log_a.exp() / (1.0 - rho) < tr.term_tol {
            return finite(sum, "theta_laurent");
        }
    }
    Err(tr.exhausted("theta_laurent"))
}

/// Triple product `(q;q)(-sqrt(q) x;q)(-sqrt(q)/x;q)` with principal `sqrt(q)`.
pub fn theta_product(q: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    product(log_q_principal(q, "theta_product")?, x, tr)
}

/// Triple product with `q = e^{2 pi i tau}` and `sqrt(q) = e^{pi i tau}`.
pub fn theta_product_tau(tau: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    product(log_q_tau(tau, "theta_product")?, x, tr)
}

/// Laurent series `sum_{n in Z} q^{n^2/2} x^n` with principal `sqrt(q)`.
pub fn theta_laurent(q: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    laurent(log_q_principal(q, "theta_laurent")?, x, tr)
}

/// Laurent series with `q^{1/2} = e^{pi i tau}`.
pub fn theta_laurent_tau(tau: Complex64, x: Complex64, tr: &Truncation) -> Result<Complex64> {
    laurent(log_q_tau(tau, "theta_laurent")?, x, tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpochhammer;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn tr() -> Truncation {
        Truncation::default()
    }

    #[test]
    fn product_examples() {
        let t = tr();
        let q = c(0.25, 0.0);
        let v = theta_product(q, c(1.0, 0.0), &t).unwrap();
        let a = qpochhammer(q, q, &t).unwrap().value;
        let b = qpochhammer(c(-0.5, 0.0), q, &t).unwrap().value;
        assert!((v - a * b * b).norm() < 1e-14);

        let (q, x) = (c(0.3, 0.0), c(0.7, 0.2));
        let d = theta_product(q, x, &t).unwrap() - theta_product(q, x.inv(), &t).unwrap();
        assert!(d.norm() < 1e-12);

        let (q, x) = (c(0.2, 0.0), c(1.5, 0.0));
        let d = theta_product(q, x, &t).unwrap() - theta_laurent(q, x, &t).unwrap();
        assert!(d.norm() < 1e-12);
    }

    #[test]
    fn laurent_examples() {
        let t = tr();
        let sq = 0.5f64.sqrt();
        assert!(theta_laurent(c(0.5, 0.0), c(-sq, 0.0), &t).unwrap().norm() < 1e-10);
        let v = theta_laurent(c(0.2, 0.0), c(1.0, 0.0), &t).unwrap();
        assert!((v.re - 1.975_863_398_169_613_9).abs() < 1e-14);
    }

    #[test]
    fn cut_is_rejected() {
        let t = tr();
        assert!(theta_product(c(-0.3, 0.0), c(1.0, 0.0), &t).unwrap_err().is_domain());
        assert!(theta_laurent(c(-0.3, -0.0), c(1.0, 0.0), &t).is_err());
        assert!(theta_product(c(0.3, 0.0), c(0.0, 0.0), &t).is_err());
        // tau = 1/2 + i puts q on the negative axis; the tau form is well defined there
        let tau = c(0.5, 1.0);
        let x = c(0.3, 0.4);
        let d = theta_product_tau(tau, x, &t).unwrap() - theta_laurent_tau(tau, x, &t).unwrap();
        assert!(d.norm() < 1e-13);
    }

    #[test]
    fn tau_form_matches_principal_in_strip() {
        let t = tr();
        let tau = c(0.3, 0.4);
        let q = (TWO_PI * I * tau).exp();
        let x = c(-0.2, 1.1);
        let d = theta_product_tau(tau, x, &t).unwrap() - theta_product(q, x, &t).unwrap();
        assert!(d.norm() < 1e-13);
    }

    #[test]
    fn product_laurent_random_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let t = tr();
        for _ in 0..50 {
            let q = Complex64::from_polar(rng.gen_range(0.01..0.6), rng.gen_range(-3.0..3.0));
            let x = Complex64::from_polar(rng.gen_range(0.3..3.0), rng.gen_range(-PI..PI));
            let p = theta_product(q, x, &t).unwrap();
            let l = theta_laurent(q, x, &t).unwrap();
            assert!((p - l).norm() < 1e-11 * p.norm().max(1.0), "q = {q}, x = {x}");
        }
    }

    proptest! {
        #[test]
        fn q_difference(qr in 0.01f64..0.6, qa in -3.0f64..3.0, xr in 0.3f64..3.0, xa in -PI..PI) {
            let t = tr();
            let q = Complex64::from_polar(qr, qa);
            let x = Complex64::from_polar(xr, xa);
            let lhs = theta_product(q, q * x, &t).unwrap();
            let rhs = theta_product(q, x, &t).unwrap() / (q.sqrt() * x);
            prop_assert!((lhs - rhs).norm() < 1e-11 * lhs.norm().max(1.0));
        }
    }
}
