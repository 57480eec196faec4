use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Truncated, Truncation};
use crate::error::{Error, Result};
use crate::specialfns::cmath::{c, finite, ln, ln_1m, I, TWO_PI};

/// Zero-distance threshold for factors `1 - x q^n`.
const FACTOR_EPS: f64 = 1e-12;

fn check_q(q: Complex64, what: &str) -> Result<()> {
    if !(q.norm() < 1.0) {
        return Err(Error::domain(format!("{what}: |q| must be < 1 (q = {q})")));
    }
    Ok(())
}

// prod_{n>=0} (1 - x e^{n lq}), stopping once |x| |q|^N / (1 - |q|) < tol.
pub(crate) fn product_with_log_q(
    x: Complex64,
    lq: Complex64,
    tr: &Truncation,
    what: &str,
) -> Result<Truncated<Complex64>> {
    let abs_q = lq.re.exp();
    let ax = x.norm();
    let mut value = c(1.0, 0.0);
    for n in 0..=tr.max_terms {
        let qn_abs = (n as f64 * lq.re).exp();
        if ax * qn_abs / (1.0 - abs_q) < tr.term_tol {
            return Ok(Truncated { value: finite(value, what)?, terms: n });
        }
        if n == tr.max_terms {
            break;
        }
        value *= 1.0 - x * (n as f64 * lq).exp();
    }
    Err(tr.exhausted(what))
}

/// `(x;q)_inf = prod_{n>=0} (1 - x q^n)` for `|q| < 1`, with the number of factors used.
pub fn qpochhammer(x: Complex64, q: Complex64, tr: &Truncation) -> Result<Truncated<Complex64>> {
    check_q(q, "qpochhammer")?;
    if q.norm() == 0.0 {
        return Ok(Truncated { value: 1.0 - x, terms: 1 });
    }
    product_with_log_q(x, ln(q), tr, "qpochhammer")
}

/// `(x;q)_inf` with `q = e^{2 pi i tau}` given through `tau`.
pub fn qpochhammer_tau(x: Complex64, tau: Complex64, tr: &Truncation) -> Result<Truncated<Complex64>> {
    if !(tau.im > 0.0) {
        return Err(Error::domain(format!("qpochhammer: Im tau must be positive (tau = {tau})")));
    }
    product_with_log_q(x, TWO_PI * I * tau, tr, "qpochhammer")
}

/// `sum_{n>=0} log(1 - x q^n)` with principal logs per factor.
///
/// This is a logarithm of `(x;q)_inf` (it may differ from the principal one by
/// a multiple of `2 pi i`) and stays representable when the product under- or
/// overflows.
pub fn log_qpochhammer(x: Complex64, q: Complex64, tr: &Truncation) -> Result<Truncated<Complex64>> {
    check_q(q, "log_qpochhammer")?;
    let abs_q = q.norm();
    let lq = if abs_q == 0.0 { c(f64::NEG_INFINITY, 0.0) } else { ln(q) };
    let ax = x.norm();
    let mut sum = c(0.0, 0.0);
    for n in 0..=tr.max_terms {
        let qn_abs = if n == 0 { 1.0 } else { abs_q.powi(n as i32) };
        if ax * qn_abs / (1.0 - abs_q) < tr.term_tol {
            return Ok(Truncated { value: sum, terms: n });
        }
        if n == tr.max_terms {
            break;
        }
        let u = if n == 0 { x } else { x * (n as f64 * lq).exp() };
        if (1.0 - u).norm() < FACTOR_EPS {
            return Err(Error::pole(format!("log_qpochhammer: factor {n} vanishes")));
        }
        sum += ln_1m(u);
    }
    Err(tr.exhausted("log_qpochhammer"))
}

/// Euler's series `sum_{n>=0} q^{n(n-1)/2} (-x)^n / (q;q)_n`.
pub fn euler_series(x: Complex64, q: Complex64, tr: &Truncation) -> Result<Truncated<Complex64>> {
    check_q(q, "euler_series")?;
    let abs_q = q.norm();
    let ax = x.norm();
    let mut term = c(1.0, 0.0);
    let mut sum = term;
    let mut qn = c(1.0, 0.0); // q^n
    let mut abs_qn = 1.0;
    for n in 0..tr.max_terms {
        // t_{n+1} = t_n (-x q^n) / (1 - q^{n+1})
        let qn1 = qn * q;
        term *= -x * qn / (1.0 - qn1);
        sum += term;
        // later ratios are bounded by |x| |q|^m / (1 - |q|^{m+1}), decreasing in m
        let abs_qn1 = abs_qn * abs_q;
        let rho = ax * abs_qn1 / (1.0 - abs_qn1 * abs_q);
        if rho < 1.0 && term.norm() * rho / (1.0 - rho) < tr.term_tol {
            return Ok(Truncated { value: finite(sum, "euler_series")?, terms: n + 2 });
        }
        qn = qn1;
        abs_qn = abs_qn1;
    }
    Err(tr.exhausted("euler_series"))
}

/// Jackson's q-Gamma `Gamma_q(z) = (q;q)_inf / (q^z;q)_inf (1-q)^{1-z}`, principal powers.
pub fn q_gamma(z: Complex64, q: Complex64, tr: &Truncation) -> Result<Complex64> {
    check_q(q, "q_gamma")?;
    if q.norm() == 0.0 {
        return Err(Error::domain("q_gamma: q must be nonzero"));
    }
    let lq = ln(q);
    let qz = (z * lq).exp();
    // only factors with |q^{z+n}| near 1 can vanish
    let mut qn = qz;
    let mut n = 0;
    while qn.norm() > 0.5 {
        if (1.0 - qn).norm() < FACTOR_EPS {
            return Err(Error::pole(format!("q_gamma: q^(z+{n}) = 1 at z = {z}")));
        }
        qn *= q;
        n += 1;
    }
    let num = product_with_log_q(q, lq, tr, "q_gamma")?.value;
    let den = product_with_log_q(qz, lq, tr, "q_gamma")?.value;
    let pref = ((1.0 - z) * ln(1.0 - q)).exp();
    finite(num / den * pref, "q_gamma")
}

/// Dedekind eta `e^{pi i tau/12} (q;q)_inf`.
pub fn eta(tau: Complex64, tr: &Truncation) -> Result<Complex64> {
    let q = qpochhammer_tau((TWO_PI * I * tau).exp(), tau, tr)?.value;
    finite((PI * I * tau / 12.0).exp() * q, "eta")
}

/// `log (x;q)_inf` for `q = e^{-2 pi alpha}`, `x = e^{-2 pi (1+xi) alpha}`, every factor in `(0,1)`.
///
/// The tail criterion is `term_tol * min(1, |sum|)`, so values far below 1 stay accurate to
/// relative precision.
pub fn log_qpochhammer_real(alpha: f64, xi: f64, tr: &Truncation) -> Result<f64> {
    if !(alpha > 0.0) || !(xi > -1.0) || !alpha.is_finite() || !xi.is_finite() {
        return Err(Error::domain(format!("log_qpochhammer_real needs alpha > 0 and xi > -1 (got {alpha}, {xi})")));
    }
    let one_minus_q = -(-TWO_PI * alpha).exp_m1();
    let mut sum: f64 = 0.0;
    for n in 0..=tr.max_terms {
        let u = (-TWO_PI * alpha * (n as f64 + 1.0 + xi)).exp();
        // relative once the sum is below 1, so tiny logs keep their leading digits
        let tail = u / one_minus_q;
        if n > 0 && (tail < tr.term_tol * sum.abs().min(1.0) || tail < f64::MIN_POSITIVE) {
            return Ok(sum);
        }
        if n == tr.max_terms {
            break;
        }
        sum += (-u).ln_1p();
    }
    Err(tr.exhausted("log_qpochhammer_real"))
}
