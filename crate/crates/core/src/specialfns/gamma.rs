use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::bernoulli::{b2n_value, zeta};
use super::cmath::{finite, ln};
use crate::error::{Error, Result};

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const STIRLING_MIN: f64 = 15.0;
const STIRLING_TERMS: usize = 12;
const TAYLOR_RADIUS: f64 = 0.2;
const TAYLOR_TERMS: usize = 40;

fn zeta_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=TAYLOR_TERMS as u32).map(|k| if k < 2 { 0.0 } else { zeta(k) }).collect())
}

fn check_pole(z: Complex64, what: &str) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::pole(format!("{what} at nonpositive integer {}", z.re)));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("{what}: non-finite argument {z}")));
    }
    Ok(())
}

// log Gamma(1 + e) = -gamma e + sum_{k>=2} (-1)^k zeta(k) e^k / k, |e| < 1.
fn log_gamma_near_one(e: Complex64) -> Complex64 {
    let zt = zeta_table();
    let mut sum = -EULER_GAMMA * e;
    let mut pow = -e;
    for (k, zk) in zt.iter().enumerate().skip(2) {
        pow *= -e;
        let term = pow * (*zk / k as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

fn stirling(z: Complex64) -> Complex64 {
    let mut s = (z - 0.5) * ln(z) - z + 0.5 * (2.0 * PI).ln();
    let zinv = z.inv();
    let z2 = zinv * zinv;
    let mut pow = zinv;
    for k in 1..=STIRLING_TERMS {
        s += pow * (b2n_value(k) / ((2 * k) * (2 * k - 1)) as f64);
        pow *= z2;
    }
    s
}

/// Principal `log Gamma(z)`: real on the positive axis, continuous off `(-inf, 0]`.
///
/// On the negative axis the upper-side limit is returned.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z, "log_gamma")?;
    let e1 = z - 1.0;
    if e1.norm() < TAYLOR_RADIUS {
        return Ok(log_gamma_near_one(e1));
    }
    let e2 = z - 2.0;
    if e2.norm() < TAYLOR_RADIUS {
        // log Gamma(2 + e) = log Gamma(1 + e) + log(1 + e)
        return Ok(log_gamma_near_one(e2) + ln(1.0 + e2));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_MIN {
        // summing principal logs keeps the branch continuous in each half-plane
        shift += ln(w);
        w += 1.0;
    }
    let mut r = stirling(w) - shift;
    if z.im == 0.0 && z.re > 0.0 {
        r.im = 0.0;
    }
    finite(r, "log_gamma")
}

/// The digamma function `psi = Gamma'/Gamma`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_pole(z, "digamma")?;
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < STIRLING_MIN {
        shift += w.inv();
        w += 1.0;
    }
    // psi(w) ~ log w - 1/(2w) - sum B_2k/(2k w^2k)
    let winv = w.inv();
    let w2 = winv * winv;
    let mut s = ln(w) - 0.5 * winv;
    let mut pow = w2;
    for k in 1..=STIRLING_TERMS {
        s -= pow * (b2n_value(k) / (2 * k) as f64);
        pow *= w2;
    }
    let mut r = s - shift;
    if z.im == 0.0 {
        r.im = 0.0;
    }
    finite(r, "digamma")
}
