//! Generalized Lambert series
//! `L1(tau, nu) = sum_{n>=0} x q^n / (1 - x q^n)` and
//! `L2(tau, nu) = sum_{n>=0} (n+1) x q^n / (1 - x q^n)`.

use num_complex::Complex64;

use super::{ModularPoint, Truncation};
use crate::error::{Error, Result};
use crate::specialfns::cmath::{c, finite, I, TWO_PI};

const DENOM_EPS: f64 = 1e-12;

fn lambert(point: &ModularPoint, tr: &Truncation, weighted: bool, what: &str) -> Result<Complex64> {
    let abs_q = point.q.norm();
    let mut sum = c(0.0, 0.0);
    for n in 0..=tr.max_terms {
        let nf = n as f64;
        // x q^n = e^{2 pi i (nu + n tau)}
        let u = (TWO_PI * I * (point.nu + nf * point.tau)).exp();
        let au = u.norm();
        if au <= 0.5 {
            // |u/(1-u)| <= 2|u| from here on
            let tail = if weighted {
                2.0 * au * ((nf + 1.0) / (1.0 - abs_q) + abs_q / ((1.0 - abs_q) * (1.0 - abs_q)))
            } else {
                2.0 * au / (1.0 - abs_q)
            };
            if tail < tr.term_tol {
                return finite(sum, what);
            }
        }
        if n == tr.max_terms {
            break;
        }
        let den = 1.0 - u;
        if den.norm() < DENOM_EPS {
            return Err(Error::pole(format!("{what}: 1 - x q^{n} vanishes at nu = {}", point.nu)));
        }
        let term = u / den;
        sum += if weighted { term * (nf + 1.0) } else { term };
    }
    Err(tr.exhausted(what))
}

/// `L1(tau, nu) = sum_{n>=0} x q^n / (1 - x q^n)`.
pub fn lambert_l1(point: &ModularPoint, tr: &Truncation) -> Result<Complex64> {
    lambert(point, tr, false, "lambert_l1")
}

/// `L2(tau, nu) = sum_{n>=0} (n+1) x q^n / (1 - x q^n)`.
pub fn lambert_l2(point: &ModularPoint, tr: &Truncation) -> Result<Complex64> {
    lambert(point, tr, true, "lambert_l2")
}
