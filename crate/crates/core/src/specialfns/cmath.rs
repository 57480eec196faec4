//! Principal-branch complex helpers.
//!
//! `log` has imaginary part in `(-pi, pi]`; a negative zero imaginary part is
//! treated as `+0` so that inputs on the negative real axis land on the upper
//! side of the cut.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64::new(0.0, 1.0);
pub const TWO_PI: f64 = 2.0 * PI;

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
fn normalize_zero(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal logarithm, `Im log z` in `(-pi, pi]`.
#[inline]
pub fn ln(z: Complex64) -> Complex64 {
    normalize_zero(z).ln()
}

/// Principal square root `exp(log(z)/2)`.
#[inline]
pub fn sqrt(z: Complex64) -> Complex64 {
    normalize_zero(z).sqrt()
}

/// Principal power `exp(w log z)`.
#[inline]
pub fn pow(z: Complex64, w: Complex64) -> Complex64 {
    (w * ln(z)).exp()
}

/// `e^z - 1` without cancellation near the origin.
pub fn expm1(z: Complex64) -> Complex64 {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let (s, co) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let e = z.re.exp();
    c(z.re.exp_m1() * co - 2.0 * half * half, e * s)
}

/// `1/(e^z - 1)`, evaluated through `e^{-z}` when `Re z > 0` so that large
/// arguments underflow to zero instead of producing `inf/inf`.
pub fn inv_expm1(z: Complex64) -> Complex64 {
    if z.re > 0.0 {
        let e = (-z).exp();
        if z.norm() > 0.5 {
            e / (1.0 - e)
        } else {
            -e / expm1(-z)
        }
    } else {
        expm1(z).inv()
    }
}

/// `log(1 - z)` accurate for small `|z|`.
pub fn ln_1m(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        // -z - z^2/2 - z^3/3 - ...
        let mut term = z;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..8 {
            sum -= term / k as f64;
            term *= z;
        }
        sum
    } else {
        ln(1.0 - z)
    }
}

/// Cotangent without overflow for large `|Im w|`.
pub fn cot(w: Complex64) -> Complex64 {
    if w.im.abs() < 1.0 {
        return w.cos() / w.sin();
    }
    if w.im > 0.0 {
        let e = (2.0 * I * w).exp();
        I * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * I * w).exp();
        I * (1.0 + e) / (1.0 - e)
    }
}

/// Returns `z` unless a component is NaN or infinite.
pub fn finite(z: Complex64, what: &str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::Overflow(format!("{what} is not finite ({z})")))
    }
}

/// True when `z` lies on the closed cut `(-inf, 0]`, up to a relative slack.
pub fn on_negative_axis(z: Complex64) -> bool {
    z.re <= 0.0 && z.im.abs() <= 1e-15 * z.norm().max(1e-300)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_branch_is_upper_on_cut() {
        let z = c(-2.0, -0.0);
        assert!((ln(z).im - PI).abs() < 1e-15);
        assert!((sqrt(c(-4.0, -0.0)) - c(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn expm1_small_and_large() {
        let z = c(1e-9, 2e-9);
        let r = expm1(z);
        assert!((r - z - z * z / 2.0).norm() < 1e-23);
        let z = c(1.3, -0.7);
        assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn inv_expm1_does_not_overflow() {
        let v = inv_expm1(c(900.0, 3.0));
        assert!(v.norm() < 1e-300);
        let v = inv_expm1(c(-900.0, 3.0));
        assert!((v + 1.0).norm() < 1e-15);
    }

    #[test]
    fn cot_matches_cos_over_sin() {
        for w in [c(0.3, 0.2), c(1.2, 3.0), c(-0.4, -5.0)] {
            let direct = w.cos() / w.sin();
            assert!((cot(w) - direct).norm() < 1e-13 * direct.norm().max(1.0));
        }
        assert!((cot(c(1.0, 400.0)) - c(0.0, -1.0)).norm() < 1e-15);
    }
}
