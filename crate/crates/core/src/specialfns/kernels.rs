//! The two kernels of the ray integrals:
//!
//! * `B(t) = 1/(e^{2 pi t} - 1) - 1/(2 pi t) + 1/2`, odd, poles at `t = ik`, `k != 0`;
//! * `f(t) = cot(t/2) - 2/t = 2i B(it/(2 pi))`, odd, poles at `t = 2 pi k`, `k != 0`.

use num_complex::Complex64;

use super::bernoulli::{b2n_over_factorial, MAX_BERNOULLI_INDEX};
use super::cmath::{cot, finite, inv_expm1, TWO_PI};
use crate::error::{Error, Result};

/// Distance below which an argument counts as sitting on a pole.
pub const POLE_EPS: f64 = 1e-12;

/// Below this `|x|` the kernels switch to their Taylor series.
const SERIES_RADIUS: f64 = 0.5;

// sum_{n>=1} B_2n/(2n)! x^{2n-1}, i.e. 1/(e^x-1) - 1/x + 1/2 for |x| < 2 pi.
fn bernoulli_odd_series(x: Complex64, alternate: bool) -> Complex64 {
    let x2 = x * x;
    let mut pow = x;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..=MAX_BERNOULLI_INDEX {
        let mut coeff = b2n_over_factorial(n);
        if alternate && n % 2 == 1 {
            coeff = -coeff;
        }
        let term = pow * coeff;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        pow *= x2;
    }
    sum
}

/// `B(t) = 1/(e^{2 pi t} - 1) - 1/(2 pi t) + 1/2`.
pub fn fn_b(t: Complex64) -> Result<Complex64> {
    let x = t * TWO_PI;
    if x.norm() < SERIES_RADIUS {
        return Ok(bernoulli_odd_series(x, false));
    }
    let k = t.im.round();
    if k != 0.0 && (t - Complex64::new(0.0, k)).norm() < POLE_EPS {
        return Err(Error::pole(format!("B(t) at t = {t} (pole at {k}i)")));
    }
    finite(inv_expm1(x) - x.inv() + 0.5, "B(t)")
}

/// `f(t) = cot(t/2) - 2/t`.
pub fn fn_f(t: Complex64) -> Result<Complex64> {
    if t.norm() < SERIES_RADIUS {
        // cot(t/2) - 2/t = 2 sum (-1)^n B_2n/(2n)! t^{2n-1}
        return Ok(bernoulli_odd_series(t, true) * 2.0);
    }
    let k = (t.re / TWO_PI).round();
    if k != 0.0 && (t - Complex64::new(TWO_PI * k, 0.0)).norm() < POLE_EPS {
        return Err(Error::pole(format!("f(t) at t = {t} (pole at 2 pi * {k})")));
    }
    finite(cot(t * 0.5) - 2.0 / t, "f(t)")
}

/// `f(t)` for real-or-complex `t` without pole checks, for quadrature inner loops
/// where the contour is known to stay away from the poles.
#[inline]
pub(crate) fn fn_f_unchecked(t: Complex64) -> Complex64 {
    if t.norm() < SERIES_RADIUS {
        bernoulli_odd_series(t, true) * 2.0
    } else {
        cot(t * 0.5) - 2.0 / t
    }
}

/// `B(t)` without pole checks; see [`fn_f_unchecked`].
#[inline]
pub(crate) fn fn_b_unchecked(t: Complex64) -> Complex64 {
    let x = t * TWO_PI;
    if x.norm() < SERIES_RADIUS {
        bernoulli_odd_series(x, false)
    } else {
        inv_expm1(x) - x.inv() + 0.5
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::{c, I};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        assert_eq!(fn_b(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let b = fn_b(c(0.5, 0.0)).unwrap();
        // 1/(e^pi - 1) - 1/pi + 1/2
        let expected = 1.0 / (PI.exp() - 1.0) - 1.0 / PI + 0.5;
        assert!((b.re - expected).abs() < 1e-15 && b.im == 0.0);
        assert!((b.re - 0.226_855_819_179_893_45).abs() < 1e-15);
        let bm = fn_b(c(-0.5, 0.0)).unwrap();
        assert!((bm + b).norm() < 1e-15);

        assert_eq!(fn_f(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let f = fn_f(c(PI, 0.0)).unwrap();
        assert!((f.re + 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn f_is_2i_b_rotated() {
        let t = c(1.0, 0.5);
        let lhs = fn_f(t).unwrap();
        let rhs = 2.0 * I * fn_b(I * t / TWO_PI).unwrap();
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn poles_are_rejected() {
        assert!(fn_b(c(0.0, 1.0)).unwrap_err().is_domain());
        assert!(fn_b(c(1e-13, -2.0)).is_err());
        assert!(fn_f(c(TWO_PI, 0.0)).is_err());
        assert!(fn_f(c(-2.0 * TWO_PI, 1e-13)).is_err());
        assert!(fn_b(c(0.0, 1.0 + 1e-6)).is_ok());
    }

    #[test]
    fn odd_on_random_disk() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut n = 0;
        while n < 1000 {
            let r = 3.0 * rng.gen::<f64>().sqrt();
            let th = rng.gen::<f64>() * TWO_PI;
            let t = Complex64::from_polar(r, th);
            let (Ok(b1), Ok(b2), Ok(f1), Ok(f2)) = (fn_b(t), fn_b(-t), fn_f(t), fn_f(-t)) else {
                continue;
            };
            if (t.im - t.im.round()).abs() < 0.05 && t.im.round() != 0.0 && t.re.abs() < 0.05 {
                continue;
            }
            assert!((b1 + b2).norm() < 1e-12 * b1.norm().max(1.0), "B at {t}");
            assert!((f1 + f2).norm() < 1e-12 * f1.norm().max(1.0), "f at {t}");
            n += 1;
        }
    }

    #[test]
    fn switchover_band_agrees() {
        for k in 0..=20 {
            let r = 0.4 + 0.2 * k as f64 / 20.0;
            for th in [0.0, 0.7, 1.9, 3.0, -2.2] {
                let x = Complex64::from_polar(r, th);
                let series = bernoulli_odd_series(x, false);
                let closed = inv_expm1(x) - x.inv() + 0.5;
                assert!((series - closed).norm() < 1e-12, "|x| = {r}");
                let fs = bernoulli_odd_series(x, true) * 2.0;
                let fc = cot(x * 0.5) - 2.0 / x;
                assert!((fs - fc).norm() < 1e-12, "|x| = {r}");
            }
        }
    }

    #[test]
    fn large_arguments_stay_finite() {
        let b = fn_b(c(300.0, 0.3)).unwrap();
        assert!((b - (0.5 - 1.0 / (TWO_PI * c(300.0, 0.3)))).norm() < 1e-15);
        let t = c(3.0, 2000.0);
        let f = fn_f(t).unwrap();
        assert!((f - (c(0.0, -1.0) - 2.0 / t)).norm() < 1e-15);
    }
}
