use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::{b2n_over_factorial, ZETA2};
use super::cmath::{ln, ln_1m};

// sum_{n>=1} x^n / n^2, used for |x| <= 1/2.
fn power_series(x: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut pow = x;
    for n in 1..200 {
        let term = pow / (n * n) as f64;
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        pow *= x;
    }
    sum
}

// Li2(x) = u - u^2/4 + sum_{k>=1} B_2k u^{2k+1}/(2k+1)!, u = -log(1-x), |u| < 2 pi.
fn bernoulli_series(x: Complex64) -> Complex64 {
    let u = -ln_1m(x);
    let u2 = u * u;
    let mut sum = u - u2 * 0.25;
    let mut pow = u * u2;
    for k in 1..60 {
        let term = pow * (b2n_over_factorial(k) / (2 * k + 1) as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
        pow *= u2;
    }
    sum
}

// |x| <= 1
fn in_disk(x: Complex64) -> Complex64 {
    if x.norm() <= 0.5 {
        power_series(x)
    } else if (1.0 - x).norm() < 0.5 {
        // Li2(x) = pi^2/6 - log x log(1-x) - Li2(1-x)
        let y = 1.0 - x;
        ZETA2 - ln(x) * ln(y) - power_series(y)
    } else {
        bernoulli_series(x)
    }
}

/// The dilogarithm `Li2(x) = sum_{n>=1} x^n/n^2`, continued to the plane cut along `[1, inf)`.
///
/// Arguments on the cut return the limit from the upper half-plane, so
/// `Im Li2(x) = pi log x` there.
pub fn dilog(x: Complex64) -> Complex64 {
    if x.re == 0.0 && x.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if x.im == 0.0 && x.re >= 1.0 {
        if x.re == 1.0 {
            return Complex64::new(ZETA2, 0.0);
        }
        let l = x.re.ln();
        let re = PI * PI / 3.0 - 0.5 * l * l - in_disk(Complex64::new(1.0 / x.re, 0.0)).re;
        return Complex64::new(re, PI * l);
    }
    if x.norm() > 1.0 {
        // Li2(x) + Li2(1/x) = -pi^2/6 - log^2(-x)/2, x off [1, inf)
        let l = ln(-x);
        return -ZETA2 - 0.5 * l * l - in_disk(x.inv());
    }
    in_disk(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::cmath::c;
    use proptest::prelude::*;

    fn real(x: f64) -> f64 {
        dilog(c(x, 0.0)).re
    }

    #[test]
    fn examples() {
        assert_eq!(dilog(c(0.0, 0.0)), c(0.0, 0.0));
        assert!((dilog(c(1.0, 0.0)).re - 1.644_934_066_848_226_4).abs() < 1e-15);
        let half = dilog(c(0.5, 0.0));
        let expected = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        assert!((half.re - expected).abs() < 1e-15 && half.im == 0.0);
        assert!((half.re - 0.5822405).abs() < 1e-7);
        assert!((real(-1.0) + PI * PI / 12.0).abs() < 1e-15);
    }

    #[test]
    fn branch_cut_is_upper_limit() {
        let on = dilog(c(2.0, 0.0));
        assert!((on - c(PI * PI / 4.0, PI * 2f64.ln())).norm() < 1e-14);
        let above = dilog(c(2.0, 1e-13));
        let below = dilog(c(2.0, -1e-13));
        assert!((on - above).norm() < 1e-11);
        assert!((on.conj() - below).norm() < 1e-11);
    }

    #[test]
    fn landen() {
        for k in 1..=100 {
            let x = k as f64 / 101.0;
            let lx = x.ln();
            let r = real(1.0 - x) + real(1.0 - 1.0 / x) + 0.5 * lx * lx;
            assert!(r.abs() < 1e-11, "x = {x}: {r}");
        }
    }

    #[test]
    fn inversion() {
        for k in 0..100 {
            let x = 0.1 * 100f64.powf((k as f64 + 0.5) / 100.0);
            let lx = x.ln();
            let r = real(-x) + real(-1.0 / x) + ZETA2 + 0.5 * lx * lx;
            assert!(r.abs() < 1e-11, "x = {x}: {r}");
        }
    }

    #[test]
    fn euler_reflection() {
        for k in 1..=100 {
            let x = k as f64 / 101.0;
            let r = real(x) + real(1.0 - x) - ZETA2 + x.ln() * (1.0 - x).ln();
            assert!(r.abs() < 1e-11, "x = {x}: {r}");
        }
    }

    fn slow_series(x: Complex64) -> Complex64 {
        let mut sum = c(0.0, 0.0);
        let mut pow = x;
        for n in 1..5000 {
            sum += pow / (n as f64 * n as f64);
            pow *= x;
        }
        sum
    }

    proptest! {
        #[test]
        fn matches_direct_series_inside(r in 0.0f64..0.95, th in -PI..PI) {
            let x = Complex64::from_polar(r, th);
            prop_assert!((dilog(x) - slow_series(x)).norm() < 1e-12);
        }

        #[test]
        fn derivative_is_log_ratio(r in 0.05f64..6.0, th in 0.05f64..(2.0 * PI - 0.05)) {
            let x = Complex64::from_polar(r, th);
            prop_assume!((x - 1.0).norm() > 0.05);
            let h = 1e-5 * r.max(1.0);
            let fd = (dilog(x + h) - dilog(x - h)) / (2.0 * h);
            let d = -ln(1.0 - x) / x;
            prop_assert!((fd - d).norm() < 1e-7 * d.norm().max(1.0), "x = {x}");
        }

        #[test]
        fn complex_inversion(r in 0.1f64..10.0, th in 0.01f64..(2.0 * PI - 0.01)) {
            let x = Complex64::from_polar(r, th);
            let l = ln(-x);
            let res = dilog(x) + dilog(x.inv()) + ZETA2 + 0.5 * l * l;
            prop_assert!(res.norm() < 1e-11, "x = {x}");
        }
    }
}
