use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Largest `n` for which `B_{2n}` is finite in double precision (`|B_260| > f64::MAX`).
pub const MAX_BERNOULLI_INDEX: usize = 129;

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_{2M}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<f64>,
    over_factorial: Vec<f64>,
}

impl BernoulliTable {
    /// `B_{2n}` for `1 <= n <= len()`.
    pub fn b2n(&self, n: usize) -> f64 {
        self.values[n - 1]
    }

    /// `B_{2n} / (2n)!`, computed from the exact rational before rounding.
    pub fn b2n_over_factorial(&self, n: usize) -> f64 {
        self.over_factorial[n - 1]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The stored values `[B_2, B_4, ...]`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

struct ExactTable {
    b2n: Vec<f64>,
    over_factorial: Vec<f64>,
}

// Akiyama–Tanigawa in exact rational arithmetic. Produces B_m with the
// B_1 = +1/2 convention; only even indices are kept.
fn exact_table() -> &'static ExactTable {
    static TABLE: OnceLock<ExactTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let top = 2 * MAX_BERNOULLI_INDEX;
        let mut a: Vec<BigRational> = Vec::with_capacity(top + 1);
        let mut b2n = Vec::with_capacity(MAX_BERNOULLI_INDEX);
        let mut over_factorial = Vec::with_capacity(MAX_BERNOULLI_INDEX);
        let mut factorial = BigInt::from(1);
        for m in 0..=top {
            a.push(BigRational::new(BigInt::from(1), BigInt::from(m + 1)));
            for j in (1..=m).rev() {
                let diff = &a[j - 1] - &a[j];
                a[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
            }
            if m > 0 {
                factorial *= BigInt::from(m);
            }
            if m >= 2 && m % 2 == 0 {
                let b = &a[0];
                b2n.push(b.to_f64().unwrap_or(f64::NAN));
                let ratio = b / BigRational::from_integer(factorial.clone());
                over_factorial.push(ratio.to_f64().unwrap_or(f64::NAN));
            }
        }
        ExactTable { b2n, over_factorial }
    })
}

/// Returns `B_2 ... B_{2 max_index}`.
pub fn bernoulli(max_index: usize) -> Result<BernoulliTable> {
    if max_index == 0 {
        return Err(Error::domain("bernoulli: max_index must be positive"));
    }
    if max_index > MAX_BERNOULLI_INDEX {
        return Err(Error::domain(format!(
            "bernoulli: max_index {max_index} exceeds {MAX_BERNOULLI_INDEX} (B_2n overflows f64 beyond)"
        )));
    }
    let t = exact_table();
    Ok(BernoulliTable { values: t.b2n[..max_index].to_vec(), over_factorial: t.over_factorial[..max_index].to_vec() })
}

/// `B_{2n}/(2n)!` from the shared table; `n` must not exceed [`MAX_BERNOULLI_INDEX`].
#[inline]
pub(crate) fn b2n_over_factorial(n: usize) -> f64 {
    exact_table().over_factorial[n - 1]
}

#[inline]
pub(crate) fn b2n_value(n: usize) -> f64 {
    exact_table().b2n[n - 1]
}

/// `B_{2n} (2 pi)^{2n} / (2n)! = 2 (-1)^{n+1} zeta(2n)`, bounded for every `n >= 1`.
pub fn bernoulli_scaled(n: usize) -> f64 {
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * sign * zeta(2 * n as u32)
}

/// Riemann zeta at an integer `s >= 2`.
pub fn zeta(s: u32) -> f64 {
    hurwitz_zeta(s, 1.0)
}

/// Hurwitz zeta `sum_{n>=0} (a+n)^{-s}` for integer `s >= 2` and `a > 0`,
/// via a direct head and an Euler–Maclaurin tail.
pub fn hurwitz_zeta(s: u32, a: f64) -> f64 {
    debug_assert!(s >= 2 && a > 0.0);
    let sf = s as f64;
    let mut head = 0.0;
    let mut x = a;
    while x < 12.0 {
        head += x.powf(-sf);
        x += 1.0;
    }
    // sum_{n>=0} (x+n)^{-s} = x^{1-s}/(s-1) + x^{-s}/2 + sum_j B_2j/(2j)! (s)_{2j-1} x^{-s-2j+1}
    let mut tail = x.powf(1.0 - sf) / (sf - 1.0) + 0.5 * x.powf(-sf);
    let mut rising = sf; // (s)_{2j-1}
    let mut xpow = x.powf(-sf - 1.0);
    for j in 1..=10usize {
        let term = b2n_over_factorial(j) * rising * xpow;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        rising *= (sf + (2 * j - 1) as f64) * (sf + (2 * j) as f64);
        xpow /= x * x;
    }
    head + tail
}

/// `pi^2 / 6`.
pub const ZETA2: f64 = PI * PI / 6.0;

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> f64 {
        let mut r = 1.0;
        for i in 0..k {
            r = r * (n - i) as f64 / (i + 1) as f64;
        }
        r
    }

    #[test]
    fn small_values() {
        let t = bernoulli(3).unwrap();
        assert_eq!(t.b2n(1), 1.0 / 6.0);
        assert_eq!(t.b2n(2), -1.0 / 30.0);
        assert_eq!(t.b2n(3), 1.0 / 42.0);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(bernoulli(0).is_err());
        assert!(bernoulli(MAX_BERNOULLI_INDEX).is_ok());
        assert!(bernoulli(MAX_BERNOULLI_INDEX + 1).is_err());
        let t = bernoulli(MAX_BERNOULLI_INDEX).unwrap();
        assert!(t.values().iter().all(|v| v.is_finite()));
    }

    #[test]
    fn alternating_signs() {
        let t = bernoulli(MAX_BERNOULLI_INDEX).unwrap();
        for n in 1..=t.len() {
            let expected = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert_eq!(t.b2n(n).signum(), expected, "n = {n}");
        }
    }

    #[test]
    fn defining_recurrence() {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_0 = 1, B_1 = -1/2 and odd B_j = 0 beyond.
        let t = bernoulli(30).unwrap();
        let b = |j: usize| -> f64 {
            match j {
                0 => 1.0,
                1 => -0.5,
                j if j % 2 == 1 => 0.0,
                j => t.b2n(j / 2),
            }
        };
        for m in 1..=60 {
            let mut sum = 0.0;
            let mut scale: f64 = 0.0;
            for j in 0..=m {
                let term = binom(m + 1, j) * b(j);
                sum += term;
                scale = scale.max(term.abs());
            }
            assert!(sum.abs() <= 1e-12 * scale, "m = {m}: {sum} vs {scale}");
        }
    }

    #[test]
    fn zeta_form_agrees_with_exact_table() {
        for n in [1usize, 2, 5, 20, 60, 100, 129] {
            let expected = bernoulli_scaled(n);
            let from_table = b2n_over_factorial(n) * (2.0 * PI).powi(2 * n as i32);
            assert!(((from_table - expected) / expected).abs() < 1e-12, "n = {n}: {from_table} vs {expected}");
        }
    }

    #[test]
    fn zeta_known_values() {
        assert!((zeta(2) - ZETA2).abs() < 1e-15);
        assert!((zeta(4) - PI.powi(4) / 90.0).abs() < 1e-15);
        // zeta(2, 41) = zeta(2) - H_40^(2)
        let h: f64 = (1..=40).map(|n| 1.0 / (n * n) as f64).sum();
        assert!((hurwitz_zeta(2, 41.0) - (ZETA2 - h)).abs() < 1e-14);
    }
}
