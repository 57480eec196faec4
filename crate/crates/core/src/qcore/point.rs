use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfns::cmath::{c, on_negative_axis, I, TWO_PI};

/// A pair `(tau, nu)` with `Im tau > 0` and every derived coordinate:
/// `q = e^{2 pi i tau}`, `x = e^{2 pi i nu}`, `tau* = -1/tau`, `nu* = nu/tau`,
/// `q* = e^{2 pi i tau*}`, `x* = e^{2 pi i nu*}` and `s = nu/tau`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModularPoint {
    pub tau: Complex64,
    pub nu: Complex64,
    pub q: Complex64,
    pub x: Complex64,
    pub tau_star: Complex64,
    pub nu_star: Complex64,
    pub q_star: Complex64,
    pub x_star: Complex64,
    pub s: Complex64,
}

impl ModularPoint {
    pub fn new(tau: Complex64, nu: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::domain(format!("Im tau must be positive (tau = {tau})")));
        }
        if !nu.re.is_finite() || !nu.im.is_finite() {
            return Err(Error::domain(format!("nu must be finite (nu = {nu})")));
        }
        let tau_star = -tau.inv();
        let nu_star = nu / tau;
        Ok(Self {
            tau,
            nu,
            q: (TWO_PI * I * tau).exp(),
            x: (TWO_PI * I * nu).exp(),
            tau_star,
            nu_star,
            q_star: (TWO_PI * I * tau_star).exp(),
            x_star: (TWO_PI * I * nu_star).exp(),
            s: nu_star,
        })
    }

    /// The real configuration `tau = alpha i`, `nu = xi alpha i`, so that
    /// `q = e^{-2 pi alpha}` and `x = q^xi`.
    pub fn from_real(alpha: f64, xi: f64) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::domain(format!("alpha must be positive (alpha = {alpha})")));
        }
        Self::new(c(0.0, alpha), c(0.0, xi * alpha))
    }

    /// `log q`, taken as exactly `2 pi i tau`.
    pub fn log_q(&self) -> Complex64 {
        TWO_PI * I * self.tau
    }

    /// `log q* = -2 pi i / tau`.
    pub fn log_q_star(&self) -> Complex64 {
        TWO_PI * I * self.tau_star
    }

    /// `log x = 2 pi i nu`.
    pub fn log_x(&self) -> Complex64 {
        TWO_PI * I * self.nu
    }

    /// The modular image `(tau*, nu*)`.
    pub fn star(&self) -> Result<Self> {
        Self::new(self.tau_star, self.nu_star)
    }

    /// The same `tau` with `nu` shifted by `tau` (so `x -> xq`).
    pub fn shifted(&self) -> Result<Self> {
        Self::new(self.tau, self.nu + self.tau)
    }

    /// `-Im tau` when `tau` is purely imaginary, i.e. the real-case `alpha`.
    pub fn alpha(&self) -> Option<f64> {
        (self.tau.re == 0.0).then_some(self.tau.im)
    }

    /// True when the modular expansion of `(x;q)_inf` applies at principal branches:
    /// `nu` is off `(-inf, -1] U [1, inf)` and `nu/tau` is off `(-inf, 0]`.
    pub fn admissible_thm29(&self) -> bool {
        let nu_on_real_cut = self.nu.im == 0.0 && self.nu.re.abs() >= 1.0;
        !nu_on_real_cut && !on_negative_axis(self.s)
    }
}
