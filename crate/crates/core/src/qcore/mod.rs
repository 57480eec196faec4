//! Direct series and product evaluation of q-objects.
//!
//! Everything here is the "oracle" side of the modular identities: the
//! evaluators are straightforward truncated products and sums with certified
//! tail bounds, and they degrade (more terms, then an error) as `|q| -> 1`.

mod lambert;
mod point;
mod products;
mod theta;

pub use lambert::{lambert_l1, lambert_l2};
pub use point::ModularPoint;
pub use products::{eta, euler_series, log_qpochhammer, log_qpochhammer_real, q_gamma, qpochhammer, qpochhammer_tau};
pub use theta::{theta_laurent, theta_laurent_tau, theta_product, theta_product_tau};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stopping policy for infinite products and series.
///
/// Evaluation stops once a certified bound on the neglected tail falls below
/// `term_tol`; hitting `max_terms` first is a [`Error::Convergence`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    pub term_tol: f64,
    pub max_terms: usize,
}

impl Truncation {
    pub fn new(term_tol: f64, max_terms: usize) -> Result<Self> {
        if !(term_tol > 0.0) || max_terms == 0 {
            return Err(Error::domain(format!(
                "truncation needs term_tol > 0 and max_terms >= 1 (got {term_tol}, {max_terms})"
            )));
        }
        Ok(Self { term_tol, max_terms })
    }

    pub(crate) fn exhausted(&self, what: &str) -> Error {
        Error::convergence(format!("{what}: tail bound not below {:e} after {} terms", self.term_tol, self.max_terms))
    }
}

impl Default for Truncation {
    fn default() -> Self {
        Self { term_tol: 1e-16, max_terms: 1_000_000 }
    }
}

/// A truncated infinite product or sum together with the number of terms used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncated<T> {
    pub value: T,
    pub terms: usize,
}
