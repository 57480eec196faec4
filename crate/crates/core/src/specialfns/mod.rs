//! Scalar special functions shared by the other layers.

mod bernoulli;
pub mod cmath;
mod dilog;
mod gamma;
mod kernels;

pub use bernoulli::{bernoulli, bernoulli_scaled, hurwitz_zeta, zeta, BernoulliTable, MAX_BERNOULLI_INDEX, ZETA2};
pub use dilog::dilog;
pub use gamma::{digamma, log_gamma, EULER_GAMMA};
pub use kernels::{fn_b, fn_f, POLE_EPS};

pub(crate) use bernoulli::b2n_over_factorial;
pub(crate) use kernels::{fn_b_unchecked, fn_f_unchecked};
