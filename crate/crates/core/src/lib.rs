//! Numerical evaluation of the infinite product `(x;q)_inf = prod_{n>=0} (1 - x q^n)`
//! together with its modular-type representation
//!
//! ```text
//! (x;q)_inf = q^{-1/24} sqrt(1-x) (x* q*; q*)_inf exp(Li2(x)/log q + G(tau,nu) + P(tau,nu))
//! ```
//!
//! where `q = e^{2 pi i tau}`, `x = e^{2 pi i nu}`, `q* = e^{-2 pi i/tau}`, `x* = e^{2 pi i nu/tau}`,
//! `G` is the Stirling remainder of `log Gamma(nu/tau + 1)` and `P` is a Laplace-type ray
//! integral whose Taylor expansion in `log q` is Ramanujan's divergent series.
//!
//! The crate is split into four layers:
//!
//! * [`specialfns`]: Bernoulli numbers, the kernels `B(t)` and `f(t)`, `log Gamma`, digamma, `Li2`.
//! * [`qcore`]: direct series/product evaluation of q-objects (Pochhammer, eta, theta, Lambert).
//! * [`raysum`]: ray quadrature and every integral-defined quantity (`P`, `G`, `A_n`, `K_N`, `M`).
//! * [`modularity`]: the modular identities as evaluators and residual checks.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod modularity;
pub mod qcore;
pub mod raysum;
pub mod specialfns;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qcore::{ModularPoint, Truncation};
pub use raysum::RaySpec;
