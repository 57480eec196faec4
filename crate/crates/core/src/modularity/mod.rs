//! The modular identities as evaluators and as residual checks.

mod asymptotic;
mod checks;
mod expansions;
mod grids;
mod report;

pub use asymptotic::{estimate_c_eps, log_log_slope, theta_partial_sums, theta_series_table, AsymptoticRow};
pub use checks::{
    binet_residual, eta_modular_residual, euler_identity_residual, lambert_relation_residual, m_pv_residual,
    ramanujan47_residual, reflection_residual, stokes_residual, theta_modular_residual, theta_modular_simplified,
    thm29_residual, triple_product_residual, LambertRelation,
};
pub use expansions::{
    q_gamma_modular, q_to_one_remainder, qpochhammer_modular, qpochhammer_modular_eval, qpochhammer_modular_variant,
    ramanujan_completed, ModularEvaluation, Variant,
};
pub use grids::{check_one, default_inputs, parse_grids, run_check, GridSpec, RandomGrid, DEFAULT_GRIDS};
pub use report::{CheckInput, CheckSummary, IdentityId, ResidualReport, Status, MIN_ADMISSIBLE_FRACTION};
