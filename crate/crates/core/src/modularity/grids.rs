//! Default check grids shipped with the library, and the check runner.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use super::checks::{
    binet_residual, eta_modular_residual, euler_identity_residual, lambert_relation_residual, m_pv_residual,
    ramanujan47_residual, reflection_residual, settle, stokes_residual, theta_modular_residual, thm29_residual,
    triple_product_residual, LambertRelation,
};
use super::report::{CheckInput, IdentityId, ResidualReport};
use crate::error::{Error, Result};
use crate::qcore::{ModularPoint, Truncation};
use crate::raysum::RaySpec;
use crate::specialfns::cmath::c;

/// The shipped grid file.
pub const DEFAULT_GRIDS: &str = include_str!("../../data/grids.toml");

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomGrid {
    pub seed: u64,
    pub count: usize,
    pub tau_re: Option<[f64; 2]>,
    pub tau_im: Option<[f64; 2]>,
    pub nu_re: Option<[f64; 2]>,
    pub nu_im: Option<[f64; 2]>,
    pub x_abs_max: Option<f64>,
    pub q_abs_max: Option<f64>,
}

/// The default inputs of one identity.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub cartesian: bool,
    #[serde(default)]
    pub tau: Vec<[f64; 2]>,
    #[serde(default)]
    pub nu: Vec<[f64; 2]>,
    #[serde(default)]
    pub lambda: Vec<[f64; 2]>,
    #[serde(default)]
    pub alpha_xi: Vec<[f64; 2]>,
    pub random: Option<RandomGrid>,
}

#[derive(Debug, Deserialize)]
struct GridFile {
    #[allow(dead_code)]
    version: u32,
    #[serde(flatten)]
    grids: BTreeMap<String, GridSpec>,
}

/// Parses a grid file into per-identity specs.
pub fn parse_grids(text: &str) -> Result<BTreeMap<IdentityId, GridSpec>> {
    let file: GridFile = toml::from_str(text).map_err(|e| Error::domain(format!("grid file: {e}")))?;
    file.grids.into_iter().map(|(k, v)| Ok((k.parse()?, v))).collect()
}

fn cx(p: [f64; 2]) -> Complex64 {
    c(p[0], p[1])
}

fn draw(rng: &mut ChaCha8Rng, range: Option<[f64; 2]>) -> f64 {
    match range {
        Some([a, b]) if b > a => rng.gen_range(a..b),
        Some([a, _]) => a,
        None => 0.0,
    }
}

fn disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(-PI..PI))
}

impl GridSpec {
    /// Expands the spec into concrete inputs, explicit points first.
    pub fn inputs(&self) -> Result<Vec<CheckInput>> {
        let mut out = Vec::new();
        if self.cartesian {
            for t in &self.tau {
                for n in &self.nu {
                    out.push(CheckInput::tau_nu(cx(*t), cx(*n)));
                }
            }
        } else if !self.nu.is_empty() {
            if self.nu.len() != self.tau.len() {
                return Err(Error::domain("grid: tau and nu lists differ in length"));
            }
            out.extend(self.tau.iter().zip(&self.nu).map(|(t, n)| CheckInput::tau_nu(cx(*t), cx(*n))));
        } else {
            out.extend(self.tau.iter().map(|t| CheckInput::tau_only(cx(*t))));
        }
        out.extend(self.lambda.iter().map(|l| CheckInput::lambda(cx(*l))));
        out.extend(self.alpha_xi.iter().map(|p| CheckInput::alpha_xi(p[0], p[1])));
        if let Some(r) = &self.random {
            let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
            for _ in 0..r.count {
                if let (Some(xm), Some(qm)) = (r.x_abs_max, r.q_abs_max) {
                    let x = disk(&mut rng, xm);
                    let q = disk(&mut rng, qm);
                    out.push(CheckInput::x_q(x, q));
                    continue;
                }
                let tau = c(draw(&mut rng, r.tau_re), draw(&mut rng, r.tau_im));
                if r.nu_re.is_some() || r.nu_im.is_some() {
                    let nu = c(draw(&mut rng, r.nu_re), draw(&mut rng, r.nu_im));
                    out.push(CheckInput::tau_nu(tau, nu));
                } else {
                    out.push(CheckInput::tau_only(tau));
                }
            }
        }
        Ok(out)
    }
}

/// The shipped default inputs for `id`.
pub fn default_inputs(id: IdentityId) -> Result<Vec<CheckInput>> {
    let grids = parse_grids(DEFAULT_GRIDS)?;
    grids.get(&id).ok_or_else(|| Error::domain(format!("no default grid for {id}")))?.inputs()
}

fn need<T>(v: Option<T>, what: &str, id: IdentityId) -> Result<T> {
    v.ok_or_else(|| Error::domain(format!("{id} needs {what}")))
}

fn point(input: &CheckInput, id: IdentityId) -> Result<ModularPoint> {
    ModularPoint::new(need(input.tau, "tau", id)?, need(input.nu, "nu", id)?)
}

/// Runs `id` at one input. Missing or invalid inputs become skips.
pub fn check_one(id: IdentityId, input: &CheckInput, tr: &Truncation, spec: &RaySpec) -> ResidualReport {
    let tol = id.default_tolerance();
    let attempt = || -> Result<ResidualReport> {
        Ok(match id {
            IdentityId::EulerIdentity => euler_identity_residual(need(input.x, "x", id)?, need(input.q, "q", id)?, tr),
            IdentityId::Thm29 => thm29_residual(&point(input, id)?, tr, spec),
            IdentityId::Ramanujan47 => ramanujan47_residual(&point(input, id)?, tr, spec),
            IdentityId::EtaModular => eta_modular_residual(need(input.tau, "tau", id)?, tr),
            IdentityId::ThetaModular => {
                theta_modular_residual(need(input.tau, "tau", id)?, input.nu.unwrap_or_default(), tr)
            }
            IdentityId::TripleProduct => {
                triple_product_residual(need(input.tau, "tau", id)?, input.nu.unwrap_or_default(), tr)
            }
            IdentityId::Stokes28 => stokes_residual(&point(input, id)?, tr, spec),
            IdentityId::Reflection34 => reflection_residual(&point(input, id)?),
            IdentityId::Lambert67 => lambert_relation_residual(&point(input, id)?, LambertRelation::Shifted1, tr, spec),
            IdentityId::Lambert68 => lambert_relation_residual(&point(input, id)?, LambertRelation::Shifted2, tr, spec),
            IdentityId::Lambert71 | IdentityId::Lambert72 => {
                let p = ModularPoint::new(need(input.tau, "tau", id)?, c(0.0, 0.0))?;
                let which =
                    if id == IdentityId::Lambert71 { LambertRelation::Diagonal1 } else { LambertRelation::Diagonal2 };
                lambert_relation_residual(&p, which, tr, spec)
            }
            IdentityId::Binet74 => binet_residual(need(input.lambda, "lambda", id)?, false, spec),
            IdentityId::Binet75 => binet_residual(need(input.lambda, "lambda", id)?, true, spec),
            IdentityId::MPv => m_pv_residual(need(input.alpha, "alpha", id)?, need(input.xi, "xi", id)?, tr, spec),
        })
    };
    match attempt() {
        Ok(r) => r,
        Err(e) => settle(id, *input, tol, Err(e)),
    }
}

/// Runs `id` over `inputs` in order, overriding the tolerance when `tol` is given.
pub fn run_check(
    id: IdentityId,
    inputs: &[CheckInput],
    tol: Option<f64>,
    tr: &Truncation,
    spec: &RaySpec,
) -> Vec<ResidualReport> {
    inputs
        .iter()
        .map(|input| {
            let r = check_one(id, input, tr, spec);
            match tol {
                Some(t) if r.status != super::report::Status::Skip && r.note.is_none() => {
                    ResidualReport::compare(id, r.input, r.lhs, r.rhs, t)
                }
                Some(t) => ResidualReport { tolerance: t, ..r },
                None => r,
            }
        })
        .collect()
}
