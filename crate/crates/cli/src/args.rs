use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

/// Modular-type evaluation of (x;q)_inf: evaluate functions, check identities, sweep asymptotics.
#[derive(Debug, Parser)]
#[command(name = "qmod", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point.
    Eval(RunArgs),
    /// Run an identity check over its default grid or the point given by flags.
    Check(RunArgs),
    /// Write a table (asym-table or q-to-one).
    Sweep(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// What to evaluate, check or sweep.
    pub target: String,

    #[arg(long, allow_hyphen_values = true)]
    pub tau_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub nu_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_im: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub q_im: Option<f64>,
    /// Argument of `qgamma` and `An`.
    #[arg(long, allow_hyphen_values = true)]
    pub z_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub z_im: Option<f64>,
    /// Argument of the Binet checks.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda_im: Option<f64>,
    /// Real-case parameters of `M` (tau = alpha i, nu = xi alpha i).
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<f64>,
    /// Index `n` of `An`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated alpha values for sweeps.
    #[arg(long)]
    pub alpha_list: Option<String>,
    /// Sector half-angle used for the bound in asym-table (default pi/4).
    #[arg(long)]
    pub eps: Option<f64>,
    /// Residual tolerance override for checks.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Largest N in asym-table.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn pair(re: Option<f64>, im: Option<f64>) -> Option<Complex64> {
    (re.is_some() || im.is_some()).then(|| Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0)))
}

impl RunArgs {
    pub fn tau(&self) -> Option<Complex64> {
        pair(self.tau_re, self.tau_im)
    }
    pub fn nu(&self) -> Option<Complex64> {
        pair(self.nu_re, self.nu_im)
    }
    pub fn x(&self) -> Option<Complex64> {
        pair(self.x_re, self.x_im)
    }
    pub fn q(&self) -> Option<Complex64> {
        pair(self.q_re, self.q_im)
    }
    pub fn z(&self) -> Option<Complex64> {
        pair(self.z_re, self.z_im)
    }
    pub fn lambda(&self) -> Option<Complex64> {
        pair(self.lambda_re, self.lambda_im)
    }
}
