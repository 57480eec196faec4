//! `qmod check <identity>`: residual reports over the default grid or one point.

use qmod_core::modularity::{default_inputs, run_check, CheckInput, CheckSummary, IdentityId, ResidualReport, Status};

use crate::args::{Format, RunArgs};
use crate::error::{usage, CliError, EXIT_CONVERGENCE, EXIT_DOMAIN, EXIT_FAILED_CHECK, EXIT_OK};
use crate::output::{json, num, Table};
use crate::{ray_spec, truncation, Outcome};

/// The point given on the command line, if any coordinate flag was set.
fn user_input(a: &RunArgs) -> Option<CheckInput> {
    let input =
        CheckInput { tau: a.tau(), nu: a.nu(), x: a.x(), q: a.q(), lambda: a.lambda(), alpha: a.alpha, xi: a.xi };
    (input != CheckInput::default()).then_some(input)
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skip => "SKIP",
    }
}

fn line(r: &ResidualReport) -> String {
    let mut s = format!(
        "{} {} {} abs_residual={} rel_residual={} tolerance={}",
        status_word(r.status),
        r.identity_id,
        r.input,
        num(r.abs_residual),
        num(r.rel_residual),
        num(r.tolerance)
    );
    if let Some(note) = &r.note {
        s.push_str(&format!(" note=\"{note}\""));
    }
    s
}

pub fn summary_line(id: IdentityId, s: &CheckSummary) -> String {
    format!(
        "SUMMARY {id}: {}/{} PASS, {} FAIL, {} SKIP -> {}",
        s.passed,
        s.total(),
        s.failed,
        s.skipped,
        if s.ok() { "OK" } else { "FAILED" }
    )
}

fn table(reports: &[ResidualReport]) -> Table {
    Table {
        header: vec![
            "identity_id",
            "status",
            "input",
            "lhs_re",
            "lhs_im",
            "rhs_re",
            "rhs_im",
            "abs_residual",
            "rel_residual",
            "tolerance",
            "pass",
            "note",
        ],
        rows: reports
            .iter()
            .map(|r| {
                vec![
                    r.identity_id.to_string(),
                    status_word(r.status).to_string(),
                    r.input.to_string(),
                    num(r.lhs.re),
                    num(r.lhs.im),
                    num(r.rhs.re),
                    num(r.rhs.im),
                    num(r.abs_residual),
                    num(r.rel_residual),
                    num(r.tolerance),
                    r.pass.to_string(),
                    r.note.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    }
}

/// Exit code of a finished run: residual failures beat evaluation failures, and a run
/// with too few admissible inputs counts as a domain error.
pub fn exit_code(reports: &[ResidualReport]) -> i32 {
    let summary = CheckSummary::of(reports);
    if summary.ok() {
        return EXIT_OK;
    }
    let failures: Vec<_> = reports.iter().filter(|r| r.status == Status::Fail).collect();
    if failures.iter().any(|r| r.note.is_none()) {
        EXIT_FAILED_CHECK
    } else if !failures.is_empty() {
        EXIT_CONVERGENCE
    } else {
        EXIT_DOMAIN
    }
}

pub fn reports(a: &RunArgs) -> Result<(IdentityId, Vec<ResidualReport>), CliError> {
    let id: IdentityId = a.target.parse().map_err(|_| {
        let names: Vec<_> = IdentityId::ALL.iter().map(|i| i.name()).collect();
        usage(format!("unknown check target '{}' (expected one of {})", a.target, names.join(", ")))
    })?;
    if let Some(t) = a.tol {
        if !(t > 0.0) {
            return Err(usage(format!("--tol must be positive (got {t})")));
        }
    }
    let inputs = match user_input(a) {
        Some(input) => vec![input],
        None => default_inputs(id)?,
    };
    Ok((id, run_check(id, &inputs, a.tol, &truncation(), &ray_spec(a, false)?)))
}

pub fn run(a: &RunArgs) -> Result<Outcome, CliError> {
    let (id, reports) = reports(a)?;
    let text = match a.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                s.push_str(&line(r));
                s.push('\n');
            }
            s.push_str(&summary_line(id, &CheckSummary::of(&reports)));
            s.push('\n');
            s
        }
        Format::Json => json(&reports)?,
        Format::Csv => table(&reports).to_csv()?,
    };
    Ok(Outcome { text, code: exit_code(&reports) })
}
