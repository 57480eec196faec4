//! Number formatting and the three output encodings.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::CliError;

/// Shortest round-trip decimal; exponent form outside `[1e-5, 1e17)`.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e17).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `re + im i` with shortest round-trip parts.
pub fn complex(z: Complex64) -> String {
    if z.im.is_sign_negative() && z.im != 0.0 {
        format!("{} - {}i", num(z.re), num(-z.im))
    } else {
        format!("{} + {}i", num(z.re), num(z.im.abs()))
    }
}

/// A rectangular table rendered as CSV (header row, `\n` endings) or as text.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.header).map_err(err)?;
        for row in &self.rows {
            w.write_record(row).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = self.header.join(" ");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}
