//! Output plumbing: every exact rational printed carries a decimal
//! approximation; CSV uses `,` separators, LF endings, and always a header.

use std::fs;
use std::path::Path;

use coopnet::{rational, Rational};

use crate::error::CliError;

pub fn exact(value: &Rational) -> String {
    rational::to_exact_string(value)
}

pub fn decimal(value: &Rational) -> f64 {
    rational::to_decimal(value)
}

/// Writes to `--out` when given, standard output otherwise. A trailing
/// newline is ensured either way.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    let text = if content.ends_with('\n') {
        content.to_string()
    } else {
        format!("{content}\n")
    };
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub fn parse_rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    rational::parse_rational(text).map_err(|e| CliError::Validation(format!("--{name}: {e}")))
}
