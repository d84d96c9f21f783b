use coopnet::rational::{count, parse_rational, ratio};
use coopnet::Rational;
use num_traits::{ToPrimitive, Zero};

use super::{parse_payoffs, AnalysisRow};
use crate::error::CliError;
use crate::output::emit;
use crate::{Format, SweepArgs};

/// `5` or an inclusive range `2..10`.
fn parse_range(name: &str, text: &str) -> Result<(u64, u64), CliError> {
    let bad = |why: &str| CliError::Validation(format!("--{name}: {why} (got `{text}`)"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo
            .parse()
            .map_err(|_| bad("range start is not an integer"))?;
        let hi: u64 = hi.parse().map_err(|_| bad("range end is not an integer"))?;
        if lo > hi {
            return Err(bad("range start exceeds range end"));
        }
        Ok((lo, hi))
    } else {
        let v: u64 = text.parse().map_err(|_| bad("not an integer or range"))?;
        Ok((v, v))
    }
}

/// Values of tau for one n: explicit range or `full` = 0..n-1.
fn tau_values(spec: &str, n: u64) -> Result<Vec<u64>, CliError> {
    if spec == "full" {
        return Ok((0..n).collect());
    }
    let (lo, hi) = parse_range("tau", spec)?;
    Ok((lo..=hi).collect())
}

fn parse_alphas(text: &str) -> Result<Vec<Rational>, CliError> {
    let mut alphas = Vec::new();
    for part in text.split(',') {
        let alpha = parse_rational(part.trim())
            .map_err(|e| CliError::Validation(format!("--alpha: {e}")))?;
        if alpha <= Rational::zero() || alpha >= count(1) {
            return Err(CliError::Validation(format!(
                "--alpha: `{}` is outside (0, 1)",
                part.trim()
            )));
        }
        alphas.push(alpha);
    }
    if alphas.is_empty() {
        return Err(CliError::Validation("--alpha: empty list".into()));
    }
    alphas.sort();
    alphas.dedup();
    Ok(alphas)
}

/// round(alpha * n), half away from zero; alpha is positive here.
fn round_tau(alpha: &Rational, n: u64) -> u64 {
    let scaled = alpha * count(n) + ratio(1, 2);
    scaled.floor().to_integer().to_u64().expect("tau fits u64")
}

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    let payoffs = parse_payoffs(&args.a, &args.b, &args.c)?;
    let (n_lo, n_hi) = parse_range("n", &args.n)?;
    if n_lo == 0 {
        return Err(CliError::Validation("--n must start at 1".into()));
    }

    let mut rows: Vec<AnalysisRow> = Vec::new();
    let with_alpha = match (&args.tau, &args.alpha) {
        (Some(tau_spec), None) => {
            for n in n_lo..=n_hi {
                for tau in tau_values(tau_spec, n)? {
                    rows.push(AnalysisRow::build(n, tau, &payoffs, None));
                }
            }
            false
        }
        (None, Some(alpha_spec)) => {
            let alphas = parse_alphas(alpha_spec)?;
            for n in n_lo..=n_hi {
                for alpha in &alphas {
                    let tau = round_tau(alpha, n);
                    rows.push(AnalysisRow::build(n, tau, &payoffs, Some(alpha)));
                }
            }
            true
        }
        _ => {
            return Err(CliError::Validation(
                "pass exactly one of --tau and --alpha".into(),
            ))
        }
    };

    let text = match args.format {
        Format::Csv => {
            let mut out = AnalysisRow::csv_header(with_alpha);
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_row(with_alpha));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            serde_json::to_string_pretty(&rows).map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Text => {
            return Err(CliError::Validation(
                "sweep supports --format csv or json".into(),
            ))
        }
    };
    emit(args.out.as_deref(), &text)
}
