use coopnet::rational::ratio;
use coopnet::{oracle, PDPayoffs, SearchFamily, Topology, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{load_graph, parse_payoffs};
use crate::error::CliError;
use crate::output::{decimal, emit, exact, parse_rational_arg};
use crate::{FamilyKind, Format, SuiteKind, VerifyArgs};

fn render_report(report: &VerificationReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Text | Format::Csv => {
            let mut out = format!("config: {}\n", report.config);
            for check in &report.checks {
                out.push_str(&format!(
                    "[{}] {} (lhs = {} ({}), rhs = {} ({}))\n",
                    if check.passed { "PASS" } else { "FAIL" },
                    check.name,
                    exact(&check.lhs),
                    decimal(&check.lhs),
                    exact(&check.rhs),
                    decimal(&check.rhs),
                ));
            }
            let passed = report.checks.iter().filter(|c| c.passed).count();
            out.push_str(&format!(
                "result: {} ({passed}/{} checks passed)\n",
                if report.all_passed { "PASS" } else { "FAIL" },
                report.checks.len()
            ));
            Ok(out)
        }
    }
}

fn require_n(args: &VerifyArgs) -> Result<usize, CliError> {
    args.n
        .ok_or_else(|| CliError::Validation("--n is required for this suite".into()))
}

/// Deterministic strict-dilemma triples for `--random-triples`.
fn random_triples(seed: u64, want: usize) -> Vec<PDPayoffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(want);
    while out.len() < want {
        let mut vals = [
            ratio(rng.gen_range(1..=60), rng.gen_range(1..=12)),
            ratio(rng.gen_range(1..=60), rng.gen_range(1..=12)),
            ratio(rng.gen_range(1..=60), rng.gen_range(1..=12)),
        ];
        vals.sort();
        let [a, c, b] = vals;
        if a < c && c < b {
            out.push(PDPayoffs::new(a, b, c).expect("sorted strict triple"));
        }
    }
    out
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    match args.suite {
        SuiteKind::Vt => {
            let n = require_n(&args)?;
            let triples = match args.random_triples {
                Some(0) => {
                    return Err(CliError::Validation(
                        "--random-triples must be at least 1".into(),
                    ))
                }
                Some(k) => random_triples(args.seed, k),
                None => vec![parse_payoffs(&args.a, &args.b, &args.c)?],
            };
            let mut rendered = String::new();
            let mut all_passed = true;
            let mut reports = Vec::new();
            for p in &triples {
                let report = oracle::verify_vt_on_uniform_graph(n, args.delta, p)?;
                all_passed &= report.all_passed;
                if args.format == Format::Json {
                    reports.push(report);
                } else {
                    rendered.push_str(&render_report(&report, args.format)?);
                }
            }
            if args.format == Format::Json {
                rendered = serde_json::to_string_pretty(&reports)
                    .map_err(|e| CliError::Internal(e.to_string()))?;
            }
            emit(args.out.as_deref(), &rendered)?;
            if all_passed {
                Ok(())
            } else {
                Err(CliError::ChecksFailed)
            }
        }
        SuiteKind::Boundary => {
            let n = require_n(&args)?;
            let a = parse_rational_arg("a", &args.a)?;
            let c = parse_rational_arg("c", &args.c)?;
            let report = oracle::verify_theorem_boundary(n, args.tau, &a, &c)?;
            emit(args.out.as_deref(), &render_report(&report, args.format)?)?;
            if report.all_passed {
                Ok(())
            } else {
                Err(CliError::ChecksFailed)
            }
        }
        SuiteKind::Search => {
            let graph = match &args.load {
                Some(path) => load_graph(path)?,
                None => {
                    let n = require_n(&args)?;
                    Topology::Complete(n).generate(args.delta)?
                }
            };
            let payoffs = parse_payoffs(&args.a, &args.b, &args.c)?;
            let family = match args.family {
                FamilyKind::Omniscient => SearchFamily::Omniscient,
                FamilyKind::Go => SearchFamily::GoMessage,
            };
            let search = oracle::best_deviation_search(&graph, &payoffs, family)?;
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&search)
                    .map_err(|e| CliError::Internal(e.to_string()))?,
                Format::Text | Format::Csv => {
                    let mut out = format!(
                        "family: {:?}\nschedule-averaged deviator totals:\n",
                        search.family
                    );
                    for config in &search.per_config {
                        out.push_str(&format!(
                            "  {}: {} ({})\n",
                            config.deviator,
                            exact(&config.deviator_average),
                            decimal(&config.deviator_average),
                        ));
                    }
                    out.push_str(&format!(
                        "family average: {} ({})\nbest configuration: {} with {} ({})\n\
                         all-cooperate total n*c: {} ({})\nresult: {}\n",
                        exact(&search.family_average),
                        decimal(&search.family_average),
                        search.best_config,
                        exact(&search.best_average),
                        decimal(&search.best_average),
                        exact(&search.n_c),
                        decimal(&search.n_c),
                        if search.profitable {
                            "profitable deviation found (family average exceeds n*c)"
                        } else {
                            "no profitable deviation (family average within n*c)"
                        }
                    ));
                    out
                }
            };
            emit(args.out.as_deref(), &text)
        }
    }
}
