use coopnet::{engine, AlarmLog, DeviatorModel, PermutationSource, Player, Schedule};
use serde::Serialize;

use super::{build_topology, load_graph, parse_payoffs};
use crate::error::CliError;
use crate::output::{decimal, emit, exact};
use crate::{Format, SimulateArgs};

#[derive(Serialize)]
struct SingleRunOutput {
    mode: &'static str,
    deviator: String,
    deviating_player: u8,
    schedule: Vec<usize>,
    total_p1: String,
    total_p1_dec: f64,
    total_p2: String,
    total_p2_dec: f64,
    deviator_total: String,
    deviator_total_dec: f64,
    cooperator_total: String,
    cooperator_total_dec: f64,
    alarm: Option<AlarmLog>,
    go: Option<AlarmLog>,
}

#[derive(Serialize)]
struct AverageOutput {
    mode: &'static str,
    deviator: String,
    schedules: u64,
    deviator_average: String,
    deviator_average_dec: f64,
    cooperator_average: String,
    cooperator_average_dec: f64,
}

fn parse_deviator(text: &str) -> Result<DeviatorModel, CliError> {
    if text == "none" {
        return Ok(DeviatorModel::None);
    }
    if let Some(t) = text.strip_prefix("omniscient:") {
        let start_round = t
            .parse()
            .map_err(|_| CliError::Validation(format!("--deviator: `{t}` is not a round index")))?;
        return Ok(DeviatorModel::Omniscient { start_round });
    }
    if let Some(l) = text.strip_prefix("go:") {
        let trigger_location = l
            .parse()
            .map_err(|_| CliError::Validation(format!("--deviator: `{l}` is not a location id")))?;
        return Ok(DeviatorModel::GoMessage { trigger_location });
    }
    Err(CliError::Validation(format!(
        "--deviator must be none, omniscient:<t>, or go:<location>, got `{text}`"
    )))
}

fn parse_perms(text: &str, seed: u64) -> Result<PermutationSource, CliError> {
    if text == "exhaustive" {
        return Ok(PermutationSource::Exhaustive);
    }
    if let Some(k) = text.strip_prefix("sample:") {
        let count = k
            .parse()
            .map_err(|_| CliError::Validation(format!("--perms: `{k}` is not a sample count")))?;
        return Ok(PermutationSource::Sample { count, seed });
    }
    Err(CliError::Validation(format!(
        "--perms must be exhaustive or sample:<k>, got `{text}`"
    )))
}

pub fn run(args: SimulateArgs) -> Result<(), CliError> {
    let graph = match (&args.topology, &args.graph) {
        (Some(kind), None) => {
            build_topology(*kind, args.n, args.delay, args.ba_m, args.graph_seed)?
        }
        (None, Some(path)) => load_graph(path)?,
        _ => {
            return Err(CliError::Validation(
                "pass exactly one of --topology and --graph".into(),
            ))
        }
    };
    let payoffs = parse_payoffs(&args.a, &args.b, &args.c)?;
    let deviator = parse_deviator(&args.deviator)?;
    let deviating_player = match args.deviating_player {
        1 => Player::One,
        2 => Player::Two,
        other => {
            return Err(CliError::Validation(format!(
                "--deviating-player must be 1 or 2, got {other}"
            )))
        }
    };
    if args.format == Format::Text {
        return Err(CliError::Validation(
            "simulate supports --format json or csv".into(),
        ));
    }

    match &args.perms {
        None => {
            let schedule = Schedule::identity(graph.node_count());
            let result = engine::run(&graph, &payoffs, &schedule, &deviator, deviating_player)?;
            if let Some(path) = &args.trace {
                std::fs::write(path, result.trace_csv())?;
            }
            if let Some(path) = &args.trace_json {
                std::fs::write(path, result.to_json())?;
            }
            let out = SingleRunOutput {
                mode: "single",
                deviator: deviator.to_string(),
                deviating_player: args.deviating_player,
                schedule: schedule.order().to_vec(),
                total_p1: exact(&result.total_p1),
                total_p1_dec: decimal(&result.total_p1),
                total_p2: exact(&result.total_p2),
                total_p2_dec: decimal(&result.total_p2),
                deviator_total: exact(result.deviator_total(deviating_player)),
                deviator_total_dec: decimal(result.deviator_total(deviating_player)),
                cooperator_total: exact(result.cooperator_total(deviating_player)),
                cooperator_total_dec: decimal(result.cooperator_total(deviating_player)),
                alarm: result.alarm.clone(),
                go: result.go.clone(),
            };
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&out)
                    .map_err(|e| CliError::Internal(e.to_string()))?,
                Format::Csv => result.trace_csv(),
                Format::Text => unreachable!("rejected above"),
            };
            emit(args.out.as_deref(), &text)
        }
        Some(perms) => {
            if args.trace.is_some() || args.trace_json.is_some() {
                return Err(CliError::Validation(
                    "--trace/--trace-json apply to single runs; drop --perms".into(),
                ));
            }
            let source = parse_perms(perms, args.seed)?;
            let (dev, coop) = engine::average_over_schedules(&graph, &payoffs, &deviator, source)?;
            let schedules = match source {
                PermutationSource::Exhaustive => (1..=graph.node_count() as u64).product(),
                PermutationSource::Sample { count, .. } => count as u64,
            };
            let out = AverageOutput {
                mode: "average",
                deviator: deviator.to_string(),
                schedules,
                deviator_average: exact(&dev),
                deviator_average_dec: decimal(&dev),
                cooperator_average: exact(&coop),
                cooperator_average_dec: decimal(&coop),
            };
            let text = match args.format {
                Format::Json => serde_json::to_string_pretty(&out)
                    .map_err(|e| CliError::Internal(e.to_string()))?,
                Format::Csv => format!(
                    "deviator,schedules,deviator_average,cooperator_average,\
                     deviator_average_dec,cooperator_average_dec\n{},{},{},{},{},{}",
                    out.deviator,
                    out.schedules,
                    out.deviator_average,
                    out.cooperator_average,
                    out.deviator_average_dec,
                    out.cooperator_average_dec
                ),
                Format::Text => unreachable!("rejected above"),
            };
            emit(args.out.as_deref(), &text)
        }
    }
}
