use coopnet::{rational, DelayGraph, Rational, Topology};
use serde::Serialize;

use super::{build_topology, load_graph};
use crate::error::CliError;
use crate::output::{decimal, emit, exact};
use crate::{Format, GraphArgs, TopologyKind};

#[derive(Serialize)]
struct GraphStats {
    nodes: usize,
    edges: usize,
    diameter: u64,
    /// `[distance, pair count]` over unordered pairs.
    histogram: Vec<(u64, u64)>,
}

#[derive(Serialize)]
struct SeedDiameter {
    seed: u64,
    diameter: u64,
}

#[derive(Serialize)]
struct MultiSeedStats {
    nodes: usize,
    attach: usize,
    delay: u64,
    base_seed: u64,
    seeds: u64,
    per_seed: Vec<SeedDiameter>,
    mean_diameter: String,
    mean_diameter_dec: f64,
}

pub fn run(args: GraphArgs) -> Result<(), CliError> {
    match (&args.topology, &args.load) {
        (Some(_), Some(_)) | (None, None) => {
            return Err(CliError::Validation(
                "pass exactly one of --topology and --load".into(),
            ));
        }
        _ => {}
    }

    if let Some(seed_count) = args.seeds {
        return multi_seed_stats(&args, seed_count);
    }

    let graph = match (&args.topology, &args.load) {
        (Some(kind), None) => build_topology(*kind, args.n, args.delay, args.ba_m, args.seed)?,
        (None, Some(path)) => load_graph(path)?,
        _ => unreachable!("validated above"),
    };

    if !args.stats {
        return emit(args.out.as_deref(), &graph.to_edge_list());
    }

    let matrix = graph.all_pairs_delay();
    let stats = GraphStats {
        nodes: graph.node_count(),
        edges: graph.edges().len(),
        diameter: matrix.diameter(),
        histogram: matrix.histogram().into_iter().collect(),
    };
    let text = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&stats).map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Csv => {
            let mut out = String::from("nodes,edges,diameter\n");
            out.push_str(&format!(
                "{},{},{}\n",
                stats.nodes, stats.edges, stats.diameter
            ));
            out.push_str("distance,pairs\n");
            for (d, k) in &stats.histogram {
                out.push_str(&format!("{d},{k}\n"));
            }
            out
        }
        Format::Text => {
            return Err(CliError::Validation(
                "graph supports --format json or csv".into(),
            ))
        }
    };
    emit(args.out.as_deref(), &text)
}

/// Mean diameter over consecutive seeds; intended for scale-free growth
/// studies, so the topology must be barabasi_albert.
fn multi_seed_stats(args: &GraphArgs, seed_count: u64) -> Result<(), CliError> {
    if seed_count == 0 {
        return Err(CliError::Validation("--seeds must be at least 1".into()));
    }
    let Some(TopologyKind::BarabasiAlbert) = args.topology else {
        return Err(CliError::Validation(
            "--seeds requires --topology barabasi_albert".into(),
        ));
    };
    let nodes = args
        .n
        .ok_or_else(|| CliError::Validation("--n is required with --topology".into()))?;
    let mut per_seed = Vec::with_capacity(seed_count as usize);
    let mut total: u64 = 0;
    for offset in 0..seed_count {
        let seed = args.seed + offset;
        let graph: DelayGraph = Topology::BarabasiAlbert {
            nodes,
            attach: args.ba_m,
            seed,
        }
        .generate(args.delay)?;
        let diameter = graph.diameter();
        total += diameter;
        per_seed.push(SeedDiameter { seed, diameter });
    }
    let mean: Rational = rational::count(total) / rational::count(seed_count);
    let stats = MultiSeedStats {
        nodes,
        attach: args.ba_m,
        delay: args.delay,
        base_seed: args.seed,
        seeds: seed_count,
        per_seed,
        mean_diameter: exact(&mean),
        mean_diameter_dec: decimal(&mean),
    };
    let text = match args.format {
        Format::Json => {
            serde_json::to_string_pretty(&stats).map_err(|e| CliError::Internal(e.to_string()))?
        }
        Format::Csv => {
            // Per-seed table only; the exact mean lives in the JSON format.
            let mut out = String::from("seed,diameter\n");
            for s in &stats.per_seed {
                out.push_str(&format!("{},{}\n", s.seed, s.diameter));
            }
            out
        }
        Format::Text => {
            return Err(CliError::Validation(
                "graph supports --format json or csv".into(),
            ))
        }
    };
    emit(args.out.as_deref(), &text)
}
