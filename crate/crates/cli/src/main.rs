//! Command-line interface: sustainability analysis, graph generation and
//! inspection, game simulation, parameter sweeps, and oracle verification.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "coopnet",
    version,
    about = "Cooperation analysis for distributed Prisoner's Dilemma games on delay networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether full cooperation is sustainable at (n, tau)
    Analyze(AnalyzeArgs),
    /// Generate, load, or summarize a delay graph
    Graph(GraphArgs),
    /// Run the game engine on a graph
    Simulate(SimulateArgs),
    /// Sweep the sustainability analysis over parameter ranges
    Sweep(SweepArgs),
    /// Run a brute-force verification suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyKind {
    Path,
    Cycle,
    Star,
    Complete,
    #[value(name = "barabasi_albert")]
    BarabasiAlbert,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Number of locations (and rounds)
    #[arg(long)]
    n: u64,
    /// Network diameter in rounds
    #[arg(long)]
    tau: u64,
    /// Mutual-defection payoff (rational: `1`, `5/2`, or `2.5`)
    #[arg(long)]
    a: String,
    /// Temptation payoff
    #[arg(long)]
    b: String,
    /// Mutual-cooperation payoff
    #[arg(long)]
    c: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GraphArgs {
    /// Named topology to generate (exactly one of --topology / --load)
    #[arg(long, value_enum)]
    topology: Option<TopologyKind>,
    /// Edge-list file to load (`u v delay` per line, `#` comments)
    #[arg(long)]
    load: Option<PathBuf>,
    /// Node count for generated topologies
    #[arg(long)]
    n: Option<usize>,
    /// Uniform edge delay for generated topologies
    #[arg(long, default_value_t = 1)]
    delay: u64,
    /// Attachment count for barabasi_albert
    #[arg(long = "ba-m", default_value_t = 2)]
    ba_m: usize,
    /// Generation seed for barabasi_albert
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Aggregate diameter statistics over this many consecutive seeds
    #[arg(long)]
    seeds: Option<u64>,
    /// Summarize (nodes, edges, diameter, distance histogram) instead of
    /// writing the edge list
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, value_enum)]
    topology: Option<TopologyKind>,
    /// Edge-list file to load (exactly one of --topology / --graph)
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    delay: u64,
    #[arg(long = "ba-m", default_value_t = 2)]
    ba_m: usize,
    /// Generation seed for barabasi_albert topologies
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    c: String,
    /// Deviator model: `none`, `omniscient:<t>`, or `go:<location>`
    #[arg(long, default_value = "none")]
    deviator: String,
    /// Which player deviates (1 or 2)
    #[arg(long, default_value_t = 1)]
    deviating_player: u8,
    /// Schedule source: `exhaustive` or `sample:<k>`. Without it, a single
    /// run on the identity schedule.
    #[arg(long)]
    perms: Option<String>,
    /// Seed for sampled schedules
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the per-round CSV trace of a single run to this path
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Write the JSON document mirroring the single-run result to this path
    #[arg(long)]
    trace_json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Location count: `5` or an inclusive range `2..10`
    #[arg(long)]
    n: String,
    /// Diameter: `3`, an inclusive range `0..4`, or `full` for 0..n-1
    #[arg(long)]
    tau: Option<String>,
    /// Comma-separated proportional delays in (0,1); tau = round(alpha*n)
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long)]
    c: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteKind {
    /// Deviator totals equal the deviation-payoff formula on uniform graphs
    Vt,
    /// Engine average sits exactly on n*c at the cooperation bound
    Boundary,
    /// Exhaustive-average deviation search over a family
    Search,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Omniscient,
    Go,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: SuiteKind,
    #[arg(long)]
    n: Option<usize>,
    /// Uniform delay for the complete test graph (vt, search)
    #[arg(long, default_value_t = 0)]
    delta: u64,
    /// Diameter for the boundary suite
    #[arg(long, default_value_t = 0)]
    tau: u64,
    #[arg(long, default_value = "1")]
    a: String,
    #[arg(long, default_value = "3")]
    b: String,
    #[arg(long, default_value = "2")]
    c: String,
    /// Edge-list file as the search graph instead of complete(n)
    #[arg(long)]
    load: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "omniscient")]
    family: FamilyKind,
    /// Run the vt suite over this many random payoff triples
    #[arg(long)]
    random_triples: Option<usize>,
    /// Seed for --random-triples
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze::run(args),
        Command::Graph(args) => commands::graph::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Verify(args) => commands::verify::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
