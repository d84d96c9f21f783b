//! Simulation and exact analysis of repeated Prisoner's Dilemma play over
//! delay-weighted communication networks.
//!
//! Two players each place an agent at every node of a connected, delay
//! weighted graph. Locations activate one per round in a scheduled order;
//! the active location plays a Prisoner's Dilemma stage game, then messages
//! propagate along the network with integer round delays. The non-deviating
//! player runs a trigger strategy: cooperate until an alarm about a
//! deviation becomes usable, then defect forever. Whether full cooperation
//! survives depends on the number of locations and the network diameter.
//!
//! Module map:
//!
//! - [`network`]: delay graphs, propagation distances, diameters, topology
//!   generation (paths, cycles, stars, complete graphs, Barabási–Albert).
//! - [`game`]: the stage game and payoff validation.
//! - [`engine`]: round-by-round execution with alarm propagation, deviator
//!   models, and schedule-averaged expectations.
//! - [`analysis`]: exact deviation payoffs, the cooperation bound, and its
//!   asymptotic regimes.
//! - [`oracle`]: brute-force cross-checks tying the engine to the formulas.
//! - [`rational`]: exact rational parsing, formatting, and serialization.

pub mod analysis;
pub mod engine;
pub mod game;
pub mod network;
pub mod oracle;
pub mod rational;

pub use analysis::{
    average_deviation_payoff_closed, average_deviation_payoff_direct, bound_fraction,
    check_sustainability, cooperation_bound, cooperation_bound_prefactored, deviation_payoff,
    regime_bound, AnalysisError, EquilibriumReport, RegimeSpec,
};
pub use engine::{
    alarm_usable_rounds, all_schedules, average_over_schedules, expected_payoffs, run,
    run_totals_with_matrix, run_with_matrix, AlarmLog, ConfigAverage, DeviatorFamily,
    DeviatorModel, EngineError, ExpectedPayoffs, PermutationSource, Player, RoundRecord, Schedule,
    SimResult, EXHAUSTIVE_LIMIT,
};
pub use game::{Action, GameError, PDPayoffs, PdConstraint};
pub use network::{Delay, DelayGraph, DelayMatrix, Edge, NetworkError, NodeId, Topology};
pub use oracle::{
    best_deviation_search, verify_theorem_boundary, verify_vt_on_uniform_graph, Check,
    DeviationSearch, OracleError, SearchFamily, VerificationReport,
};
pub use rational::{parse_rational, to_decimal, to_exact_string, Rational};
