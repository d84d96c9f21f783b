//! Round-based execution of the distributed game.
//!
//! One run plays `n` rounds over `n` locations: each round activates one
//! location per the schedule, both players' agents there choose actions, and
//! messages propagate afterwards. The non-deviating player follows the
//! trigger strategy (cooperate until an alarm is usable, then defect
//! forever). Alarms originate in the message stage of the round where a
//! deviation is first observed and become usable at location `i` from round
//! `t + d(origin, i) + 1` onward: a message sent in round `t` with path delay
//! `d` enters the recipient's information set for the action stage of round
//! `t + d + 1`.

use std::fmt;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Action, PDPayoffs};
use crate::network::{DelayGraph, DelayMatrix, NodeId};
use crate::rational::{count, Rational};

/// Largest location count accepted for exhaustive schedule enumeration.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("schedule covers {schedule} locations but the graph has {nodes}")]
    ScheduleMismatch { schedule: usize, nodes: usize },
    #[error("schedule is not a permutation: {0}")]
    NotAPermutation(String),
    #[error("invalid deviator: {0}")]
    InvalidDeviator(String),
    #[error("exhaustive enumeration limited to {limit} locations, got {n}")]
    TooManyPermutations { n: usize, limit: usize },
    #[error("sampled evaluation needs at least one schedule")]
    EmptySample,
}

/// Activation order: position `r - 1` holds the location active in round `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    order: Vec<NodeId>,
}

impl Schedule {
    /// Validates that `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<NodeId>) -> Result<Self, EngineError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &loc in &order {
            if loc >= n {
                return Err(EngineError::NotAPermutation(format!(
                    "location {loc} out of range for {n} locations"
                )));
            }
            if seen[loc] {
                return Err(EngineError::NotAPermutation(format!(
                    "location {loc} appears twice"
                )));
            }
            seen[loc] = true;
        }
        Ok(Schedule { order })
    }

    /// The schedule `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Schedule {
            order: (0..n).collect(),
        }
    }

    /// Uniformly random schedule drawn from the given generator.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut order: Vec<NodeId> = (0..n).collect();
        order.shuffle(rng);
        Schedule { order }
    }

    pub fn order(&self) -> &[NodeId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Round (1-based) in which `location` activates.
    pub fn activation_round(&self, location: NodeId) -> Option<usize> {
        self.order
            .iter()
            .position(|&l| l == location)
            .map(|i| i + 1)
    }
}

/// Every schedule over `n` locations in lexicographic order.
pub fn all_schedules(n: usize) -> Result<Vec<Schedule>, EngineError> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(EngineError::TooManyPermutations {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(factorial(n) as usize);
    for_each_order(n, |order| {
        out.push(Schedule {
            order: order.to_vec(),
        })
    });
    Ok(out)
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Calls `f` with each permutation of `0..n` in lexicographic order.
fn for_each_order(n: usize, mut f: impl FnMut(&[NodeId])) {
    let mut items: Vec<NodeId> = (0..n).collect();
    loop {
        f(&items);
        if !next_lexicographic(&mut items) {
            break;
        }
    }
}

fn next_lexicographic(v: &mut [NodeId]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Which player deviates (the other runs the trigger strategy).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Player {
    One,
    Two,
}

/// Deviation behavior of the deviating player's agents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeviatorModel {
    /// Both players run the trigger strategy; play stays all-cooperate.
    None,
    /// Defect at every active location from `start_round` on. Conditions on
    /// the global round index, so it realizes the upper-bound payoff.
    Omniscient { start_round: usize },
    /// The agent at `trigger_location` defects when that location activates;
    /// a go signal then propagates exactly like an alarm and the other
    /// deviator agents defect once it is usable at their location.
    GoMessage { trigger_location: NodeId },
}

impl fmt::Display for DeviatorModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeviatorModel::None => write!(f, "none"),
            DeviatorModel::Omniscient { start_round } => write!(f, "omniscient:{start_round}"),
            DeviatorModel::GoMessage { trigger_location } => write!(f, "go:{trigger_location}"),
        }
    }
}

/// Propagation record of one network signal (alarm or go).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlarmLog {
    pub origin_location: NodeId,
    pub origin_round: usize,
    /// Per location: first round index from which the signal can shape an
    /// action there. Equals `origin_round + d(origin, location) + 1`.
    pub usable_from: Vec<u64>,
}

impl AlarmLog {
    pub fn usable_at(&self, location: NodeId, round: usize) -> bool {
        round as u64 >= self.usable_from[location]
    }
}

/// First rounds at which a signal sent from `origin` in round `origin_round`
/// can influence an action at each location.
pub fn alarm_usable_rounds(g: &DelayGraph, origin: NodeId, origin_round: usize) -> AlarmLog {
    assert!(origin < g.node_count(), "origin {origin} out of range");
    assert!(origin_round >= 1, "rounds are 1-based");
    let usable_from = g
        .distances_from(origin)
        .into_iter()
        .map(|d| origin_round as u64 + d + 1)
        .collect();
    AlarmLog {
        origin_location: origin,
        origin_round,
        usable_from,
    }
}

fn signal_log(matrix: &DelayMatrix, origin: NodeId, origin_round: usize) -> AlarmLog {
    let usable_from = matrix
        .row(origin)
        .iter()
        .map(|&d| origin_round as u64 + d + 1)
        .collect();
    AlarmLog {
        origin_location: origin,
        origin_round,
        usable_from,
    }
}

/// One played round: actions and payoffs in player order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub location: NodeId,
    pub action_p1: Action,
    pub action_p2: Action,
    #[serde(with = "crate::rational::serde_ratio")]
    pub pay_p1: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub pay_p2: Rational,
}

/// Full trace and totals of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimResult {
    #[serde(with = "crate::rational::serde_ratio")]
    pub total_p1: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub total_p2: Rational,
    pub rounds: Vec<RoundRecord>,
    pub alarm: Option<AlarmLog>,
    pub go: Option<AlarmLog>,
}

impl SimResult {
    pub fn deviator_total(&self, deviating_player: Player) -> &Rational {
        match deviating_player {
            Player::One => &self.total_p1,
            Player::Two => &self.total_p2,
        }
    }

    pub fn cooperator_total(&self, deviating_player: Player) -> &Rational {
        match deviating_player {
            Player::One => &self.total_p2,
            Player::Two => &self.total_p1,
        }
    }

    /// Per-round trace as CSV: `round,location,action_p1,action_p2,pay_p1,pay_p2`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("round,location,action_p1,action_p2,pay_p1,pay_p2\n");
        for r in &self.rounds {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.round,
                r.location,
                r.action_p1,
                r.action_p2,
                crate::rational::to_exact_string(&r.pay_p1),
                crate::rational::to_exact_string(&r.pay_p2),
            ));
        }
        out
    }

    /// JSON document mirroring the result.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("SimResult serializes")
    }
}

fn validate(n: usize, s: &Schedule, deviator: &DeviatorModel) -> Result<(), EngineError> {
    if s.len() != n {
        return Err(EngineError::ScheduleMismatch {
            schedule: s.len(),
            nodes: n,
        });
    }
    validate_deviator(n, deviator)
}

fn validate_deviator(n: usize, deviator: &DeviatorModel) -> Result<(), EngineError> {
    match deviator {
        DeviatorModel::None => Ok(()),
        DeviatorModel::Omniscient { start_round } => {
            if *start_round == 0 || *start_round > n {
                Err(EngineError::InvalidDeviator(format!(
                    "start round {start_round} outside 1..={n}"
                )))
            } else {
                Ok(())
            }
        }
        DeviatorModel::GoMessage { trigger_location } => {
            if *trigger_location >= n {
                Err(EngineError::InvalidDeviator(format!(
                    "trigger location {trigger_location} out of range for {n} locations"
                )))
            } else {
                Ok(())
            }
        }
    }
}

/// Round loop shared by the trace and totals-only paths. Yields the deviator
/// and cooperator actions for each round; returns the signal logs.
fn play_rounds(
    matrix: &DelayMatrix,
    order: &[NodeId],
    deviator: &DeviatorModel,
    mut on_round: impl FnMut(usize, NodeId, Action, Action),
) -> (Option<AlarmLog>, Option<AlarmLog>) {
    use Action::{Cooperate as C, Defect as D};
    let n = order.len();
    let mut alarm: Option<AlarmLog> = None;
    let mut go: Option<AlarmLog> = None;
    for r in 1..=n {
        let loc = order[r - 1];
        let punishing = alarm.as_ref().is_some_and(|log| log.usable_at(loc, r));
        let coop_action = if punishing { D } else { C };
        let dev_action = match deviator {
            DeviatorModel::None => coop_action,
            DeviatorModel::Omniscient { start_round } => {
                if r >= *start_round {
                    D
                } else {
                    C
                }
            }
            DeviatorModel::GoMessage { trigger_location } => {
                if loc == *trigger_location || go.as_ref().is_some_and(|log| log.usable_at(loc, r))
                {
                    D
                } else {
                    C
                }
            }
        };
        on_round(r, loc, dev_action, coop_action);
        // Message stage: the trigger player's agent at the active location
        // observes the deviation and originates the alarm; the go signal
        // originates at the trigger location the round it activates.
        if dev_action == D && alarm.is_none() {
            alarm = Some(signal_log(matrix, loc, r));
        }
        if let DeviatorModel::GoMessage { trigger_location } = deviator {
            if go.is_none() && loc == *trigger_location {
                go = Some(signal_log(matrix, loc, r));
            }
        }
    }
    (alarm, go)
}

/// Runs one game, computing propagation distances from the graph.
pub fn run(
    g: &DelayGraph,
    p: &PDPayoffs,
    s: &Schedule,
    deviator: &DeviatorModel,
    deviating_player: Player,
) -> Result<SimResult, EngineError> {
    run_with_matrix(&g.all_pairs_delay(), p, s, deviator, deviating_player)
}

/// Runs one game against a precomputed distance matrix.
pub fn run_with_matrix(
    matrix: &DelayMatrix,
    p: &PDPayoffs,
    s: &Schedule,
    deviator: &DeviatorModel,
    deviating_player: Player,
) -> Result<SimResult, EngineError> {
    validate(matrix.n(), s, deviator)?;
    let mut rounds = Vec::with_capacity(s.len());
    let mut total_p1 = Rational::zero();
    let mut total_p2 = Rational::zero();
    let (alarm, go) = play_rounds(matrix, s.order(), deviator, |r, loc, dev, coop| {
        let (action_p1, action_p2) = match deviating_player {
            Player::One => (dev, coop),
            Player::Two => (coop, dev),
        };
        let (pay_p1, pay_p2) = p.stage_payoff(action_p1, action_p2);
        total_p1 += &pay_p1;
        total_p2 += &pay_p2;
        rounds.push(RoundRecord {
            round: r,
            location: loc,
            action_p1,
            action_p2,
            pay_p1,
            pay_p2,
        });
    });
    Ok(SimResult {
        total_p1,
        total_p2,
        rounds,
        alarm,
        go,
    })
}

/// Deviator and cooperator totals of one run, skipping the trace.
///
/// The totals are sums of per-round payoffs; this tallies the action-pair
/// counts and multiplies once per class, which is the same exact sum.
pub fn run_totals_with_matrix(
    matrix: &DelayMatrix,
    p: &PDPayoffs,
    s: &Schedule,
    deviator: &DeviatorModel,
) -> Result<(Rational, Rational), EngineError> {
    validate(matrix.n(), s, deviator)?;
    Ok(totals_unchecked(matrix, p, s.order(), deviator))
}

fn totals_unchecked(
    matrix: &DelayMatrix,
    p: &PDPayoffs,
    order: &[NodeId],
    deviator: &DeviatorModel,
) -> (Rational, Rational) {
    use Action::{Cooperate as C, Defect as D};
    let (mut n_cc, mut n_dd, mut n_dc, mut n_cd) = (0u64, 0u64, 0u64, 0u64);
    play_rounds(matrix, order, deviator, |_, _, dev, coop| {
        match (dev, coop) {
            (C, C) => n_cc += 1,
            (D, D) => n_dd += 1,
            (D, C) => n_dc += 1,
            (C, D) => n_cd += 1,
        }
    });
    let dev = p.c() * count(n_cc) + p.a() * count(n_dd) + p.b() * count(n_dc);
    let coop = p.c() * count(n_cc) + p.a() * count(n_dd) + p.b() * count(n_cd);
    (dev, coop)
}

/// How schedules are supplied to an expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PermutationSource {
    /// All `n!` schedules in lexicographic order; exact expectation.
    Exhaustive,
    /// `count` schedules drawn uniformly from a generator seeded with `seed`.
    Sample { count: usize, seed: u64 },
}

/// A deviator family spanning one configuration per member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeviatorFamily {
    None,
    /// `Omniscient { start_round: t }` for every `t` in `1..=n`.
    OmniscientAll,
    /// `GoMessage { trigger_location: l }` for every location.
    GoMessageAll,
}

/// Schedule-averaged totals for one deviator configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfigAverage {
    pub deviator: DeviatorModel,
    #[serde(with = "crate::rational::serde_ratio")]
    pub deviator_average: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub cooperator_average: Rational,
}

/// Averages per configuration plus uniform means across the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedPayoffs {
    pub per_config: Vec<ConfigAverage>,
    /// Uniform mean over configurations of the deviator averages. For the
    /// omniscient family this is the engine-side counterpart of the average
    /// deviation payoff: the deviation round is realized uniformly by the
    /// activation order, not chosen.
    #[serde(with = "crate::rational::serde_ratio")]
    pub deviator_mean: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub cooperator_mean: Rational,
    pub schedule_count: u64,
}

/// Schedule-averaged deviator and cooperator totals for one configuration.
pub fn average_over_schedules(
    g: &DelayGraph,
    p: &PDPayoffs,
    deviator: &DeviatorModel,
    source: PermutationSource,
) -> Result<(Rational, Rational), EngineError> {
    let matrix = g.all_pairs_delay();
    let orders = schedule_set(g.node_count(), source)?;
    validate_deviator(g.node_count(), deviator)?;
    Ok(average_for_config(&matrix, p, deviator, &orders))
}

/// Schedule-averaged totals for every configuration in a family.
///
/// Sampled sources draw all schedules up front from one seeded generator and
/// evaluate every configuration against the same draw.
pub fn expected_payoffs(
    g: &DelayGraph,
    p: &PDPayoffs,
    family: DeviatorFamily,
    source: PermutationSource,
) -> Result<ExpectedPayoffs, EngineError> {
    let n = g.node_count();
    let matrix = g.all_pairs_delay();
    let orders = schedule_set(n, source)?;
    let configs: Vec<DeviatorModel> = match family {
        DeviatorFamily::None => vec![DeviatorModel::None],
        DeviatorFamily::OmniscientAll => (1..=n)
            .map(|t| DeviatorModel::Omniscient { start_round: t })
            .collect(),
        DeviatorFamily::GoMessageAll => (0..n)
            .map(|l| DeviatorModel::GoMessage {
                trigger_location: l,
            })
            .collect(),
    };
    let mut per_config = Vec::with_capacity(configs.len());
    let mut dev_sum = Rational::zero();
    let mut coop_sum = Rational::zero();
    for deviator in configs {
        let (dev, coop) = average_for_config(&matrix, p, &deviator, &orders);
        dev_sum += &dev;
        coop_sum += &coop;
        per_config.push(ConfigAverage {
            deviator,
            deviator_average: dev,
            cooperator_average: coop,
        });
    }
    let config_count = count(per_config.len() as u64);
    Ok(ExpectedPayoffs {
        deviator_mean: dev_sum / &config_count,
        cooperator_mean: coop_sum / &config_count,
        schedule_count: orders.len() as u64,
        per_config,
    })
}

fn schedule_set(n: usize, source: PermutationSource) -> Result<Vec<Vec<NodeId>>, EngineError> {
    match source {
        PermutationSource::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(EngineError::TooManyPermutations {
                    n,
                    limit: EXHAUSTIVE_LIMIT,
                });
            }
            let mut orders = Vec::with_capacity(factorial(n) as usize);
            for_each_order(n, |order| orders.push(order.to_vec()));
            Ok(orders)
        }
        PermutationSource::Sample { count, seed } => {
            if count == 0 {
                return Err(EngineError::EmptySample);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..count)
                .map(|_| Schedule::random(n, &mut rng).order)
                .collect())
        }
    }
}

fn average_for_config(
    matrix: &DelayMatrix,
    p: &PDPayoffs,
    deviator: &DeviatorModel,
    orders: &[Vec<NodeId>],
) -> (Rational, Rational) {
    let mut dev_sum = Rational::zero();
    let mut coop_sum = Rational::zero();
    for order in orders {
        let (dev, coop) = totals_unchecked(matrix, p, order, deviator);
        dev_sum += dev;
        coop_sum += coop;
    }
    let runs = count(orders.len() as u64);
    (dev_sum / &runs, coop_sum / &runs)
}
