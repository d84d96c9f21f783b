//! Brute-force cross-validation of the engine against the analysis formulas.
//!
//! The engine's exhaustive schedule enumeration is treated as ground truth
//! and the closed formulas as claims under test; any disagreement is a
//! failed check carrying both exact values.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{cooperation_bound, deviation_payoff};
use crate::engine::{
    self, expected_payoffs, ConfigAverage, DeviatorFamily, DeviatorModel, PermutationSource,
    Schedule, EXHAUSTIVE_LIMIT,
};
use crate::game::PDPayoffs;
use crate::network::{Delay, DelayGraph, Topology};
use crate::rational::{count, to_exact_string, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("exhaustive verification limited to {limit} locations, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

/// One comparison between an engine-side and a formula-side value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(with = "crate::rational::serde_ratio")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub config: String,
    pub checks: Vec<Check>,
    pub all_passed: bool,
}

impl VerificationReport {
    fn from_checks(config: String, checks: Vec<Check>) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        VerificationReport {
            config,
            checks,
            all_passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn guard_nodes(n: usize) -> Result<(), OracleError> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(OracleError::TooLarge {
            n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    if n < 2 {
        return Err(OracleError::BadParameter(
            "verification needs at least 2 locations".into(),
        ));
    }
    Ok(())
}

/// Runs the omniscient deviator for every start round over every schedule of
/// a complete graph with uniform delay `delta` (so the diameter is `delta`)
/// and checks exact equality of each deviator total with the deviation
/// payoff formula.
pub fn verify_vt_on_uniform_graph(
    n: usize,
    delta: Delay,
    p: &PDPayoffs,
) -> Result<VerificationReport, OracleError> {
    guard_nodes(n)?;
    let g = Topology::Complete(n)
        .generate(delta)
        .expect("complete graph");
    let matrix = g.all_pairs_delay();
    let schedules = engine::all_schedules(n).expect("within guard");
    let mut checks = Vec::with_capacity(n);
    for t in 1..=n {
        let expected = deviation_payoff(t as u64, n as u64, delta, p).expect("t in range");
        let deviator = DeviatorModel::Omniscient { start_round: t };
        let mut observed = expected.clone();
        let mut mismatches = 0usize;
        for s in &schedules {
            let (dev, _) =
                engine::run_totals_with_matrix(&matrix, p, s, &deviator).expect("validated inputs");
            if dev != expected {
                if mismatches == 0 {
                    observed = dev;
                }
                mismatches += 1;
            }
        }
        checks.push(Check {
            name: format!(
                "t={t}: deviator total equals v_t on all {} schedules ({mismatches} mismatches)",
                schedules.len()
            ),
            passed: mismatches == 0,
            lhs: observed,
            rhs: expected,
        });
    }
    Ok(VerificationReport::from_checks(
        format!(
            "complete({n}), uniform delay {delta}, a={}, b={}, c={}",
            to_exact_string(p.a()),
            to_exact_string(p.b()),
            to_exact_string(p.c())
        ),
        checks,
    ))
}

/// Exhaustive engine mean of omniscient deviator totals over all start
/// rounds and schedules on a complete graph with uniform delay `tau`.
fn engine_average(n: usize, tau: Delay, p: &PDPayoffs) -> Rational {
    let g = Topology::Complete(n).generate(tau).expect("complete graph");
    expected_payoffs(
        &g,
        p,
        DeviatorFamily::OmniscientAll,
        PermutationSource::Exhaustive,
    )
    .expect("within guard")
    .deviator_mean
}

/// Puts the temptation payoff exactly on the cooperation bound and confirms
/// the engine average lands on `n·c`, then perturbs it by `±(c-a)/100` and
/// confirms the strict inequality flips each way.
///
/// At `tau = n-1` the bound collapses to `c` and no strict dilemma sits on
/// the boundary; the probes there use the relaxed payoff constructor.
pub fn verify_theorem_boundary(
    n: usize,
    tau: u64,
    a: &Rational,
    c: &Rational,
) -> Result<VerificationReport, OracleError> {
    guard_nodes(n)?;
    if tau > n as u64 - 1 {
        return Err(OracleError::BadParameter(format!(
            "tau={tau} out of range for n={n}: requires tau <= n-1"
        )));
    }
    if !(c > a && *a > Rational::from_integer(0.into())) {
        return Err(OracleError::BadParameter(
            "payoffs must satisfy c > a > 0".into(),
        ));
    }
    let b_star = cooperation_bound(n as u64, tau, a, c).expect("tau in range");
    let epsilon = (c - a) / count(100);
    let nc = count(n as u64) * c;
    let degenerate = tau == n as u64 - 1;

    let mut checks = Vec::new();
    checks.push(Check {
        name: if degenerate {
            "degenerate boundary: bound collapses to c (no strict dilemma sustains cooperation)"
                .into()
        } else {
            "boundary temptation exceeds c (strict dilemma feasible on the boundary)".into()
        },
        passed: if degenerate {
            b_star == *c
        } else {
            b_star > *c
        },
        lhs: b_star.clone(),
        rhs: c.clone(),
    });

    let probe = |b: Rational| -> Rational {
        let p = PDPayoffs::new_relaxed(a.clone(), b, c.clone()).expect("positive probe payoffs");
        engine_average(n, tau, &p)
    };

    let at_bound = probe(b_star.clone());
    checks.push(Check {
        name: format!(
            "engine average at b = {} equals n*c",
            to_exact_string(&b_star)
        ),
        passed: at_bound == nc,
        lhs: at_bound,
        rhs: nc.clone(),
    });

    let above = probe(&b_star + &epsilon);
    checks.push(Check {
        name: "engine average at b + (c-a)/100 strictly exceeds n*c".into(),
        passed: above > nc,
        lhs: above,
        rhs: nc.clone(),
    });

    let below = probe(&b_star - &epsilon);
    checks.push(Check {
        name: "engine average at b - (c-a)/100 stays strictly below n*c".into(),
        passed: below < nc,
        lhs: below,
        rhs: nc.clone(),
    });

    Ok(VerificationReport::from_checks(
        format!(
            "complete({n}), uniform delay {tau}, a={}, c={}, boundary b={}",
            to_exact_string(a),
            to_exact_string(c),
            to_exact_string(&b_star)
        ),
        checks,
    ))
}

/// Deviation family searched by [`best_deviation_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchFamily {
    Omniscient,
    GoMessage,
}

/// Exhaustive-average deviation payoffs across one family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeviationSearch {
    pub family: SearchFamily,
    /// Schedule-averaged deviator totals, one per configuration.
    pub per_config: Vec<ConfigAverage>,
    /// Uniform mean of the per-configuration averages: the family's expected
    /// deviation payoff under the uniform activation order. This is the
    /// value the equilibrium condition compares against `n·c`.
    #[serde(with = "crate::rational::serde_ratio")]
    pub family_average: Rational,
    /// Configuration with the largest schedule-averaged total.
    pub best_config: DeviatorModel,
    #[serde(with = "crate::rational::serde_ratio")]
    pub best_average: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    pub n_c: Rational,
    /// Whether the family average strictly exceeds `n·c`.
    pub profitable: bool,
}

/// Evaluates every configuration of a deviation family by exhaustive
/// schedule enumeration and reports whether the family's expected payoff
/// beats the all-cooperate total.
pub fn best_deviation_search(
    g: &DelayGraph,
    p: &PDPayoffs,
    family: SearchFamily,
) -> Result<DeviationSearch, OracleError> {
    let n = g.node_count();
    guard_nodes(n)?;
    let engine_family = match family {
        SearchFamily::Omniscient => DeviatorFamily::OmniscientAll,
        SearchFamily::GoMessage => DeviatorFamily::GoMessageAll,
    };
    let ep =
        expected_payoffs(g, p, engine_family, PermutationSource::Exhaustive).expect("within guard");
    let best = ep
        .per_config
        .iter()
        .max_by(|x, y| x.deviator_average.cmp(&y.deviator_average))
        .expect("family is non-empty")
        .clone();
    let n_c = count(n as u64) * p.c();
    let profitable = ep.deviator_mean > n_c;
    Ok(DeviationSearch {
        family,
        per_config: ep.per_config,
        family_average: ep.deviator_mean,
        best_config: best.deviator,
        best_average: best.deviator_average,
        n_c,
        profitable,
    })
}

/// Largest omniscient deviator total across all schedules and start rounds;
/// exposed for upper-bound property checks against the deviation payoff.
pub fn max_omniscient_total(
    g: &DelayGraph,
    p: &PDPayoffs,
    start_round: usize,
) -> Result<Rational, OracleError> {
    let n = g.node_count();
    guard_nodes(n)?;
    let matrix = g.all_pairs_delay();
    let deviator = DeviatorModel::Omniscient { start_round };
    let mut best: Option<Rational> = None;
    for s in engine::all_schedules(n).expect("within guard") {
        let (dev, _) =
            engine::run_totals_with_matrix(&matrix, p, &s, &deviator).expect("valid inputs");
        best = Some(match best {
            Some(prev) if prev >= dev => prev,
            _ => dev,
        });
    }
    Ok(best.expect("n >= 2"))
}

/// Per-schedule dominance data for one trigger location: the go-message
/// total and the omniscient total started at that location's activation
/// round, for every schedule.
pub fn dominance_pairs(
    g: &DelayGraph,
    p: &PDPayoffs,
    trigger_location: usize,
) -> Result<Vec<(Schedule, Rational, Rational)>, OracleError> {
    let n = g.node_count();
    guard_nodes(n)?;
    if trigger_location >= n {
        return Err(OracleError::BadParameter(format!(
            "trigger location {trigger_location} out of range"
        )));
    }
    let matrix = g.all_pairs_delay();
    let go = DeviatorModel::GoMessage { trigger_location };
    let mut out = Vec::new();
    for s in engine::all_schedules(n).expect("within guard") {
        let t = s
            .activation_round(trigger_location)
            .expect("location in schedule");
        let omni = DeviatorModel::Omniscient { start_round: t };
        let (go_total, _) =
            engine::run_totals_with_matrix(&matrix, p, &s, &go).expect("valid inputs");
        let (omni_total, _) =
            engine::run_totals_with_matrix(&matrix, p, &s, &omni).expect("valid inputs");
        out.push((s, go_total, omni_total));
    }
    Ok(out)
}
