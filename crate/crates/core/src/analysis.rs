//! Exact-rational deviation payoffs, the cooperation bound, and the
//! asymptotic delay regimes.
//!
//! The deviation payoff for a deviation starting at round `t` under a
//! network diameter `tau` is
//!
//! ```text
//! v(t) = (t-1)·c + min(tau+1, n-t+1)·b + max(n-t-tau, 0)·a
//! ```
//!
//! Its average over a uniformly random deviation round, compared against the
//! all-cooperate total `n·c`, yields the cooperation bound
//!
//! ```text
//! b <= c + (c-a) · (n-tau)(n-tau-1) / ((2n-tau)(tau+1))
//! ```
//!
//! Everything here is exact; boundary cases are equalities, not tolerances.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::game::PDPayoffs;
use crate::rational::{count, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("deviation round {t} outside 1..={n}")]
    BadRound { t: u64, n: u64 },
    #[error("closed form requires tau <= n-1 (got tau={tau}, n={n}); use the direct sum")]
    TauOutOfClosedFormRange { tau: u64, n: u64 },
    #[error("tau={tau} out of range for n={n}: requires 0 <= tau <= n-1")]
    TauOutOfRange { tau: u64, n: u64 },
    #[error("alpha must lie strictly between 0 and 1")]
    BadAlpha,
}

/// Total payoff of a player deviating from round `t` on when alarms need up
/// to `tau` rounds to arrive. `tau >= n` is allowed; the clamps absorb it.
pub fn deviation_payoff(
    t: u64,
    n: u64,
    tau: u64,
    p: &PDPayoffs,
) -> Result<Rational, AnalysisError> {
    if t == 0 || t > n {
        return Err(AnalysisError::BadRound { t, n });
    }
    // Widen before adding: tau is unconstrained.
    let temptation_rounds = (tau as u128 + 1).min((n - t + 1) as u128) as u64;
    let punished_rounds = (n as u128).saturating_sub(t as u128 + tau as u128) as u64;
    Ok(p.c() * count(t - 1) + p.b() * count(temptation_rounds) + p.a() * count(punished_rounds))
}

/// Mean of `deviation_payoff` over `t = 1..=n`, summed term by term.
///
/// The payoffs are put over one shared denominator up front so the sum runs
/// on integers; the result is the same exact mean of the per-`t` values.
pub fn average_deviation_payoff_direct(n: u64, tau: u64, p: &PDPayoffs) -> Rational {
    use num_integer::Integer;
    assert!(n >= 1, "need at least one round");
    let den = p.a().denom().lcm(p.b().denom()).lcm(p.c().denom());
    let a = p.a().numer() * (&den / p.a().denom());
    let b = p.b().numer() * (&den / p.b().denom());
    let c = p.c().numer() * (&den / p.c().denom());
    let mut sum = BigInt::zero();
    for t in 1..=n {
        let temptation_rounds = (tau as u128 + 1).min((n - t + 1) as u128) as u64;
        let punished_rounds = (n as u128).saturating_sub(t as u128 + tau as u128) as u64;
        sum += &c * BigInt::from(t - 1)
            + &b * BigInt::from(temptation_rounds)
            + &a * BigInt::from(punished_rounds);
    }
    Rational::new(sum, den * BigInt::from(n))
}

/// Closed form of the average deviation payoff:
/// `(1/n)[ c·n(n-1)/2 + b·(tau+1)(n - tau/2) + a·(n-tau-1)(n-tau)/2 ]`.
///
/// Valid only for `tau <= n-1`; the sum split behind it presupposes the
/// alarm can land inside the horizon.
pub fn average_deviation_payoff_closed(
    n: u64,
    tau: u64,
    p: &PDPayoffs,
) -> Result<Rational, AnalysisError> {
    assert!(n >= 1, "need at least one round");
    if tau > n - 1 {
        return Err(AnalysisError::TauOutOfClosedFormRange { tau, n });
    }
    let n_int = BigInt::from(n);
    let tau_int = BigInt::from(tau);
    let coop_part = &n_int * (&n_int - 1);
    let temptation_part = (&tau_int + 1) * (2 * &n_int - &tau_int);
    let punished_part = (&n_int - &tau_int - 1) * (&n_int - &tau_int);
    let total = p.c() * Rational::from_integer(coop_part)
        + p.b() * Rational::from_integer(temptation_part)
        + p.a() * Rational::from_integer(punished_part);
    Ok(total / Rational::from_integer(2 * n_int))
}

/// The fraction `(n-tau)(n-tau-1) / ((2n-tau)(tau+1))`, which scales the
/// cooperation surplus `c - a` in the bound. Strictly decreasing in `tau`.
pub fn bound_fraction(n: u64, tau: u64) -> Result<Rational, AnalysisError> {
    if n == 0 || tau > n - 1 {
        return Err(AnalysisError::TauOutOfRange { tau, n });
    }
    let n_int = BigInt::from(n);
    let tau_int = BigInt::from(tau);
    let numer = (&n_int - &tau_int) * (&n_int - &tau_int - 1);
    let denom = (2 * &n_int - &tau_int) * (&tau_int + 1);
    Ok(Rational::new(numer, denom))
}

/// Largest temptation payoff sustaining full cooperation:
/// `c + (c-a)·(n-tau)(n-tau-1)/((2n-tau)(tau+1))`.
///
/// Asserts exact agreement with [`cooperation_bound_prefactored`].
pub fn cooperation_bound(
    n: u64,
    tau: u64,
    a: &Rational,
    c: &Rational,
) -> Result<Rational, AnalysisError> {
    let fraction = bound_fraction(n, tau)?;
    let bound = c + (c - a) * fraction;
    let prefactored = cooperation_bound_prefactored(n, tau, a, c)?;
    assert_eq!(
        bound, prefactored,
        "factored and pre-factored bounds disagree for n={n}, tau={tau}"
    );
    Ok(bound)
}

/// The bound before factoring: `[c·n(n+1) - a·(n-tau-1)(n-tau)] / ((2n-tau)(tau+1))`.
pub fn cooperation_bound_prefactored(
    n: u64,
    tau: u64,
    a: &Rational,
    c: &Rational,
) -> Result<Rational, AnalysisError> {
    if n == 0 || tau > n - 1 {
        return Err(AnalysisError::TauOutOfRange { tau, n });
    }
    let n_int = BigInt::from(n);
    let tau_int = BigInt::from(tau);
    let numer = c * Rational::from_integer(&n_int * (&n_int + 1))
        - a * Rational::from_integer((&n_int - &tau_int - 1) * (&n_int - &tau_int));
    let denom = Rational::from_integer((2 * &n_int - &tau_int) * (&tau_int + 1));
    Ok(numer / denom)
}

/// Sustainability verdict for full cooperation at `(n, tau)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquilibriumReport {
    pub n: u64,
    pub tau: u64,
    pub payoffs: PDPayoffs,
    /// Largest sustainable temptation payoff; collapses to `c` for
    /// `tau >= n-1`.
    #[serde(with = "crate::rational::serde_ratio")]
    pub bound_b: Rational,
    pub sustainable: bool,
    /// `bound_b - b`; non-negative exactly when sustainable.
    #[serde(with = "crate::rational::serde_ratio")]
    pub margin: Rational,
}

/// Checks the averaged no-profitable-deviation condition.
///
/// `sustainable` is decided by the direct average (`v_avg <= n·c`); the
/// bound route must agree exactly and this is asserted.
pub fn check_sustainability(n: u64, tau: u64, p: &PDPayoffs) -> EquilibriumReport {
    assert!(n >= 1, "need at least one round");
    let v_avg = average_deviation_payoff_direct(n, tau, p);
    let nc = count(n) * p.c();
    let sustainable = v_avg <= nc;
    let bound_b = if tau < n {
        cooperation_bound(n, tau, p.a(), p.c()).expect("tau < n")
    } else {
        p.c().clone()
    };
    let margin = &bound_b - p.b();
    assert_eq!(
        sustainable,
        margin >= Rational::zero(),
        "average and bound criteria disagree for n={n}, tau={tau}"
    );
    EquilibriumReport {
        n,
        tau,
        payoffs: p.clone(),
        bound_b,
        sustainable,
        margin,
    }
}

/// Asymptotic delay regimes of the cooperation bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegimeSpec {
    /// `tau = 0`: instantaneous propagation.
    NoDelay { n: u64 },
    /// `tau >= n-1`: the bound collapses to `c`.
    FullDelay,
    /// `tau = alpha·n` with fixed `alpha` in (0, 1), in the large-`n` limit.
    Proportional { alpha: Rational },
    /// Fixed small `tau`, large `n`: the fraction behaves like `n/(2(tau+1))`.
    ScaleFreeApprox { n: u64, tau: u64 },
}

/// Closed-form bound value for a regime.
///
/// The proportional form diverges as `alpha` approaches 0; the open interval
/// is enforced, not special-cased.
pub fn regime_bound(
    regime: &RegimeSpec,
    a: &Rational,
    c: &Rational,
) -> Result<Rational, AnalysisError> {
    let one = Rational::from_integer(BigInt::from(1));
    match regime {
        RegimeSpec::NoDelay { n } => {
            assert!(*n >= 1, "need at least one round");
            Ok(c + (c - a) * count(n - 1) / count(2))
        }
        RegimeSpec::FullDelay => Ok(c.clone()),
        RegimeSpec::Proportional { alpha } => {
            if *alpha <= Rational::zero() || *alpha >= one {
                return Err(AnalysisError::BadAlpha);
            }
            let shrink = &one - alpha;
            let fraction = (&shrink * &shrink) / (alpha * (count(2) - alpha));
            Ok(c + (c - a) * fraction)
        }
        RegimeSpec::ScaleFreeApprox { n, tau } => {
            assert!(*n >= 1, "need at least one round");
            Ok(c + (c - a) * count(*n) / (count(2) * count(tau + 1)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn payoffs() -> PDPayoffs {
        PDPayoffs::from_ints(1, 3, 2).unwrap()
    }

    #[test]
    fn deviation_payoff_examples() {
        let p = payoffs();
        // t=1, n=3, tau=0: 0*2 + 1*3 + 2*1.
        assert_eq!(deviation_payoff(1, 3, 0, &p).unwrap(), int(5));
        // Final round: (n-1)c + b regardless of tau.
        assert_eq!(deviation_payoff(3, 3, 2, &p).unwrap(), int(7));
        assert_eq!(deviation_payoff(3, 3, 77, &p).unwrap(), int(7));
        // Full-delay clamp: all temptation rounds.
        assert_eq!(deviation_payoff(1, 3, 5, &p).unwrap(), int(9));
    }

    #[test]
    fn deviation_payoff_rejects_out_of_range_rounds() {
        let p = payoffs();
        assert_eq!(
            deviation_payoff(0, 3, 0, &p).unwrap_err(),
            AnalysisError::BadRound { t: 0, n: 3 }
        );
        assert_eq!(
            deviation_payoff(4, 3, 0, &p).unwrap_err(),
            AnalysisError::BadRound { t: 4, n: 3 }
        );
    }

    #[test]
    fn deviation_payoff_is_monotone_in_tau() {
        let p = payoffs();
        for n in 1..=12u64 {
            for t in 1..=n {
                let mut prev = deviation_payoff(t, n, 0, &p).unwrap();
                for tau in 1..=(n + 2) {
                    let next = deviation_payoff(t, n, tau, &p).unwrap();
                    assert!(next >= prev, "t={t} n={n} tau={tau}");
                    prev = next;
                }
            }
        }
    }

    #[test]
    fn direct_average_is_the_termwise_mean() {
        for p in [
            payoffs(),
            PDPayoffs::new(ratio(2, 7), ratio(9, 2), ratio(5, 3)).unwrap(),
        ] {
            for n in 1..=12u64 {
                for tau in [0, 1, 2, n, n + 3] {
                    let naive: Rational = (1..=n)
                        .map(|t| deviation_payoff(t, n, tau, &p).unwrap())
                        .sum::<Rational>()
                        / count(n);
                    assert_eq!(
                        average_deviation_payoff_direct(n, tau, &p),
                        naive,
                        "n={n} tau={tau}"
                    );
                }
            }
        }
    }

    #[test]
    fn direct_average_examples() {
        let p = payoffs();
        // v_1 = 4, v_2 = 5.
        assert_eq!(average_deviation_payoff_direct(2, 0, &p), ratio(9, 2));
        // Single round: the deviator just takes b.
        assert_eq!(average_deviation_payoff_direct(1, 0, &p), int(3));
        assert_eq!(average_deviation_payoff_direct(1, 9, &p), int(3));
        // n=3, tau >= 2: v = (9 + 8 + 7) / 3.
        assert_eq!(average_deviation_payoff_direct(3, 2, &p), int(8));
        assert_eq!(average_deviation_payoff_direct(3, 5, &p), int(8));
    }

    #[test]
    fn closed_form_examples() {
        let p = payoffs();
        assert_eq!(
            average_deviation_payoff_closed(2, 0, &p).unwrap(),
            ratio(9, 2)
        );
        // n=5, tau=4: the punished term vanishes.
        assert_eq!(average_deviation_payoff_closed(5, 4, &p).unwrap(), int(13));
        assert_eq!(
            average_deviation_payoff_closed(3, 3, &p).unwrap_err(),
            AnalysisError::TauOutOfClosedFormRange { tau: 3, n: 3 }
        );
    }

    #[test]
    fn closed_form_matches_direct_sum() {
        let p = payoffs();
        for n in 1..=30u64 {
            for tau in 0..n {
                assert_eq!(
                    average_deviation_payoff_closed(n, tau, &p).unwrap(),
                    average_deviation_payoff_direct(n, tau, &p),
                    "n={n} tau={tau}"
                );
            }
        }
    }

    #[test]
    fn bound_fraction_examples() {
        assert_eq!(bound_fraction(5, 2).unwrap(), ratio(1, 4));
        assert_eq!(bound_fraction(2, 0).unwrap(), ratio(1, 2));
        assert_eq!(bound_fraction(7, 6).unwrap(), int(0));
        assert_eq!(
            bound_fraction(5, 5).unwrap_err(),
            AnalysisError::TauOutOfRange { tau: 5, n: 5 }
        );
    }

    #[test]
    fn cooperation_bound_examples() {
        let (a, c) = (int(1), int(2));
        assert_eq!(cooperation_bound(2, 0, &a, &c).unwrap(), ratio(5, 2));
        assert_eq!(cooperation_bound(5, 0, &a, &c).unwrap(), int(4));
        // tau = n-1 collapses the bound to c.
        for n in 2..=12 {
            assert_eq!(cooperation_bound(n, n - 1, &a, &c).unwrap(), c);
        }
        assert_eq!(cooperation_bound(3, 1, &a, &c).unwrap(), ratio(11, 5));
    }

    #[test]
    fn prefactored_bound_agrees() {
        let (a, c) = (ratio(3, 7), ratio(9, 4));
        for n in 1..=25u64 {
            for tau in 0..n {
                assert_eq!(
                    cooperation_bound(n, tau, &a, &c).unwrap(),
                    cooperation_bound_prefactored(n, tau, &a, &c).unwrap()
                );
            }
        }
    }

    #[test]
    fn sustainability_boundary_has_zero_margin() {
        let p = PDPayoffs::new(int(1), ratio(5, 2), int(2)).unwrap();
        let report = check_sustainability(2, 0, &p);
        assert!(report.sustainable);
        assert_eq!(report.margin, int(0));
        assert_eq!(report.bound_b, ratio(5, 2));
    }

    #[test]
    fn sustainability_examples() {
        let p = payoffs();
        let report = check_sustainability(5, 0, &p);
        assert!(report.sustainable);
        assert_eq!(report.bound_b, int(4));

        // Full delay: never sustainable for a strict dilemma.
        for n in 2..=8 {
            let report = check_sustainability(n, n - 1, &p);
            assert!(!report.sustainable);
            assert_eq!(report.bound_b, int(2));
        }
        // tau beyond n-1 behaves like full delay.
        let report = check_sustainability(4, 9, &p);
        assert!(!report.sustainable);
        assert_eq!(report.bound_b, int(2));
    }

    #[test]
    fn regime_bounds() {
        let (a, c) = (int(1), int(2));
        assert_eq!(
            regime_bound(&RegimeSpec::NoDelay { n: 5 }, &a, &c).unwrap(),
            int(4)
        );
        assert_eq!(
            regime_bound(&RegimeSpec::FullDelay, &a, &c).unwrap(),
            int(2)
        );
        assert_eq!(
            regime_bound(&RegimeSpec::Proportional { alpha: ratio(1, 2) }, &a, &c).unwrap(),
            ratio(7, 3)
        );
        assert_eq!(
            regime_bound(
                &RegimeSpec::Proportional {
                    alpha: ratio(9, 10)
                },
                &a,
                &c
            )
            .unwrap(),
            int(2) + ratio(1, 99)
        );
        for alpha in [int(0), int(1), ratio(3, 2), ratio(-1, 2)] {
            assert_eq!(
                regime_bound(&RegimeSpec::Proportional { alpha }, &a, &c).unwrap_err(),
                AnalysisError::BadAlpha
            );
        }
        // The scale-free approximation at tau=0 sits near the no-delay bound.
        assert_eq!(
            regime_bound(&RegimeSpec::ScaleFreeApprox { n: 100, tau: 0 }, &a, &c).unwrap(),
            int(52)
        );
    }

    #[test]
    fn no_delay_regime_matches_the_bound_at_tau_zero() {
        let (a, c) = (ratio(2, 3), ratio(7, 3));
        for n in 1..=40 {
            assert_eq!(
                regime_bound(&RegimeSpec::NoDelay { n }, &a, &c).unwrap(),
                cooperation_bound(n, 0, &a, &c).unwrap()
            );
        }
    }
}
