//! The local Prisoner's Dilemma stage game.
//!
//! Payoffs follow the symmetric table with entries `(a,a)`, `(b,0)`, `(0,b)`
//! and `(c,c)`; the sucker payoff is fixed at zero and is not a parameter.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

/// One of the two stage-game actions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "C")]
    Cooperate,
    #[serde(rename = "D")]
    Defect,
}

impl Action {
    pub fn as_char(self) -> char {
        match self {
            Action::Cooperate => 'C',
            Action::Defect => 'D',
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// The strict ordering constraint a payoff triple failed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdConstraint {
    /// `b > c`
    TemptationAboveReward,
    /// `c > a`
    RewardAbovePunishment,
    /// `a > 0`
    PunishmentPositive,
}

impl fmt::Display for PdConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            PdConstraint::TemptationAboveReward => "b > c",
            PdConstraint::RewardAbovePunishment => "c > a",
            PdConstraint::PunishmentPositive => "a > 0",
        };
        f.write_str(text)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GameError {
    #[error("not a prisoner's dilemma: {0} violated")]
    NotAPrisonersDilemma(PdConstraint),
}

/// Stage-game payoff triple with the dilemma ordering `b > c > a > 0`.
///
/// `a` is the mutual-defection payoff, `b` the temptation payoff and `c` the
/// mutual-cooperation payoff, all exact rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PDPayoffs {
    #[serde(with = "crate::rational::serde_ratio")]
    a: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    b: Rational,
    #[serde(with = "crate::rational::serde_ratio")]
    c: Rational,
}

impl PDPayoffs {
    /// Validates the strict chain `b > c > a > 0` and builds the triple.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self, GameError> {
        if a <= Rational::zero() {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::PunishmentPositive,
            ));
        }
        if c <= a {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::RewardAbovePunishment,
            ));
        }
        if b <= c {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::TemptationAboveReward,
            ));
        }
        Ok(PDPayoffs { a, b, c })
    }

    /// Integer-payoff convenience constructor.
    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GameError> {
        Self::new(
            crate::rational::int(a),
            crate::rational::int(b),
            crate::rational::int(c),
        )
    }

    /// Builds a triple enforcing only `c > a > 0` and `b > 0`.
    ///
    /// The temptation payoff may sit at or below `c`, which the strict
    /// constructor forbids. Boundary probes sweep `b` across the cooperation
    /// bound and need the degenerate `b = c` point (and slightly below) to be
    /// representable; the game stops being a strict dilemma there.
    pub fn new_relaxed(a: Rational, b: Rational, c: Rational) -> Result<Self, GameError> {
        if a <= Rational::zero() {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::PunishmentPositive,
            ));
        }
        if c <= a {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::RewardAbovePunishment,
            ));
        }
        if b <= Rational::zero() {
            return Err(GameError::NotAPrisonersDilemma(
                PdConstraint::TemptationAboveReward,
            ));
        }
        Ok(PDPayoffs { a, b, c })
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    /// Payoff pair for a row/column action profile.
    pub fn stage_payoff(&self, row: Action, col: Action) -> (Rational, Rational) {
        use Action::{Cooperate as C, Defect as D};
        match (row, col) {
            (D, D) => (self.a.clone(), self.a.clone()),
            (D, C) => (self.b.clone(), Rational::zero()),
            (C, D) => (Rational::zero(), self.b.clone()),
            (C, C) => (self.c.clone(), self.c.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use Action::{Cooperate as C, Defect as D};

    fn canonical() -> PDPayoffs {
        PDPayoffs::from_ints(1, 3, 2).unwrap()
    }

    #[test]
    fn stage_payoff_matches_table() {
        let p = canonical();
        assert_eq!(p.stage_payoff(D, C), (int(3), int(0)));
        assert_eq!(p.stage_payoff(C, D), (int(0), int(3)));
        assert_eq!(p.stage_payoff(C, C), (int(2), int(2)));
        assert_eq!(p.stage_payoff(D, D), (int(1), int(1)));
    }

    #[test]
    fn stage_payoff_is_symmetric() {
        let p = canonical();
        for row in [C, D] {
            for col in [C, D] {
                let (x, y) = p.stage_payoff(row, col);
                assert_eq!(p.stage_payoff(col, row), (y, x));
            }
        }
    }

    #[test]
    fn per_round_totals_take_three_values() {
        let p = canonical();
        let mut totals = Vec::new();
        for row in [C, D] {
            for col in [C, D] {
                let (x, y) = p.stage_payoff(row, col);
                totals.push(x + y);
            }
        }
        // {2a, 2c, b}: the mixed rows both total b + 0.
        for t in totals {
            assert!(t == int(2) || t == int(4) || t == int(3), "total {t}");
        }
    }

    #[test]
    fn validation_rejects_each_broken_inequality() {
        assert!(PDPayoffs::from_ints(1, 3, 2).is_ok());
        assert_eq!(
            PDPayoffs::from_ints(1, 2, 2).unwrap_err(),
            GameError::NotAPrisonersDilemma(PdConstraint::TemptationAboveReward)
        );
        assert_eq!(
            PDPayoffs::from_ints(0, 3, 2).unwrap_err(),
            GameError::NotAPrisonersDilemma(PdConstraint::PunishmentPositive)
        );
        assert_eq!(
            PDPayoffs::from_ints(2, 3, 2).unwrap_err(),
            GameError::NotAPrisonersDilemma(PdConstraint::RewardAbovePunishment)
        );
    }

    #[test]
    fn error_display_names_the_inequality() {
        let err = PDPayoffs::from_ints(1, 2, 2).unwrap_err();
        assert_eq!(err.to_string(), "not a prisoner's dilemma: b > c violated");
    }

    #[test]
    fn relaxed_constructor_allows_boundary_temptation() {
        assert!(PDPayoffs::new_relaxed(int(1), int(2), int(2)).is_ok());
        assert!(PDPayoffs::new_relaxed(int(1), ratio(199, 100), int(2)).is_ok());
        assert!(PDPayoffs::new_relaxed(int(2), int(3), int(2)).is_err());
    }
}
