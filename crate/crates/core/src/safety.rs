//! Safety-level (probabilistic maximin) strategies.
//!
//! The guaranteed value of a mixed strategy is its minimum expected payoff
//! over opponent behaviour. Expected payoff is linear in the opponent's
//! mixture, so the minimum over mixtures is attained at a pure strategy and
//! only the opponent's pure strategies are scanned.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, Player};
use crate::rational::Rational;
use crate::simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SafetyKind {
    Pure,
    StrictlyMixed,
    /// Mixed with partial support; only possible with three or more strategies.
    Mixed,
}

impl SafetyKind {
    pub fn of(strategy: &MixedStrategy) -> SafetyKind {
        if strategy.pure_index().is_some() {
            SafetyKind::Pure
        } else if strategy.is_strictly_mixed() {
            SafetyKind::StrictlyMixed
        } else {
            SafetyKind::Mixed
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SafetyReport {
    pub player: Player,
    pub strategy: MixedStrategy,
    pub value: Rational,
    pub kind: SafetyKind,
    /// Opponent pure strategies at which `strategy` earns exactly `value`.
    pub worst_responses: Vec<usize>,
}

impl SafetyReport {
    /// Builds a report for `strategy`, computing value and worst responses.
    pub fn for_strategy(g: &BimatrixGame, player: Player, strategy: MixedStrategy) -> Result<Self> {
        let payoffs = payoffs_against_pure(g, player, &strategy)?;
        let value = payoffs.iter().min().cloned().expect("non-empty game");
        let worst_responses = payoffs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p == value)
            .map(|(k, _)| k)
            .collect();
        Ok(SafetyReport {
            player,
            kind: SafetyKind::of(&strategy),
            strategy,
            value,
            worst_responses,
        })
    }
}

fn payoffs_against_pure(
    g: &BimatrixGame,
    player: Player,
    t: &MixedStrategy,
) -> Result<Vec<Rational>> {
    let own = g.strategy_count(player);
    if t.len() != own {
        return Err(Error::Dimension(format!(
            "player {player} has {own} strategies but the mixture has {}",
            t.len()
        )));
    }
    let opp = g.strategy_count(player.opponent());
    Ok((0..opp)
        .map(|k| {
            t.probs()
                .iter()
                .enumerate()
                .map(|(j, p)| p * g.own_payoff(player, j, k))
                .sum()
        })
        .collect())
}

/// Guaranteed expected payoff of `t` for `player`.
pub fn value_of(g: &BimatrixGame, player: Player, t: &MixedStrategy) -> Result<Rational> {
    Ok(payoffs_against_pure(g, player, t)?
        .into_iter()
        .min()
        .expect("non-empty game"))
}

/// Closed-form safety level for a 2x2 game.
///
/// With own payoffs `a = U(1,1), b = U(1,2), c = U(2,1), d = U(2,2)` the
/// equalizing weight on the first strategy is `(d - c) / (a - c - b + d)`.
/// It is used when it lies strictly inside (0, 1) and its value beats both
/// pure guarantees; otherwise the best pure strategy wins, lowest index on
/// ties. A zero denominator goes to the LP.
pub fn safety_level_2x2(g: &BimatrixGame, player: Player) -> Result<SafetyReport> {
    if !g.is_2x2() {
        return Err(Error::Dimension("safety_level_2x2 needs a 2x2 game".into()));
    }
    let u = g.own_matrix(player);
    let (a, b, c, d) = (&u[0][0], &u[0][1], &u[1][0], &u[1][1]);
    let pure_values = [a.clone().min(b.clone()), c.clone().min(d.clone())];
    let best_pure = if pure_values[1] > pure_values[0] { 1 } else { 0 };

    let denom = a - c - b + d;
    let Some(p) = (d - c).checked_div(&denom) else {
        return safety_level_lp(g, player);
    };
    if p.is_positive() && p < 1 {
        let value = &p * a + (Rational::one() - &p) * c;
        if value >= pure_values[0] && value >= pure_values[1] {
            return SafetyReport::for_strategy(g, player, MixedStrategy::binary(p)?);
        }
    }
    SafetyReport::for_strategy(g, player, MixedStrategy::pure(2, best_pure))
}

/// Exact maximin by linear programming, for any finite bimatrix game.
///
/// The player's payoffs are affinely normalized to `[1, 2]` (so the
/// returned strategy is invariant under shifts and positive scalings of the
/// payoffs), then the opponent's LP `max sum(y) s.t. A y <= 1, y >= 0` is
/// solved. The player's maximin strategy is read off the dual prices.
pub fn safety_level_lp(g: &BimatrixGame, player: Player) -> Result<SafetyReport> {
    let u = g.own_matrix(player);
    let own = u.len();
    let lo = u.iter().flatten().min().cloned().expect("non-empty");
    let hi = u.iter().flatten().max().cloned().expect("non-empty");
    if lo == hi {
        return SafetyReport::for_strategy(g, player, MixedStrategy::pure(own, 0));
    }
    let range = &hi - &lo;
    let one = Rational::one();
    let a: Vec<Vec<Rational>> = u
        .iter()
        .map(|row| row.iter().map(|x| (x - &lo) / &range + &one).collect())
        .collect();
    let opp = a[0].len();
    let b = vec![one.clone(); own];
    let c = vec![one.clone(); opp];
    let sol = simplex::maximize(&a, &b, &c)
        .map_err(|_| Error::Verification("maximin LP reported unbounded".into()))?;

    // objective = 1 / normalized value; dual prices sum to the objective.
    let scaled_value = sol
        .objective
        .recip()
        .ok_or_else(|| Error::Verification("maximin LP has zero objective".into()))?;
    let probs: Vec<Rational> = sol.dual.iter().map(|x| x * &scaled_value).collect();
    let strategy = MixedStrategy::new(probs)?;
    let report = SafetyReport::for_strategy(g, player, strategy)?;

    let expected = (scaled_value - one) * &range + &lo;
    if report.value != expected {
        return Err(Error::Verification(format!(
            "LP value {expected} disagrees with the strategy's guarantee {}",
            report.value
        )));
    }
    Ok(report)
}

/// Safety level by the best available method: closed form for 2x2, LP otherwise.
pub fn safety_level(g: &BimatrixGame, player: Player) -> Result<SafetyReport> {
    if g.is_2x2() {
        safety_level_2x2(g, player)
    } else {
        safety_level_lp(g, player)
    }
}
