//! Two-player set-theoretic games: both players share one strategy set and
//! each player's payoff depends only on the unordered pair of choices,
//! `U_i(s, t) = U_i(t, s)`.
//!
//! In such a game a player can copy the opponent's equilibrium mixture. By
//! the symmetry of its payoffs that copy earns the same amount against every
//! opponent pure strategy, namely the equilibrium payoff, and no strategy can
//! guarantee more because the opponent's equilibrium mixture caps every
//! reply at that payoff.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, Player, StrategyProfile};
use crate::rational::Rational;
use crate::safety::SafetyReport;

/// Largest strategy set accepted by the full-support search.
pub const MAX_STRATEGIES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetTheoreticGame {
    base: BimatrixGame,
}

impl SetTheoreticGame {
    pub fn base(&self) -> &BimatrixGame {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.rows()
    }
}

/// Validates that `g` is square with symmetric payoff tables for both players.
pub fn make_set_theoretic(g: BimatrixGame) -> Result<SetTheoreticGame> {
    if !g.is_square() {
        return Err(Error::Dimension(format!(
            "set-theoretic games need a shared strategy set, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    let l = g.rows();
    for player in Player::BOTH {
        for s in 0..l {
            for t in s + 1..l {
                if g.payoff(player, s, t) != g.payoff(player, t, s) {
                    return Err(Error::NotSetTheoretic {
                        player: player.number(),
                        row: s,
                        col: t,
                    });
                }
            }
        }
    }
    Ok(SetTheoreticGame { base: g })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullSupportEquilibrium {
    pub t1: MixedStrategy,
    pub t2: MixedStrategy,
    pub payoffs: (Rational, Rational),
    /// The indifference system was singular; other full-support equilibria exist.
    pub multiple: bool,
}

impl FullSupportEquilibrium {
    pub fn profile(&self) -> StrategyProfile {
        StrategyProfile::new(self.t1.clone(), self.t2.clone())
    }

    pub fn strategy(&self, player: Player) -> &MixedStrategy {
        match player {
            Player::One => &self.t1,
            Player::Two => &self.t2,
        }
    }

    pub fn payoff(&self, player: Player) -> &Rational {
        match player {
            Player::One => &self.payoffs.0,
            Player::Two => &self.payoffs.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoFullSupport {
    TooLarge(usize),
    /// The indifference system for `player`'s mixture has no solution.
    Inconsistent { player: Player },
    /// The solution for `player`'s mixture has a non-positive entry.
    NotPositive { player: Player, probs: Vec<Rational> },
}

impl fmt::Display for NoFullSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoFullSupport::TooLarge(l) => {
                write!(f, "{l} strategies exceeds the limit of {MAX_STRATEGIES}")
            }
            NoFullSupport::Inconsistent { player } => {
                write!(f, "no mixture of player {player} makes the opponent indifferent")
            }
            NoFullSupport::NotPositive { player, probs } => {
                write!(f, "player {player}'s equalizing mixture is not strictly positive: ")?;
                for (j, p) in probs.iter().enumerate() {
                    write!(f, "{}{p}", if j > 0 { ", " } else { "(" })?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Solves `sum_j m[k][j] x_j = w` for every `k` and `sum_j x_j = 1`.
///
/// Returns the mixture and whether the system was singular (in which case
/// free unknowns were fixed: mixture weights to `1/l`, the level to 0).
fn equalizing_mixture(m: &[Vec<Rational>]) -> Option<(Vec<Rational>, bool)> {
    let l = m.len();
    let unknowns = l + 1;
    let mut rows: Vec<Vec<Rational>> = m
        .iter()
        .map(|row| {
            let mut r = row.clone();
            r.push(-Rational::one());
            r.push(Rational::zero());
            r
        })
        .collect();
    let mut norm = vec![Rational::one(); l];
    norm.push(Rational::zero());
    norm.push(Rational::one());
    rows.push(norm);

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next = 0;
    for col in 0..unknowns {
        let Some(found) = (next..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let p = rows[next][col].clone();
        for x in rows[next].iter_mut() {
            *x = &*x / &p;
        }
        let prow = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != next && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x = &*x - &factor * y;
                }
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if rows[next..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let singular = pivots.len() < unknowns;
    let mut x = vec![Rational::zero(); unknowns];
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    for col in 0..l {
        if !pivot_cols.contains(&col) {
            x[col] = Rational::new(1, l as i64);
        }
    }
    for &(row, col) in pivots.iter().rev() {
        let mut v = rows[row][unknowns].clone();
        for j in col + 1..unknowns {
            if !rows[row][j].is_zero() {
                v = v - &rows[row][j] * &x[j];
            }
        }
        x[col] = v;
    }
    x.truncate(l);
    Some((x, singular))
}

/// Searches for a strictly mixed equilibrium over the full support.
pub fn strictly_mixed_equilibrium_support_enum(
    g: &SetTheoreticGame,
) -> std::result::Result<FullSupportEquilibrium, NoFullSupport> {
    let l = g.size();
    if l > MAX_STRATEGIES {
        return Err(NoFullSupport::TooLarge(l));
    }
    let base = &g.base;
    let solve = |player: Player| -> std::result::Result<(MixedStrategy, bool), NoFullSupport> {
        // `player`'s mixture must equalize the opponent's pure payoffs.
        let opp = base.own_matrix(player.opponent());
        let (probs, singular) =
            equalizing_mixture(&opp).ok_or(NoFullSupport::Inconsistent { player })?;
        if !probs.iter().all(Rational::is_positive) {
            return Err(NoFullSupport::NotPositive { player, probs });
        }
        let s = MixedStrategy::new(probs).expect("solution sums to one");
        Ok((s, singular))
    };
    let (t1, singular1) = solve(Player::One)?;
    let (t2, singular2) = solve(Player::Two)?;
    let profile = StrategyProfile::new(t1.clone(), t2.clone());
    let payoffs = (
        base.expected_payoff(Player::One, &profile).expect("square profile"),
        base.expected_payoff(Player::Two, &profile).expect("square profile"),
    );
    Ok(FullSupportEquilibrium {
        t1,
        t2,
        payoffs,
        multiple: singular1 || singular2,
    })
}

/// Safety report for `player` playing the opponent's equilibrium mixture.
///
/// Fails if `eq` is not a strictly mixed equilibrium of `g`, or if the copied
/// mixture does not guarantee exactly the equilibrium payoff.
pub fn transplant_safety_value(
    g: &SetTheoreticGame,
    eq: &FullSupportEquilibrium,
    player: Player,
) -> Result<SafetyReport> {
    let base = &g.base;
    let l = g.size();
    for p in Player::BOTH {
        let s = eq.strategy(p);
        if s.len() != l || !s.is_strictly_mixed() {
            return Err(Error::NotStrictlyMixed(format!(
                "player {p}'s strategy {s} is not a full-support mixture over {l} strategies"
            )));
        }
        // Full support: every pure strategy must earn the same against the opponent.
        let opp = eq.strategy(p.opponent());
        let first = base.pure_vs_mixed(p, 0, opp);
        if (1..l).any(|j| base.pure_vs_mixed(p, j, opp) != first) {
            return Err(Error::NotStrictlyMixed(format!(
                "player {p} is not indifferent among its pure strategies"
            )));
        }
    }
    let copied = eq.strategy(player.opponent()).clone();
    let report = SafetyReport::for_strategy(base, player, copied)?;
    let target = base
        .expected_payoff(player, &eq.profile())
        .expect("checked dimensions");
    if report.value != target {
        return Err(Error::Verification(format!(
            "transplanted guarantee {} differs from equilibrium payoff {target}",
            report.value
        )));
    }
    Ok(report)
}

/// Three voters choosing among three candidates; each player gets 2 when both
/// pick the same candidate and 1 otherwise (a symmetric majority-style game).
pub fn make_three_candidate_vote() -> BimatrixGame {
    let u = [[2, 1, 1], [1, 2, 1], [1, 1, 2]];
    let rows: Vec<&[i64]> = u.iter().map(|r| r.as_slice()).collect();
    BimatrixGame::from_integers(&rows, &rows).expect("fixed 3x3")
}
