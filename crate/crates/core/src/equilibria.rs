//! Nash equilibria of 2x2 games and the comparison of safety value against
//! equilibrium payoff.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, Player, StrategyProfile};
use crate::rational::Rational;
use crate::safety::{safety_level_2x2, SafetyKind, SafetyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquilibriumKind {
    Pure,
    StrictlyMixed,
}

/// A 2x2 equilibrium: `p` and `q` are the weights players 1 and 2 put on
/// their first strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equilibrium2x2 {
    pub p: Rational,
    pub q: Rational,
    pub kind: EquilibriumKind,
    pub payoffs: (Rational, Rational),
}

impl Equilibrium2x2 {
    pub fn profile(&self) -> StrategyProfile {
        StrategyProfile::new(
            MixedStrategy::binary(self.p.clone()).expect("p in [0,1]"),
            MixedStrategy::binary(self.q.clone()).expect("q in [0,1]"),
        )
    }

    pub fn payoff(&self, player: Player) -> &Rational {
        match player {
            Player::One => &self.payoffs.0,
            Player::Two => &self.payoffs.1,
        }
    }
}

/// Why a 2x2 game has no strictly mixed equilibrium.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoMixedEquilibrium {
    NotTwoByTwo,
    /// The indifference equation of `player`'s opponent has no unique solution.
    ZeroDenominator { player: Player },
    /// The indifference weight lies outside (0, 1).
    OutOfRange { player: Player, weight: Rational },
}

impl fmt::Display for NoMixedEquilibrium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoMixedEquilibrium::NotTwoByTwo => write!(f, "game is not 2x2"),
            NoMixedEquilibrium::ZeroDenominator { player } => {
                write!(f, "indifference equation for player {player}'s weight is degenerate")
            }
            NoMixedEquilibrium::OutOfRange { player, weight } => {
                write!(f, "player {player}'s indifference weight {weight} is not in (0, 1)")
            }
        }
    }
}

/// The strictly mixed equilibrium from the two indifference conditions.
///
/// Player 2's weight `q = (d - b) / (a - b - c + d)` makes player 1
/// indifferent (`a..d` are player 1's payoffs); player 1's weight
/// `p = (h - g) / (e - g - f + h)` makes player 2 indifferent (`e..h` are
/// player 2's payoffs), all read row-major from the payoff tables.
pub fn strictly_mixed_equilibrium(
    g: &BimatrixGame,
) -> std::result::Result<Equilibrium2x2, NoMixedEquilibrium> {
    if !g.is_2x2() {
        return Err(NoMixedEquilibrium::NotTwoByTwo);
    }
    let u1 = g.table(Player::One);
    let u2 = g.table(Player::Two);
    let (a, b, c, d) = (&u1[0][0], &u1[0][1], &u1[1][0], &u1[1][1]);
    let (e, f, gg, h) = (&u2[0][0], &u2[0][1], &u2[1][0], &u2[1][1]);

    let q = (d - b)
        .checked_div(&(a - b - c + d))
        .ok_or(NoMixedEquilibrium::ZeroDenominator { player: Player::Two })?;
    let p = (h - gg)
        .checked_div(&(e - gg - f + h))
        .ok_or(NoMixedEquilibrium::ZeroDenominator { player: Player::One })?;
    for (player, weight) in [(Player::One, &p), (Player::Two, &q)] {
        if !weight.is_positive() || *weight >= 1 {
            return Err(NoMixedEquilibrium::OutOfRange {
                player,
                weight: weight.clone(),
            });
        }
    }
    let profile = StrategyProfile::new(
        MixedStrategy::binary(p.clone()).expect("p in (0,1)"),
        MixedStrategy::binary(q.clone()).expect("q in (0,1)"),
    );
    let payoffs = (
        g.expected_payoff(Player::One, &profile).expect("2x2 profile"),
        g.expected_payoff(Player::Two, &profile).expect("2x2 profile"),
    );
    Ok(Equilibrium2x2 {
        p,
        q,
        kind: EquilibriumKind::StrictlyMixed,
        payoffs,
    })
}

/// All pure-strategy equilibria, as `(row, col)` cells in row-major order.
pub fn pure_equilibrium_cells(g: &BimatrixGame) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for j in 0..g.rows() {
        for k in 0..g.cols() {
            let u1 = g.payoff(Player::One, j, k);
            let u2 = g.payoff(Player::Two, j, k);
            let row_best = (0..g.rows()).all(|jj| g.payoff(Player::One, jj, k) <= u1);
            let col_best = (0..g.cols()).all(|kk| g.payoff(Player::Two, j, kk) <= u2);
            if row_best && col_best {
                cells.push((j, k));
            }
        }
    }
    cells
}

pub fn pure_equilibria(g: &BimatrixGame) -> Vec<StrategyProfile> {
    pure_equilibrium_cells(g)
        .into_iter()
        .map(|(j, k)| StrategyProfile::pure(g, j, k))
        .collect()
}

/// What the safety value was compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NashBasis {
    StrictlyMixed,
    /// No strictly mixed equilibrium; compared with the lowest pure-equilibrium payoff.
    WorstPure,
    /// No equilibrium of either kind was found.
    Incomparable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub player: Player,
    pub safety_value: Rational,
    pub nash_value: Option<Rational>,
    pub equal: bool,
    /// `nash_value / safety_value` when the safety value is positive.
    pub ratio: Option<Rational>,
    pub safety_strategy: MixedStrategy,
    pub safety_kind: SafetyKind,
    pub nash_strategy: Option<MixedStrategy>,
    pub nash_basis: NashBasis,
    /// Game is generic, non-reducible and the safety strategy is strictly
    /// mixed: the setting in which the two values must coincide.
    pub within_hypotheses: bool,
    pub note: Option<String>,
}

pub fn compare_safety_vs_nash(g: &BimatrixGame, player: Player) -> Result<ComparisonReport> {
    if !g.is_2x2() {
        return Err(Error::Dimension("compare_safety_vs_nash needs a 2x2 game".into()));
    }
    let safety: SafetyReport = safety_level_2x2(g, player)?;
    let (nash_value, nash_strategy, nash_basis, note) = match strictly_mixed_equilibrium(g) {
        Ok(eq) => {
            let s = eq.profile().strategy(player).clone();
            (Some(eq.payoff(player).clone()), Some(s), NashBasis::StrictlyMixed, None)
        }
        Err(reason) => {
            let worst = pure_equilibrium_cells(g)
                .into_iter()
                .map(|(j, k)| (g.payoff(player, j, k).clone(), (j, k)))
                .min_by(|x, y| x.0.cmp(&y.0));
            match worst {
                Some((value, (j, k))) => {
                    let idx = if player == Player::One { j } else { k };
                    let s = MixedStrategy::pure(g.strategy_count(player), idx);
                    (Some(value), Some(s), NashBasis::WorstPure, Some(reason.to_string()))
                }
                None => (None, None, NashBasis::Incomparable, Some(reason.to_string())),
            }
        }
    };
    let equal = nash_value.as_ref() == Some(&safety.value);
    let ratio = match &nash_value {
        Some(n) if safety.value.is_positive() => n.checked_div(&safety.value),
        _ => None,
    };
    let within_hypotheses =
        g.is_generic() && g.is_non_reducible() && safety.kind == SafetyKind::StrictlyMixed;
    Ok(ComparisonReport {
        player,
        safety_value: safety.value,
        nash_value,
        equal,
        ratio,
        safety_kind: safety.kind,
        safety_strategy: safety.strategy,
        nash_strategy,
        nash_basis,
        within_hypotheses,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_aumann_game, make_leader_election, make_load_balancing_2x2, make_pure_safety_game};
    use crate::rational::r;

    #[test]
    fn mixed_equilibrium_cases() {
        let eq = strictly_mixed_equilibrium(&make_pure_safety_game()).unwrap();
        assert_eq!(eq.q, r(1, 5));
        assert_eq!(eq.p, r(1, 2));
        assert_eq!(eq.payoffs.0, 52);

        let (lb, _) = make_load_balancing_2x2(&r(4, 5), &r(1, 1)).unwrap();
        let eq = strictly_mixed_equilibrium(&lb).unwrap();
        assert_eq!(eq.p, r(2, 3));
        assert_eq!(eq.q, r(2, 3));
        assert_eq!(eq.payoffs.0, r(2, 3));

        let flat = BimatrixGame::from_integers(&[&[1, 1], &[1, 1]], &[&[1, 1], &[1, 1]]).unwrap();
        assert!(matches!(
            strictly_mixed_equilibrium(&flat),
            Err(NoMixedEquilibrium::ZeroDenominator { .. })
        ));
    }

    #[test]
    fn pure_equilibria_cases() {
        let le = make_leader_election(&r(2, 1), &r(6, 1), &r(4, 1), &r(2, 1)).unwrap();
        assert_eq!(pure_equilibrium_cells(&le), vec![(0, 0), (1, 1)]);
        assert!(pure_equilibria(&make_pure_safety_game()).is_empty());
        let flat = BimatrixGame::from_integers(&[&[1, 1], &[1, 1]], &[&[3, 3], &[3, 3]]).unwrap();
        assert_eq!(pure_equilibria(&flat).len(), 4);
    }

    #[test]
    fn comparisons() {
        let rep = compare_safety_vs_nash(&make_aumann_game(), Player::One).unwrap();
        assert_eq!(rep.safety_value, 3);
        assert_eq!(rep.nash_value, Some(r(3, 1)));
        assert!(rep.equal);
        assert!(rep.within_hypotheses);
        assert_eq!(rep.ratio, Some(r(1, 1)));

        let rep = compare_safety_vs_nash(&make_pure_safety_game(), Player::One).unwrap();
        assert_eq!(rep.safety_value, 50);
        assert_eq!(rep.nash_value, Some(r(52, 1)));
        assert!(!rep.equal);
        assert!(!rep.within_hypotheses);
        assert_eq!(rep.ratio, Some(r(26, 25)));

        for (num, den) in [(51, 100), (3, 5), (3, 4), (9, 10), (99, 100)] {
            let alpha = r(num, den);
            let x = r(7, 3);
            let (lb, _) = make_load_balancing_2x2(&alpha, &x).unwrap();
            let rep = compare_safety_vs_nash(&lb, Player::One).unwrap();
            assert!(rep.equal);
            let closed = r(3, 2) * &alpha * &x / (r(1, 1) + &alpha);
            assert_eq!(rep.safety_value, closed);
        }
    }

    #[test]
    fn falls_back_to_worst_pure_equilibrium() {
        // Prisoner's dilemma: unique pure equilibrium (defect, defect).
        let pd = BimatrixGame::from_integers(&[&[3, 0], &[5, 1]], &[&[3, 5], &[0, 1]]).unwrap();
        let rep = compare_safety_vs_nash(&pd, Player::One).unwrap();
        assert_eq!(rep.nash_basis, NashBasis::WorstPure);
        assert_eq!(rep.nash_value, Some(r(1, 1)));
        assert_eq!(rep.safety_value, 1);
        assert!(rep.equal);
        assert!(rep.note.is_some());
    }
}
