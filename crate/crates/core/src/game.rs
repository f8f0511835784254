//! Finite two-player games with exact payoffs.
//!
//! Payoff tables are indexed `[row][col]`: the row is player 1's pure
//! strategy, the column is player 2's. [`BimatrixGame::own_matrix`] gives the
//! same numbers re-indexed `[own][opponent]` for either player, which is the
//! view every maximin and indifference computation works in.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::One, Player::Two];

    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }

    pub fn opponent(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn from_number(n: u8) -> Result<Player> {
        match n {
            1 => Ok(Player::One),
            2 => Ok(Player::Two),
            _ => Err(Error::InvalidParameter(format!("player must be 1 or 2, got {n}"))),
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for Player {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Player {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Player::from_number(n).map_err(serde::de::Error::custom)
    }
}

/// A probability vector over one player's pure strategies, exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct MixedStrategy {
    probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidParameter("empty mixed strategy".into()));
        }
        if let Some(p) = probs.iter().find(|p| p.is_negative()) {
            return Err(Error::InvalidParameter(format!("negative probability {p}")));
        }
        let total: Rational = probs.iter().sum();
        if total != 1 {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(MixedStrategy { probs })
    }

    /// Point mass on strategy `index` out of `count`.
    pub fn pure(count: usize, index: usize) -> Self {
        assert!(index < count);
        let probs = (0..count)
            .map(|j| if j == index { Rational::one() } else { Rational::zero() })
            .collect();
        MixedStrategy { probs }
    }

    pub fn uniform(count: usize) -> Self {
        assert!(count > 0);
        let share = Rational::new(1, count as i64);
        MixedStrategy {
            probs: vec![share; count],
        }
    }

    /// Two-strategy mixture putting `p` on the first strategy.
    pub fn binary(p: Rational) -> Result<Self> {
        let q = Rational::one() - &p;
        MixedStrategy::new(vec![p, q])
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn is_strictly_mixed(&self) -> bool {
        self.probs.iter().all(Rational::is_positive)
    }

    /// The index of the pure strategy, if this is a point mass.
    pub fn pure_index(&self) -> Option<usize> {
        let mut support = self.support();
        match (support.next(), support.next()) {
            (Some(j), None) => Some(j),
            _ => None,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(j, _)| j)
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn blend(&self, other: &MixedStrategy, lambda: &Rational) -> Result<MixedStrategy> {
        if self.len() != other.len() {
            return Err(Error::Dimension("blending strategies of different length".into()));
        }
        let rest = Rational::one() - lambda;
        MixedStrategy::new(
            self.probs
                .iter()
                .zip(&other.probs)
                .map(|(a, b)| lambda * a + &rest * b)
                .collect(),
        )
    }
}

impl TryFrom<Vec<Rational>> for MixedStrategy {
    type Error = Error;
    fn try_from(v: Vec<Rational>) -> Result<Self> {
        MixedStrategy::new(v)
    }
}

impl From<MixedStrategy> for Vec<Rational> {
    fn from(s: MixedStrategy) -> Self {
        s.probs
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, p) in self.probs.iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyProfile {
    pub s1: MixedStrategy,
    pub s2: MixedStrategy,
}

impl StrategyProfile {
    pub fn new(s1: MixedStrategy, s2: MixedStrategy) -> Self {
        StrategyProfile { s1, s2 }
    }

    pub fn pure(g: &BimatrixGame, row: usize, col: usize) -> Self {
        StrategyProfile {
            s1: MixedStrategy::pure(g.rows(), row),
            s2: MixedStrategy::pure(g.cols(), col),
        }
    }

    pub fn strategy(&self, player: Player) -> &MixedStrategy {
        match player {
            Player::One => &self.s1,
            Player::Two => &self.s2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimatrixGame {
    labels: [Vec<String>; 2],
    u1: Vec<Vec<Rational>>,
    u2: Vec<Vec<Rational>>,
}

fn default_labels(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|j| format!("{prefix}{j}")).collect()
}

impl BimatrixGame {
    pub fn new(
        labels: [Vec<String>; 2],
        u1: Vec<Vec<Rational>>,
        u2: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let rows = u1.len();
        let cols = u1.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("payoff tables must be non-empty".into()));
        }
        for (name, table) in [("u1", &u1), ("u2", &u2)] {
            if table.len() != rows || table.iter().any(|row| row.len() != cols) {
                return Err(Error::Dimension(format!("{name} is not a {rows}x{cols} table")));
            }
        }
        if labels[0].len() != rows || labels[1].len() != cols {
            return Err(Error::Dimension(format!(
                "strategy labels ({}, {}) do not match a {rows}x{cols} game",
                labels[0].len(),
                labels[1].len()
            )));
        }
        Ok(BimatrixGame { labels, u1, u2 })
    }

    /// Builds a game with labels `a1, a2, ...` for both players.
    pub fn from_payoffs(u1: Vec<Vec<Rational>>, u2: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = u1.len();
        let cols = u1.first().map_or(0, Vec::len);
        Self::new([default_labels("a", rows), default_labels("a", cols)], u1, u2)
    }

    /// Integer-payoff convenience constructor.
    pub fn from_integers(u1: &[&[i64]], u2: &[&[i64]]) -> Result<Self> {
        let conv = |t: &[&[i64]]| -> Vec<Vec<Rational>> {
            t.iter()
                .map(|row| row.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect()
        };
        Self::from_payoffs(conv(u1), conv(u2))
    }

    pub fn rows(&self) -> usize {
        self.u1.len()
    }

    pub fn cols(&self) -> usize {
        self.u1[0].len()
    }

    pub fn is_2x2(&self) -> bool {
        self.rows() == 2 && self.cols() == 2
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn strategy_count(&self, player: Player) -> usize {
        match player {
            Player::One => self.rows(),
            Player::Two => self.cols(),
        }
    }

    pub fn labels(&self, player: Player) -> &[String] {
        match player {
            Player::One => &self.labels[0],
            Player::Two => &self.labels[1],
        }
    }

    pub fn table(&self, player: Player) -> &[Vec<Rational>] {
        match player {
            Player::One => &self.u1,
            Player::Two => &self.u2,
        }
    }

    /// `U_player(row, col)`.
    pub fn payoff(&self, player: Player, row: usize, col: usize) -> &Rational {
        &self.table(player)[row][col]
    }

    /// Payoff of `player` when it plays `own` and the opponent plays `opp`.
    pub fn own_payoff(&self, player: Player, own: usize, opp: usize) -> &Rational {
        match player {
            Player::One => &self.u1[own][opp],
            Player::Two => &self.u2[opp][own],
        }
    }

    /// The player's payoffs indexed `[own][opponent]`.
    pub fn own_matrix(&self, player: Player) -> Vec<Vec<Rational>> {
        let own = self.strategy_count(player);
        let opp = self.strategy_count(player.opponent());
        (0..own)
            .map(|j| (0..opp).map(|k| self.own_payoff(player, j, k).clone()).collect())
            .collect()
    }

    fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        if profile.s1.len() != self.rows() || profile.s2.len() != self.cols() {
            return Err(Error::Dimension(format!(
                "profile has lengths ({}, {}) but the game is {}x{}",
                profile.s1.len(),
                profile.s2.len(),
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    fn check_index(&self, player: Player, index: usize) -> Result<()> {
        let count = self.strategy_count(player);
        if index >= count {
            return Err(Error::InvalidIndex {
                player: player.number(),
                index,
                count,
            });
        }
        Ok(())
    }

    /// Exact expected payoff `sum_j sum_k s1[j] s2[k] u[j][k]`.
    pub fn expected_payoff(&self, player: Player, profile: &StrategyProfile) -> Result<Rational> {
        self.check_profile(profile)?;
        let table = self.table(player);
        let mut total = Rational::zero();
        for (j, p) in profile.s1.probs().iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let row: Rational = profile
                .s2
                .probs()
                .iter()
                .zip(&table[j])
                .map(|(q, u)| q * u)
                .sum();
            total += p * row;
        }
        Ok(total)
    }

    /// Payoff of pure strategy `own` against the opponent's mixture.
    pub fn pure_vs_mixed(&self, player: Player, own: usize, opp: &MixedStrategy) -> Rational {
        opp.probs()
            .iter()
            .enumerate()
            .map(|(k, q)| q * self.own_payoff(player, own, k))
            .sum()
    }

    /// Whether `e` dominates `f` for `player`.
    ///
    /// Only opponent pure strategies are compared: the payoff difference is
    /// linear in the opponent's mixture, so it is non-negative on every mixed
    /// profile iff it is on every pure one, and strictly positive somewhere
    /// iff it is at some pure profile.
    pub fn dominates(&self, player: Player, e: usize, f: usize) -> Result<bool> {
        self.check_index(player, e)?;
        self.check_index(player, f)?;
        let opp = self.strategy_count(player.opponent());
        let mut strict = false;
        for k in 0..opp {
            let pe = self.own_payoff(player, e, k);
            let pf = self.own_payoff(player, f, k);
            if pe < pf {
                return Ok(false);
            }
            strict |= pe > pf;
        }
        Ok(strict)
    }

    pub fn is_non_reducible(&self) -> bool {
        Player::BOTH.iter().all(|&player| {
            let n = self.strategy_count(player);
            (0..n).all(|e| {
                (0..n).all(|f| e == f || !self.dominates(player, e, f).expect("indices in range"))
            })
        })
    }

    /// Literal pure-profile genericity: against each opponent pure strategy,
    /// distinct own strategies give distinct payoffs.
    pub fn is_generic(&self) -> bool {
        Player::BOTH.iter().all(|&player| {
            let own = self.strategy_count(player);
            let opp = self.strategy_count(player.opponent());
            (0..opp).all(|k| {
                (0..own).all(|e| {
                    (e + 1..own)
                        .all(|f| self.own_payoff(player, e, k) != self.own_payoff(player, f, k))
                })
            })
        })
    }

    /// Adds `c` to every payoff of `player`.
    pub fn shifted(&self, player: Player, c: &Rational) -> BimatrixGame {
        self.map_payoffs(player, |u| u + c)
    }

    /// Multiplies every payoff of `player` by `lambda`.
    pub fn scaled(&self, player: Player, lambda: &Rational) -> BimatrixGame {
        self.map_payoffs(player, |u| u * lambda)
    }

    fn map_payoffs(&self, player: Player, f: impl Fn(&Rational) -> Rational) -> BimatrixGame {
        let mut out = self.clone();
        let table = match player {
            Player::One => &mut out.u1,
            Player::Two => &mut out.u2,
        };
        for row in table.iter_mut() {
            for u in row.iter_mut() {
                *u = f(u);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "strategies": [self.labels[0], self.labels[1]],
            "u1": self.u1,
            "u2": self.u2,
        })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::GameFormat {
            path: "$".into(),
            message: e.to_string(),
        })?;
        Self::from_json_value(&value)
    }

    /// Parses the game JSON format. Errors carry the JSON path of the
    /// offending field, e.g. `$.u1[1][0]`.
    pub fn from_json_value(value: &Value) -> Result<Self> {
        let fail = |path: String, message: &str| Error::GameFormat {
            path,
            message: message.to_string(),
        };
        let obj = value
            .as_object()
            .ok_or_else(|| fail("$".into(), "expected an object"))?;

        let table = |name: &str| -> Result<Vec<Vec<Rational>>> {
            let path = format!("$.{name}");
            let rows = obj
                .get(name)
                .ok_or_else(|| fail(path.clone(), "missing field"))?
                .as_array()
                .ok_or_else(|| fail(path.clone(), "expected an array of rows"))?;
            rows.iter()
                .enumerate()
                .map(|(j, row)| {
                    let rpath = format!("{path}[{j}]");
                    row.as_array()
                        .ok_or_else(|| fail(rpath.clone(), "expected an array of payoffs"))?
                        .iter()
                        .enumerate()
                        .map(|(k, cell)| {
                            let cpath = format!("{rpath}[{k}]");
                            match cell {
                                Value::String(s) => s
                                    .parse::<Rational>()
                                    .map_err(|_| fail(cpath, "not a rational \"p/q\"")),
                                Value::Number(n) => n
                                    .as_i64()
                                    .map(Rational::from_integer)
                                    .ok_or_else(|| fail(cpath, "numbers must be integers; use \"p/q\" strings")),
                                _ => Err(fail(cpath, "expected a string or integer")),
                            }
                        })
                        .collect()
                })
                .collect()
        };
        let u1 = table("u1")?;
        let u2 = table("u2")?;

        let labels = match obj.get("strategies") {
            None => None,
            Some(v) => {
                let lists = v
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| fail("$.strategies".into(), "expected two label lists"))?;
                let mut out: [Vec<String>; 2] = Default::default();
                for (i, list) in lists.iter().enumerate() {
                    let path = format!("$.strategies[{i}]");
                    let items = list
                        .as_array()
                        .ok_or_else(|| fail(path.clone(), "expected an array of labels"))?;
                    for (j, item) in items.iter().enumerate() {
                        let label = item
                            .as_str()
                            .ok_or_else(|| fail(format!("{path}[{j}]"), "expected a string"))?;
                        out[i].push(label.to_string());
                    }
                }
                Some(out)
            }
        };

        let rows = u1.len();
        let cols = u1.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(fail("$.u1".into(), "payoff table must be non-empty"));
        }
        for (name, t) in [("u1", &u1), ("u2", &u2)] {
            if t.len() != rows {
                return Err(fail(format!("$.{name}"), &format!("expected {rows} rows")));
            }
            if let Some(j) = t.iter().position(|row| row.len() != cols) {
                return Err(fail(format!("$.{name}[{j}]"), &format!("expected {cols} entries")));
            }
        }
        let labels = labels.unwrap_or_else(|| [default_labels("a", rows), default_labels("a", cols)]);
        if labels[0].len() != rows {
            return Err(fail("$.strategies[0]".into(), &format!("expected {rows} labels")));
        }
        if labels[1].len() != cols {
            return Err(fail("$.strategies[1]".into(), &format!("expected {cols} labels")));
        }
        BimatrixGame::new(labels, u1, u2)
    }
}

/// The two-link load-balancing game: a fast link worth `x` and a slow link
/// worth `alpha * x`, halved for both players when they collide.
///
/// The second element is a warning when `alpha` lies outside the open
/// interval (1/2, 1) the two-player analysis assumes; any `0 < alpha` is
/// still built.
pub fn make_load_balancing_2x2(
    alpha: &Rational,
    x: &Rational,
) -> Result<(BimatrixGame, Option<String>)> {
    if !x.is_positive() {
        return Err(Error::InvalidParameter(format!("X must be positive, got {x}")));
    }
    if !alpha.is_positive() {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    let half = Rational::new(1, 2);
    let warning = if *alpha <= half || *alpha >= 1 {
        Some(format!("alpha = {alpha} is outside (1/2, 1)"))
    } else {
        None
    };
    let ax = alpha * x;
    let u1 = vec![
        vec![x * &half, x.clone()],
        vec![ax.clone(), &ax * &half],
    ];
    let u2 = vec![
        vec![x * &half, ax.clone()],
        vec![x.clone(), &ax * &half],
    ];
    let labels = [
        vec!["e1".to_string(), "e2".to_string()],
        vec!["e1".to_string(), "e2".to_string()],
    ];
    Ok((BimatrixGame::new(labels, u1, u2)?, warning))
}

/// Two-player leader election: agreeing on player 1 pays `(a, b)`, on
/// player 2 pays `(c, d)`, disagreement pays nothing.
pub fn make_leader_election(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<BimatrixGame> {
    for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
        if !v.is_positive() {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
        }
    }
    let z = Rational::zero;
    let labels = [
        vec!["vote1".to_string(), "vote2".to_string()],
        vec!["vote1".to_string(), "vote2".to_string()],
    ];
    BimatrixGame::new(
        labels,
        vec![vec![a.clone(), z()], vec![z(), c.clone()]],
        vec![vec![b.clone(), z()], vec![z(), d.clone()]],
    )
}

/// Aumann's 2x2 example whose maximin strategy is not an equilibrium
/// strategy but earns the equilibrium payoff.
pub fn make_aumann_game() -> BimatrixGame {
    BimatrixGame::from_integers(&[&[2, 4], &[6, 0]], &[&[6, 2], &[0, 4]]).expect("fixed 2x2")
}

/// Generic non-reducible 2x2 game where the maximin strategy is pure and
/// guarantees 50 while the mixed equilibrium pays player 1 52.
pub fn make_pure_safety_game() -> BimatrixGame {
    BimatrixGame::from_integers(&[&[100, 40], &[60, 50]], &[&[100, 210], &[200, 90]])
        .expect("fixed 2x2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::r;
    use proptest::prelude::*;

    fn profile(p: Rational, q: Rational) -> StrategyProfile {
        StrategyProfile::new(
            MixedStrategy::binary(p).unwrap(),
            MixedStrategy::binary(q).unwrap(),
        )
    }

    #[test]
    fn expected_payoff_cases() {
        let g = make_pure_safety_game();
        let pure = StrategyProfile::pure(&g, 0, 0);
        assert_eq!(g.expected_payoff(Player::One, &pure).unwrap(), 100);

        for j in 0..2 {
            for k in 0..2 {
                let pp = StrategyProfile::pure(&g, j, k);
                assert_eq!(&g.expected_payoff(Player::Two, &pp).unwrap(), g.payoff(Player::Two, j, k));
            }
        }

        let a = make_aumann_game();
        let value = a.expected_payoff(Player::One, &profile(r(3, 4), r(1, 2))).unwrap();
        // 3/8*2 + 3/8*4 + 1/8*6 + 1/8*0
        assert_eq!(value, r(3, 8) * r(2, 1) + r(3, 8) * r(4, 1) + r(1, 8) * r(6, 1));
        assert_eq!(value, 3);
    }

    #[test]
    fn expected_payoff_dimension_mismatch() {
        let g = make_aumann_game();
        let bad = StrategyProfile::new(MixedStrategy::uniform(3), MixedStrategy::uniform(2));
        assert!(matches!(g.expected_payoff(Player::One, &bad), Err(Error::Dimension(_))));
    }

    #[test]
    fn dominance_cases() {
        let g = make_pure_safety_game();
        assert!(!g.dominates(Player::One, 0, 1).unwrap());
        assert!(!g.dominates(Player::One, 1, 0).unwrap());

        let d = BimatrixGame::from_integers(&[&[1, 1], &[0, 0]], &[&[0, 0], &[0, 0]]).unwrap();
        assert!(d.dominates(Player::One, 0, 1).unwrap());
        assert!(!d.is_non_reducible());

        let a = make_aumann_game();
        for p in Player::BOTH {
            for e in 0..2 {
                for f in 0..2 {
                    assert!(!a.dominates(p, e, f).unwrap());
                }
            }
        }
        assert!(matches!(a.dominates(Player::Two, 0, 2), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn dominance_via_pure_matches_mixed_sample() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let ent = |rng: &mut rand_chacha::ChaCha8Rng| Rational::from_integer(rng.gen_range(-3..4));
            let u1: Vec<Vec<Rational>> = (0..2).map(|_| (0..3).map(|_| ent(&mut rng)).collect()).collect();
            let u2 = u1.clone();
            let g = BimatrixGame::from_payoffs(u1, u2).unwrap();
            if !g.dominates(Player::One, 0, 1).unwrap() {
                continue;
            }
            // A dominating strategy is weakly better against every mixture.
            for _ in 0..20 {
                let w: Vec<i64> = (0..3).map(|_| rng.gen_range(0..10)).collect();
                let total: i64 = w.iter().sum::<i64>().max(1);
                let mut probs: Vec<Rational> = w.iter().map(|&x| r(x, total)).collect();
                if w.iter().all(|&x| x == 0) {
                    probs = vec![r(1, 3); 3];
                }
                let opp = MixedStrategy::new(probs).unwrap();
                assert!(g.pure_vs_mixed(Player::One, 0, &opp) >= g.pure_vs_mixed(Player::One, 1, &opp));
            }
        }
    }

    #[test]
    fn structural_predicates_on_named_games() {
        let g = make_pure_safety_game();
        assert!(g.is_generic());
        assert!(g.is_non_reducible());

        let a = make_aumann_game();
        assert!(a.is_generic());
        assert!(a.is_non_reducible());

        let (lb, warn) = make_load_balancing_2x2(&r(3, 4), &r(1, 1)).unwrap();
        assert!(warn.is_none());
        assert!(lb.is_non_reducible());

        let tie = BimatrixGame::from_integers(&[&[1, 2], &[1, 3]], &[&[0, 1], &[1, 0]]).unwrap();
        assert!(!tie.is_generic());

        let const_row = BimatrixGame::from_integers(&[&[5, 5], &[1, 2]], &[&[0, 1], &[1, 0]]).unwrap();
        assert!(!const_row.is_non_reducible());
    }

    #[test]
    fn load_balancing_constructor() {
        let (g, _) = make_load_balancing_2x2(&r(4, 5), &r(1, 1)).unwrap();
        assert_eq!(g.table(Player::One), &[vec![r(1, 2), r(1, 1)], vec![r(4, 5), r(2, 5)]]);
        assert_eq!(g.table(Player::Two), &[vec![r(1, 2), r(4, 5)], vec![r(1, 1), r(2, 5)]]);

        let (g, _) = make_load_balancing_2x2(&r(3, 5), &r(2, 1)).unwrap();
        assert_eq!(g.payoff(Player::One, 1, 1), &r(3, 5));

        let (sym, warn) = make_load_balancing_2x2(&r(1, 1), &r(1, 1)).unwrap();
        assert!(warn.is_some());
        assert_eq!(sym.own_matrix(Player::One), sym.own_matrix(Player::Two));

        assert!(make_load_balancing_2x2(&r(3, 4), &r(0, 1)).is_err());
        assert!(make_load_balancing_2x2(&r(3, 4), &r(-1, 1)).is_err());
    }

    #[test]
    fn leader_election_constructor() {
        let g = make_leader_election(&r(2, 1), &r(6, 1), &r(4, 1), &r(2, 1)).unwrap();
        assert_eq!(g.payoff(Player::One, 0, 0), &r(2, 1));
        assert_eq!(g.payoff(Player::One, 1, 1), &r(4, 1));
        assert_eq!(g.payoff(Player::Two, 0, 0), &r(6, 1));
        assert_eq!(g.payoff(Player::Two, 1, 1), &r(2, 1));
        for p in Player::BOTH {
            assert!(g.payoff(p, 0, 1).is_zero());
            assert!(g.payoff(p, 1, 0).is_zero());
        }
        let one = r(1, 1);
        let sym = make_leader_election(&one, &one, &one, &one).unwrap();
        assert_eq!(sym.table(Player::One), sym.table(Player::Two));
        assert!(make_leader_election(&one, &r(0, 1), &one, &one).is_err());
    }

    #[test]
    fn fixed_matrices() {
        let a = make_aumann_game();
        assert_eq!(a.table(Player::One), &[vec![r(2, 1), r(4, 1)], vec![r(6, 1), r(0, 1)]]);
        let g = make_pure_safety_game();
        assert_eq!(g.table(Player::Two), &[vec![r(100, 1), r(210, 1)], vec![r(200, 1), r(90, 1)]]);
    }

    #[test]
    fn json_round_trip_and_paths() {
        let text = r#"{"strategies": [["r1","r2"],["c1","c2"]], "u1": [["1/2","1"],["4/5","2/5"]], "u2": [["1/2","4/5"],[1,"2/5"]]}"#;
        let g = BimatrixGame::from_json_str(text).unwrap();
        assert_eq!(g.labels(Player::Two), &["c1".to_string(), "c2".to_string()]);
        let (lb, _) = make_load_balancing_2x2(&r(4, 5), &r(1, 1)).unwrap();
        assert_eq!(g.table(Player::One), lb.table(Player::One));
        let back = BimatrixGame::from_json_value(&g.to_json()).unwrap();
        assert_eq!(back, g);

        let bad = r#"{"u1": [["1","2"],["3","x"]], "u2": [["1","2"],["3","4"]]}"#;
        match BimatrixGame::from_json_str(bad) {
            Err(Error::GameFormat { path, .. }) => assert_eq!(path, "$.u1[1][1]"),
            other => panic!("unexpected {other:?}"),
        }
        let ragged = r#"{"u1": [["1","2"],["3"]], "u2": [["1","2"],["3","4"]]}"#;
        match BimatrixGame::from_json_str(ragged) {
            Err(Error::GameFormat { path, .. }) => assert_eq!(path, "$.u1[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = r#"{"u1": [["1"]]}"#;
        match BimatrixGame::from_json_str(missing) {
            Err(Error::GameFormat { path, .. }) => assert_eq!(path, "$.u2"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_strategy_validation() {
        assert!(MixedStrategy::new(vec![r(1, 2), r(1, 3)]).is_err());
        assert!(MixedStrategy::new(vec![r(3, 2), r(-1, 2)]).is_err());
        let s = MixedStrategy::new(vec![r(0, 1), r(1, 1)]).unwrap();
        assert_eq!(s.pure_index(), Some(1));
        assert!(!s.is_strictly_mixed());
        let parsed: std::result::Result<MixedStrategy, _> = serde_json::from_str(r#"["1/2","1/3"]"#);
        assert!(parsed.is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(p, q)| r(p, q))
    }

    fn game(n: usize) -> impl Strategy<Value = BimatrixGame> {
        (
            proptest::collection::vec(proptest::collection::vec(small_rational(), n), n),
            proptest::collection::vec(proptest::collection::vec(small_rational(), n), n),
        )
            .prop_map(|(u1, u2)| BimatrixGame::from_payoffs(u1, u2).unwrap())
    }

    fn mixture(n: usize) -> impl Strategy<Value = MixedStrategy> {
        proptest::collection::vec(0i64..10, n).prop_map(move |w| {
            let total: i64 = w.iter().sum();
            if total == 0 {
                MixedStrategy::uniform(n)
            } else {
                MixedStrategy::new(w.iter().map(|&x| r(x, total)).collect()).unwrap()
            }
        })
    }

    fn bilinear_case(n: usize) -> impl Strategy<Value = (BimatrixGame, MixedStrategy, MixedStrategy, MixedStrategy, Rational)> {
        (game(n), mixture(n), mixture(n), mixture(n), (0i64..=12).prop_map(|k| r(k, 12)))
    }

    proptest! {
        #[test]
        fn expected_payoff_is_bilinear((g, t, t2, s2, lambda) in prop_oneof![bilinear_case(2), bilinear_case(3)]) {
            let mix = t.blend(&t2, &lambda).unwrap();
            for p in Player::BOTH {
                let lhs = g.expected_payoff(p, &StrategyProfile::new(mix.clone(), s2.clone())).unwrap();
                let a = g.expected_payoff(p, &StrategyProfile::new(t.clone(), s2.clone())).unwrap();
                let b = g.expected_payoff(p, &StrategyProfile::new(t2.clone(), s2.clone())).unwrap();
                prop_assert_eq!(lhs, &lambda * a + (Rational::one() - &lambda) * b);
            }
        }

        #[test]
        fn dominance_is_antisymmetric_on_generic_games(g in game(3)) {
            prop_assume!(g.is_generic());
            for p in Player::BOTH {
                for e in 0..3 {
                    for f in 0..3 {
                        prop_assert!(!(g.dominates(p, e, f).unwrap() && g.dominates(p, f, e).unwrap()));
                    }
                }
            }
        }
    }
}
