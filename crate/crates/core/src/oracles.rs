//! Brute-force checkers used to validate the solvers.
//!
//! Nothing here calls into the solver modules; only the game types are
//! shared. Clarity wins over speed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, Player, StrategyProfile};
use crate::rational::Rational;

/// Cap on the number of splits [`exhaustive_split_min`] will enumerate.
pub const SPLIT_ORACLE_CAP: u128 = 1_000_000;

/// Grid on the probability simplex: every coordinate is a multiple of `1/R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    resolution: u32,
}

impl GridSpec {
    pub fn new(resolution: u32) -> Result<Self> {
        if resolution < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid resolution must be at least 2, got {resolution}"
            )));
        }
        Ok(GridSpec { resolution })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridMaximin {
    pub strategy: MixedStrategy,
    pub value: Rational,
    /// `(max payoff - min payoff) / R`: the true optimum is at most this much higher.
    pub slack: Rational,
}

fn guarantee(g: &BimatrixGame, player: Player, probs: &[Rational]) -> Rational {
    let mut worst: Option<Rational> = None;
    for k in 0..g.strategy_count(player.opponent()) {
        let mut total = Rational::zero();
        for (j, p) in probs.iter().enumerate() {
            total += p * g.own_payoff(player, j, k);
        }
        worst = Some(match worst {
            Some(w) if w <= total => w,
            _ => total,
        });
    }
    worst.expect("opponent has strategies")
}

/// Best guaranteed value over all grid points of the player's simplex.
///
/// The guarantee is Lipschitz in the mixture with constant equal to the
/// payoff range (per unit of L1 distance, halved), and every mixture of up
/// to three strategies lies within L1 distance `2/R` of a grid point, so
/// the grid optimum is within `range / R` of the true optimum. Ties keep
/// the first grid point in lexicographic order.
pub fn grid_maximin(g: &BimatrixGame, player: Player, grid: GridSpec) -> Result<GridMaximin> {
    let count = g.strategy_count(player);
    if count > 3 {
        return Err(Error::TooLarge(format!(
            "grid maximin handles at most 3 strategies, player {player} has {count}"
        )));
    }
    let r = grid.resolution as i64;
    let mut points: Vec<Vec<i64>> = Vec::new();
    match count {
        1 => points.push(vec![r]),
        2 => points.extend((0..=r).rev().map(|i| vec![i, r - i])),
        _ => {
            for i in (0..=r).rev() {
                for j in (0..=r - i).rev() {
                    points.push(vec![i, j, r - i - j]);
                }
            }
        }
    }
    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for pt in points {
        let probs: Vec<Rational> = pt.iter().map(|&c| Rational::new(c, r)).collect();
        let v = guarantee(g, player, &probs);
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, probs));
        }
    }
    let (value, probs) = best.expect("grid is non-empty");
    let table = g.own_matrix(player);
    let lo = table.iter().flatten().min().expect("non-empty").clone();
    let hi = table.iter().flatten().max().expect("non-empty").clone();
    Ok(GridMaximin {
        strategy: MixedStrategy::new(probs)?,
        value,
        slack: (hi - lo) / Rational::from_integer(r),
    })
}

/// True iff no player gains by switching to any pure strategy.
pub fn verify_equilibrium(g: &BimatrixGame, profile: &StrategyProfile) -> Result<bool> {
    for player in Player::BOTH {
        let current = g.expected_payoff(player, profile)?;
        let opp = profile.strategy(player.opponent());
        for e in 0..g.strategy_count(player) {
            let mut dev = Rational::zero();
            for (k, q) in opp.probs().iter().enumerate() {
                dev += q * g.own_payoff(player, e, k);
            }
            if dev > current {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Float version of [`verify_equilibrium`]: deviations gaining at most
/// `1e-12` (relative to the payoff scale) are ignored.
pub fn verify_equilibrium_f64(u1: &[Vec<f64>], u2: &[Vec<f64>], s1: &[f64], s2: &[f64]) -> bool {
    let rows = u1.len();
    let cols = u1.first().map_or(0, Vec::len);
    let pay = |u: &[Vec<f64>], j: usize, k: usize| u[j][k];
    let p1 = |j: usize| (0..cols).map(|k| s2[k] * pay(u1, j, k)).sum::<f64>();
    let p2 = |k: usize| (0..rows).map(|j| s1[j] * pay(u2, j, k)).sum::<f64>();
    let cur1: f64 = (0..rows).map(|j| s1[j] * p1(j)).sum();
    let cur2: f64 = (0..cols).map(|k| s2[k] * p2(k)).sum();
    let tol1 = 1e-12 * cur1.abs().max(1.0);
    let tol2 = 1e-12 * cur2.abs().max(1.0);
    (0..rows).all(|j| p1(j) <= cur1 + tol1) && (0..cols).all(|k| p2(k) <= cur2 + tol2)
}

fn splits(remaining: usize, links: usize) -> Vec<Vec<usize>> {
    if links == 1 {
        return vec![vec![remaining]];
    }
    let mut out = Vec::new();
    for c in 0..=remaining {
        for mut tail in splits(remaining - c, links - 1) {
            tail.insert(0, c);
            out.push(tail);
        }
    }
    out
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Minimum over every split of the other `n - 1` players of the expected
/// payoff of mixture `t`, where a link of speed `alpha` shared by `c`
/// others pays `X alpha / (c + 1)`. Returns the lexicographically first
/// minimizing split.
pub fn exhaustive_split_min(
    alphas: &[f64],
    x: f64,
    n: usize,
    t: &[f64],
) -> Result<(f64, Vec<usize>)> {
    let m = alphas.len();
    if m == 0 || t.len() != m || n == 0 {
        return Err(Error::Dimension(format!(
            "need n >= 1 and one probability per link (links {m}, mixture {})",
            t.len()
        )));
    }
    let count = binomial((n - 1 + m - 1) as u128, (m - 1) as u128).unwrap_or(u128::MAX);
    if count > SPLIT_ORACLE_CAP {
        return Err(Error::TooLarge(format!(
            "{count} splits exceed the oracle cap of {SPLIT_ORACLE_CAP}"
        )));
    }
    let all = splits(n - 1, m);
    let values: Vec<f64> = all
        .par_iter()
        .map(|s| {
            (0..m)
                .map(|i| t[i] * x * alphas[i] / (s[i] as f64 + 1.0))
                .sum()
        })
        .collect();
    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best] {
            best = i;
        }
    }
    Ok((values[best], all[best].clone()))
}

/// True iff no user of a pure load assignment gains by moving to another link.
pub fn is_pure_load_equilibrium(alphas: &[f64], loads: &[usize]) -> bool {
    for (from, &c) in loads.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let here = alphas[from] / c as f64;
        for (to, &d) in loads.iter().enumerate() {
            if to != from && alphas[to] / (d + 1) as f64 > here * (1.0 + 1e-12) {
                return false;
            }
        }
    }
    true
}
