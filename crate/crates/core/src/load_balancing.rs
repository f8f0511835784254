//! Decentralized load balancing over `m` parallel links.
//!
//! Link `i` has speed `alpha_i` (normalized so the fastest is 1). A player
//! sharing link `i` with `n_i - 1` others receives `X * alpha_i / n_i`. The
//! family contains one game for every player count `n`.
//!
//! The equilibrium side of every ratio is the payoff bound `X * sum(alpha) / n`
//! of the proportional partition equilibrium. The safety side is the exact
//! minimum over integer splits of the other `n - 1` players.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Splits are enumerated exhaustively up to this many compositions.
pub const ENUMERATION_CAP: u128 = 10_000_000;

const REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadBalancingFamily {
    alphas: Vec<f64>,
    x: f64,
}

impl LoadBalancingFamily {
    /// `alphas` must start at 1, be non-increasing and positive, with at least two links.
    pub fn new(alphas: Vec<f64>, x: f64) -> Result<Self> {
        if alphas.len() < 2 {
            return Err(Error::InvalidParameter("need at least two links".into()));
        }
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidParameter(format!("X must be positive, got {x}")));
        }
        if alphas[0] != 1.0 {
            return Err(Error::InvalidParameter(format!(
                "the fastest link must have speed 1, got {}",
                alphas[0]
            )));
        }
        if alphas.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
            return Err(Error::InvalidParameter("link speeds must be positive".into()));
        }
        if alphas.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidParameter("link speeds must be non-increasing".into()));
        }
        Ok(LoadBalancingFamily { alphas, x })
    }

    /// Sorts arbitrary positive speeds and rescales them so the fastest is 1.
    pub fn from_speeds(speeds: &[f64], x: f64) -> Result<Self> {
        if speeds.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::InvalidParameter("link speeds must be positive".into()));
        }
        let mut alphas = speeds.to_vec();
        alphas.sort_by(|a, b| b.total_cmp(a));
        let top = alphas.first().copied().unwrap_or(1.0);
        alphas.iter_mut().for_each(|a| *a /= top);
        Self::new(alphas, x)
    }

    /// Two links with speeds `1` and `alpha`.
    pub fn two_link(alpha: f64, x: f64) -> Result<Self> {
        Self::new(vec![1.0, alpha], x)
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn links(&self) -> usize {
        self.alphas.len()
    }

    fn speed_sum(&self) -> f64 {
        self.alphas.iter().sum()
    }

    /// Payoff of one player on `link` when `load` players (itself included) use it.
    pub fn link_payoff(&self, link: usize, load: usize) -> Result<f64> {
        if link >= self.links() {
            return Err(Error::InvalidParameter(format!("no link {link}")));
        }
        if load == 0 {
            return Err(Error::InvalidParameter("load must be at least 1".into()));
        }
        Ok(self.x * self.alphas[link] / load as f64)
    }

    /// Equilibrium payoff used as the ratio numerator: `X sum(alpha) / n`.
    ///
    /// With integer loads a link-1 user in a pure equilibrium can get up to
    /// `1 + 1/load` times this.
    pub fn nash_value_bound(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        Ok(self.x * self.speed_sum() / n as f64)
    }

    /// Link probabilities proportional to `prod_{j != i} alpha_j`, i.e. to `1 / alpha_i`.
    pub fn safety_mixture(&self) -> Vec<f64> {
        let weights: Vec<f64> = (0..self.links())
            .map(|i| {
                self.alphas
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, a)| a)
                    .product()
            })
            .collect();
        let total: f64 = weights.iter().sum();
        weights.into_iter().map(|w| w / total).collect()
    }

    /// Limit of nash bound over guaranteed value for the safety mixture:
    /// `sum(alpha) * sum_i prod_{j != i} alpha_j / (m^2 prod(alpha))`.
    pub fn ratio_limit(&self) -> f64 {
        let m = self.links() as f64;
        let prod: f64 = self.alphas.iter().product();
        let cross: f64 = (0..self.links())
            .map(|i| {
                self.alphas
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, a)| a)
                    .product::<f64>()
            })
            .sum();
        self.speed_sum() * cross / (m * m * prod)
    }

    /// Average speed over the slowest speed.
    pub fn k_regularity(&self) -> f64 {
        let m = self.links() as f64;
        (self.speed_sum() / m) / self.alphas[self.links() - 1]
    }

    /// Player 1's expected payoff playing `t` when the other players' loads are `others`.
    pub fn expected_payoff(&self, t: &[f64], others: &[usize]) -> f64 {
        t.iter()
            .zip(&self.alphas)
            .zip(others)
            .map(|((p, a), c)| p * self.x * a / (*c as f64 + 1.0))
            .sum()
    }

    fn check_mixture(&self, t: &[f64]) -> Result<()> {
        if t.len() != self.links() {
            return Err(Error::Dimension(format!(
                "mixture has {} entries for {} links",
                t.len(),
                self.links()
            )));
        }
        let total: f64 = t.iter().sum();
        if t.iter().any(|p| !(p.is_finite() && *p >= 0.0)) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter("not a probability vector".into()));
        }
        Ok(())
    }

    /// Worst case over integer splits of the other `n - 1` players for the mixture `t`.
    ///
    /// Exhaustive when the number of splits is at most [`ENUMERATION_CAP`].
    /// Otherwise greedy marginal allocation followed by single-player
    /// exchange search; the objective is separable and convex in each load,
    /// so this reaches the minimum, but the result is flagged non-exhaustive.
    pub fn guaranteed_value_exact(&self, n: usize, t: &[f64]) -> Result<GuaranteedValue> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        self.check_mixture(t)?;
        let others = n - 1;
        if split_count(others, self.links()) <= ENUMERATION_CAP {
            let (value, split) = self.enumerate_splits(others, t);
            Ok(GuaranteedValue {
                value,
                split: SplitProfile { counts: split },
                exhaustive: true,
            })
        } else {
            let (value, split) = self.convex_search(others, t);
            Ok(GuaranteedValue {
                value,
                split: SplitProfile { counts: split },
                exhaustive: false,
            })
        }
    }

    fn enumerate_splits(&self, others: usize, t: &[f64]) -> (f64, Vec<usize>) {
        let m = self.links();
        let mut counts = vec![0usize; m];
        let mut best = (f64::INFINITY, Vec::new());
        self.enumerate_rec(0, others, &mut counts, t, &mut best);
        debug_assert_eq!(best.1.len(), m);
        best
    }

    // Lexicographic order; strict improvement keeps the lexicographically first minimizer.
    fn enumerate_rec(
        &self,
        link: usize,
        remaining: usize,
        counts: &mut Vec<usize>,
        t: &[f64],
        best: &mut (f64, Vec<usize>),
    ) {
        if link + 1 == counts.len() {
            counts[link] = remaining;
            let v = self.expected_payoff(t, counts);
            if v < best.0 {
                *best = (v, counts.clone());
            }
            return;
        }
        for c in 0..=remaining {
            counts[link] = c;
            self.enumerate_rec(link + 1, remaining - c, counts, t, best);
        }
    }

    fn convex_search(&self, others: usize, t: &[f64]) -> (f64, Vec<usize>) {
        let m = self.links();
        let term = |i: usize, c: usize| t[i] * self.x * self.alphas[i] / (c as f64 + 1.0);
        let mut counts = vec![0usize; m];
        for _ in 0..others {
            // Largest decrease from adding one more player; ties to the lower index.
            let i = (0..m)
                .max_by(|&a, &b| {
                    let da = term(a, counts[a]) - term(a, counts[a] + 1);
                    let db = term(b, counts[b]) - term(b, counts[b] + 1);
                    da.total_cmp(&db).then(b.cmp(&a))
                })
                .expect("m >= 2");
            counts[i] += 1;
        }
        loop {
            let mut improved = false;
            for from in 0..m {
                for to in 0..m {
                    if from == to || counts[from] == 0 {
                        continue;
                    }
                    let before = term(from, counts[from]) + term(to, counts[to]);
                    let after = term(from, counts[from] - 1) + term(to, counts[to] + 1);
                    if after < before - REL_TOL * before.abs() {
                        counts[from] -= 1;
                        counts[to] += 1;
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
        (self.expected_payoff(t, &counts), counts)
    }

    /// Pure equilibrium built from proportional shares, then repaired.
    ///
    /// Link 1 gets `ceil(n * alpha_1 / sum(alpha))` players; the rest are
    /// shared among the other links by largest remainder. Any profitable
    /// single-player move is then applied (best move first) until none is
    /// left. Congestion games have a potential, so the repair terminates.
    pub fn partition_equilibrium(&self, n: usize) -> Result<PartitionEquilibrium> {
        let m = self.links();
        if n < m {
            return Err(Error::InvalidParameter(format!(
                "n = {n} is smaller than the number of links {m}"
            )));
        }
        let total = self.speed_sum();
        let first = ((n as f64 * self.alphas[0] / total).ceil() as usize).min(n);
        let mut loads = vec![0usize; m];
        loads[0] = first;
        let rest = n - first;
        let rest_speed: f64 = self.alphas[1..].iter().sum();
        let quotas: Vec<f64> = self.alphas[1..]
            .iter()
            .map(|a| rest as f64 * a / rest_speed)
            .collect();
        let mut assigned = 0;
        for (i, q) in quotas.iter().enumerate() {
            loads[i + 1] = q.floor() as usize;
            assigned += loads[i + 1];
        }
        let mut order: Vec<usize> = (0..quotas.len()).collect();
        order.sort_by(|&a, &b| {
            let ra = quotas[a] - quotas[a].floor();
            let rb = quotas[b] - quotas[b].floor();
            rb.total_cmp(&ra).then(a.cmp(&b))
        });
        for &i in order.iter().cycle().take(rest.saturating_sub(assigned)) {
            loads[i + 1] += 1;
        }
        debug_assert_eq!(loads.iter().sum::<usize>(), n);

        while let Some((from, to)) = self.best_deviation(&loads) {
            loads[from] -= 1;
            loads[to] += 1;
        }
        let payoffs = loads
            .iter()
            .enumerate()
            .map(|(i, &c)| if c == 0 { None } else { Some(self.x * self.alphas[i] / c as f64) })
            .collect();
        Ok(PartitionEquilibrium { loads, payoffs })
    }

    /// The most profitable single-player move, if any.
    fn best_deviation(&self, loads: &[usize]) -> Option<(usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        for from in 0..loads.len() {
            if loads[from] == 0 {
                continue;
            }
            let current = self.alphas[from] / loads[from] as f64;
            for to in 0..loads.len() {
                if to == from {
                    continue;
                }
                let moved = self.alphas[to] / (loads[to] + 1) as f64;
                let gain = moved - current;
                if gain > REL_TOL * current && best.is_none_or(|(g, _, _)| gain > g) {
                    best = Some((gain, from, to));
                }
            }
        }
        best.map(|(_, from, to)| (from, to))
    }

    /// Whether no player can gain by moving alone.
    pub fn is_equilibrium(&self, loads: &[usize]) -> bool {
        loads.len() == self.links() && self.best_deviation(loads).is_none()
    }

    /// Finite-`n` ratio for the mixture `t`.
    pub fn ratio_report(&self, n: usize, t: &[f64], limit_ratio: f64) -> Result<RatioReport> {
        if n < self.links() {
            return Err(Error::InvalidParameter(format!(
                "n = {n} is smaller than the number of links {}",
                self.links()
            )));
        }
        let nash_bound = self.nash_value_bound(n)?;
        let g = self.guaranteed_value_exact(n, t)?;
        Ok(RatioReport {
            n,
            nash_bound,
            guaranteed: g.value,
            ratio: nash_bound / g.value,
            limit_ratio,
            exhaustive: g.exhaustive,
        })
    }

    /// One row per `n` under the safety mixture; rows are computed in parallel.
    pub fn ratio_table(&self, n_values: &[usize]) -> Result<Vec<RatioReport>> {
        let t = self.safety_mixture();
        let limit = self.ratio_limit();
        n_values
            .par_iter()
            .map(|&n| self.ratio_report(n, &t, limit))
            .collect()
    }

    /// Lower bound for the two-link mixture `(alpha/(1+alpha), 1/(1+alpha))`
    /// when a fraction `beta` of the others uses the slow link, with `n`
    /// standing in for `n - 1`:
    /// `(X alpha/(1+alpha)) (n+2) / ((1+beta n)(n - beta n + 1))`.
    pub fn continuous_bound(&self, n: usize, beta: f64) -> Result<f64> {
        if self.links() != 2 {
            return Err(Error::InvalidParameter("continuous bound needs exactly two links".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParameter(format!("beta = {beta} not in [0, 1]")));
        }
        let alpha = self.alphas[1];
        let n = n as f64;
        Ok((self.x * alpha / (1.0 + alpha)) * (n + 2.0)
            / ((1.0 + beta * n) * (n - beta * n + 1.0)))
    }
}

/// Number of ways to split `others` players over `m` links, saturating.
pub fn split_count(others: usize, m: usize) -> u128 {
    // C(others + m - 1, m - 1)
    let k = (m - 1) as u128;
    let n = others as u128 + k;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProfile {
    /// How many of the other players use each link.
    pub counts: Vec<usize>,
}

impl SplitProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GuaranteedValue {
    pub value: f64,
    pub split: SplitProfile,
    pub exhaustive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionEquilibrium {
    pub loads: Vec<usize>,
    /// Per-link payoff of each user, `None` for empty links.
    pub payoffs: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub n: usize,
    pub nash_bound: f64,
    pub guaranteed: f64,
    pub ratio: f64,
    pub limit_ratio: f64,
    pub exhaustive: bool,
}

/// Two-link strategy with ratio at most 4/3 for any slow-link speed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CombinedChoice {
    pub strategy: Vec<f64>,
    pub ratio_bound: f64,
    /// True when the fast link alone is the better choice (`alpha < 1/3`).
    pub fast_link_only: bool,
}

/// The safety mixture when `alpha >= 1/3`, else always the fast link.
pub fn combined_strategy(alpha: f64) -> Result<CombinedChoice> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1]")));
    }
    if 3.0 * alpha >= 1.0 {
        let fam = LoadBalancingFamily::two_link(alpha, 1.0)?;
        Ok(CombinedChoice {
            strategy: fam.safety_mixture(),
            ratio_bound: (1.0 + alpha).powi(2) / (4.0 * alpha),
            fast_link_only: false,
        })
    } else {
        Ok(CombinedChoice {
            strategy: vec![1.0, 0.0],
            ratio_bound: 1.0 + alpha,
            fast_link_only: true,
        })
    }
}

fn check_exact_speeds(alphas: &[Rational]) -> Result<()> {
    if alphas.len() < 2 || alphas.iter().any(|a| !a.is_positive()) {
        return Err(Error::InvalidParameter(
            "need at least two positive link speeds".into(),
        ));
    }
    Ok(())
}

/// Exact form of [`LoadBalancingFamily::ratio_limit`].
pub fn ratio_limit_exact(alphas: &[Rational]) -> Result<Rational> {
    check_exact_speeds(alphas)?;
    let m = Rational::from_integer(alphas.len() as i64);
    let sum: Rational = alphas.iter().sum();
    let prod = alphas.iter().fold(Rational::one(), |acc, a| acc * a);
    let cross: Rational = (0..alphas.len())
        .map(|i| {
            alphas
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Rational::one(), |acc, (_, a)| acc * a)
        })
        .sum();
    Ok(sum * cross / (&m * &m * prod))
}

/// Exact form of [`LoadBalancingFamily::k_regularity`].
pub fn k_regularity_exact(alphas: &[Rational]) -> Result<Rational> {
    check_exact_speeds(alphas)?;
    let m = Rational::from_integer(alphas.len() as i64);
    let sum: Rational = alphas.iter().sum();
    let slowest = alphas.iter().min().expect("non-empty");
    Ok(sum / m / slowest)
}
