//! First-price auction with `n` bidders and independent uniform [0, 1]
//! valuations, analysed through its revelation mechanism: bidders report a
//! valuation, the highest report wins and pays `(1 - 1/n)` times its report.
//! Truthful reporting is an equilibrium of that mechanism.
//!
//! The worst case for a bidder is every opponent reporting `n/(n-1)` times
//! its valuation, the most aggressive report that maps back to a legal
//! first-price bid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Samples per independent random stream in [`monte_carlo_payoff`].
pub const MC_CHUNK: usize = 10_000;

/// Minimum sample count accepted by [`monte_carlo_payoff`].
pub const MC_MIN_SAMPLES: usize = 1_000;

const SEARCH_TOL: f64 = 1e-6;

fn check_setup(v: f64, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 bidders, got {n}")));
    }
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!("valuation {v} not in [0, 1]")));
    }
    Ok(())
}

fn shade(n: usize) -> f64 {
    (n as f64 - 1.0) / n as f64
}

pub fn equilibrium_bid(v: f64, n: usize) -> Result<f64> {
    check_setup(v, n)?;
    Ok(shade(n) * v)
}

/// `v^n / n`.
pub fn equilibrium_expected_payoff(v: f64, n: usize) -> Result<f64> {
    check_setup(v, n)?;
    Ok(v.powi(n as i32) / n as f64)
}

/// Largest report that corresponds to a legal bid: `v * n / (n - 1)`.
pub fn max_report(v: f64, n: usize) -> f64 {
    v / shade(n)
}

/// Expected payoff of reporting `b` against maximally aggressive opponents:
/// `(v - k b) (k b)^(n-1)` with `k = (n-1)/n`.
pub fn worst_case_payoff(v: f64, b: f64, n: usize) -> Result<f64> {
    check_setup(v, n)?;
    let hi = max_report(v, n);
    if !(b >= 0.0 && b <= hi * (1.0 + 1e-12)) {
        return Err(Error::InvalidParameter(format!("report {b} not in [0, {hi}]")));
    }
    let paid = (shade(n) * b).min(v);
    Ok((v - paid) * paid.powi(n as i32 - 1))
}

/// The maximin report, which is the valuation itself.
///
/// The closed form is checked at call time against a golden-section search
/// of the log worst-case payoff over `[0, v n/(n-1)]`; disagreement beyond
/// `1e-6` is reported as an error.
pub fn optimal_safety_bid(v: f64, n: usize) -> Result<f64> {
    check_setup(v, n)?;
    if v == 0.0 {
        return Ok(0.0);
    }
    let searched = golden_section_argmax(v, n);
    if (searched - v).abs() > SEARCH_TOL {
        return Err(Error::Verification(format!(
            "golden-section argmax {searched} disagrees with closed form {v} (n = {n})"
        )));
    }
    Ok(v)
}

// log((v - k b)(k b)^(n-1)); the log keeps large n from underflowing.
fn log_worst_case(v: f64, b: f64, n: usize) -> f64 {
    let k = shade(n);
    let surplus = v - k * b;
    if b <= 0.0 || surplus <= 0.0 {
        return f64::NEG_INFINITY;
    }
    surplus.ln() + (n as f64 - 1.0) * (k * b).ln()
}

fn golden_section_argmax(v: f64, n: usize) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (0.0, max_report(v, n));
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = log_worst_case(v, x1, n);
    let mut f2 = log_worst_case(v, x2, n);
    while hi - lo > 1e-10 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = log_worst_case(v, x2, n);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = log_worst_case(v, x1, n);
        }
    }
    (lo + hi) / 2.0
}

/// Payoff guaranteed by reporting truthfully: `(v/n) ((n-1) v / n)^(n-1)`.
pub fn guaranteed_payoff(v: f64, n: usize) -> Result<f64> {
    check_setup(v, n)?;
    Ok(v / n as f64 * (shade(n) * v).powi(n as i32 - 1))
}

/// Equilibrium payoff over guaranteed payoff, `(n/(n-1))^(n-1)`.
///
/// Increases with `n` toward `e`, from 2 at `n = 2`.
pub fn competitive_ratio(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 bidders, got {n}")));
    }
    let m = n as f64 - 1.0;
    Ok((m * (1.0 / m).ln_1p()).exp())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuctionSafetyReport {
    pub n: usize,
    pub v: f64,
    pub equilibrium_bid: f64,
    pub equilibrium_payoff: f64,
    pub safety_bid: f64,
    pub guaranteed: f64,
    pub ratio: f64,
}

pub fn safety_report(v: f64, n: usize) -> Result<AuctionSafetyReport> {
    Ok(AuctionSafetyReport {
        n,
        v,
        equilibrium_bid: equilibrium_bid(v, n)?,
        equilibrium_payoff: equilibrium_expected_payoff(v, n)?,
        safety_bid: optimal_safety_bid(v, n)?,
        guaranteed: guaranteed_payoff(v, n)?,
        ratio: competitive_ratio(n)?,
    })
}

/// How the simulated opponents report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Opponents {
    /// Report their valuation (the equilibrium).
    Truthful,
    /// Report `n/(n-1)` times their valuation.
    MaxAggression,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// Simulates the revelation mechanism and returns the protagonist's mean
/// payoff and its standard error.
///
/// The protagonist with valuation `v` reports `report(v)`; opponents draw
/// valuations uniformly from [0, 1]. Ties for the top report are settled by
/// a uniform lottery. Samples are split into chunks of [`MC_CHUNK`]; chunk
/// `c` uses its own ChaCha8 stream `c` under `seed`, so the result depends
/// only on `(seed, samples)` and not on thread scheduling.
pub fn monte_carlo_payoff<F>(
    v: f64,
    report: F,
    n: usize,
    opponents: Opponents,
    samples: usize,
    seed: u64,
) -> Result<MonteCarloEstimate>
where
    F: Fn(f64) -> f64 + Sync,
{
    check_setup(v, n)?;
    if samples < MC_MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!(
            "need at least {MC_MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let own = report(v);
    let price = shade(n) * own;
    let scale = match opponents {
        Opponents::Truthful => 1.0,
        Opponents::MaxAggression => 1.0 / shade(n),
    };
    let chunks = samples.div_ceil(MC_CHUNK);
    let partial: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = MC_CHUNK.min(samples - c * MC_CHUNK);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..count {
                let mut best = f64::NEG_INFINITY;
                let mut ties = 0u32;
                for _ in 1..n {
                    let r = scale * rng.gen::<f64>();
                    if r > best {
                        best = r;
                        ties = 1;
                    } else if r == best {
                        ties += 1;
                    }
                }
                let wins = if own > best {
                    true
                } else if own == best {
                    rng.gen_range(0..=ties) == 0
                } else {
                    false
                };
                let x = if wins { v - price } else { 0.0 };
                sum += x;
                sum_sq += x * x;
            }
            (sum, sum_sq)
        })
        .collect();
    // Reduce in chunk order for reproducibility.
    let (sum, sum_sq) = partial
        .iter()
        .fold((0.0, 0.0), |(a, b), (s, q)| (a + s, b + q));
    let count = samples as f64;
    let mean = sum / count;
    let var = ((sum_sq - count * mean * mean) / (count - 1.0)).max(0.0);
    Ok(MonteCarloEstimate {
        mean,
        std_error: (var / count).sqrt(),
        samples,
    })
}
