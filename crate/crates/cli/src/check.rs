//! Reference numbers recomputed from scratch.

use compsafe::auction::{self, Opponents};
use compsafe::equilibria::{compare_safety_vs_nash, strictly_mixed_equilibrium};
use compsafe::load_balancing::{combined_strategy, LoadBalancingFamily};
use compsafe::oracles::{grid_maximin, GridSpec};
use compsafe::set_theoretic::{
    make_set_theoretic, make_three_candidate_vote, strictly_mixed_equilibrium_support_enum,
    transplant_safety_value,
};
use compsafe::{
    make_aumann_game, make_leader_election, make_load_balancing_2x2, make_pure_safety_game,
    safety_level_2x2, safety_level_lp, MixedStrategy, Player, Rational,
};
use serde::Serialize;

use crate::render::{yes_no, Table};
use crate::{CliError, Format, Output};

#[derive(Serialize)]
struct CheckResult {
    name: &'static str,
    passed: bool,
    detail: String,
}

type CheckFn = fn(u64) -> Result<(bool, String), compsafe::Error>;

const CHECKS: &[(&str, CheckFn)] = &[
    ("pure-safety", pure_safety),
    ("aumann", aumann),
    ("leader", leader),
    ("loadbalance-2x2", loadbalance_2x2),
    ("vote", vote),
    ("two-link-ratio", two_link_ratio),
    ("two-link-combined", two_link_combined),
    ("auction-ratio", auction_ratio),
    ("auction-monte-carlo", auction_monte_carlo),
];

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn pure_safety(_: u64) -> Result<(bool, String), compsafe::Error> {
    let g = make_pure_safety_game();
    let rep = compare_safety_vs_nash(&g, Player::One)?;
    let eq = strictly_mixed_equilibrium(&g).map_err(|e| compsafe::Error::Verification(e.to_string()))?;
    let nash = rep.nash_value.clone().unwrap_or_default();
    let ok = rep.safety_value == 50 && nash == 52 && eq.q == r(1, 5) && eq.p == r(1, 2);
    Ok((
        ok,
        format!("safety {} nash {} p {} q {}", rep.safety_value, nash, eq.p, eq.q),
    ))
}

fn aumann(_: u64) -> Result<(bool, String), compsafe::Error> {
    let g = make_aumann_game();
    let mut ok = true;
    let mut parts = Vec::new();
    for player in Player::BOTH {
        let rep = compare_safety_vs_nash(&g, player)?;
        let grid = grid_maximin(&g, player, GridSpec::new(4)?)?;
        ok &= rep.safety_value == 3 && rep.nash_value == Some(r(3, 1)) && grid.value == 3;
        parts.push(format!(
            "player {player}: safety {} nash {} grid {}",
            rep.safety_value,
            rep.nash_value.unwrap_or_default(),
            grid.value
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn leader(_: u64) -> Result<(bool, String), compsafe::Error> {
    let one = Rational::one();
    let g = make_leader_election(&one, &one, &one, &one)?;
    let rep = compare_safety_vs_nash(&g, Player::One)?;
    let ok = rep.equal && rep.safety_value == r(1, 2);
    Ok((ok, format!("safety {} nash {}", rep.safety_value, rep.nash_value.unwrap_or_default())))
}

fn loadbalance_2x2(_: u64) -> Result<(bool, String), compsafe::Error> {
    let (g, _) = make_load_balancing_2x2(&r(4, 5), &Rational::one())?;
    let safety = safety_level_2x2(&g, Player::One)?;
    let rep = compare_safety_vs_nash(&g, Player::One)?;
    let ok = safety.strategy.probs() == [r(4, 9), r(5, 9)] && safety.value == r(2, 3) && rep.equal;
    Ok((
        ok,
        format!(
            "safety {} value {} nash {}",
            safety.strategy,
            safety.value,
            rep.nash_value.unwrap_or_default()
        ),
    ))
}

fn vote(_: u64) -> Result<(bool, String), compsafe::Error> {
    let g = make_set_theoretic(make_three_candidate_vote())?;
    let eq = strictly_mixed_equilibrium_support_enum(&g)
        .map_err(|e| compsafe::Error::Verification(format!("{e:?}")))?;
    let rep = transplant_safety_value(&g, &eq, Player::One)?;
    let lp = safety_level_lp(g.base(), Player::One)?;
    let ok = *eq.strategy(Player::One) == MixedStrategy::uniform(3)
        && rep.value == r(4, 3)
        && lp.value == rep.value;
    Ok((
        ok,
        format!("equilibrium {} transplant {} lp {}", eq.strategy(Player::One), rep.value, lp.value),
    ))
}

fn two_link_ratio(_: u64) -> Result<(bool, String), compsafe::Error> {
    let fam = LoadBalancingFamily::two_link(0.5, 1.0)?;
    let row = &fam.ratio_table(&[10_000])?[0];
    let ok = (row.ratio - 1.125).abs() <= 0.01 * 1.125;
    Ok((ok, format!("n 10000 ratio {:.6} target 1.125", row.ratio)))
}

fn two_link_combined(_: u64) -> Result<(bool, String), compsafe::Error> {
    let mut worst: f64 = 0.0;
    for alpha in [0.1, 0.2, 0.3, 0.34, 0.5, 0.75, 1.0] {
        let choice = combined_strategy(alpha)?;
        let fam = LoadBalancingFamily::two_link(alpha, 1.0)?;
        let row = fam.ratio_report(10_000, &choice.strategy, choice.ratio_bound)?;
        if row.ratio > choice.ratio_bound * 1.01 {
            return Ok((false, format!("alpha {alpha}: ratio {:.6} above {:.6}", row.ratio, choice.ratio_bound)));
        }
        worst = worst.max(row.ratio);
    }
    Ok((worst <= 4.0 / 3.0 * 1.01, format!("worst ratio {worst:.6} target 4/3")))
}

fn auction_ratio(_: u64) -> Result<(bool, String), compsafe::Error> {
    let ratio = auction::competitive_ratio(1_000_000)?;
    let gap = (ratio - std::f64::consts::E).abs();
    Ok((gap < 1e-5, format!("ratio {ratio:.9} gap {gap:.2e}")))
}

fn auction_monte_carlo(seed: u64) -> Result<(bool, String), compsafe::Error> {
    let (v, n) = (0.9, 3);
    let est = auction::monte_carlo_payoff(v, |v| v, n, Opponents::Truthful, 100_000, seed)?;
    let expect = auction::equilibrium_expected_payoff(v, n)?;
    let ok = (est.mean - expect).abs() <= 4.0 * est.std_error;
    Ok((
        ok,
        format!("mean {:.6} stderr {:.6} expected {expect:.6}", est.mean, est.std_error),
    ))
}

pub fn run(format: Format, seed: u64) -> Result<Output, CliError> {
    let mut results = Vec::new();
    for &(name, f) in CHECKS {
        let (passed, detail) = match f(seed) {
            Ok(x) => x,
            Err(e) => (false, format!("error: {e}")),
        };
        results.push(CheckResult { name, passed, detail });
    }
    let failed = results.iter().any(|c| !c.passed);
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&results).expect("serializable") + "\n",
        Format::Csv | Format::Table => {
            let mut t = Table::new(["check", "passed", "detail"]);
            for c in &results {
                t.row(vec![c.name.to_string(), yes_no(c.passed), c.detail.clone()]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                let passed = results.iter().filter(|c| c.passed).count();
                format!("{}\n{passed}/{} checks passed\n", t.render(), results.len())
            }
        }
    };
    Ok(Output {
        text,
        failed_checks: failed,
    })
}
