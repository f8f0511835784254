use std::fmt::Write as _;

use compsafe::auction::{self, Opponents};
use compsafe::equilibria::{
    compare_safety_vs_nash, pure_equilibrium_cells, strictly_mixed_equilibrium, Equilibrium2x2,
    NashBasis,
};
use compsafe::load_balancing::LoadBalancingFamily;
use compsafe::set_theoretic::{
    make_set_theoretic, make_three_candidate_vote, strictly_mixed_equilibrium_support_enum,
    transplant_safety_value,
};
use compsafe::{
    make_aumann_game, make_leader_election, make_load_balancing_2x2, make_pure_safety_game,
    safety_level, safety_level_lp, BimatrixGame, MixedStrategy, Player, Rational, SafetyKind,
};
use serde::Serialize;
use serde_json::json;

use crate::render::{fixed, opt, strategy_cell, yes_no, Table};
use crate::{
    AnalyzeArgs, AuctionArgs, CliError, Format, GameInput, LoadbalanceArgs, OpponentModel, Preset,
    SetTheoreticArgs,
};

pub struct LoadedGame {
    pub name: String,
    pub game: BimatrixGame,
}

fn parse_params(text: &Option<String>, defaults: &[i64], expected: usize) -> Result<Vec<Rational>, CliError> {
    let Some(text) = text else {
        return Ok(defaults.iter().map(|&d| Rational::from_integer(d)).collect());
    };
    let values = text
        .split(',')
        .map(|s| s.trim().parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != expected {
        return Err(CliError::Input(format!(
            "expected {expected} comma-separated parameters, got {}",
            values.len()
        )));
    }
    Ok(values)
}

pub fn preset_game(preset: Preset, params: &Option<String>) -> Result<LoadedGame, CliError> {
    let no_params = |name: &str| match params {
        Some(_) => Err(CliError::Input(format!("preset {name} takes no parameters"))),
        None => Ok(()),
    };
    let (name, game) = match preset {
        Preset::PureSafety => {
            no_params("pure-safety")?;
            ("pure-safety".to_string(), make_pure_safety_game())
        }
        Preset::Aumann => {
            no_params("aumann")?;
            ("aumann".to_string(), make_aumann_game())
        }
        Preset::Vote => {
            no_params("vote")?;
            ("vote".to_string(), make_three_candidate_vote())
        }
        Preset::Leader => {
            let p = parse_params(params, &[1, 1, 1, 1], 4)?;
            let game = make_leader_election(&p[0], &p[1], &p[2], &p[3])?;
            (format!("leader({}, {}, {}, {})", p[0], p[1], p[2], p[3]), game)
        }
        Preset::Loadbalance => {
            let p = match params {
                Some(_) => parse_params(params, &[], 2)?,
                None => vec![Rational::new(4, 5), Rational::one()],
            };
            let (game, warning) = make_load_balancing_2x2(&p[0], &p[1])?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            (format!("loadbalance(alpha={}, X={})", p[0], p[1]), game)
        }
    };
    Ok(LoadedGame { name, game })
}

fn load_game(input: &GameInput) -> Result<LoadedGame, CliError> {
    match (&input.preset, &input.game) {
        (Some(p), _) => preset_game(*p, &input.params),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            let game = BimatrixGame::from_json_str(&text)?;
            Ok(LoadedGame {
                name: path.display().to_string(),
                game,
            })
        }
        (None, None) => Err(CliError::Input("give --preset or --game".into())),
    }
}

#[derive(Serialize)]
struct PlayerRow {
    player: Player,
    safety_strategy: MixedStrategy,
    safety_kind: SafetyKind,
    safety_value: Rational,
    nash_basis: Option<NashBasis>,
    nash_strategy: Option<MixedStrategy>,
    nash_value: Option<Rational>,
    equal: Option<bool>,
    ratio: Option<Rational>,
    within_hypotheses: Option<bool>,
}

fn basis_name(b: NashBasis) -> &'static str {
    match b {
        NashBasis::StrictlyMixed => "strictly-mixed",
        NashBasis::WorstPure => "worst-pure",
        NashBasis::Incomparable => "none",
    }
}

fn kind_name(k: SafetyKind) -> &'static str {
    match k {
        SafetyKind::Pure => "pure",
        SafetyKind::StrictlyMixed => "strictly-mixed",
        SafetyKind::Mixed => "mixed",
    }
}

pub fn analyze(args: &AnalyzeArgs, format: Format) -> Result<String, CliError> {
    let loaded = load_game(&args.input)?;
    let g = &loaded.game;
    let players: Vec<Player> = match args.player {
        Some(n) => vec![Player::from_number(n)?],
        None => Player::BOTH.to_vec(),
    };
    let mut rows = Vec::new();
    for &player in &players {
        if g.is_2x2() {
            let rep = compare_safety_vs_nash(g, player)?;
            rows.push(PlayerRow {
                player,
                safety_strategy: rep.safety_strategy,
                safety_kind: rep.safety_kind,
                safety_value: rep.safety_value,
                nash_basis: Some(rep.nash_basis),
                nash_strategy: rep.nash_strategy,
                nash_value: rep.nash_value,
                equal: Some(rep.equal),
                ratio: rep.ratio,
                within_hypotheses: Some(rep.within_hypotheses),
            });
        } else {
            let rep = safety_level(g, player)?;
            rows.push(PlayerRow {
                player,
                safety_strategy: rep.strategy,
                safety_kind: rep.kind,
                safety_value: rep.value,
                nash_basis: None,
                nash_strategy: None,
                nash_value: None,
                equal: None,
                ratio: None,
                within_hypotheses: None,
            });
        }
    }
    let mixed: Option<Equilibrium2x2> = strictly_mixed_equilibrium(g).ok();
    let pure = pure_equilibrium_cells(g);

    Ok(match format {
        Format::Json => {
            let value = json!({
                "game": loaded.name,
                "payoffs": g.to_json(),
                "mixed_equilibrium": mixed,
                "pure_equilibria": pure,
                "players": rows,
            });
            serde_json::to_string_pretty(&value).expect("serializable") + "\n"
        }
        Format::Csv | Format::Table => {
            let mut t = Table::new([
                "player",
                "safety_strategy",
                "safety_kind",
                "safety_value",
                "nash_basis",
                "nash_strategy",
                "nash_value",
                "equal",
                "ratio",
            ]);
            for r in &rows {
                t.row(vec![
                    r.player.to_string(),
                    strategy_cell(&r.safety_strategy),
                    kind_name(r.safety_kind).to_string(),
                    r.safety_value.to_string(),
                    r.nash_basis.map(basis_name).unwrap_or_default().to_string(),
                    r.nash_strategy.as_ref().map(strategy_cell).unwrap_or_default(),
                    opt(&r.nash_value),
                    r.equal.map(yes_no).unwrap_or_default(),
                    opt(&r.ratio),
                ]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                let mut out = format!("game: {} ({}x{})\n", loaded.name, g.rows(), g.cols());
                match &mixed {
                    Some(eq) => writeln!(
                        out,
                        "mixed equilibrium: p = {}, q = {}, payoffs ({}, {})",
                        eq.p, eq.q, eq.payoffs.0, eq.payoffs.1
                    )
                    .unwrap(),
                    None if g.is_2x2() => out.push_str("mixed equilibrium: none\n"),
                    None => {}
                }
                let cells: Vec<String> = pure
                    .iter()
                    .map(|&(j, k)| {
                        format!(
                            "({}, {})",
                            g.labels(Player::One)[j],
                            g.labels(Player::Two)[k]
                        )
                    })
                    .collect();
                writeln!(
                    out,
                    "pure equilibria: {}\n",
                    if cells.is_empty() { "none".to_string() } else { cells.join(" ") }
                )
                .unwrap();
                out + &t.render()
            }
        }
    })
}

pub fn set_theoretic(args: &SetTheoreticArgs, format: Format) -> Result<String, CliError> {
    let loaded = load_game(&args.input)?;
    let g = make_set_theoretic(loaded.game)?;
    let eq = match strictly_mixed_equilibrium_support_enum(&g) {
        Ok(eq) => eq,
        Err(reason) => {
            return Ok(match format {
                Format::Json => {
                    serde_json::to_string_pretty(&json!({
                        "game": loaded.name,
                        "equilibrium": null,
                        "reason": format!("{reason:?}"),
                    }))
                    .expect("serializable")
                        + "\n"
                }
                _ => format!("game: {}\nno full-support equilibrium: {reason:?}\n", loaded.name),
            });
        }
    };
    #[derive(Serialize)]
    struct Row {
        player: Player,
        equilibrium_strategy: MixedStrategy,
        equilibrium_payoff: Rational,
        transplanted_strategy: MixedStrategy,
        transplanted_value: Rational,
        lp_value: Rational,
        optimal: bool,
    }
    let mut rows = Vec::new();
    for player in Player::BOTH {
        let rep = transplant_safety_value(&g, &eq, player)?;
        let lp = safety_level_lp(g.base(), player)?;
        rows.push(Row {
            player,
            equilibrium_strategy: eq.strategy(player).clone(),
            equilibrium_payoff: eq.payoff(player).clone(),
            transplanted_strategy: rep.strategy,
            optimal: lp.value == rep.value,
            transplanted_value: rep.value,
            lp_value: lp.value,
        });
    }
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "game": loaded.name,
                "multiple": eq.multiple,
                "players": rows,
            }))
            .expect("serializable")
                + "\n"
        }
        Format::Csv | Format::Table => {
            let mut t = Table::new([
                "player",
                "equilibrium_strategy",
                "equilibrium_payoff",
                "transplanted_strategy",
                "transplanted_value",
                "lp_value",
                "optimal",
            ]);
            for r in &rows {
                t.row(vec![
                    r.player.to_string(),
                    strategy_cell(&r.equilibrium_strategy),
                    r.equilibrium_payoff.to_string(),
                    strategy_cell(&r.transplanted_strategy),
                    r.transplanted_value.to_string(),
                    r.lp_value.to_string(),
                    yes_no(r.optimal),
                ]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                let mut out = format!("game: {} ({} strategies)\n", loaded.name, g.size());
                if eq.multiple {
                    out.push_str("note: indifference system is singular; showing one solution\n");
                }
                out.push('\n');
                out + &t.render()
            }
        }
    })
}

pub fn loadbalance(args: &LoadbalanceArgs, format: Format) -> Result<String, CliError> {
    let fam = LoadBalancingFamily::new(args.alphas.clone(), args.x)?;
    if let Some(&n) = args.n.iter().find(|&&n| n < fam.links()) {
        return Err(CliError::Input(format!(
            "n = {n} is smaller than the number of links {}",
            fam.links()
        )));
    }
    let rows = fam.ratio_table(&args.n)?;
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&json!({
                "alphas": fam.alphas(),
                "X": fam.x(),
                "safety_mixture": fam.safety_mixture(),
                "limit_ratio": fam.ratio_limit(),
                "k_regularity": fam.k_regularity(),
                "rows": rows,
            }))
            .expect("serializable")
                + "\n"
        }
        Format::Csv | Format::Table => {
            let num = |x: f64| if format == Format::Csv { x.to_string() } else { fixed(x) };
            let mut t = Table::new(["n", "nash_bound", "guaranteed", "ratio", "limit_ratio", "exhaustive"]);
            for r in &rows {
                t.row(vec![
                    r.n.to_string(),
                    num(r.nash_bound),
                    num(r.guaranteed),
                    num(r.ratio),
                    num(r.limit_ratio),
                    r.exhaustive.to_string(),
                ]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                let mix: Vec<String> = fam.safety_mixture().iter().map(|&p| fixed(p)).collect();
                format!(
                    "links: {}  X: {}\nsafety mixture: {}\nlimit ratio: {}  k-regularity: {}\n\n{}",
                    fam.links(),
                    fam.x(),
                    mix.join(" "),
                    fixed(fam.ratio_limit()),
                    fixed(fam.k_regularity()),
                    t.render()
                )
            }
        }
    })
}

pub fn auction(args: &AuctionArgs, format: Format, seed: u64) -> Result<String, CliError> {
    let opponents = match args.opponents {
        OpponentModel::Truthful => Opponents::Truthful,
        OpponentModel::MaxAggression => Opponents::MaxAggression,
    };
    #[derive(Serialize)]
    struct Row {
        #[serde(flatten)]
        report: auction::AuctionSafetyReport,
        mc_mean: Option<f64>,
        mc_stderr: Option<f64>,
    }
    let mut rows = Vec::new();
    for &n in &args.n {
        let report = auction::safety_report(args.v, n)?;
        let mc = match args.samples {
            Some(samples) => Some(auction::monte_carlo_payoff(
                args.v,
                |v| v,
                n,
                opponents,
                samples,
                seed,
            )?),
            None => None,
        };
        rows.push(Row {
            report,
            mc_mean: mc.map(|m| m.mean),
            mc_stderr: mc.map(|m| m.std_error),
        });
    }
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&rows).expect("serializable") + "\n",
        Format::Csv | Format::Table => {
            let num = |x: f64| if format == Format::Csv { x.to_string() } else { fixed(x) };
            let mut t = Table::new([
                "n",
                "v",
                "eq_bid",
                "eq_payoff",
                "safety_bid",
                "guaranteed",
                "ratio",
                "mc_mean",
                "mc_stderr",
            ]);
            for r in &rows {
                let a = &r.report;
                t.row(vec![
                    a.n.to_string(),
                    num(a.v),
                    num(a.equilibrium_bid),
                    num(a.equilibrium_payoff),
                    num(a.safety_bid),
                    num(a.guaranteed),
                    num(a.ratio),
                    r.mc_mean.map(num).unwrap_or_default(),
                    r.mc_stderr.map(num).unwrap_or_default(),
                ]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                t.render()
            }
        }
    })
}
