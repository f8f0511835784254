use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod check;
mod commands;
mod render;

#[derive(Parser, Debug)]
#[command(name = "compsafe", version, about = "Safety-level strategies versus Nash equilibria")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Seed for every randomized step
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Safety level and equilibria of a two-player game
    Analyze(AnalyzeArgs),
    /// Full-support equilibrium and copied-mixture safety value of a symmetric game
    SetTheoretic(SetTheoreticArgs),
    /// Competitive ratios of the safety mixture on parallel links
    Loadbalance(LoadbalanceArgs),
    /// First-price auction: equilibrium versus worst-case-optimal bidding
    Auction(AuctionArgs),
    /// Recompute the reference numbers; exit 3 if any is off
    Check,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Pure maximin worth 50 against a mixed equilibrium worth 52
    #[value(alias = "section51")]
    PureSafety,
    /// Aumann's 2x2 example
    Aumann,
    /// Leader election, params a,b,c,d
    Leader,
    /// Two-link load balancing, params alpha,X
    Loadbalance,
    /// Three voters, three candidates
    Vote,
}

#[derive(Args, Debug)]
pub struct GameInput {
    /// Built-in game
    #[arg(long, value_enum, conflicts_with = "game")]
    preset: Option<Preset>,
    /// Comma-separated preset parameters (rationals such as 4/5)
    #[arg(long, requires = "preset")]
    params: Option<String>,
    /// Game JSON file
    #[arg(long)]
    game: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    input: GameInput,
    /// Report only this player (1 or 2)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    player: Option<u8>,
}

#[derive(Args, Debug)]
pub struct SetTheoreticArgs {
    #[command(flatten)]
    input: GameInput,
}

#[derive(Args, Debug)]
pub struct LoadbalanceArgs {
    /// Relative link speeds, fastest first and equal to 1
    #[arg(long, value_delimiter = ',', required = true)]
    alphas: Vec<f64>,
    /// Value of the fastest link
    #[arg(long = "X", default_value_t = 1.0)]
    x: f64,
    /// Player counts
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 100, 1_000, 10_000])]
    n: Vec<usize>,
}

#[derive(Args, Debug)]
pub struct AuctionArgs {
    /// Bidder counts
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 5, 10, 100])]
    n: Vec<usize>,
    /// Valuation in [0, 1]
    #[arg(long, default_value_t = 1.0)]
    v: f64,
    /// Monte Carlo samples of the equilibrium payoff (omit to skip)
    #[arg(long)]
    samples: Option<usize>,
    /// How simulated opponents report
    #[arg(long, value_enum, default_value_t = OpponentModel::Truthful)]
    opponents: OpponentModel,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpponentModel {
    Truthful,
    MaxAggression,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input data.
    Input(String),
    Internal(String),
}

impl From<compsafe::Error> for CliError {
    fn from(e: compsafe::Error) -> Self {
        match e {
            compsafe::Error::Verification(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

pub struct Output {
    pub text: String,
    pub failed_checks: bool,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let text = match &cli.command {
        Command::Analyze(a) => commands::analyze(a, cli.format)?,
        Command::SetTheoretic(a) => commands::set_theoretic(a, cli.format)?,
        Command::Loadbalance(a) => commands::loadbalance(a, cli.format)?,
        Command::Auction(a) => commands::auction(a, cli.format, cli.seed)?,
        Command::Check => return check::run(cli.format, cli.seed),
    };
    Ok(Output {
        text,
        failed_checks: false,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(out.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("internal error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if out.failed_checks {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
