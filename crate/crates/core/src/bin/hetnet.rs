//! Command-line front end. Every subcommand prints JSON on success and a
//! single `error: ...` line on failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use hetnet::channel::LinkState;
use hetnet::leader::expansion_target;
use hetnet::sim::{emit, run_sweep, single_game, ClassifyParams, ModelKind, OutputFormat, ScenarioConfig};
use hetnet::DecisionModel;

#[derive(Parser)]
#[command(name = "hetnet", version, about = "WiFi/cellular association game and load sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the load sweep and write one row per load and scenario.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve one user's game from the configured placement.
    Game {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        user_index: usize,
        #[arg(long, value_enum)]
        model: ModelKind,
        #[arg(long)]
        expand: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Label the equilibrium for a pair of offers read from a TOML file.
    NeClassify {
        #[arg(long)]
        params: PathBuf,
    },
    /// Guarantee and bandwidth that make a prospect-theory user perceive `--guarantee`.
    ExpandBw {
        #[arg(long)]
        rate: f64,
        #[arg(long)]
        guarantee: f64,
        #[arg(long)]
        alpha: f64,
        /// Mean SNR, linear.
        #[arg(long)]
        mean_snr: f64,
    },
}

fn run(command: Command) -> hetnet::Result<serde_json::Value> {
    match command {
        Command::Simulate {
            config,
            out,
            format,
            seed,
        } => {
            let cfg = ScenarioConfig::load(&config)?.with_seed(seed);
            let format = format.unwrap_or(cfg.output.format);
            let rows = run_sweep(&cfg)?;
            emit(&rows, format, &out)?;
            Ok(json!({ "rows": rows.len(), "format": format, "out": out, "seed": cfg.seed }))
        }
        Command::Game {
            config,
            user_index,
            model,
            expand,
            seed,
        } => {
            let cfg = ScenarioConfig::load(&config)?.with_seed(seed);
            let outcome = single_game(&cfg, user_index, cfg.model_of(model)?, expand)?;
            Ok(serde_json::to_value(outcome).expect("outcome serializes"))
        }
        Command::NeClassify { params } => {
            let classification = ClassifyParams::load(&params)?.classify()?;
            Ok(serde_json::to_value(classification).expect("classification serializes"))
        }
        Command::ExpandBw {
            rate,
            guarantee,
            alpha,
            mean_snr,
        } => {
            if !(rate > 0.0 && mean_snr > 0.0) {
                return Err(hetnet::Error::InvalidParameter {
                    name: "rate/mean-snr",
                    reason: "must be positive".into(),
                });
            }
            let link = LinkState::from_snr(mean_snr, f64::INFINITY);
            let target = expansion_target(rate, guarantee, DecisionModel::prospect(alpha)?, &link)?;
            Ok(serde_json::to_value(target).expect("target serializes"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("error: bad arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
