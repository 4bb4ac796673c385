use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use epo_core::experiments::{run_and_write, EnvName, Estimator, ExperimentConfig, ExperimentKind};
use epo_core::Error;

/// Proximal policy optimization with α-divergence penalties.
#[derive(Parser)]
#[command(name = "epo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regret of the α-divergence bandit learner and UCB.
    Bandit(CommonArgs),
    /// Sample-based policy iteration on a tabular environment.
    Mdp(CommonArgs),
    /// Evolution of a 10-arm bandit policy under repeated updates.
    Demo(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated α values, e.g. `--alpha=-3,0,1,2`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
    alpha: Option<Vec<f64>>,
    /// chain | cliffwalking | frozenlake
    #[arg(long)]
    env: Option<String>,
    #[arg(long)]
    eta0: Option<f64>,
    #[arg(long)]
    decay: Option<f64>,
    #[arg(long, visible_alias = "iters")]
    iterations: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// pooled | single-sample (mdp).
    #[arg(long)]
    estimator: Option<String>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for CSV files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    arms: Option<usize>,
    #[arg(long)]
    horizon: Option<usize>,
    #[arg(long)]
    update_every: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    noise_std: Option<f64>,
    /// Fixed temperature (demo).
    #[arg(long)]
    eta: Option<f64>,
    /// Regret cross-section times (bandit).
    #[arg(long, value_delimiter = ',')]
    checkpoints: Option<Vec<usize>>,
    /// Last iteration shown (demo).
    #[arg(long)]
    demo_last: Option<usize>,
}

fn build_config(kind: ExperimentKind, args: CommonArgs) -> Result<ExperimentConfig, Error> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::from_file(path, kind)?,
        None => {
            let env = args.env.as_deref().map(EnvName::parse).transpose()?;
            ExperimentConfig::defaults(kind, env.unwrap_or(EnvName::Chain))
        }
    };
    if config.kind != kind {
        return Err(Error::Config(format!(
            "config file is for `{}`, not `{}`",
            config.kind.as_str(),
            kind.as_str()
        )));
    }
    if let Some(env) = &args.env {
        let env = EnvName::parse(env)?;
        if env != config.env {
            // switching environment switches its defaults, then reapply the file
            let file = args.config.as_ref().map(std::fs::read_to_string).transpose()?;
            let mut fresh = ExperimentConfig::defaults(kind, env);
            if let Some(text) = file {
                fresh = ExperimentConfig::parse(&text, kind)?;
                fresh.env = env;
            }
            config = fresh;
        }
    }
    macro_rules! apply {
        ($($field:ident),*) => {$(
            if let Some(v) = args.$field { config.$field = v; }
        )*};
    }
    apply!(eta0, decay, iterations, samples, runs, seed, out, arms, horizon, update_every, beta, noise_std, eta, checkpoints, demo_last);
    if let Some(e) = &args.estimator {
        config.estimator = Estimator::parse(e)?;
    }
    if let Some(a) = args.alpha {
        config.alphas = a;
    }
    config.validate()?;
    Ok(config)
}

fn exit_code(err: &Error) -> u8 {
    if err.is_solver_failure() {
        3
    } else if matches!(err, Error::Config(_)) {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match cli.command {
        Command::Bandit(a) => (ExperimentKind::Bandit, a),
        Command::Mdp(a) => (ExperimentKind::Mdp, a),
        Command::Demo(a) => (ExperimentKind::Demo, a),
    };
    let result = build_config(kind, args).and_then(|config| run_and_write(&config));
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
