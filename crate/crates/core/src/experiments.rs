//! Experiment orchestration: policy iteration on the tabular environments,
//! bandit regret sweeps, and the policy-evolution demo, with CSV output.
//!
//! All randomness flows from the configured seed. Run `r` of every α uses the
//! same generators (common random numbers), so α's are compared on identical
//! problem instances.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bandit::{
    bandit_policy_update, mean_ci95, run_bandit_experiment, run_ucb_experiment, BanditConfig,
    BanditEnv, BanditState, RegretRecord,
};
use crate::divergence::GeneratorSpec;
use crate::dual::{solve_dual, solve_dual_problem, DualOptions, DualProblem, DualSolution, TemperatureSchedule};
use crate::error::{Error, Result};
use crate::mdp::{
    default_chain, default_cliffwalking, default_frozenlake, policy_gain, sample_batch_with,
    TabularMdp, TabularPolicy,
};
use crate::policy::{improvement_weights, reweighted_policy_update, tabular_policy_update};

pub const BANDIT_CSV_HEADER: &str = "t,mean_regret,ci95,alpha,runs,seed";
pub const MDP_CSV_HEADER: &str = "iter,mean_reward,ci95,alpha,env,runs,seed";
pub const DEMO_CSV_HEADER: &str = "alpha,iteration,arm,probability";
pub const CROSS_SECTION_CSV_HEADER: &str = "t,alpha,mean_regret,ci95";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Bandit,
    Mdp,
    Demo,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Bandit => "bandit",
            ExperimentKind::Mdp => "mdp",
            ExperimentKind::Demo => "demo",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bandit" => Ok(ExperimentKind::Bandit),
            "mdp" => Ok(ExperimentKind::Mdp),
            "demo" => Ok(ExperimentKind::Demo),
            other => Err(Error::Config(format!("unknown experiment kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvName {
    Chain,
    CliffWalking,
    FrozenLake,
}

impl EnvName {
    pub fn as_str(self) -> &'static str {
        match self {
            EnvName::Chain => "chain",
            EnvName::CliffWalking => "cliffwalking",
            EnvName::FrozenLake => "frozenlake",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(EnvName::Chain),
            "cliffwalking" => Ok(EnvName::CliffWalking),
            "frozenlake" => Ok(EnvName::FrozenLake),
            other => Err(Error::Config(format!("unknown environment {other:?}"))),
        }
    }

    pub fn build(self) -> TabularMdp {
        match self {
            EnvName::Chain => default_chain(),
            EnvName::CliffWalking => default_cliffwalking(),
            EnvName::FrozenLake => default_frozenlake(),
        }
    }
}

/// How policy iteration turns a batch into an improved tabular policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    /// Per-(s,a) empirical model in the dual; improvement `π ∝ π₀ · w(s,a)`.
    Pooled,
    /// Each tuple's observed successor in the dual; weighted-count fit.
    SingleSample,
}

impl Estimator {
    pub fn as_str(self) -> &'static str {
        match self {
            Estimator::Pooled => "pooled",
            Estimator::SingleSample => "single-sample",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "pooled" => Ok(Estimator::Pooled),
            "single-sample" | "single" => Ok(Estimator::SingleSample),
            other => Err(Error::Config(format!("unknown estimator {other:?}"))),
        }
    }
}

/// Flat experiment configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub env: EnvName,
    pub alphas: Vec<f64>,
    pub eta0: f64,
    pub decay: f64,
    pub iterations: usize,
    pub samples: usize,
    pub estimator: Estimator,
    pub runs: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub arms: usize,
    pub horizon: usize,
    pub update_every: usize,
    pub beta: f64,
    pub noise_std: f64,
    /// Fixed temperature of the demo.
    pub eta: f64,
    /// Regret cross-section times.
    pub checkpoints: Vec<usize>,
    /// Last iteration shown by the demo.
    pub demo_last: usize,
}

impl ExperimentConfig {
    /// Defaults for `kind`; MDP settings follow the per-environment tables.
    pub fn defaults(kind: ExperimentKind, env: EnvName) -> Self {
        let (eta0, decay, iterations, samples) = match env {
            EnvName::Chain => (15.0, 0.9, 30, 800),
            EnvName::CliffWalking => (50.0, 0.9, 40, 1500),
            EnvName::FrozenLake => (1.0, 0.8, 50, 2000),
        };
        let base = Self {
            kind,
            env,
            alphas: vec![-3.0, 0.0, 0.5, 1.0, 2.0, 10.0],
            eta0,
            decay,
            iterations,
            samples,
            estimator: Estimator::Pooled,
            runs: 10,
            seed: 0,
            out: PathBuf::from("out"),
            arms: 20,
            horizon: 1000,
            update_every: 20,
            beta: 0.8,
            noise_std: 0.5,
            eta: 2.0,
            checkpoints: vec![200, 1000],
            demo_last: 20,
        };
        match kind {
            ExperimentKind::Mdp => base,
            ExperimentKind::Bandit => Self {
                alphas: vec![-20.0, -5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 5.0, 20.0],
                eta0: 1.0,
                runs: 400,
                ..base
            },
            ExperimentKind::Demo => Self {
                alphas: vec![-10.0, 0.0, 1.0, 2.0, 10.0],
                arms: 10,
                runs: 1,
                ..base
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} must be positive, got {v}")))
            }
        };
        if self.alphas.is_empty() {
            return Err(Error::Config("alpha list is empty".into()));
        }
        if let Some(a) = self.alphas.iter().find(|a| !a.is_finite()) {
            return Err(Error::Config(format!("alpha {a} is not finite")));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        match self.kind {
            ExperimentKind::Mdp => {
                positive("eta0", self.eta0)?;
                if !(self.decay > 0.0 && self.decay <= 1.0) {
                    return Err(Error::Config(format!("decay {} not in (0, 1]", self.decay)));
                }
                if self.samples == 0 {
                    return Err(Error::Config("samples must be positive".into()));
                }
            }
            ExperimentKind::Bandit => {
                self.bandit_config().validate()?;
                if let Some(c) = self.checkpoints.iter().find(|&&c| c > self.horizon) {
                    return Err(Error::Config(format!(
                        "checkpoint {c} exceeds horizon {}",
                        self.horizon
                    )));
                }
            }
            ExperimentKind::Demo => {
                positive("eta", self.eta)?;
                if self.arms == 0 {
                    return Err(Error::Config("arms must be positive".into()));
                }
            }
        }
        Ok(())
    }

    pub fn bandit_config(&self) -> BanditConfig {
        BanditConfig {
            arms: self.arms,
            horizon: self.horizon,
            update_every: self.update_every,
            eta0: self.eta0,
            beta: self.beta,
            runs: self.runs,
            seed: self.seed,
            noise_std: self.noise_std,
            arm_means: None,
        }
    }

    /// `key = value` lines covering every field.
    pub fn to_text(&self) -> String {
        let list = |xs: &[String]| xs.join(",");
        let mut out = String::new();
        let _ = writeln!(out, "kind = {}", self.kind.as_str());
        let _ = writeln!(out, "env = {}", self.env.as_str());
        let _ = writeln!(
            out,
            "alpha = {}",
            list(&self.alphas.iter().map(|a| a.to_string()).collect::<Vec<_>>())
        );
        let _ = writeln!(out, "eta0 = {}", self.eta0);
        let _ = writeln!(out, "decay = {}", self.decay);
        let _ = writeln!(out, "iterations = {}", self.iterations);
        let _ = writeln!(out, "samples = {}", self.samples);
        let _ = writeln!(out, "estimator = {}", self.estimator.as_str());
        let _ = writeln!(out, "runs = {}", self.runs);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "out = {}", self.out.display());
        let _ = writeln!(out, "arms = {}", self.arms);
        let _ = writeln!(out, "horizon = {}", self.horizon);
        let _ = writeln!(out, "update_every = {}", self.update_every);
        let _ = writeln!(out, "beta = {}", self.beta);
        let _ = writeln!(out, "noise_std = {}", self.noise_std);
        let _ = writeln!(out, "eta = {}", self.eta);
        let _ = writeln!(
            out,
            "checkpoints = {}",
            list(&self.checkpoints.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        );
        let _ = writeln!(out, "demo_last = {}", self.demo_last);
        out
    }

    /// Parses `key = value` lines; `#` starts a comment. Unspecified keys take
    /// the defaults for the file's `kind` and `env` (or `fallback_kind`, chain).
    pub fn parse(text: &str, fallback_kind: ExperimentKind) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let lookup = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let kind = lookup("kind").map(ExperimentKind::parse).transpose()?.unwrap_or(fallback_kind);
        let env = lookup("env").map(EnvName::parse).transpose()?.unwrap_or(EnvName::Chain);
        let mut config = Self::defaults(kind, env);
        for (k, v) in &pairs {
            config.set(k, v)?;
        }
        Ok(config)
    }

    /// Sets one field from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T>
        where
            T::Err: std::fmt::Display,
        {
            v.trim()
                .parse::<T>()
                .map_err(|e| Error::Config(format!("{key}: cannot parse {v:?}: {e}")))
        }
        fn list<T: std::str::FromStr>(key: &str, v: &str) -> Result<Vec<T>>
        where
            T::Err: std::fmt::Display,
        {
            v.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| num(key, s))
                .collect()
        }
        let v = value.trim();
        match key {
            "kind" => self.kind = ExperimentKind::parse(v)?,
            "env" => self.env = EnvName::parse(v)?,
            "alpha" | "alphas" => self.alphas = list(key, v)?,
            "eta0" => self.eta0 = num(key, v)?,
            "decay" => self.decay = num(key, v)?,
            "iterations" | "iters" => self.iterations = num(key, v)?,
            "samples" => self.samples = num(key, v)?,
            "estimator" => self.estimator = Estimator::parse(v)?,
            "runs" => self.runs = num(key, v)?,
            "seed" => self.seed = num(key, v)?,
            "out" => self.out = PathBuf::from(v),
            "arms" => self.arms = num(key, v)?,
            "horizon" => self.horizon = num(key, v)?,
            "update_every" => self.update_every = num(key, v)?,
            "beta" => self.beta = num(key, v)?,
            "noise_std" => self.noise_std = num(key, v)?,
            "eta" => self.eta = num(key, v)?,
            "checkpoints" => self.checkpoints = list(key, v)?,
            "demo_last" => self.demo_last = num(key, v)?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn from_file(path: &Path, fallback_kind: ExperimentKind) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, fallback_kind)
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                return None;
            }
            Some(match line.split_once('=') {
                Some((k, v)) => Ok((k.trim().to_string(), v.trim().to_string())),
                None => Err(Error::Config(format!("line {}: expected key = value", i + 1))),
            })
        })
        .collect()
}

/// Per-iteration batch mean reward for one α, aggregated over runs.
#[derive(Debug, Clone, PartialEq)]
pub struct LearningCurve {
    pub alpha: f64,
    pub env: EnvName,
    pub mean: Vec<f64>,
    pub ci95: Vec<f64>,
    /// `per_run[r][i]`: batch mean reward of run `r` at iteration `i`.
    pub per_run: Vec<Vec<f64>>,
    /// Exact average reward of each run's final policy; NaN if that policy
    /// is not unichain.
    pub final_gains: Vec<f64>,
}

impl LearningCurve {
    pub fn len(&self) -> usize {
        self.mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mean.is_empty()
    }

    /// Reward at the last iteration of each run.
    pub fn final_rewards(&self) -> Vec<f64> {
        self.per_run.iter().filter_map(|c| c.last().copied()).collect()
    }

    pub fn final_reward_variance(&self) -> f64 {
        let xs = self.final_rewards();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)
    }
}

/// Learner state after a policy-iteration run.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyIterationRun {
    pub rewards: Vec<f64>,
    pub policy: TabularPolicy,
    pub last_dual: Option<DualSolution>,
}

fn iteration_rng(seed: u64, run: usize, iteration: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ run as u64);
    rng.set_stream(iteration as u64 + 1);
    rng
}

/// Sample → evaluate (dual) → improve → decay η, `iterations` times.
#[allow(clippy::too_many_arguments)]
pub fn policy_iteration_run(
    mdp: &TabularMdp,
    spec: &GeneratorSpec,
    estimator: Estimator,
    schedule: TemperatureSchedule,
    iterations: usize,
    samples: usize,
    seed: u64,
    run: usize,
) -> Result<PolicyIterationRun> {
    let mut policy = TabularPolicy::uniform(mdp.n_states(), mdp.n_actions());
    let mut warm: Option<DualSolution> = None;
    let mut rewards = Vec::with_capacity(iterations);
    let opts = DualOptions::default();
    for i in 0..iterations {
        let at = |e: Error| Error::AtIteration {
            iteration: i,
            source: Box::new(e),
        };
        let mut rng = iteration_rng(seed, run, i);
        let batch = sample_batch_with(mdp, &policy, samples, &mut rng).map_err(at)?;
        rewards.push(batch.mean_reward());
        let eta = schedule.eta(i);
        let dual = match estimator {
            Estimator::Pooled => {
                let problem = DualProblem::from_batch_pooled(&batch, mdp.n_states()).map_err(at)?;
                let dual = solve_dual_problem(spec, &problem, eta, warm.as_ref(), &opts).map_err(at)?;
                policy = reweighted_policy_update(&policy, &problem, spec, &dual).map_err(at)?;
                dual
            }
            Estimator::SingleSample => {
                let dual = solve_dual(spec, &batch, mdp.n_states(), eta, warm.as_ref(), &opts).map_err(at)?;
                let weights = improvement_weights(spec, &batch, &dual).map_err(at)?;
                policy = tabular_policy_update(&policy, &batch, &weights).map_err(at)?;
                dual
            }
        };
        warm = Some(dual);
    }
    Ok(PolicyIterationRun {
        rewards,
        policy,
        last_dual: warm,
    })
}

/// One learning curve per configured α.
pub fn run_policy_iteration(config: &ExperimentConfig) -> Result<Vec<LearningCurve>> {
    config.validate()?;
    let mdp = config.env.build();
    let schedule = TemperatureSchedule::new(config.eta0, config.decay).map_err(|e| Error::Config(e.to_string()))?;
    let jobs: Vec<(usize, usize)> = (0..config.alphas.len())
        .flat_map(|a| (0..config.runs).map(move |r| (a, r)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(a, r)| {
            let spec = GeneratorSpec::new(config.alphas[a]);
            let run = policy_iteration_run(
                &mdp,
                &spec,
                config.estimator,
                schedule,
                config.iterations,
                config.samples,
                config.seed,
                r,
            )?;
            let gain = policy_gain(&mdp, &run.policy).unwrap_or(f64::NAN);
            Ok((run.rewards, gain))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(config
        .alphas
        .iter()
        .enumerate()
        .map(|(a, &alpha)| {
            let slice = &results[a * config.runs..(a + 1) * config.runs];
            let per_run: Vec<Vec<f64>> = slice.iter().map(|(r, _)| r.clone()).collect();
            let final_gains = slice.iter().map(|&(_, g)| g).collect();
            let (mean, ci95) = (0..config.iterations)
                .map(|i| mean_ci95(&per_run.iter().map(|c| c[i]).collect::<Vec<_>>()))
                .unzip();
            LearningCurve {
                alpha,
                env: config.env,
                mean,
                ci95,
                per_run,
                final_gains,
            }
        })
        .collect())
}

/// Regret of every α and UCB at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSectionRow {
    pub t: usize,
    /// `None` for the UCB baseline.
    pub alpha: Option<f64>,
    pub mean_regret: f64,
    pub ci95: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BanditSuite {
    pub records: Vec<(f64, RegretRecord)>,
    pub ucb: RegretRecord,
    pub cross_section: Vec<CrossSectionRow>,
}

impl BanditSuite {
    /// α with the lowest mean regret at time `t`.
    pub fn argmin_alpha(&self, t: usize) -> Option<f64> {
        self.records
            .iter()
            .min_by(|a, b| a.1.at(t).total_cmp(&b.1.at(t)))
            .map(|(a, _)| *a)
    }
}

pub fn run_bandit_suite(config: &ExperimentConfig) -> Result<BanditSuite> {
    config.validate()?;
    let bandit = config.bandit_config();
    let records = config
        .alphas
        .iter()
        .map(|&alpha| run_bandit_experiment(&GeneratorSpec::new(alpha), &bandit).map(|r| (alpha, r)))
        .collect::<Result<Vec<_>>>()?;
    let ucb = run_ucb_experiment(&bandit)?;
    let mut cross_section = Vec::new();
    for &t in &config.checkpoints {
        for (alpha, rec) in &records {
            cross_section.push(CrossSectionRow {
                t,
                alpha: Some(*alpha),
                mean_regret: rec.at(t),
                ci95: rec.ci_at(t),
            });
        }
        cross_section.push(CrossSectionRow {
            t,
            alpha: None,
            mean_regret: ucb.at(t),
            ci95: ucb.ci_at(t),
        });
    }
    Ok(BanditSuite {
        records,
        ucb,
        cross_section,
    })
}

/// Policy after a given number of updates.
#[derive(Debug, Clone, PartialEq)]
pub struct DemoSnapshot {
    pub alpha: f64,
    pub iteration: usize,
    pub probabilities: Vec<f64>,
}

/// Iterated updates from the uniform policy with the true arm values as
/// estimates and a fixed temperature. Snapshots at 0–4 and `demo_last`.
pub fn run_policy_demo(config: &ExperimentConfig) -> Result<(BanditEnv, Vec<DemoSnapshot>)> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let env = BanditEnv::standard_normal(config.arms, 0.0, &mut rng)?;
    let mut shown: Vec<usize> = vec![0, 1, 2, 3, 4, config.demo_last];
    shown.sort_unstable();
    shown.dedup();
    let last = *shown.last().unwrap_or(&0);
    let mut snapshots = Vec::new();
    for &alpha in &config.alphas {
        let spec = GeneratorSpec::new(alpha);
        let mut state = BanditState::new(config.arms, config.eta);
        state.value_estimates = env.arm_means.clone();
        for it in 0..=last {
            if it > 0 {
                state.policy = bandit_policy_update(&spec, &state)?;
            }
            if shown.contains(&it) {
                snapshots.push(DemoSnapshot {
                    alpha,
                    iteration: it,
                    probabilities: state.policy.weights().to_vec(),
                });
            }
        }
    }
    Ok((env, snapshots))
}

pub fn bandit_csv(record: &RegretRecord, alpha_label: &str, seed: u64) -> String {
    let mut out = String::with_capacity(64 * (record.horizon() + 1));
    let _ = writeln!(out, "{BANDIT_CSV_HEADER}");
    for t in 0..record.horizon() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            t + 1,
            record.mean[t],
            record.ci95[t],
            alpha_label,
            record.runs,
            seed
        );
    }
    out
}

pub fn cross_section_csv(rows: &[CrossSectionRow]) -> String {
    let mut out = format!("{CROSS_SECTION_CSV_HEADER}\n");
    for r in rows {
        let alpha = r.alpha.map_or_else(|| "ucb".to_string(), |a| a.to_string());
        let _ = writeln!(out, "{},{},{},{}", r.t, alpha, r.mean_regret, r.ci95);
    }
    out
}

pub fn mdp_csv(curve: &LearningCurve, runs: usize, seed: u64) -> String {
    let mut out = format!("{MDP_CSV_HEADER}\n");
    for i in 0..curve.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            i,
            curve.mean[i],
            curve.ci95[i],
            curve.alpha,
            curve.env.as_str(),
            runs,
            seed
        );
    }
    out
}

pub fn demo_csv(snapshots: &[DemoSnapshot]) -> String {
    let mut out = format!("{DEMO_CSV_HEADER}\n");
    for s in snapshots {
        for (arm, p) in s.probabilities.iter().enumerate() {
            let _ = writeln!(out, "{},{},{},{}", s.alpha, s.iteration, arm, p);
        }
    }
    out
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

/// Runs the configured experiment and writes its CSV files under `config.out`.
pub fn run_and_write(config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    let dir = &config.out;
    match config.kind {
        ExperimentKind::Bandit => {
            let suite = run_bandit_suite(config)?;
            let mut paths = Vec::new();
            for (alpha, rec) in &suite.records {
                let label = alpha.to_string();
                paths.push(write_file(dir, &format!("bandit_alpha_{label}.csv"), &bandit_csv(rec, &label, config.seed))?);
            }
            paths.push(write_file(dir, "bandit_ucb.csv", &bandit_csv(&suite.ucb, "ucb", config.seed))?);
            paths.push(write_file(dir, "regret_vs_alpha.csv", &cross_section_csv(&suite.cross_section))?);
            Ok(paths)
        }
        ExperimentKind::Mdp => {
            let curves = run_policy_iteration(config)?;
            curves
                .iter()
                .map(|c| {
                    write_file(
                        dir,
                        &format!("mdp_{}_alpha_{}.csv", config.env.as_str(), c.alpha),
                        &mdp_csv(c, config.runs, config.seed),
                    )
                })
                .collect()
        }
        ExperimentKind::Demo => {
            let (_, snapshots) = run_policy_demo(config)?;
            Ok(vec![write_file(dir, "demo.csv", &demo_csv(&snapshots))?])
        }
    }
}
