//! Stochastic multi-armed bandits.
//!
//! Without states or dynamics the value table disappears and the estimates
//! `Q̂(a)` play the role of advantages: one policy update solves the dual over
//! λ alone (κ eliminated in closed form) and reweights the current policy by
//! `f*'((Q̂(a) − λ + κ(a))/η)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::divergence::{FiniteDistribution, GeneratorSpec};
use crate::dual::optimal_baseline;
use crate::error::{Error, Result};

/// Gaussian-reward arms.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditEnv {
    pub arm_means: Vec<f64>,
    pub reward_noise_std: f64,
}

impl BanditEnv {
    pub fn new(arm_means: Vec<f64>, reward_noise_std: f64) -> Result<Self> {
        if arm_means.is_empty() {
            return Err(Error::InvalidInput("bandit needs at least one arm".into()));
        }
        if !(reward_noise_std >= 0.0 && reward_noise_std.is_finite()) {
            return Err(Error::InvalidInput(format!("noise std {reward_noise_std} is invalid")));
        }
        Ok(Self {
            arm_means,
            reward_noise_std,
        })
    }

    /// Arm values drawn i.i.d. from N(0, 1).
    pub fn standard_normal<R: Rng + ?Sized>(arms: usize, reward_noise_std: f64, rng: &mut R) -> Result<Self> {
        let means = (0..arms).map(|_| rng.sample(StandardNormal)).collect();
        Self::new(means, reward_noise_std)
    }

    pub fn n_arms(&self) -> usize {
        self.arm_means.len()
    }

    pub fn best_mean(&self) -> f64 {
        self.arm_means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn pull<R: Rng + ?Sized>(&self, arm: usize, rng: &mut R) -> f64 {
        let noise: f64 = rng.sample(StandardNormal);
        self.arm_means[arm] + self.reward_noise_std * noise
    }
}

/// Learner state between policy updates.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditState {
    pub pull_counts: Vec<u64>,
    /// Running means of observed rewards; zero for arms never pulled.
    pub value_estimates: Vec<f64>,
    pub policy: FiniteDistribution,
    pub eta: f64,
    pub timestep: u64,
}

impl BanditState {
    pub fn new(arms: usize, eta: f64) -> Self {
        Self {
            pull_counts: vec![0; arms],
            value_estimates: vec![0.0; arms],
            policy: FiniteDistribution::uniform(arms),
            eta,
            timestep: 0,
        }
    }

    pub fn observe(&mut self, arm: usize, reward: f64) {
        self.pull_counts[arm] += 1;
        let n = self.pull_counts[arm] as f64;
        self.value_estimates[arm] += (reward - self.value_estimates[arm]) / n;
        self.timestep += 1;
    }

    pub fn sample_arm<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        let mut last = 0;
        for (i, &p) in self.policy.weights().iter().enumerate() {
            if p <= 0.0 {
                continue;
            }
            acc += p;
            last = i;
            if u < acc {
                return i;
            }
        }
        last
    }
}

/// Normalization residual allowed after a policy update.
pub const UPDATE_NORMALIZATION_TOL: f64 = 1e-10;

/// `π_{t+1}(a) ∝ π_t(a) f*'((Q̂(a) − λ + κ(a))/η)` with λ solving the dual.
pub fn bandit_policy_update(spec: &GeneratorSpec, state: &BanditState) -> Result<FiniteDistribution> {
    let pi = state.policy.weights();
    if pi.len() != state.value_estimates.len() {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            got: state.value_estimates.len(),
        });
    }
    let lambda = optimal_baseline(spec, pi, &state.value_estimates, state.eta)?;
    let mut next = Vec::with_capacity(pi.len());
    for (&p, &q) in pi.iter().zip(&state.value_estimates) {
        if p == 0.0 {
            next.push(0.0);
            continue;
        }
        let (y, _) = spec.conjugate_argument(q - lambda, state.eta);
        next.push(p * spec.f_star_prime(y)?);
    }
    let total: f64 = next.iter().sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::Bracket {
            lo: lambda,
            hi: lambda,
        });
    }
    next.iter_mut().for_each(|w| *w /= total);
    let residual = (next.iter().sum::<f64>() - 1.0).abs();
    if residual >= UPDATE_NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!("update residual {residual}")));
    }
    FiniteDistribution::normalized(next)
}

/// Per-timestep cumulative regret across runs; entry `i` is after `i + 1` steps.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretRecord {
    pub mean: Vec<f64>,
    pub ci95: Vec<f64>,
    pub runs: usize,
}

impl RegretRecord {
    /// Aggregates per-run cumulative regret curves of equal length.
    pub fn from_runs(curves: &[Vec<f64>]) -> Self {
        let runs = curves.len();
        let horizon = curves.first().map_or(0, Vec::len);
        let mut mean = Vec::with_capacity(horizon);
        let mut ci95 = Vec::with_capacity(horizon);
        let mut column = vec![0.0; runs];
        for t in 0..horizon {
            for (dst, c) in column.iter_mut().zip(curves) {
                *dst = c[t];
            }
            let (m, h) = mean_ci95(&column);
            mean.push(m);
            ci95.push(h);
        }
        Self { mean, ci95, runs }
    }

    pub fn horizon(&self) -> usize {
        self.mean.len()
    }

    /// Mean cumulative regret after `n` steps (0 for `n = 0`).
    pub fn at(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.mean[n - 1]
        }
    }

    pub fn ci_at(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.ci95[n - 1]
        }
    }
}

/// Pairwise (cascade) summation: same result for any thread schedule, small rounding error.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (a, b) = xs.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Sample mean and normal-approximation 95% half-width `1.96 s/√n`.
pub fn mean_ci95(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = pairwise_sum(xs) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let dev: Vec<f64> = xs.iter().map(|x| (x - mean).powi(2)).collect();
    let var = pairwise_sum(&dev) / (n - 1) as f64;
    (mean, 1.96 * (var / n as f64).sqrt())
}

/// Bandit experiment settings.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditConfig {
    pub arms: usize,
    pub horizon: usize,
    pub update_every: usize,
    pub eta0: f64,
    pub beta: f64,
    pub runs: usize,
    pub seed: u64,
    pub noise_std: f64,
    /// Fixed arm values; drawn from N(0, 1) per run when `None`.
    pub arm_means: Option<Vec<f64>>,
}

impl Default for BanditConfig {
    fn default() -> Self {
        Self {
            arms: 20,
            horizon: 1000,
            update_every: 20,
            eta0: 1.0,
            beta: 0.8,
            runs: 400,
            seed: 0,
            noise_std: 0.5,
            arm_means: None,
        }
    }
}

impl BanditConfig {
    pub fn validate(&self) -> Result<()> {
        if self.arms == 0 {
            return Err(Error::Config("arms must be positive".into()));
        }
        if self.update_every == 0 {
            return Err(Error::Config("update_every must be positive".into()));
        }
        if !self.horizon.is_multiple_of(self.update_every) {
            return Err(Error::Config(format!(
                "horizon {} is not a multiple of update_every {}",
                self.horizon, self.update_every
            )));
        }
        if !(self.eta0 > 0.0 && self.eta0.is_finite()) {
            return Err(Error::Config("eta0 must be positive".into()));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::Config("beta must be in (0, 1]".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs must be positive".into()));
        }
        if !(self.noise_std >= 0.0 && self.noise_std.is_finite()) {
            return Err(Error::Config("noise std must be non-negative".into()));
        }
        if let Some(m) = &self.arm_means {
            if m.len() != self.arms {
                return Err(Error::Config(format!(
                    "{} arm means given for {} arms",
                    m.len(),
                    self.arms
                )));
            }
        }
        Ok(())
    }

    fn env_for_run(&self, rng: &mut ChaCha8Rng) -> Result<BanditEnv> {
        match &self.arm_means {
            Some(m) => BanditEnv::new(m.clone(), self.noise_std),
            None => BanditEnv::standard_normal(self.arms, self.noise_std, rng),
        }
    }
}

/// Generators for run `run`: stream 0 drives the environment (arm values and
/// reward noise), stream 1 the learner's action choices. The environment
/// stream does not depend on the learner, so all learners see the same
/// instances and the same noise sequence.
fn run_rngs(seed: u64, run: usize) -> (ChaCha8Rng, ChaCha8Rng) {
    let base = seed ^ run as u64;
    let mut env = ChaCha8Rng::seed_from_u64(base);
    env.set_stream(0);
    let mut agent = ChaCha8Rng::seed_from_u64(base);
    agent.set_stream(1);
    (env, agent)
}

fn simulate_runs<F>(runs: usize, run: F) -> Result<RegretRecord>
where
    F: Fn(usize) -> Result<Vec<f64>> + Sync + Send,
{
    let curves = (0..runs)
        .into_par_iter()
        .map(run)
        .collect::<Result<Vec<_>>>()?;
    Ok(RegretRecord::from_runs(&curves))
}

/// Divergence-penalized policy iteration on freshly drawn bandits.
///
/// The policy is updated every `update_every` steps from the running value
/// estimates, after which `η ← β η`. Regret is `Q_max − Q(a_t)` accumulated
/// with the true arm values.
pub fn run_bandit_experiment(spec: &GeneratorSpec, config: &BanditConfig) -> Result<RegretRecord> {
    config.validate()?;
    simulate_runs(config.runs, |run| {
        let (mut env_rng, mut agent_rng) = run_rngs(config.seed, run);
        let env = config.env_for_run(&mut env_rng)?;
        let q_max = env.best_mean();
        let mut state = BanditState::new(env.n_arms(), config.eta0);
        let mut cumulative = 0.0;
        let mut curve = Vec::with_capacity(config.horizon);
        for t in 0..config.horizon {
            let arm = state.sample_arm(&mut agent_rng);
            let reward = env.pull(arm, &mut env_rng);
            state.observe(arm, reward);
            cumulative += q_max - env.arm_means[arm];
            curve.push(cumulative);
            if (t + 1) % config.update_every == 0 {
                state.policy = bandit_policy_update(spec, &state)?;
                state.eta *= config.beta;
            }
        }
        Ok(curve)
    })
}

/// UCB1 with index `Q̂(a) + c √(2 ln n / n_a)`, `c` the reward noise std;
/// every arm is pulled once first. Ties go to the lowest index.
pub fn run_ucb_experiment(config: &BanditConfig) -> Result<RegretRecord> {
    config.validate()?;
    simulate_runs(config.runs, |run| {
        let (mut env_rng, _) = run_rngs(config.seed, run);
        let env = config.env_for_run(&mut env_rng)?;
        Ok(ucb_curve(&env, config.horizon, &mut env_rng))
    })
}

fn ucb_curve(env: &BanditEnv, horizon: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let k = env.n_arms();
    let c = env.reward_noise_std;
    let q_max = env.best_mean();
    let mut counts = vec![0u64; k];
    let mut means = vec![0.0; k];
    let mut cumulative = 0.0;
    let mut curve = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let arm = if t < k {
            t
        } else {
            let ln_n = (t as f64).ln();
            let mut best = 0;
            let mut best_index = f64::NEG_INFINITY;
            for a in 0..k {
                let index = means[a] + c * (2.0 * ln_n / counts[a] as f64).sqrt();
                if index > best_index {
                    best_index = index;
                    best = a;
                }
            }
            best
        };
        let reward = env.pull(arm, rng);
        counts[arm] += 1;
        means[arm] += (reward - means[arm]) / counts[arm] as f64;
        cumulative += q_max - env.arm_means[arm];
        curve.push(cumulative);
    }
    curve
}

/// UCB1 on a fixed environment.
pub fn ucb_baseline(env: &BanditEnv, horizon: usize, runs: usize, seed: u64) -> Result<RegretRecord> {
    let config = BanditConfig {
        arms: env.n_arms(),
        horizon,
        update_every: 1,
        runs,
        seed,
        noise_std: env.reward_noise_std,
        arm_means: Some(env.arm_means.clone()),
        ..BanditConfig::default()
    };
    run_ucb_experiment(&config)
}
