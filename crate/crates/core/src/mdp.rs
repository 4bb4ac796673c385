//! Ergodic tabular MDPs, the benchmark environments, trajectory sampling and
//! the exact oracles (stationary distribution, optimal gain) used to verify
//! the learners.
//!
//! Terminal events (cliff, hole, goal) are modeled inside the transition
//! tensor: the event cell is entered normally and every action taken there
//! teleports the agent to the restart distribution. This keeps every cell a
//! recurrent state of one irreducible chain.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::divergence::FiniteDistribution;
use crate::error::{Error, Result};

/// Row-sum tolerance for stochastic matrices.
pub const STOCHASTIC_TOL: f64 = 1e-12;

/// A finite MDP with outcome-dependent rewards.
///
/// `transition[(s·A + a)·S + s']` holds `P(s' | s, a)` and `outcome_reward`
/// uses the same layout for the reward paid on that transition. The expected
/// reward `R(s, a)` is derived from the two.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularMdp {
    n_states: usize,
    n_actions: usize,
    transition: Vec<f64>,
    outcome_reward: Vec<f64>,
    restart: Vec<f64>,
}

impl TabularMdp {
    pub fn new(
        n_states: usize,
        n_actions: usize,
        transition: Vec<f64>,
        outcome_reward: Vec<f64>,
        restart: Vec<f64>,
    ) -> Result<Self> {
        if n_states == 0 || n_actions == 0 {
            return Err(Error::InvalidModel("need at least one state and one action".into()));
        }
        let cube = n_states * n_actions * n_states;
        if transition.len() != cube {
            return Err(Error::LengthMismatch {
                expected: cube,
                got: transition.len(),
            });
        }
        if outcome_reward.len() != cube {
            return Err(Error::LengthMismatch {
                expected: cube,
                got: outcome_reward.len(),
            });
        }
        if restart.len() != n_states {
            return Err(Error::LengthMismatch {
                expected: n_states,
                got: restart.len(),
            });
        }
        let mdp = Self {
            n_states,
            n_actions,
            transition,
            outcome_reward,
            restart,
        };
        mdp.check_stochastic()?;
        if mdp.outcome_reward.iter().any(|r| !r.is_finite()) {
            return Err(Error::InvalidModel("rewards must be finite".into()));
        }
        Ok(mdp)
    }

    /// MDP whose reward depends only on `(s, a)`; `reward[s·A + a]`.
    pub fn with_state_action_rewards(
        n_states: usize,
        n_actions: usize,
        transition: Vec<f64>,
        reward: &[f64],
        restart: Vec<f64>,
    ) -> Result<Self> {
        if reward.len() != n_states * n_actions {
            return Err(Error::LengthMismatch {
                expected: n_states * n_actions,
                got: reward.len(),
            });
        }
        let outcome_reward = reward
            .iter()
            .flat_map(|&r| std::iter::repeat_n(r, n_states))
            .collect();
        Self::new(n_states, n_actions, transition, outcome_reward, restart)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    fn cell(&self, s: usize, a: usize) -> usize {
        (s * self.n_actions + a) * self.n_states
    }

    /// `P(· | s, a)`.
    pub fn transition_row(&self, s: usize, a: usize) -> &[f64] {
        let c = self.cell(s, a);
        &self.transition[c..c + self.n_states]
    }

    pub fn probability(&self, s: usize, a: usize, next: usize) -> f64 {
        self.transition[self.cell(s, a) + next]
    }

    /// Reward paid on the transition `s --a--> next`.
    pub fn outcome_reward(&self, s: usize, a: usize, next: usize) -> f64 {
        self.outcome_reward[self.cell(s, a) + next]
    }

    /// Expected reward `R(s, a) = Σ_s' P(s'|s,a) r(s,a,s')`.
    pub fn reward(&self, s: usize, a: usize) -> f64 {
        let c = self.cell(s, a);
        self.transition[c..c + self.n_states]
            .iter()
            .zip(&self.outcome_reward[c..c + self.n_states])
            .map(|(p, r)| p * r)
            .sum()
    }

    pub fn restart_distribution(&self) -> &[f64] {
        &self.restart
    }

    pub fn check_stochastic(&self) -> Result<()> {
        let check_row = |row: &[f64], what: String| -> Result<()> {
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidModel(format!("{what} has a negative entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidModel(format!("{what} sums to {sum}")));
            }
            Ok(())
        };
        for s in 0..self.n_states {
            for a in 0..self.n_actions {
                check_row(self.transition_row(s, a), format!("P[{s}][{a}]"))?;
            }
        }
        check_row(&self.restart, "restart distribution".into())
    }

    /// Strong connectivity of the graph with an edge `s → s'` whenever some
    /// action reaches `s'` with positive probability, i.e. irreducibility under
    /// every strictly positive policy.
    pub fn check_ergodic(&self) -> Result<()> {
        let all = vec![true; self.n_states * self.n_actions];
        self.check_irreducible_on(&all)
    }

    fn check_irreducible_on(&self, allowed: &[bool]) -> Result<()> {
        self.check_reachability(allowed, true)
    }

    /// Every state leads to one recurrent state, so the chain has a single
    /// recurrent class and a unique stationary distribution.
    fn check_unichain_on(&self, allowed: &[bool]) -> Result<()> {
        self.check_reachability(allowed, false)
    }

    fn check_reachability(&self, allowed: &[bool], strongly_connected: bool) -> Result<()> {
        let n = self.n_states;
        let mut forward = vec![Vec::new(); n];
        let mut backward = vec![Vec::new(); n];
        for s in 0..n {
            for a in 0..self.n_actions {
                if !allowed[s * self.n_actions + a] {
                    continue;
                }
                for (next, &p) in self.transition_row(s, a).iter().enumerate() {
                    if p > 0.0 {
                        forward[s].push(next);
                        backward[next].push(s);
                    }
                }
            }
        }
        if strongly_connected {
            if let Some(s) = reachable(&forward, 0).iter().position(|v| !v) {
                return Err(Error::Reducible(format!("state 0 cannot reach state {s}")));
            }
            if let Some(s) = reachable(&backward, 0).iter().position(|v| !v) {
                return Err(Error::Reducible(format!("state 0 cannot be reached from state {s}")));
            }
            return Ok(());
        }
        // walk down from state 0 until a state every successor returns to
        let mut root = 0;
        let leads_to_root = loop {
            let ahead = reachable(&forward, root);
            let back = reachable(&backward, root);
            match (0..n).find(|&s| ahead[s] && !back[s]) {
                Some(s) => root = s,
                None => break back,
            }
        };
        match leads_to_root.iter().position(|v| !v) {
            Some(s) => Err(Error::Reducible(format!(
                "state {s} cannot reach the recurrent class of state {root}"
            ))),
            None => Ok(()),
        }
    }

    /// `P_π[s][s'] = Σ_a π(a|s) P(s'|s,a)`, row-major.
    pub fn policy_transition(&self, policy: &TabularPolicy) -> Result<Vec<f64>> {
        self.check_policy_shape(policy)?;
        let n = self.n_states;
        let mut out = vec![0.0; n * n];
        for s in 0..n {
            for a in 0..self.n_actions {
                let pa = policy.prob(s, a);
                if pa == 0.0 {
                    continue;
                }
                for (next, &p) in self.transition_row(s, a).iter().enumerate() {
                    out[s * n + next] += pa * p;
                }
            }
        }
        Ok(out)
    }

    pub fn check_policy_shape(&self, policy: &TabularPolicy) -> Result<()> {
        if policy.n_states() != self.n_states || policy.n_actions() != self.n_actions {
            return Err(Error::InvalidInput(format!(
                "policy is {}x{}, MDP is {}x{}",
                policy.n_states(),
                policy.n_actions(),
                self.n_states,
                self.n_actions
            )));
        }
        Ok(())
    }

    /// Plain-text dump: a header line, then one row per `(s, a)` holding
    /// `P(·|s,a)` followed by the expected reward.
    pub fn to_matrix_dump(&self) -> String {
        let mut out = format!("# states {} actions {}\n", self.n_states, self.n_actions);
        for s in 0..self.n_states {
            for a in 0..self.n_actions {
                let row: Vec<String> = self
                    .transition_row(s, a)
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                let _ = writeln!(out, "{} {}", row.join(" "), self.reward(s, a));
            }
        }
        out
    }
}

fn reachable(graph: &[Vec<usize>], start: usize) -> Vec<bool> {
    let mut seen = vec![false; graph.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(s) = queue.pop_front() {
        for &t in &graph[s] {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Row-stochastic table `π(a|s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularPolicy {
    n_states: usize,
    n_actions: usize,
    probs: Vec<f64>,
}

impl TabularPolicy {
    pub fn uniform(n_states: usize, n_actions: usize) -> Self {
        assert!(n_states > 0 && n_actions > 0);
        Self {
            n_states,
            n_actions,
            probs: vec![1.0 / n_actions as f64; n_states * n_actions],
        }
    }

    /// Row-major table, `probs[s·A + a]`.
    pub fn from_probs(n_states: usize, n_actions: usize, probs: Vec<f64>) -> Result<Self> {
        if n_states == 0 || n_actions == 0 {
            return Err(Error::InvalidInput("empty policy table".into()));
        }
        if probs.len() != n_states * n_actions {
            return Err(Error::LengthMismatch {
                expected: n_states * n_actions,
                got: probs.len(),
            });
        }
        let policy = Self {
            n_states,
            n_actions,
            probs,
        };
        for s in 0..n_states {
            let row = policy.row(s);
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidDistribution(format!("row {s} has a negative entry")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > STOCHASTIC_TOL {
                return Err(Error::InvalidDistribution(format!("row {s} sums to {sum}")));
            }
        }
        Ok(policy)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_actions = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n_actions) {
            return Err(Error::InvalidInput("ragged policy rows".into()));
        }
        Self::from_probs(rows.len(), n_actions, rows.concat())
    }

    /// Deterministic policy choosing `actions[s]` in state `s`.
    pub fn deterministic(n_actions: usize, actions: &[usize]) -> Result<Self> {
        let mut probs = vec![0.0; actions.len() * n_actions];
        for (s, &a) in actions.iter().enumerate() {
            if a >= n_actions {
                return Err(Error::InvalidInput(format!("action {a} out of range")));
            }
            probs[s * n_actions + a] = 1.0;
        }
        Self::from_probs(actions.len(), n_actions, probs)
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn prob(&self, s: usize, a: usize) -> f64 {
        self.probs[s * self.n_actions + a]
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.probs[s * self.n_actions..(s + 1) * self.n_actions]
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Actions with positive probability in state `s`.
    pub fn support(&self, s: usize) -> Vec<usize> {
        self.row(s)
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(a, _)| a)
            .collect()
    }

    /// Replaces row `s` with `weights` normalized to sum to one.
    pub(crate) fn set_row_normalized(&mut self, s: usize, weights: &[f64]) {
        let total: f64 = weights.iter().sum();
        let row = &mut self.probs[s * self.n_actions..(s + 1) * self.n_actions];
        for (dst, &w) in row.iter_mut().zip(weights) {
            *dst = w / total;
        }
    }

    /// Row-major plain-text table, one state per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in 0..self.n_states {
            let row: Vec<String> = self.row(s).iter().map(|p| p.to_string()).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<f64>()
                            .map_err(|e| Error::InvalidInput(format!("bad probability {tok:?}: {e}")))
                    })
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

/// One observed step `(s, a, r, s')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next_state: usize,
}

/// Experience collected under one behavior policy.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionBatch {
    pub tuples: Vec<Transition>,
    pub behavior_policy_id: String,
}

impl TransitionBatch {
    pub fn new(tuples: Vec<Transition>, behavior_policy_id: impl Into<String>) -> Self {
        Self {
            tuples,
            behavior_policy_id: behavior_policy_id.into(),
        }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn mean_reward(&self) -> f64 {
        if self.tuples.is_empty() {
            return 0.0;
        }
        self.tuples.iter().map(|t| t.reward).sum::<f64>() / self.tuples.len() as f64
    }

    /// Visit counts per `(s, a)` cell, `counts[s·A + a]`.
    pub fn counts(&self, n_states: usize, n_actions: usize) -> Vec<usize> {
        let mut counts = vec![0; n_states * n_actions];
        for t in &self.tuples {
            counts[t.state * n_actions + t.action] += 1;
        }
        counts
    }

    /// Every tuple's action has positive probability under `policy`.
    pub fn check_behavior(&self, policy: &TabularPolicy) -> Result<()> {
        for (i, t) in self.tuples.iter().enumerate() {
            if t.state >= policy.n_states() || t.action >= policy.n_actions() {
                return Err(Error::InvalidInput(format!("sample {i} is out of range")));
            }
            if policy.prob(t.state, t.action) <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "sample {i}: action {} has zero probability in state {}",
                    t.action, t.state
                )));
            }
        }
        Ok(())
    }

    /// One `s a r s'` line per tuple.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tuples {
            let _ = writeln!(out, "{} {} {} {}", t.state, t.action, t.reward, t.next_state);
        }
        out
    }
}

fn sample_index<R: Rng + ?Sized>(rng: &mut R, probs: &[f64]) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 0;
    for (i, &p) in probs.iter().enumerate() {
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

/// A single trajectory of `n` steps started from the restart distribution.
pub fn sample_batch(mdp: &TabularMdp, policy: &TabularPolicy, n: usize, seed: u64) -> Result<TransitionBatch> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_batch_with(mdp, policy, n, &mut rng)
}

/// As [`sample_batch`] with a caller-supplied generator.
pub fn sample_batch_with<R: Rng + ?Sized>(
    mdp: &TabularMdp,
    policy: &TabularPolicy,
    n: usize,
    rng: &mut R,
) -> Result<TransitionBatch> {
    mdp.check_policy_shape(policy)?;
    if let Some(s) = (0..policy.n_states()).find(|&s| policy.support(s).is_empty()) {
        return Err(Error::InvalidInput(format!("policy row {s} has no support")));
    }
    let mut tuples = Vec::with_capacity(n);
    if n == 0 {
        return Ok(TransitionBatch::new(tuples, policy_id(policy)));
    }
    let mut s = sample_index(rng, mdp.restart_distribution());
    for _ in 0..n {
        let a = sample_index(rng, policy.row(s));
        let next = sample_index(rng, mdp.transition_row(s, a));
        tuples.push(Transition {
            state: s,
            action: a,
            reward: mdp.outcome_reward(s, a, next),
            next_state: next,
        });
        s = next;
    }
    Ok(TransitionBatch::new(tuples, policy_id(policy)))
}

/// Content hash of the policy table (FNV-1a over the bit patterns).
fn policy_id(policy: &TabularPolicy) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for p in policy.probs() {
        for byte in p.to_bits().to_le_bytes() {
            h ^= byte as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("pi-{h:016x}")
}

/// Residual bound for the stationary distribution.
pub const STATIONARY_RESIDUAL_TOL: f64 = 1e-10;

/// Stationary state distribution `μ_π` (left eigenvector of `P_π` for eigenvalue 1).
///
/// Requires a unichain `P_π` (a single recurrent class). States outside the
/// recurrent class get zero mass.
pub fn stationary_state_distribution(mdp: &TabularMdp, policy: &TabularPolicy) -> Result<Vec<f64>> {
    mdp.check_policy_shape(policy)?;
    let allowed: Vec<bool> = policy.probs().iter().map(|&p| p > 0.0).collect();
    mdp.check_unichain_on(&allowed)?;
    let n = mdp.n_states();
    let p = mdp.policy_transition(policy)?;
    // (P_πᵀ − I) μ = 0 with the last equation replaced by Σμ = 1.
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = p[j * n + i] - if i == j { 1.0 } else { 0.0 };
        }
    }
    for j in 0..n {
        m[(n - 1, j)] = 1.0;
    }
    let mut rhs = DVector::<f64>::zeros(n);
    rhs[n - 1] = 1.0;
    let mu = m
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Reducible("stationary system is singular".into()))?;
    let mut mu: Vec<f64> = mu.iter().map(|&x| x.max(0.0)).collect();
    let total: f64 = mu.iter().sum();
    mu.iter_mut().for_each(|x| *x /= total);

    let residual = (0..n)
        .map(|j| ((0..n).map(|i| mu[i] * p[i * n + j]).sum::<f64>() - mu[j]).abs())
        .fold(0.0, f64::max);
    if residual >= STATIONARY_RESIDUAL_TOL {
        return Err(Error::NotConverged {
            what: "stationary distribution solve",
            iterations: 1,
        });
    }
    Ok(mu)
}

/// State-action occupancy `ρ_π(s, a) = μ_π(s) π(a|s)`, flattened as `s·A + a`.
pub fn stationary_distribution(mdp: &TabularMdp, policy: &TabularPolicy) -> Result<FiniteDistribution> {
    let mu = stationary_state_distribution(mdp, policy)?;
    let na = mdp.n_actions();
    let rho: Vec<f64> = (0..mdp.n_states() * na)
        .map(|i| mu[i / na] * policy.probs()[i])
        .collect();
    FiniteDistribution::from_unnormalized(rho)
}

/// Average reward `J(π) = Σ ρ_π(s,a) R(s,a)`.
pub fn policy_gain(mdp: &TabularMdp, policy: &TabularPolicy) -> Result<f64> {
    let rho = stationary_distribution(mdp, policy)?;
    let na = mdp.n_actions();
    Ok(rho
        .weights()
        .iter()
        .enumerate()
        .map(|(i, w)| w * mdp.reward(i / na, i % na))
        .sum())
}

/// Iteration cap for [`optimal_gain`].
pub const RVI_MAX_ITERS: usize = 1_000_000;

/// Result of relative value iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct GainSolution {
    pub gain: f64,
    /// Relative values, pinned to zero at state 0.
    pub bias: Vec<f64>,
    pub greedy_actions: Vec<usize>,
    pub iterations: usize,
}

/// Optimal average reward by relative value iteration.
pub fn optimal_gain(mdp: &TabularMdp, tolerance: f64) -> Result<f64> {
    relative_value_iteration(mdp, tolerance, None).map(|s| s.gain)
}

/// Relative value iteration on the aperiodic transform `½P + ½I`, which has the
/// same stationary distributions (and gains) as `P`. Stops when the span of
/// `T h − h` drops below `tolerance`.
pub fn relative_value_iteration(
    mdp: &TabularMdp,
    tolerance: f64,
    initial: Option<&[f64]>,
) -> Result<GainSolution> {
    const TAU: f64 = 0.5;
    let n = mdp.n_states();
    let na = mdp.n_actions();
    let mut h = match initial {
        Some(h0) if h0.len() == n => h0.to_vec(),
        Some(h0) => {
            return Err(Error::LengthMismatch {
                expected: n,
                got: h0.len(),
            })
        }
        None => vec![0.0; n],
    };
    let rewards: Vec<f64> = (0..n * na).map(|i| mdp.reward(i / na, i % na)).collect();
    let mut next = vec![0.0; n];
    let mut greedy = vec![0; n];
    for it in 1..=RVI_MAX_ITERS {
        for s in 0..n {
            let mut best = f64::NEG_INFINITY;
            for a in 0..na {
                let expect: f64 = mdp
                    .transition_row(s, a)
                    .iter()
                    .zip(&h)
                    .map(|(p, v)| p * v)
                    .sum();
                let q = rewards[s * na + a] + TAU * expect + (1.0 - TAU) * h[s];
                if a == 0 || q > best + 1e-15 * best.abs().max(1.0) {
                    best = q;
                    greedy[s] = a;
                }
            }
            next[s] = best;
        }
        let (lo, hi) = next
            .iter()
            .zip(&h)
            .map(|(a, b)| a - b)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| (lo.min(d), hi.max(d)));
        let offset = next[0];
        for (dst, &v) in h.iter_mut().zip(&next) {
            *dst = v - offset;
        }
        if hi - lo < tolerance {
            return Ok(GainSolution {
                gain: 0.5 * (lo + hi),
                bias: h,
                greedy_actions: greedy,
                iterations: it,
            });
        }
    }
    Err(Error::NotConverged {
        what: "relative value iteration",
        iterations: RVI_MAX_ITERS,
    })
}

/// Chain actions.
pub const FORWARD: usize = 0;
pub const BACK: usize = 1;

/// N-Chain: FORWARD advances one state (paying `large` when looping at the
/// last state), BACK returns to state 0 paying `small`; with probability
/// `1 − success` the executed action is the other one.
pub fn build_chain(n_states: usize, success: f64, small: f64, large: f64) -> Result<TabularMdp> {
    if n_states < 2 {
        return Err(Error::InvalidInput("chain needs at least two states".into()));
    }
    if !(success > 0.0 && success <= 1.0) {
        return Err(Error::InvalidInput(format!("success probability {success} not in (0, 1]")));
    }
    let n = n_states;
    let mut transition = vec![0.0; n * 2 * n];
    let mut reward = vec![0.0; n * 2 * n];
    for s in 0..n {
        for intended in [FORWARD, BACK] {
            let base = (s * 2 + intended) * n;
            for (executed, prob) in [(intended, success), (1 - intended, 1.0 - success)] {
                if prob == 0.0 {
                    continue;
                }
                let (next, r) = if executed == FORWARD {
                    if s + 1 < n {
                        (s + 1, 0.0)
                    } else {
                        (s, large)
                    }
                } else {
                    (0, small)
                };
                transition[base + next] += prob;
                reward[base + next] = r;
            }
        }
    }
    let mut restart = vec![0.0; n];
    restart[0] = 1.0;
    TabularMdp::new(n, 2, transition, reward, restart)
}

/// Appendix defaults: 8 states, success 0.9, rewards (2, 10).
pub fn default_chain() -> TabularMdp {
    build_chain(8, 0.9, 2.0, 10.0).expect("default chain parameters are valid")
}

/// Grid moves.
pub const LEFT: usize = 0;
pub const DOWN: usize = 1;
pub const RIGHT: usize = 2;
pub const UP: usize = 3;

fn grid_step(rows: usize, cols: usize, s: usize, dir: usize) -> usize {
    let (r, c) = (s / cols, s % cols);
    let (r, c) = match dir {
        LEFT => (r, c.saturating_sub(1)),
        DOWN => ((r + 1).min(rows - 1), c),
        RIGHT => (r, (c + 1).min(cols - 1)),
        UP => (r.saturating_sub(1), c),
        _ => unreachable!("grid has four moves"),
    };
    r * cols + c
}

pub const CLIFF_ROWS: usize = 4;
pub const CLIFF_COLS: usize = 12;
pub const CLIFF_STEP_REWARD: f64 = -1.0;

/// 4×12 CliffWalking. Start at the bottom-left cell, goal at the bottom-right,
/// cliff in between. Every move pays −1 except entering a cliff cell (`fall`)
/// or the goal (`goal`); any action in a cliff or goal cell returns to the start.
pub fn build_cliffwalking(fall: f64, goal: f64) -> Result<TabularMdp> {
    let (rows, cols) = (CLIFF_ROWS, CLIFF_COLS);
    let n = rows * cols;
    let start = (rows - 1) * cols;
    let goal_cell = n - 1;
    let is_cliff = |s: usize| s > start && s < goal_cell;
    let mut transition = vec![0.0; n * 4 * n];
    let mut reward = vec![0.0; n * 4 * n];
    for s in 0..n {
        for a in 0..4 {
            let base = (s * 4 + a) * n;
            if is_cliff(s) || s == goal_cell {
                transition[base + start] = 1.0;
                reward[base + start] = 0.0;
                continue;
            }
            let next = grid_step(rows, cols, s, a);
            transition[base + next] = 1.0;
            reward[base + next] = if is_cliff(next) {
                fall
            } else if next == goal_cell {
                goal
            } else {
                CLIFF_STEP_REWARD
            };
        }
    }
    let mut restart = vec![0.0; n];
    restart[start] = 1.0;
    TabularMdp::new(n, 4, transition, reward, restart)
}

pub fn default_cliffwalking() -> TabularMdp {
    build_cliffwalking(-10.0, 100.0).expect("default cliffwalking parameters are valid")
}

/// Standard 4×4 FrozenLake layout.
pub const FROZENLAKE_MAP: [&str; 4] = ["SFFF", "FHFH", "FFFH", "HFFG"];

/// 4×4 FrozenLake. The intended move happens with probability `success`, each
/// perpendicular move with `(1 − success)/2`. Entering the goal pays 1; any
/// action in a hole or the goal returns to the start.
pub fn build_frozenlake(success: f64) -> Result<TabularMdp> {
    if !(success > 0.0 && success <= 1.0) {
        return Err(Error::InvalidInput(format!("success probability {success} not in (0, 1]")));
    }
    let (rows, cols) = (4, 4);
    let n = rows * cols;
    let tiles: Vec<u8> = FROZENLAKE_MAP.iter().flat_map(|r| r.bytes()).collect();
    let start = tiles.iter().position(|&t| t == b'S').expect("map has a start");
    let slip = (1.0 - success) / 2.0;
    let mut transition = vec![0.0; n * 4 * n];
    let mut reward = vec![0.0; n * 4 * n];
    for s in 0..n {
        for a in 0..4 {
            let base = (s * 4 + a) * n;
            if tiles[s] == b'H' || tiles[s] == b'G' {
                transition[base + start] = 1.0;
                continue;
            }
            for (dir, prob) in [(a, success), ((a + 3) % 4, slip), ((a + 1) % 4, slip)] {
                if prob == 0.0 {
                    continue;
                }
                let next = grid_step(rows, cols, s, dir);
                transition[base + next] += prob;
                reward[base + next] = if tiles[next] == b'G' { 1.0 } else { 0.0 };
            }
        }
    }
    let mut restart = vec![0.0; n];
    restart[start] = 1.0;
    TabularMdp::new(n, 4, transition, reward, restart)
}

pub fn default_frozenlake() -> TabularMdp {
    build_frozenlake(0.8).expect("default frozenlake parameters are valid")
}
