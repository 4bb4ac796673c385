#![allow(dead_code)]

use epo_core::mdp::{Transition, TransitionBatch};
use epo_core::DualSolution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Single-state batch whose advantages (with `V = 0`) are the rewards.
pub fn reward_batch(rewards: &[f64]) -> TransitionBatch {
    TransitionBatch::new(
        rewards
            .iter()
            .enumerate()
            .map(|(i, &r)| Transition {
                state: 0,
                action: i % 3,
                reward: r,
                next_state: 0,
            })
            .collect(),
        "fixture",
    )
}

/// Random batch over `n_states` states and 2 actions with uniform rewards in `[lo, hi)`.
pub fn random_batch(rng: &mut impl Rng, n: usize, n_states: usize, lo: f64, hi: f64) -> TransitionBatch {
    TransitionBatch::new(
        (0..n)
            .map(|_| Transition {
                state: rng.random_range(0..n_states),
                action: rng.random_range(0..2),
                reward: rng.random_range(lo..hi),
                next_state: rng.random_range(0..n_states),
            })
            .collect(),
        "fixture",
    )
}

/// Random strictly positive distribution over `n` outcomes.
pub fn random_distribution(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let z: f64 = w.iter().sum();
    w.into_iter().map(|x| x / z).collect()
}

/// Starting point carrying a given value table.
pub fn init_with(values: Vec<f64>, eta: f64) -> DualSolution {
    DualSolution {
        value_table: values,
        baseline_lambda: 0.0,
        kappa: vec![],
        eta,
        dual_value: 0.0,
        converged: false,
        iterations: 0,
    }
}

/// Random ergodic model: every transition probability is positive.
pub fn random_mdp(rng: &mut impl Rng, n_states: usize, n_actions: usize) -> epo_core::TabularMdp {
    let mut transition = Vec::new();
    for _ in 0..n_states * n_actions {
        transition.extend(random_distribution(rng, n_states));
    }
    let rewards: Vec<f64> = (0..n_states * n_actions).map(|_| rng.random_range(0.0..1.0)).collect();
    epo_core::TabularMdp::with_state_action_rewards(
        n_states,
        n_actions,
        transition,
        &rewards,
        vec![1.0 / n_states as f64; n_states],
    )
    .unwrap()
}
