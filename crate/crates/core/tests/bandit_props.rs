mod common;

use common::{random_distribution, rng};
use epo_core::bandit::{bandit_policy_update, run_bandit_experiment, run_ucb_experiment, BanditConfig, BanditState};
use epo_core::{FiniteDistribution, GeneratorSpec};
use proptest::prelude::*;

const ALPHAS: [f64; 9] = [-20.0, -5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 5.0, 20.0];

fn state_with(policy: Vec<f64>, q: Vec<f64>, eta: f64) -> BanditState {
    let mut s = BanditState::new(q.len(), eta);
    s.policy = FiniteDistribution::new(policy).unwrap();
    s.value_estimates = q;
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn update_is_normalized_and_ratio_ordered(
        a in prop::sample::select(ALPHAS.to_vec()),
        seed in any::<u64>(),
        q in prop::collection::vec(-2.0f64..2.0, 2..12),
        eta in 0.1f64..5.0,
    ) {
        let pi = random_distribution(&mut rng(seed), q.len());
        let state = state_with(pi.clone(), q.clone(), eta);
        let next = bandit_policy_update(&GeneratorSpec::new(a), &state).unwrap();
        let w = next.weights();
        prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        prop_assert!(w.iter().all(|&p| p >= 0.0));
        let mut order: Vec<usize> = (0..q.len()).collect();
        order.sort_by(|&i, &j| q[i].total_cmp(&q[j]));
        for pair in order.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            prop_assert!(w[hi] / pi[hi] >= w[lo] / pi[lo] - 1e-9, "Q {} -> {}, Q {} -> {}", q[lo], w[lo] / pi[lo], q[hi], w[hi] / pi[hi]);
        }
    }

    #[test]
    fn infinite_temperature_freezes_the_policy(
        a in prop::sample::select(ALPHAS.to_vec()),
        seed in any::<u64>(),
        q in prop::collection::vec(-2.0f64..2.0, 2..12),
    ) {
        let pi = random_distribution(&mut rng(seed), q.len());
        let next = bandit_policy_update(&GeneratorSpec::new(a), &state_with(pi.clone(), q, 1e9)).unwrap();
        for (x, y) in next.weights().iter().zip(&pi) {
            prop_assert!((x - y).abs() < 1e-6);
        }
    }

    #[test]
    fn estimates_are_running_means(pulls in prop::collection::vec((0usize..4, -3.0f64..3.0), 0..60)) {
        let mut s = BanditState::new(4, 1.0);
        for &(arm, r) in &pulls {
            s.observe(arm, r);
        }
        for arm in 0..4 {
            let rewards: Vec<f64> = pulls.iter().filter(|p| p.0 == arm).map(|p| p.1).collect();
            prop_assert_eq!(s.pull_counts[arm] as usize, rewards.len());
            let mean = if rewards.is_empty() { 0.0 } else { rewards.iter().sum::<f64>() / rewards.len() as f64 };
            prop_assert!((s.value_estimates[arm] - mean).abs() < 1e-12);
        }
        prop_assert_eq!(s.timestep as usize, pulls.len());
    }
}

fn reference(runs: usize) -> BanditConfig {
    BanditConfig {
        runs,
        seed: 4,
        ..BanditConfig::default()
    }
}

#[test]
fn mean_regret_is_non_decreasing() {
    let rec = run_bandit_experiment(&GeneratorSpec::new(1.0), &reference(20)).unwrap();
    assert_eq!(rec.horizon(), 1000);
    assert!(rec.mean.windows(2).all(|w| w[1] >= w[0]));
    assert!(rec.ci95.iter().all(|&h| h >= 0.0));
}

#[test]
fn ucb_regret_is_sublinear() {
    let rec = run_ucb_experiment(&reference(100)).unwrap();
    for n in [200, 300, 400, 500] {
        let ratio = rec.at(2 * n) / rec.at(n);
        assert!(ratio < 2.0, "C_{}/C_{n} = {ratio}", 2 * n);
    }
}

#[test]
fn learners_share_instances_across_alpha() {
    // with an infinite-ish temperature every α stays uniform, so regret curves coincide
    let config = BanditConfig {
        eta0: 1e12,
        beta: 1.0,
        ..reference(5)
    };
    let a = run_bandit_experiment(&GeneratorSpec::new(-5.0), &config).unwrap();
    let b = run_bandit_experiment(&GeneratorSpec::new(5.0), &config).unwrap();
    assert_eq!(a, b);
}
