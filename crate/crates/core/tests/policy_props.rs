mod common;

use common::{random_distribution, random_mdp, reward_batch, rng};
use epo_core::dual::solve_dual_problem;
use epo_core::mdp::sample_batch;
use epo_core::policy::primal_value;
use epo_core::{
    exact_primal_policy, improvement_weights, pearson_equivalence_weights, reweighted_policy_update, solve_dual,
    tabular_policy_update, DualOptions, DualProblem, GeneratorSpec, TabularMdp, TabularPolicy,
};
use proptest::prelude::*;

const ALPHAS: [f64; 8] = [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0, 10.0];

fn alpha() -> impl Strategy<Value = f64> {
    prop::sample::select(ALPHAS.to_vec())
}

/// One state, three actions with rewards 1, 0, −1.
fn three_arm() -> TabularMdp {
    TabularMdp::with_state_action_rewards(1, 3, vec![1.0; 3], &[1.0, 0.0, -1.0], vec![1.0]).unwrap()
}

fn exact_update(mdp: &TabularMdp, pi0: &TabularPolicy, spec: &GeneratorSpec, eta: f64) -> TabularPolicy {
    let problem = DualProblem::from_model(mdp, pi0).unwrap();
    let dual = solve_dual_problem(spec, &problem, eta, None, &DualOptions::default()).unwrap();
    exact_primal_policy(mdp, pi0, spec, &dual).unwrap()
}

fn max_deviation(a: &TabularPolicy, b: &TabularPolicy) -> f64 {
    a.probs().iter().zip(b.probs()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn duality_gap_and_normalization(a in prop::sample::select(vec![0.0, 0.5, 1.0, 2.0]), seed in any::<u64>(), eta in 0.3f64..3.0) {
        let mut r = rng(seed);
        let mdp = random_mdp(&mut r, 3, 2);
        let rows: Vec<Vec<f64>> = (0..3).map(|_| random_distribution(&mut r, 2)).collect();
        let pi0 = TabularPolicy::from_rows(&rows).unwrap();
        let spec = GeneratorSpec::new(a);
        let problem = DualProblem::from_model(&mdp, &pi0).unwrap();
        let dual = solve_dual_problem(&spec, &problem, eta, None, &DualOptions::default()).unwrap();
        let primal = primal_value(&spec, &problem, &dual).unwrap();
        prop_assert!((primal - dual.dual_value).abs() <= 1e-4, "gap {}", primal - dual.dual_value);
        // occupancy ratios average to one
        let mean_w: f64 = problem
            .terms()
            .iter()
            .zip(problem.term_advantages(&dual.value_table))
            .map(|(t, adv)| {
                let (y, _) = spec.conjugate_argument(adv - dual.baseline_lambda, eta);
                t.weight * spec.f_star_prime(y).unwrap()
            })
            .sum();
        prop_assert!((mean_w - 1.0).abs() <= 1e-4);
        let pi = exact_primal_policy(&mdp, &pi0, &spec, &dual).unwrap();
        for s in 0..3 {
            prop_assert!((pi.row(s).iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn weights_are_monotone_in_advantage(a in alpha(), rewards in prop::collection::vec(-2.0f64..2.0, 3..40), eta in 0.2f64..4.0) {
        let spec = GeneratorSpec::new(a);
        let batch = reward_batch(&rewards);
        let dual = solve_dual(&spec, &batch, 1, eta, None, &DualOptions::default()).unwrap();
        let w = improvement_weights(&spec, &batch, &dual).unwrap();
        let mut pairs: Vec<(f64, f64)> = rewards.iter().copied().zip(w.values().iter().copied()).collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        for win in pairs.windows(2) {
            prop_assert!(win[1].1 >= win[0].1 - 1e-12, "{:?}", win);
        }
        prop_assert!(w.values().iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn support_depends_on_alpha(a in alpha(), eta in 0.02f64..0.2) {
        let pi = exact_update(&three_arm(), &TabularPolicy::uniform(1, 3), &GeneratorSpec::new(a), eta);
        if a > 1.0 {
            prop_assert_eq!(pi.prob(0, 2), 0.0);
        } else {
            prop_assert!(pi.row(0).iter().all(|&p| p > 0.0));
        }
        prop_assert!(pi.prob(0, 0) >= pi.prob(0, 1) && pi.prob(0, 1) >= pi.prob(0, 2));
    }
}

#[test]
fn worked_single_state_updates() {
    let mdp = three_arm();
    let pi0 = TabularPolicy::uniform(1, 3);
    let pearson = exact_update(&mdp, &pi0, &GeneratorSpec::pearson(), 10.0);
    for (p, want) in pearson.row(0).iter().zip([11.0 / 30.0, 10.0 / 30.0, 9.0 / 30.0]) {
        assert!((p - want).abs() < 1e-9, "{p} vs {want}");
    }
    let pi0 = TabularPolicy::from_rows(&[vec![0.2, 0.3, 0.5]]).unwrap();
    let eta = 0.7;
    let kl = exact_update(&mdp, &pi0, &GeneratorSpec::kl(), eta);
    let tilt: Vec<f64> = [1.0, 0.0, -1.0].iter().zip(pi0.row(0)).map(|(q, p)| p * f64::exp(q / eta)).collect();
    let z: f64 = tilt.iter().sum();
    for (p, t) in kl.row(0).iter().zip(&tilt) {
        assert!((p - t / z).abs() < 1e-9);
    }
    for a in [0.0, 0.5, 2.0, 10.0] {
        let frozen = exact_update(&mdp, &pi0, &GeneratorSpec::new(a), 1e7);
        assert!(max_deviation(&frozen, &pi0) < 1e-6, "alpha {a}");
    }
}

#[test]
fn sampled_updates_converge_to_the_exact_policy() {
    let mdp = three_arm();
    let pi0 = TabularPolicy::uniform(1, 3);
    let batch = sample_batch(&mdp, &pi0, 100_000, 17).unwrap();
    for a in [0.0, 1.0, 2.0, 4.0] {
        let spec = GeneratorSpec::new(a);
        let exact = exact_update(&mdp, &pi0, &spec, 1.0);
        let dual = solve_dual(&spec, &batch, 1, 1.0, None, &DualOptions::default()).unwrap();
        let weights = improvement_weights(&spec, &batch, &dual).unwrap();
        let counts = tabular_policy_update(&pi0, &batch, &weights).unwrap();
        assert!(max_deviation(&counts, &exact) < 0.02, "counts, alpha {a}");
        let problem = DualProblem::from_batch_pooled(&batch, 1).unwrap();
        let pooled = solve_dual_problem(&spec, &problem, 1.0, None, &DualOptions::default()).unwrap();
        let reweighted = reweighted_policy_update(&pi0, &problem, &spec, &pooled).unwrap();
        assert!(max_deviation(&reweighted, &exact) < 0.02, "reweighted, alpha {a}");
    }
}

#[test]
fn reweighted_update_on_a_multistate_model_batch() {
    let mut r = rng(8);
    let mdp = random_mdp(&mut r, 4, 3);
    let pi0 = TabularPolicy::uniform(4, 3);
    let batch = sample_batch(&mdp, &pi0, 200_000, 2).unwrap();
    let spec = GeneratorSpec::new(0.5);
    let exact = exact_update(&mdp, &pi0, &spec, 0.5);
    let problem = DualProblem::from_batch_pooled(&batch, 4).unwrap();
    let dual = solve_dual_problem(&spec, &problem, 0.5, None, &DualOptions::default()).unwrap();
    let pi = reweighted_policy_update(&pi0, &problem, &spec, &dual).unwrap();
    assert!(max_deviation(&pi, &exact) < 0.02, "{}", max_deviation(&pi, &exact));
}

#[test]
fn pearson_weights_at_eta_equal_to_mean_are_proportional() {
    let batch = reward_batch(&[2.0, 4.0]);
    let dual = solve_dual(&GeneratorSpec::pearson(), &batch, 1, 3.0, None, &DualOptions::default()).unwrap();
    let w = pearson_equivalence_weights(&batch, &dual).unwrap();
    assert!((w[1] / w[0] - 2.0).abs() < 1e-12, "{w:?}");
}
