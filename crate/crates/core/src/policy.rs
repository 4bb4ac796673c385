//! Primal recovery and policy improvement.
//!
//! The dual solution defines density ratios `w = f*'((A − λ + κ)/η)` between
//! the improved and the behavior state-action occupancy. On a batch they become
//! per-sample weights for a weighted maximum-likelihood fit; for tabular
//! policies that fit is a weighted count normalization per state.

use crate::divergence::GeneratorSpec;
use crate::dual::{advantages, DualProblem, DualSolution};
use crate::error::{Error, Result};
use crate::mdp::{stationary_distribution, TabularMdp, TabularPolicy, TransitionBatch};

/// Per-sample weights `w_t = f*'((Â_t − λ + κ_t)/η)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImprovementWeights(pub Vec<f64>);

impl ImprovementWeights {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }
}

pub fn improvement_weights(
    spec: &GeneratorSpec,
    batch: &TransitionBatch,
    dual: &DualSolution,
) -> Result<ImprovementWeights> {
    let adv = advantages(batch, &dual.value_table)?;
    adv.values()
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let (y, _) = spec.conjugate_argument(a - dual.baseline_lambda, dual.eta);
            spec.f_star_prime(y).map_err(|e| Error::SampleDomain {
                index: i,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(ImprovementWeights)
}

/// Per-sample weights for a batch problem, each sample taking the weight of
/// the term it was merged into: `f*'((A_term − λ + κ)/η)` with the problem's
/// own advantage estimator.
pub fn problem_improvement_weights(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    dual: &DualSolution,
) -> Result<ImprovementWeights> {
    let per_term = problem
        .term_advantages(&dual.value_table)
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            let (y, _) = spec.conjugate_argument(a - dual.baseline_lambda, dual.eta);
            spec.f_star_prime(y).map_err(|e| Error::SampleDomain {
                index: i,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    problem
        .per_sample(&per_term)
        .map(ImprovementWeights)
        .ok_or_else(|| Error::InvalidInput("dual problem was not built from a batch".into()))
}

/// Weighted-ML fit of a tabular policy: `π(a|s) ∝ Σ_{t: s_t=s, a_t=a} w_t`.
///
/// States absent from the batch, or whose samples all carry zero weight, keep
/// their row from `policy0`.
pub fn tabular_policy_update(
    policy0: &TabularPolicy,
    batch: &TransitionBatch,
    weights: &ImprovementWeights,
) -> Result<TabularPolicy> {
    if weights.0.len() != batch.len() {
        return Err(Error::LengthMismatch {
            expected: batch.len(),
            got: weights.0.len(),
        });
    }
    let (ns, na) = (policy0.n_states(), policy0.n_actions());
    let mut mass = vec![0.0; ns * na];
    for (i, (t, &w)) in batch.tuples.iter().zip(&weights.0).enumerate() {
        if t.state >= ns || t.action >= na {
            return Err(Error::InvalidInput(format!("sample {i} is outside the policy table")));
        }
        if !(w >= 0.0 && w.is_finite()) {
            return Err(Error::InvalidInput(format!("sample {i} has weight {w}")));
        }
        mass[t.state * na + t.action] += w;
    }
    let mut policy = policy0.clone();
    for s in 0..ns {
        let row = &mass[s * na..(s + 1) * na];
        if row.iter().sum::<f64>() > 0.0 {
            policy.set_row_normalized(s, row);
        }
    }
    Ok(policy)
}

/// Tabular improvement `π(a|s) ∝ π₀(a|s) w̄(s,a)`, where `w̄(s,a)` is the
/// occupancy-weighted mean density ratio of the problem's terms for `(s, a)`.
///
/// This is the primal policy `ρ_π(s,a)/Σ_b ρ_π(s,b)` with `ρ_π = ρ_π₀ w̄`, using
/// the known behavior probabilities instead of empirical action counts, so an
/// action keeps positive probability unless its own ratio is zero. Actions
/// with no terms in a visited state get the neutral ratio 1; unvisited states
/// and rows whose mass vanishes keep `π₀`.
pub fn reweighted_policy_update(
    policy0: &TabularPolicy,
    problem: &DualProblem,
    spec: &GeneratorSpec,
    dual: &DualSolution,
) -> Result<TabularPolicy> {
    let (ns, na) = (policy0.n_states(), policy0.n_actions());
    if problem.n_states() != ns {
        return Err(Error::LengthMismatch {
            expected: ns,
            got: problem.n_states(),
        });
    }
    let mut mass = vec![0.0; ns * na];
    let mut weighted = vec![0.0; ns * na];
    let adv = problem.term_advantages(&dual.value_table);
    for (i, (term, &a)) in problem.terms().iter().zip(&adv).enumerate() {
        if term.action >= na {
            return Err(Error::InvalidInput(format!("term {i} is outside the policy table")));
        }
        let (y, _) = spec.conjugate_argument(a - dual.baseline_lambda, dual.eta);
        let w = spec.f_star_prime(y).map_err(|e| Error::SampleDomain {
            index: i,
            source: Box::new(e),
        })?;
        let cell = term.state * na + term.action;
        mass[cell] += term.weight;
        weighted[cell] += term.weight * w;
    }
    let mut policy = policy0.clone();
    let mut row = vec![0.0; na];
    for s in 0..ns {
        let cells = s * na..(s + 1) * na;
        if mass[cells.clone()].iter().all(|&m| m == 0.0) {
            continue;
        }
        for (a, c) in cells.enumerate() {
            let ratio = if mass[c] > 0.0 { weighted[c] / mass[c] } else { 1.0 };
            row[a] = policy0.prob(s, a) * ratio;
        }
        if row.iter().sum::<f64>() > 0.0 {
            policy.set_row_normalized(s, &row);
        }
    }
    Ok(policy)
}

/// Improved occupancy `ρ_π(s,a) = ρ_π₀(s,a) f*'(y(s,a))` on the full grid,
/// with exact model expectations in the advantage. Flattened as `s·A + a`.
pub fn exact_primal_occupancy(
    mdp: &TabularMdp,
    policy0: &TabularPolicy,
    spec: &GeneratorSpec,
    dual: &DualSolution,
) -> Result<Vec<f64>> {
    if dual.value_table.len() != mdp.n_states() {
        return Err(Error::LengthMismatch {
            expected: mdp.n_states(),
            got: dual.value_table.len(),
        });
    }
    let rho0 = stationary_distribution(mdp, policy0)?;
    let na = mdp.n_actions();
    let v = &dual.value_table;
    rho0.weights()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            if q == 0.0 {
                return Ok(0.0);
            }
            let (s, a) = (i / na, i % na);
            let future: f64 = mdp.transition_row(s, a).iter().zip(v).map(|(p, x)| p * x).sum();
            let adv = mdp.reward(s, a) + future - v[s];
            let (y, _) = spec.conjugate_argument(adv - dual.baseline_lambda, dual.eta);
            Ok(q * spec.f_star_prime(y)?)
        })
        .collect()
}

/// `π(a|s) = ρ_π(s,a) / Σ_b ρ_π(s,b)` from the exact primal occupancy.
pub fn exact_primal_policy(
    mdp: &TabularMdp,
    policy0: &TabularPolicy,
    spec: &GeneratorSpec,
    dual: &DualSolution,
) -> Result<TabularPolicy> {
    let rho = exact_primal_occupancy(mdp, policy0, spec, dual)?;
    let na = mdp.n_actions();
    let mut policy = policy0.clone();
    for s in 0..mdp.n_states() {
        let row = &rho[s * na..(s + 1) * na];
        if row.iter().sum::<f64>() <= 0.0 {
            return Err(Error::ZeroMass { state: s });
        }
        policy.set_row_normalized(s, row);
    }
    Ok(policy)
}

/// Penalized primal objective `Σ ρ R − η Σ ρ₀ f(ρ/ρ₀)` at the occupancy implied
/// by `dual` on an exact-model problem.
pub fn primal_value(spec: &GeneratorSpec, problem: &DualProblem, dual: &DualSolution) -> Result<f64> {
    let adv = problem.term_advantages(&dual.value_table);
    let mut reward = 0.0;
    let mut penalty = 0.0;
    for (term, &a) in problem.terms().iter().zip(&adv) {
        let (y, _) = spec.conjugate_argument(a - dual.baseline_lambda, dual.eta);
        let w = spec.f_star_prime(y)?;
        reward += term.weight * w * term.reward;
        penalty += term.weight * if w > 0.0 { spec.f(w)? } else { spec.f_at_zero() };
    }
    Ok(reward - dual.eta * penalty)
}

/// Pearson weights `(Â_t − Ê[Â] + η)/η`.
///
/// Only meaningful for an α = 2 dual without clipping; a clipped sample is an
/// error. The result is cross-checked against [`improvement_weights`].
pub fn pearson_equivalence_weights(batch: &TransitionBatch, dual: &DualSolution) -> Result<Vec<f64>> {
    let spec = GeneratorSpec::pearson();
    let adv = advantages(batch, &dual.value_table)?;
    if adv.values().is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    if let Some(index) = adv
        .values()
        .iter()
        .position(|&a| spec.kappa_star(a, dual.baseline_lambda, dual.eta) > 0.0)
    {
        return Err(Error::PearsonClipped { index });
    }
    let mean = adv.mean();
    let eta = dual.eta;
    let weights: Vec<f64> = adv.values().iter().map(|a| (a - mean + eta) / eta).collect();
    let generic = improvement_weights(&spec, batch, dual)?;
    let scale = 1.0 + mean.abs() / eta;
    if let Some(i) = weights
        .iter()
        .zip(generic.values())
        .position(|(a, b)| (a - b).abs() > 1e-9 * scale)
    {
        return Err(Error::InvalidInput(format!(
            "dual baseline {} is not the Pearson optimum {mean} (sample {i})",
            dual.baseline_lambda
        )));
    }
    Ok(weights)
}
