//! Policy evaluation through the dual of the divergence-penalized problem.
//!
//! For a behavior occupancy `q` over terms `t`, the dual objective is
//!
//! ```text
//! g(V, λ) = η Σ_t q_t f*((A_t − λ + κ_t)/η) + λ,     A_t = r_t + E[V(s'_t)] − V(s_t)
//! ```
//!
//! with the slacks κ eliminated in closed form. Gradients are
//! `∂g/∂λ = 1 − Σ q_t w_t` and `∂g/∂V(s) = Σ_t q_t w_t (P_t(s) − 1[s_t = s])`
//! where `w_t = f*'(y_t)` are the primal density ratios.
//!
//! Two sources of terms are supported: a sampled batch, where `E[V(s')]` is
//! replaced by the single observed successor, and an exact model, where the
//! terms are all state-action cells weighted by the stationary occupancy of the
//! behavior policy.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use std::fmt::Write as _;

use crate::divergence::GeneratorSpec;
use crate::error::{Error, Result};
use crate::mdp::{stationary_distribution, TabularMdp, TabularPolicy, TransitionBatch};

/// One weighted summand of the dual.
#[derive(Debug, Clone, PartialEq)]
pub struct DualTerm {
    pub weight: f64,
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    /// Successor distribution `(s', P(s'))`.
    pub next: Vec<(usize, f64)>,
}

/// The dual objective's data: weighted terms over a value table of `n_states` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct DualProblem {
    n_states: usize,
    terms: Vec<DualTerm>,
    /// For batch problems, the term each sample was merged into.
    sample_terms: Option<Vec<usize>>,
}

impl DualProblem {
    /// Sample-based problem. Identical tuples are merged into one term whose
    /// weight is their empirical frequency.
    pub fn from_batch(batch: &TransitionBatch, n_states: usize) -> Result<Self> {
        if batch.is_empty() {
            return Err(Error::InvalidInput("empty batch".into()));
        }
        let n = batch.len() as f64;
        let mut index: BTreeMap<(usize, usize, u64, usize), usize> = BTreeMap::new();
        let mut terms: Vec<DualTerm> = Vec::new();
        let mut sample_terms = Vec::with_capacity(batch.len());
        for (i, t) in batch.tuples.iter().enumerate() {
            if t.state >= n_states || t.next_state >= n_states {
                return Err(Error::InvalidInput(format!(
                    "sample {i} references a state outside 0..{n_states}"
                )));
            }
            if !t.reward.is_finite() {
                return Err(Error::InvalidInput(format!("sample {i} has a non-finite reward")));
            }
            let key = (t.state, t.action, t.reward.to_bits(), t.next_state);
            let id = *index.entry(key).or_insert_with(|| {
                terms.push(DualTerm {
                    weight: 0.0,
                    state: t.state,
                    action: t.action,
                    reward: t.reward,
                    next: vec![(t.next_state, 1.0)],
                });
                terms.len() - 1
            });
            terms[id].weight += 1.0 / n;
            sample_terms.push(id);
        }
        Ok(Self {
            n_states,
            terms,
            sample_terms: Some(sample_terms),
        })
    }

    /// Tabular sample-based problem: the samples of each visited `(s, a)` are
    /// pooled into one term with their empirical frequency, mean reward and
    /// empirical successor distribution. Unlike [`from_batch`](Self::from_batch),
    /// the next-state expectation is estimated from every visit of the pair
    /// rather than from each sample alone.
    pub fn from_batch_pooled(batch: &TransitionBatch, n_states: usize) -> Result<Self> {
        let single = Self::from_batch(batch, n_states)?;
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut pooled: Vec<(DualTerm, BTreeMap<usize, f64>)> = Vec::new();
        let mut remap = Vec::with_capacity(single.terms.len());
        for t in &single.terms {
            let id = *index.entry((t.state, t.action)).or_insert_with(|| {
                pooled.push((
                    DualTerm {
                        weight: 0.0,
                        state: t.state,
                        action: t.action,
                        reward: 0.0,
                        next: Vec::new(),
                    },
                    BTreeMap::new(),
                ));
                pooled.len() - 1
            });
            let (term, next) = &mut pooled[id];
            term.weight += t.weight;
            term.reward += t.weight * t.reward;
            for &(s, p) in &t.next {
                *next.entry(s).or_insert(0.0) += t.weight * p;
            }
            remap.push(id);
        }
        let terms = pooled
            .into_iter()
            .map(|(mut term, next)| {
                term.reward /= term.weight;
                term.next = next.into_iter().map(|(s, m)| (s, m / term.weight)).collect();
                term
            })
            .collect();
        let sample_terms = single
            .sample_terms
            .map(|ids| ids.into_iter().map(|i| remap[i]).collect());
        Ok(Self {
            n_states,
            terms,
            sample_terms,
        })
    }

    /// Exact-expectation problem: one term per `(s, a)` with positive
    /// stationary occupancy under `policy0`.
    pub fn from_model(mdp: &TabularMdp, policy0: &TabularPolicy) -> Result<Self> {
        let rho = stationary_distribution(mdp, policy0)?;
        let na = mdp.n_actions();
        let terms = rho
            .weights()
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| {
                let (s, a) = (i / na, i % na);
                DualTerm {
                    weight: w,
                    state: s,
                    action: a,
                    reward: mdp.reward(s, a),
                    next: mdp
                        .transition_row(s, a)
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| p > 0.0)
                        .map(|(j, &p)| (j, p))
                        .collect(),
                }
            })
            .collect();
        Ok(Self {
            n_states: mdp.n_states(),
            terms,
            sample_terms: None,
        })
    }

    /// Stateless problem: one term per outcome with weight `q[i]` and advantage
    /// `advantages[i]`. The value table is empty.
    pub fn from_advantages(weights: &[f64], advantages: &[f64]) -> Result<Self> {
        if weights.len() != advantages.len() {
            return Err(Error::LengthMismatch {
                expected: weights.len(),
                got: advantages.len(),
            });
        }
        let terms = weights
            .iter()
            .zip(advantages)
            .enumerate()
            .filter(|(_, (&w, _))| w > 0.0)
            .map(|(i, (&w, &a))| DualTerm {
                weight: w,
                state: 0,
                action: i,
                reward: a,
                next: vec![(0, 1.0)],
            })
            .collect();
        Ok(Self {
            n_states: 1,
            terms,
            sample_terms: None,
        })
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn terms(&self) -> &[DualTerm] {
        &self.terms
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }

    /// `A_t = r_t + Σ P_t(s') V(s') − V(s_t)` for every term.
    pub fn term_advantages(&self, values: &[f64]) -> Vec<f64> {
        self.terms
            .iter()
            .map(|t| {
                let future: f64 = t.next.iter().map(|&(s, p)| p * values[s]).sum();
                t.reward + future - values[t.state]
            })
            .collect()
    }

    /// Expands per-term values to per-sample values (batch problems only).
    pub fn per_sample(&self, per_term: &[f64]) -> Option<Vec<f64>> {
        self.sample_terms
            .as_ref()
            .map(|ids| ids.iter().map(|&i| per_term[i]).collect())
    }
}

/// Per-sample advantage estimates `Â_t = r_t + V(s'_t) − V(s_t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdvantageEstimate(pub Vec<f64>);

impl AdvantageEstimate {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn mean(&self) -> f64 {
        self.0.iter().sum::<f64>() / self.0.len() as f64
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

pub fn advantages(batch: &TransitionBatch, value_table: &[f64]) -> Result<AdvantageEstimate> {
    batch
        .tuples
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let (Some(v), Some(v_next)) = (value_table.get(t.state), value_table.get(t.next_state)) else {
                return Err(Error::InvalidInput(format!(
                    "sample {i} references a state outside the value table"
                )));
            };
            Ok(t.reward + v_next - v)
        })
        .collect::<Result<Vec<_>>>()
        .map(AdvantageEstimate)
}

/// Exponentially decayed temperature `η_i = η₀ aⁱ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemperatureSchedule {
    pub eta0: f64,
    pub decay: f64,
}

impl TemperatureSchedule {
    pub fn new(eta0: f64, decay: f64) -> Result<Self> {
        if !(eta0 > 0.0 && eta0.is_finite()) {
            return Err(Error::InvalidInput(format!("eta0 = {eta0} must be positive")));
        }
        if !(decay > 0.0 && decay <= 1.0) {
            return Err(Error::InvalidInput(format!("decay = {decay} not in (0, 1]")));
        }
        Ok(Self { eta0, decay })
    }

    /// `η₀ aⁱ`, floored at the smallest positive normal so it never underflows to 0.
    pub fn eta(&self, iteration: usize) -> f64 {
        let exponent = i32::try_from(iteration).unwrap_or(i32::MAX);
        (self.eta0 * self.decay.powi(exponent)).max(f64::MIN_POSITIVE)
    }
}

/// Solver settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualOptions {
    /// Stop when the gradient infinity-norm falls below this.
    pub tol: f64,
    pub max_iters: usize,
    /// Optimize λ only, keeping the supplied value table.
    pub freeze_values: bool,
}

impl Default for DualOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iters: 5000,
            freeze_values: false,
        }
    }
}

/// Optimal dual variables for one temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub value_table: Vec<f64>,
    pub baseline_lambda: f64,
    /// Slack per sample (batch problems) or per term (model problems).
    pub kappa: Vec<f64>,
    pub eta: f64,
    pub dual_value: f64,
    pub converged: bool,
    pub iterations: usize,
}

impl DualSolution {
    /// Plain-text report.
    pub fn to_report(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "eta {}", self.eta);
        let _ = writeln!(out, "lambda {}", self.baseline_lambda);
        let _ = writeln!(out, "dual_value {}", self.dual_value);
        let _ = writeln!(out, "iterations {}", self.iterations);
        let _ = writeln!(out, "converged {}", self.converged);
        for (s, v) in self.value_table.iter().enumerate() {
            let _ = writeln!(out, "V[{s}] {v}");
        }
        out
    }
}

/// Objective and gradient at one point; `None` if some argument leaves `dom f*`.
struct Evaluation {
    value: f64,
    grad_values: Vec<f64>,
    grad_lambda: f64,
}

fn evaluate(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    values: &[f64],
    lambda: f64,
    eta: f64,
) -> Option<Evaluation> {
    let adv = problem.term_advantages(values);
    let mut total = 0.0;
    let mut mass = 0.0;
    let mut grad_values = vec![0.0; problem.n_states];
    for (term, &a) in problem.terms.iter().zip(&adv) {
        let (y, _) = spec.conjugate_argument(a - lambda, eta);
        let fs = spec.f_star(y).ok()?;
        let w = spec.f_star_prime(y).ok()?;
        if !fs.is_finite() || !w.is_finite() {
            return None;
        }
        total += term.weight * fs;
        let qw = term.weight * w;
        mass += qw;
        for &(s, p) in &term.next {
            grad_values[s] += qw * p;
        }
        grad_values[term.state] -= qw;
    }
    let value = eta * total + lambda;
    value.is_finite().then_some(Evaluation {
        value,
        grad_values,
        grad_lambda: problem.total_weight() - mass,
    })
}

/// `g(V, λ)` for a batch at temperature `η`, κ eliminated in closed form.
pub fn dual_objective(
    spec: &GeneratorSpec,
    batch: &TransitionBatch,
    value_table: &[f64],
    lambda: f64,
    eta: f64,
) -> Result<f64> {
    check_eta(eta)?;
    let adv = advantages(batch, value_table)?;
    if adv.0.is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    let mut total = 0.0;
    for (i, &a) in adv.0.iter().enumerate() {
        let (y, _) = spec.conjugate_argument(a - lambda, eta);
        total += spec.f_star(y).map_err(|e| Error::SampleDomain {
            index: i,
            source: Box::new(e),
        })?;
    }
    Ok(eta * total / adv.0.len() as f64 + lambda)
}

fn check_eta(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("temperature eta = {eta} must be positive")))
    }
}

/// Minimizer over λ of `η Σ q_t f*((A_t − λ + κ_t)/η) + λ` for fixed advantages.
///
/// Solves the normalization condition `Σ q_t f*'(y_t) = Σ q_t` by bisection.
/// The left side is non-increasing in λ and equals at least `Σ q` at
/// `λ = min A` (all `y ≥ 0`) and at most `Σ q` at `λ = max A`; points outside
/// `dom f*` count as `+∞`.
pub fn optimal_baseline(
    spec: &GeneratorSpec,
    weights: &[f64],
    advantages: &[f64],
    eta: f64,
) -> Result<f64> {
    check_eta(eta)?;
    if weights.len() != advantages.len() {
        return Err(Error::LengthMismatch {
            expected: weights.len(),
            got: advantages.len(),
        });
    }
    let active: Vec<(f64, f64)> = weights
        .iter()
        .zip(advantages)
        .filter(|(&w, _)| w > 0.0)
        .map(|(&w, &a)| (w, a))
        .collect();
    if active.is_empty() {
        return Err(Error::InvalidInput("no positive weights".into()));
    }
    let total: f64 = active.iter().map(|(w, _)| w).sum();
    let excess = |lambda: f64| -> f64 {
        let mut mass = 0.0;
        for &(w, a) in &active {
            let (y, _) = spec.conjugate_argument(a - lambda, eta);
            match spec.f_star_prime(y) {
                Ok(v) if v.is_finite() => mass += w * v,
                _ => return f64::INFINITY,
            }
        }
        mass - total
    };
    let (min_a, max_a) = active
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, a)| (lo.min(a), hi.max(a)));
    let mut lo = min_a;
    let mut hi = max_a;
    if excess(hi) > 0.0 {
        return Err(Error::Bracket { lo, hi });
    }
    if lo == hi {
        return Ok(hi);
    }
    let mut h_lo = excess(lo);
    if h_lo < 0.0 {
        return Err(Error::Bracket { lo, hi });
    }
    for _ in 0..4096 {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let h = excess(mid);
        if h > 0.0 {
            lo = mid;
            h_lo = h;
        } else if h < 0.0 {
            hi = mid;
        } else {
            return Ok(mid);
        }
    }
    let h_hi = excess(hi);
    Ok(if h_lo.is_finite() && h_lo.abs() < h_hi.abs() { lo } else { hi })
}

/// Newton direction `−H⁻¹∇g` over `(V, λ)` (or λ alone when frozen), with
/// `H = η⁻¹ Σ q f*''(y) d dᵀ`, `d = ∂A/∂(V, λ)`. Clipped terms contribute
/// nothing. A small ridge handles the constant-shift null direction of `V`
/// and unvisited states.
fn newton_direction(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    values: &[f64],
    lambda: f64,
    eta: f64,
    current: &Evaluation,
    frozen: bool,
) -> Option<(Vec<f64>, f64)> {
    let n = problem.n_states;
    let m = if frozen { 1 } else { n + 1 };
    let li = m - 1;
    let mut h = DMatrix::<f64>::zeros(m, m);
    let adv = problem.term_advantages(values);
    let mut d = vec![0.0; m];
    for (term, &a) in problem.terms.iter().zip(&adv) {
        let (y, kappa) = spec.conjugate_argument(a - lambda, eta);
        if kappa > 0.0 {
            continue;
        }
        let c = term.weight * spec.f_star_second(y).ok()? / eta;
        if !c.is_finite() {
            return None;
        }
        if c == 0.0 {
            continue;
        }
        d.iter_mut().for_each(|x| *x = 0.0);
        d[li] = -1.0;
        if !frozen {
            for &(s, p) in &term.next {
                d[s] += p;
            }
            d[term.state] -= 1.0;
        }
        for i in 0..m {
            if d[i] == 0.0 {
                continue;
            }
            for j in 0..m {
                h[(i, j)] += c * d[i] * d[j];
            }
        }
    }
    let scale = (0..m).map(|i| h[(i, i)]).fold(0.0, f64::max);
    if !(scale > 0.0 && scale.is_finite()) {
        return None;
    }
    for i in 0..m {
        h[(i, i)] += 1e-10 * scale;
    }
    let mut g = DVector::<f64>::zeros(m);
    g[li] = current.grad_lambda;
    if !frozen {
        for s in 0..n {
            g[s] = current.grad_values[s];
        }
    }
    let step = h.cholesky()?.solve(&(-g));
    if step.iter().any(|x| !x.is_finite()) {
        return None;
    }
    let dv = if frozen { vec![0.0; n] } else { step.rows(0, n).iter().copied().collect() };
    Some((dv, step[li]))
}

/// Damped Newton iterations over `(V, λ)` with Armijo backtracking, falling
/// back to gradient steps (Barzilai–Borwein trial length), followed by an
/// exact λ solve for the final value table.
pub fn solve_dual_problem(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    eta: f64,
    init: Option<&DualSolution>,
    opts: &DualOptions,
) -> Result<DualSolution> {
    check_eta(eta)?;
    if problem.terms.is_empty() {
        return Err(Error::InvalidInput("dual problem has no terms".into()));
    }
    let n = problem.n_states;
    let mut values = match init {
        Some(sol) if sol.value_table.len() == n => sol.value_table.clone(),
        Some(sol) => {
            return Err(Error::LengthMismatch {
                expected: n,
                got: sol.value_table.len(),
            })
        }
        None => vec![0.0; n],
    };
    let weights: Vec<f64> = problem.terms.iter().map(|t| t.weight).collect();
    let mut lambda = optimal_baseline(spec, &weights, &problem.term_advantages(&values), eta)?;

    let mut current = evaluate(spec, problem, &values, lambda, eta).ok_or(Error::Diverged {
        value: f64::NAN,
        iteration: 0,
    })?;
    let grad_norm = |e: &Evaluation, frozen: bool| -> f64 {
        let gv = if frozen {
            0.0
        } else {
            e.grad_values.iter().fold(0.0_f64, |m, g| m.max(g.abs()))
        };
        gv.max(e.grad_lambda.abs())
    };

    const ARMIJO: f64 = 1e-4;
    let mut step = eta;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < opts.max_iters {
        if grad_norm(&current, opts.freeze_values) < opts.tol {
            converged = true;
            break;
        }
        iterations += 1;
        let gv: Vec<f64> = if opts.freeze_values {
            vec![0.0; n]
        } else {
            current.grad_values.clone()
        };

        // Damped Newton step first; gradient step with a Barzilai–Borwein
        // trial length when the Newton direction is unavailable or stalls.
        let newton = newton_direction(spec, problem, &values, lambda, eta, &current, opts.freeze_values)
            .and_then(|(dv, dl)| {
                let slope: f64 = gv.iter().zip(&dv).map(|(g, d)| g * d).sum::<f64>() + current.grad_lambda * dl;
                if slope.is_nan() || slope >= 0.0 {
                    return None;
                }
                let mut t = 1.0;
                for _ in 0..60 {
                    let trial_values: Vec<f64> = values.iter().zip(&dv).map(|(v, d)| v + t * d).collect();
                    let trial_lambda = lambda + t * dl;
                    if let Some(e) = evaluate(spec, problem, &trial_values, trial_lambda, eta) {
                        if e.value <= current.value + ARMIJO * t * slope {
                            return Some((trial_values, trial_lambda, e));
                        }
                    }
                    t *= 0.5;
                }
                None
            });

        let accepted = newton.or_else(|| {
            let sq = gv.iter().map(|g| g * g).sum::<f64>() + current.grad_lambda * current.grad_lambda;
            let mut t = step;
            for _ in 0..200 {
                let trial_values: Vec<f64> = values.iter().zip(&gv).map(|(v, g)| v - t * g).collect();
                let trial_lambda = lambda - t * current.grad_lambda;
                if let Some(e) = evaluate(spec, problem, &trial_values, trial_lambda, eta) {
                    if e.value <= current.value - ARMIJO * t * sq {
                        return Some((trial_values, trial_lambda, e));
                    }
                }
                t *= 0.5;
            }
            None
        });
        let Some((new_values, new_lambda, next)) = accepted else {
            // no decrease representable at this precision
            break;
        };
        if !next.value.is_finite() {
            return Err(Error::Diverged {
                value: next.value,
                iteration: iterations,
            });
        }
        let mut ss = (new_lambda - lambda).powi(2);
        let mut sy = (new_lambda - lambda) * (next.grad_lambda - current.grad_lambda);
        if !opts.freeze_values {
            for s in 0..n {
                let ds = new_values[s] - values[s];
                ss += ds * ds;
                sy += ds * (next.grad_values[s] - current.grad_values[s]);
            }
        }
        step = if sy > 0.0 && ss > 0.0 { ss / sy } else { 2.0 * step };
        values = new_values;
        lambda = new_lambda;
        current = next;
    }

    let adv = problem.term_advantages(&values);
    let polished = optimal_baseline(spec, &weights, &adv, eta)?;
    if let Some(e) = evaluate(spec, problem, &values, polished, eta) {
        if e.value <= current.value {
            lambda = polished;
            current = e;
        }
    }
    if !current.value.is_finite() {
        return Err(Error::Diverged {
            value: current.value,
            iteration: iterations,
        });
    }
    let term_kappa: Vec<f64> = adv
        .iter()
        .map(|&a| spec.kappa_star(a, lambda, eta))
        .collect();
    let kappa = problem.per_sample(&term_kappa).unwrap_or(term_kappa);
    Ok(DualSolution {
        value_table: values,
        baseline_lambda: lambda,
        kappa,
        eta,
        dual_value: current.value,
        converged,
        iterations,
    })
}

/// Sample-based policy evaluation on a batch over `n_states` states.
pub fn solve_dual(
    spec: &GeneratorSpec,
    batch: &TransitionBatch,
    n_states: usize,
    eta: f64,
    init: Option<&DualSolution>,
    opts: &DualOptions,
) -> Result<DualSolution> {
    let problem = DualProblem::from_batch(batch, n_states)?;
    solve_dual_problem(spec, &problem, eta, init, opts)
}

/// Divergence `Σ q_t f(w_t)` of the primal implied by a dual solution,
/// computed as `Σ q_t (y_t w_t − f*(y_t))`.
pub fn implied_divergence(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    values: &[f64],
    lambda: f64,
    eta: f64,
) -> Result<f64> {
    let adv = problem.term_advantages(values);
    let mut total = 0.0;
    for (term, &a) in problem.terms.iter().zip(&adv) {
        let (y, _) = spec.conjugate_argument(a - lambda, eta);
        let w = spec.f_star_prime(y)?;
        total += term.weight * (y * w - spec.f_star(y)?);
    }
    Ok(total)
}

/// Temperature search bounds, relative to the advantage scale.
const ETA_MIN_REL: f64 = 1e-9;
const ETA_MAX_REL: f64 = 1e9;

/// Trust-region variant: minimizes `g(V, λ; η) + ηε` jointly over `(V, λ, η > 0)`.
///
/// By the envelope theorem `d/dη min_{V,λ} (g + ηε) = ε − D(η)`, where `D(η)`
/// is the divergence implied by the inner optimum and decreases in η. The
/// outer problem is therefore solved by bisection on `log η` for `D(η) = ε`,
/// warm-starting each inner solve.
pub fn solve_dual_problem_with_epsilon(
    spec: &GeneratorSpec,
    problem: &DualProblem,
    epsilon: f64,
    eta_init: f64,
    opts: &DualOptions,
) -> Result<DualSolution> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidInput(format!("epsilon = {epsilon} must be positive")));
    }
    check_eta(eta_init)?;
    let scale = {
        let r: Vec<f64> = problem.terms.iter().map(|t| t.reward).collect();
        let (lo, hi) = r
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        (hi - lo).max(hi.abs()).max(1e-12)
    };
    let eta_min = ETA_MIN_REL * scale;
    let eta_max = ETA_MAX_REL * scale;

    let mut warm: Option<DualSolution> = None;
    let inner = |eta: f64, warm: &mut Option<DualSolution>| -> Result<(DualSolution, f64)> {
        let sol = solve_dual_problem(spec, problem, eta, warm.as_ref(), opts)?;
        let d = implied_divergence(spec, problem, &sol.value_table, sol.baseline_lambda, eta)?;
        *warm = Some(sol.clone());
        Ok((sol, d))
    };

    let (first, d0) = inner(eta_init, &mut warm)?;
    if d0 == epsilon {
        return Ok(with_epsilon_value(first, epsilon));
    }
    // bracket [lo, hi] with D(lo) > ε > D(hi)
    let (mut lo, mut hi, mut best_hi);
    if d0 > epsilon {
        lo = eta_init;
        let mut eta = eta_init;
        loop {
            eta *= 4.0;
            if eta > eta_max {
                return Err(Error::NotConverged {
                    what: "temperature bracket",
                    iterations: 0,
                });
            }
            let (sol, d) = inner(eta, &mut warm)?;
            if d <= epsilon {
                hi = eta;
                best_hi = sol;
                break;
            }
            lo = eta;
        }
    } else {
        hi = eta_init;
        best_hi = first;
        let mut eta = eta_init;
        loop {
            eta /= 4.0;
            if eta < eta_min {
                let (sol, d) = inner(eta_min, &mut warm)?;
                if d < 1e-12 {
                    // no policy change is possible: any temperature is optimal
                    let (sol, _) = inner(eta_init, &mut warm)?;
                    return Ok(with_epsilon_value(sol, epsilon));
                }
                let _ = sol;
                return Err(Error::TemperatureCollapsed { epsilon });
            }
            let (sol, d) = inner(eta, &mut warm)?;
            if d > epsilon {
                lo = eta;
                break;
            }
            hi = eta;
            best_hi = sol;
        }
    }
    for _ in 0..200 {
        if hi / lo - 1.0 < 1e-10 {
            break;
        }
        let mid = (lo * hi).sqrt();
        let (sol, d) = inner(mid, &mut warm)?;
        if d > epsilon {
            lo = mid;
        } else {
            hi = mid;
            best_hi = sol;
        }
    }
    Ok(with_epsilon_value(best_hi, epsilon))
}

fn with_epsilon_value(mut sol: DualSolution, epsilon: f64) -> DualSolution {
    sol.dual_value += sol.eta * epsilon;
    sol
}

/// Batch version of [`solve_dual_problem_with_epsilon`].
pub fn solve_dual_with_epsilon(
    spec: &GeneratorSpec,
    batch: &TransitionBatch,
    n_states: usize,
    epsilon: f64,
    eta_init: f64,
    opts: &DualOptions,
) -> Result<DualSolution> {
    let problem = DualProblem::from_batch(batch, n_states)?;
    solve_dual_problem_with_epsilon(spec, &problem, epsilon, eta_init, opts)
}

/// `η log Ê[exp(Â/η)]`, evaluated with max subtraction.
pub fn closed_form_kl_dual(batch: &TransitionBatch, value_table: &[f64], eta: f64) -> Result<f64> {
    check_eta(eta)?;
    let adv = advantages(batch, value_table)?;
    if adv.0.is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    let m = adv.max();
    let sum: f64 = adv.0.iter().map(|a| ((a - m) / eta).exp()).sum();
    Ok(m + eta * (sum.ln() - (adv.0.len() as f64).ln()))
}

/// Closed-form Pearson dual: `value = Ê[(Â − Ê Â)²]/(2η)` at `baseline = Ê[Â]`.
/// The full dual objective at the optimum is `value + baseline`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PearsonDual {
    pub value: f64,
    pub baseline: f64,
}

pub fn closed_form_pearson_dual(
    batch: &TransitionBatch,
    value_table: &[f64],
    eta: f64,
) -> Result<PearsonDual> {
    check_eta(eta)?;
    let adv = advantages(batch, value_table)?;
    if adv.0.is_empty() {
        return Err(Error::InvalidInput("empty batch".into()));
    }
    let mean = adv.mean();
    let var = adv.0.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / adv.0.len() as f64;
    Ok(PearsonDual {
        value: var / (2.0 * eta),
        baseline: mean,
    })
}

/// `|g_α(λ*_α) − g₂(λ₂)|` for a fixed value table: how far the α dual is from
/// its Pearson (quadratic) approximation.
pub fn high_temp_gap(
    spec: &GeneratorSpec,
    batch: &TransitionBatch,
    value_table: &[f64],
    eta: f64,
) -> Result<f64> {
    let adv = advantages(batch, value_table)?;
    let weights = vec![1.0 / adv.0.len() as f64; adv.0.len()];
    let lambda = optimal_baseline(spec, &weights, &adv.0, eta)?;
    let g_alpha = dual_objective(spec, batch, value_table, lambda, eta)?;
    let pearson = closed_form_pearson_dual(batch, value_table, eta)?;
    Ok((g_alpha - (pearson.value + pearson.baseline)).abs())
}
