//! # epo-core
//!
//! Proximal policy optimization with f-divergence penalties.
//!
//! Each policy-iteration step maximizes expected reward minus `η·D_f(ρ_π ‖ ρ_π₀)`
//! over stationary state-action occupancies. The primal optimum is
//! `ρ_π = ρ_π₀ · f*'((A^V − λ + κ)/η)`, so the work splits into
//!
//! - policy evaluation: minimize the sample-based dual over the value table
//!   `V` and baseline `λ` ([`dual`]);
//! - policy improvement: fit the new policy by weighted maximum likelihood with
//!   weights `f*'(…)` ([`policy`]).
//!
//! The generator `f` comes from the α-divergence family ([`divergence`]):
//! α = 1 gives KL, α = 2 Pearson χ² (the least-squares critic with an
//! advantage-weighted actor), α > 1 produces sparse policies.
//!
//! [`mdp`] and [`bandit`] provide the environments and exact oracles,
//! [`experiments`] the reproducible sweeps behind the `epo` CLI.

pub mod bandit;
pub mod divergence;
pub mod dual;
pub mod error;
pub mod experiments;
pub mod mdp;
pub mod policy;

pub use divergence::{divergence, ConjugateDomain, FiniteDistribution, GeneratorSpec, NamedCase};
pub use dual::{
    advantages, closed_form_kl_dual, closed_form_pearson_dual, dual_objective, high_temp_gap,
    solve_dual, solve_dual_with_epsilon, AdvantageEstimate, DualOptions, DualProblem, DualSolution,
    TemperatureSchedule,
};
pub use error::{Error, Result};
pub use mdp::{TabularMdp, TabularPolicy, Transition, TransitionBatch};
pub use policy::{
    reweighted_policy_update,
    exact_primal_policy, improvement_weights, pearson_equivalence_weights, tabular_policy_update,
    ImprovementWeights,
};
