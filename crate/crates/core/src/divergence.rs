//! # α-divergence generators
//!
//! The one-parameter family
//!
//! ```text
//! f_α(x)   = ((x^α − 1) − α(x − 1)) / (α(α − 1))
//! f*_α(y)  = ((1 + (α − 1)y)^(α/(α−1)) − 1) / α        for y(1 − α) < 1
//! f*_α'(y) = (1 + (α − 1)y)^(1/(α−1))
//! ```
//!
//! normalized so that `f(1) = f'(1) = 0`, `f''(1) = 1`, `f*(0) = 0` and
//! `f*'(0) = 1` for every α.
//!
//! | α   | name       | f(x)             | f*(y)             | dom f*   |
//! |-----|------------|------------------|-------------------|----------|
//! | 1   | KL         | x log x − (x−1)  | e^y − 1           | ℝ        |
//! | 0   | reverse KL | −log x + (x−1)   | −log(1 − y)       | y < 1    |
//! | 2   | Pearson χ² | ½(x−1)²          | ½(y+1)² − ½       | y > −1   |
//! | −1  | Neyman χ²  | (x−1)²/(2x)      | 1 − √(1 − 2y)     | y < ½    |
//! | ½   | Hellinger  | 2(√x − 1)²       | 2y/(2 − y)        | y < 2    |
//!
//! For α > 1 the conjugate is continuously extended onto the closed boundary
//! `y = 1/(1 − α)`, where `f*' = 0` and `f* = −1/α`. That boundary is where a
//! state-action pair receives zero primal mass.

use crate::error::{Error, Result};

/// Half-width of the window around α ∈ {0, 1} in which the analytic limits are used.
pub const SINGULAR_ALPHA_TOL: f64 = 1e-9;

/// `e^y` is only evaluated up to this argument.
pub const EXP_ARG_MAX: f64 = 700.0;

/// Named members of the α family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedCase {
    Kl,
    ReverseKl,
    Pearson,
    Neyman,
    Hellinger,
    Generic,
}

impl NamedCase {
    pub fn alpha(self) -> Option<f64> {
        match self {
            NamedCase::Kl => Some(1.0),
            NamedCase::ReverseKl => Some(0.0),
            NamedCase::Pearson => Some(2.0),
            NamedCase::Neyman => Some(-1.0),
            NamedCase::Hellinger => Some(0.5),
            NamedCase::Generic => None,
        }
    }
}

/// A member of the α-divergence family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    alpha: f64,
    named: NamedCase,
}

/// Which formula set evaluates the generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Branch {
    Kl,
    ReverseKl,
    Pearson,
    Neyman,
    Hellinger,
    Power,
}

impl GeneratorSpec {
    /// Member with parameter `alpha`. Named cases are recognized automatically.
    pub fn new(alpha: f64) -> Self {
        assert!(alpha.is_finite(), "alpha must be finite");
        let named = if (alpha - 1.0).abs() < SINGULAR_ALPHA_TOL {
            NamedCase::Kl
        } else if alpha.abs() < SINGULAR_ALPHA_TOL {
            NamedCase::ReverseKl
        } else if alpha == 2.0 {
            NamedCase::Pearson
        } else if alpha == -1.0 {
            NamedCase::Neyman
        } else if alpha == 0.5 {
            NamedCase::Hellinger
        } else {
            NamedCase::Generic
        };
        Self { alpha, named }
    }

    /// Member evaluated through the power formula even at a named α.
    /// The analytic limits are still used inside the singular windows at 0 and 1.
    pub fn generic(alpha: f64) -> Self {
        assert!(alpha.is_finite(), "alpha must be finite");
        Self {
            alpha,
            named: NamedCase::Generic,
        }
    }

    pub fn named(case: NamedCase) -> Self {
        match case.alpha() {
            Some(a) => Self::new(a),
            None => panic!("NamedCase::Generic has no fixed alpha"),
        }
    }

    pub fn kl() -> Self {
        Self::named(NamedCase::Kl)
    }

    pub fn reverse_kl() -> Self {
        Self::named(NamedCase::ReverseKl)
    }

    pub fn pearson() -> Self {
        Self::named(NamedCase::Pearson)
    }

    pub fn neyman() -> Self {
        Self::named(NamedCase::Neyman)
    }

    pub fn hellinger() -> Self {
        Self::named(NamedCase::Hellinger)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn named_case(&self) -> NamedCase {
        self.named
    }

    fn branch(&self) -> Branch {
        if (self.alpha - 1.0).abs() < SINGULAR_ALPHA_TOL {
            return Branch::Kl;
        }
        if self.alpha.abs() < SINGULAR_ALPHA_TOL {
            return Branch::ReverseKl;
        }
        match self.named {
            NamedCase::Pearson => Branch::Pearson,
            NamedCase::Neyman => Branch::Neyman,
            NamedCase::Hellinger => Branch::Hellinger,
            _ => Branch::Power,
        }
    }

    /// True when the conjugate has a closed lower boundary carrying zero mass (α > 1).
    pub fn has_closed_boundary(&self) -> bool {
        self.alpha > 1.0 && self.branch() != Branch::Kl
    }

    /// The finite end of `dom f*`, if any: `1/(1 − α)`.
    pub fn domain_bound(&self) -> Option<f64> {
        match self.branch() {
            Branch::Kl => None,
            _ => Some(1.0 / (1.0 - self.alpha)),
        }
    }

    /// Limit of `f(x)` as `x → 0⁺`: `1/α` for α > 0, `+∞` otherwise.
    pub fn f_at_zero(&self) -> f64 {
        match self.branch() {
            Branch::Kl => 1.0,
            Branch::ReverseKl => f64::INFINITY,
            _ if self.alpha > 0.0 => 1.0 / self.alpha,
            _ => f64::INFINITY,
        }
    }

    /// `f*` at the closed boundary (α > 1 only): `−1/α`.
    fn f_star_at_boundary(&self) -> f64 {
        -1.0 / self.alpha
    }

    /// Generator `f_α(x)`, `x > 0`.
    pub fn f(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        let a = self.alpha;
        Ok(match self.branch() {
            Branch::Kl => x * x.ln() - (x - 1.0),
            Branch::ReverseKl => -x.ln() + (x - 1.0),
            Branch::Pearson => 0.5 * (x - 1.0).powi(2),
            Branch::Neyman => (x - 1.0).powi(2) / (2.0 * x),
            Branch::Hellinger => 2.0 * (x.sqrt() - 1.0).powi(2),
            Branch::Power => ((a * x.ln()).exp_m1() - a * (x - 1.0)) / (a * (a - 1.0)),
        })
    }

    /// Derivative `f'_α(x)`, `x > 0`.
    pub fn f_prime(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        let a = self.alpha;
        Ok(match self.branch() {
            Branch::Kl => x.ln(),
            Branch::ReverseKl => 1.0 - 1.0 / x,
            Branch::Pearson => x - 1.0,
            Branch::Neyman => 0.5 - 0.5 / (x * x),
            Branch::Hellinger => 2.0 - 2.0 / x.sqrt(),
            Branch::Power => ((a - 1.0) * x.ln()).exp_m1() / (a - 1.0),
        })
    }

    /// Second derivative `f''_α(x) = x^(α−2)`.
    pub fn f_second(&self, x: f64) -> Result<f64> {
        check_positive(x)?;
        Ok(((self.alpha - 2.0) * x.ln()).exp())
    }

    /// Convex conjugate `f*_α(y)`.
    pub fn f_star(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        let a = self.alpha;
        Ok(match self.branch() {
            Branch::Kl => y.exp_m1(),
            Branch::ReverseKl => -(-y).ln_1p(),
            Branch::Pearson => y + 0.5 * y * y,
            Branch::Neyman => 1.0 - (1.0 - 2.0 * y).sqrt(),
            Branch::Hellinger => 2.0 * y / (2.0 - y),
            Branch::Power => {
                let b = 1.0 + (a - 1.0) * y;
                if b == 0.0 {
                    self.f_star_at_boundary()
                } else {
                    (a / (a - 1.0) * ((a - 1.0) * y).ln_1p()).exp_m1() / a
                }
            }
        })
    }

    /// Derivative of the conjugate, `(f*_α)'(y) = (f'_α)⁻¹(y)`.
    pub fn f_star_prime(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        let a = self.alpha;
        Ok(match self.branch() {
            Branch::Kl => y.exp(),
            Branch::ReverseKl => 1.0 / (1.0 - y),
            Branch::Pearson => y + 1.0,
            Branch::Neyman => 1.0 / (1.0 - 2.0 * y).sqrt(),
            Branch::Hellinger => 4.0 / ((2.0 - y) * (2.0 - y)),
            Branch::Power => {
                let b = 1.0 + (a - 1.0) * y;
                if b == 0.0 {
                    0.0
                } else {
                    (((a - 1.0) * y).ln_1p() / (a - 1.0)).exp()
                }
            }
        })
    }

    /// Second derivative of the conjugate, `(1 + (α − 1)y)^((2−α)/(α−1))`.
    pub fn f_star_second(&self, y: f64) -> Result<f64> {
        self.check_domain(y)?;
        let a = self.alpha;
        Ok(match self.branch() {
            Branch::Kl => y.exp(),
            _ => {
                let b = 1.0 + (a - 1.0) * y;
                if b == 0.0 {
                    if a < 2.0 {
                        f64::INFINITY
                    } else if a == 2.0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    ((2.0 - a) / (a - 1.0) * ((a - 1.0) * y).ln_1p()).exp()
                }
            }
        })
    }

    pub fn conjugate_domain(&self) -> ConjugateDomain {
        match self.branch() {
            Branch::Kl => ConjugateDomain::Real,
            _ if self.alpha < 1.0 => ConjugateDomain::Below(1.0 / (1.0 - self.alpha)),
            _ => ConjugateDomain::Above(1.0 / (1.0 - self.alpha)),
        }
    }

    /// Accepts `y` in `dom f*`, plus the closed boundary for α > 1.
    pub fn check_domain(&self, y: f64) -> Result<()> {
        if y.is_nan() {
            return Err(self.domain_error(y, "y is NaN"));
        }
        match self.branch() {
            Branch::Kl => {
                if y > EXP_ARG_MAX {
                    return Err(self.domain_error(y, "y <= 700 (exponential overflow guard)"));
                }
            }
            _ => {
                let b = 1.0 + (self.alpha - 1.0) * y;
                let ok = if self.alpha > 1.0 { b >= 0.0 } else { b > 0.0 };
                if !ok {
                    let msg = if self.alpha > 1.0 {
                        "y(1-alpha) <= 1"
                    } else {
                        "y(1-alpha) < 1"
                    };
                    return Err(self.domain_error(y, msg));
                }
            }
        }
        Ok(())
    }

    fn domain_error(&self, y: f64, constraint: &str) -> Error {
        Error::ConjugateDomain {
            alpha: self.alpha,
            y,
            constraint: constraint.to_string(),
        }
    }

    /// Conjugate argument `(advantage − λ + κ)/η` with κ from [`GeneratorSpec::kappa_star`].
    ///
    /// Returns `(y, κ)`. When κ > 0 the argument is pinned to the boundary exactly,
    /// so that `f*'(y)` is exactly zero there.
    pub fn conjugate_argument(&self, centered_advantage: f64, eta: f64) -> (f64, f64) {
        let kappa = self.kappa_star_centered(centered_advantage, eta);
        if kappa > 0.0 {
            (1.0 / (1.0 - self.alpha), kappa)
        } else {
            (centered_advantage / eta, 0.0)
        }
    }

    /// Closed-form slack `κ*` for one sample.
    ///
    /// For α > 1 this is `max(0, η/(1 − α) − (advantage − λ))`, the smallest
    /// non-negative κ that puts the conjugate argument inside the closed domain.
    /// For α ≤ 1 the slack is zero.
    pub fn kappa_star(&self, advantage: f64, lambda: f64, eta: f64) -> f64 {
        self.kappa_star_centered(advantage - lambda, eta)
    }

    fn kappa_star_centered(&self, centered: f64, eta: f64) -> f64 {
        if !self.has_closed_boundary() {
            return 0.0;
        }
        (eta / (1.0 - self.alpha) - centered).max(0.0)
    }
}

fn check_positive(x: f64) -> Result<()> {
    if x > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument { x })
    }
}

/// Half-line description of `dom f*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConjugateDomain {
    /// All of ℝ.
    Real,
    /// `y < bound`.
    Below(f64),
    /// `y > bound`.
    Above(f64),
}

impl ConjugateDomain {
    pub fn contains(&self, y: f64) -> bool {
        match *self {
            ConjugateDomain::Real => y.is_finite(),
            ConjugateDomain::Below(b) => y < b,
            ConjugateDomain::Above(b) => y > b,
        }
    }

    /// Membership in the closure of the domain.
    pub fn closure_contains(&self, y: f64) -> bool {
        match *self {
            ConjugateDomain::Real => y.is_finite(),
            ConjugateDomain::Below(b) => y <= b,
            ConjugateDomain::Above(b) => y >= b,
        }
    }

    pub fn bound(&self) -> Option<f64> {
        match *self {
            ConjugateDomain::Real => None,
            ConjugateDomain::Below(b) | ConjugateDomain::Above(b) => Some(b),
        }
    }
}

impl std::fmt::Display for ConjugateDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConjugateDomain::Real => write!(f, "R"),
            ConjugateDomain::Below(b) => write!(f, "y < {b}"),
            ConjugateDomain::Above(b) => write!(f, "y > {b}"),
        }
    }
}

/// Tolerance on the total mass of a normalized distribution.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Non-negative weights over a finite outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    weights: Vec<f64>,
    normalized: bool,
}

impl FiniteDistribution {
    /// Unnormalized measure. Weights must be finite and non-negative.
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        Ok(Self {
            weights,
            normalized: false,
        })
    }

    /// Probability vector; the weights must already sum to one.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            weights,
            normalized: true,
        })
    }

    /// Rescales non-negative weights to a probability vector.
    pub fn from_unnormalized(mut weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution("total mass is zero".into()));
        }
        weights.iter_mut().for_each(|w| *w /= total);
        Ok(Self {
            weights,
            normalized: true,
        })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs at least one outcome");
        Self {
            weights: vec![1.0 / n as f64; n],
            normalized: true,
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Checks `support(self) ⊆ support(other)`.
    pub fn check_absolutely_continuous(&self, other: &FiniteDistribution) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: other.len(),
                got: self.len(),
            });
        }
        match self
            .weights
            .iter()
            .zip(&other.weights)
            .position(|(&p, &q)| p > 0.0 && q == 0.0)
        {
            Some(outcome) => Err(Error::AbsoluteContinuity { outcome }),
            None => Ok(()),
        }
    }
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "weight {i} = {} is negative or not finite",
            weights[i]
        )));
    }
    Ok(())
}

/// `D_f(p ‖ q) = Σ_a q(a) f(p(a)/q(a))`.
///
/// Outcomes outside the support of `q` must also lie outside the support of `p`.
/// A zero `p(a)` contributes `q(a)·f(0⁺)`, which is infinite for α ≤ 0.
pub fn divergence(
    spec: &GeneratorSpec,
    p: &FiniteDistribution,
    q: &FiniteDistribution,
) -> Result<f64> {
    p.check_absolutely_continuous(q)?;
    let mut total = 0.0;
    for (&pa, &qa) in p.weights.iter().zip(&q.weights) {
        if qa == 0.0 {
            continue;
        }
        total += if pa == 0.0 {
            qa * spec.f_at_zero()
        } else {
            qa * spec.f(pa / qa)?
        };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: [f64; 8] = [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0, 10.0];

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn generator_examples() {
        assert_eq!(GeneratorSpec::kl().f(1.0).unwrap(), 0.0);
        assert!(close(GeneratorSpec::new(2.0).f(3.0).unwrap(), 2.0, 1e-15));
        assert!(close(GeneratorSpec::new(0.5).f(4.0).unwrap(), 2.0, 1e-15));
        assert!(close(GeneratorSpec::generic(2.0).f(3.0).unwrap(), 2.0, 1e-14));
        assert!(close(GeneratorSpec::generic(0.5).f(4.0).unwrap(), 2.0, 1e-14));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(GeneratorSpec::kl().f_prime(1.0).unwrap(), 0.0);
        assert!(close(GeneratorSpec::new(2.0).f_prime(3.0).unwrap(), 2.0, 1e-15));
        for a in GRID {
            assert!(GeneratorSpec::new(a).f_prime(1.0).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(GeneratorSpec::kl().f_star(0.0).unwrap(), 0.0);
        assert!(close(
            GeneratorSpec::reverse_kl().f_star(0.5).unwrap(),
            std::f64::consts::LN_2,
            1e-15
        ));
        assert!(close(GeneratorSpec::pearson().f_star(1.0).unwrap(), 1.5, 1e-15));
        assert!(close(GeneratorSpec::generic(2.0).f_star(1.0).unwrap(), 1.5, 1e-14));
    }

    #[test]
    fn conjugate_derivative_examples() {
        for a in GRID {
            assert_eq!(GeneratorSpec::new(a).f_star_prime(0.0).unwrap(), 1.0);
        }
        assert!(close(
            GeneratorSpec::kl().f_star_prime(1.0).unwrap(),
            std::f64::consts::E,
            1e-15
        ));
        assert!(close(GeneratorSpec::pearson().f_star_prime(-0.25).unwrap(), 0.75, 1e-15));
    }

    #[test]
    fn domain_descriptors_match_table() {
        assert_eq!(GeneratorSpec::kl().conjugate_domain(), ConjugateDomain::Real);
        assert_eq!(
            GeneratorSpec::reverse_kl().conjugate_domain(),
            ConjugateDomain::Below(1.0)
        );
        assert_eq!(
            GeneratorSpec::neyman().conjugate_domain(),
            ConjugateDomain::Below(0.5)
        );
        assert_eq!(
            GeneratorSpec::hellinger().conjugate_domain(),
            ConjugateDomain::Below(2.0)
        );
        assert_eq!(
            GeneratorSpec::pearson().conjugate_domain(),
            ConjugateDomain::Above(-1.0)
        );
        assert_eq!(GeneratorSpec::kl().conjugate_domain().to_string(), "R");
    }

    #[test]
    fn domain_errors_name_the_inequality() {
        let err = GeneratorSpec::reverse_kl().f_star(1.0).unwrap_err();
        match err {
            Error::ConjugateDomain { constraint, .. } => assert_eq!(constraint, "y(1-alpha) < 1"),
            e => panic!("unexpected {e:?}"),
        }
        assert!(GeneratorSpec::new(-1.0).f_star_prime(0.5).is_err());
        assert!(GeneratorSpec::pearson().f_star(-1.5).is_err());
        assert!(GeneratorSpec::kl().f_star(700.5).is_err());
        assert!(GeneratorSpec::kl().f_star(699.0).is_ok());
        assert!(GeneratorSpec::new(2.0).f(0.0).is_err());
        assert!(GeneratorSpec::new(2.0).f_prime(-1.0).is_err());
    }

    #[test]
    fn closed_boundary_extension() {
        for a in [1.5, 2.0, 4.0, 10.0] {
            let s = GeneratorSpec::new(a);
            let b = 1.0 / (1.0 - a);
            assert_eq!(s.f_star_prime(b).unwrap(), 0.0);
            assert!(close(s.f_star(b).unwrap(), -1.0 / a, 1e-15));
            // continuity from the interior
            let inside = s.f_star(b + 1e-9).unwrap();
            assert!((inside + 1.0 / a).abs() < 1e-6);
        }
    }

    #[test]
    fn kappa_star_examples() {
        assert_eq!(GeneratorSpec::kl().kappa_star(-100.0, 5.0, 0.1), 0.0);
        assert_eq!(GeneratorSpec::pearson().kappa_star(-3.0, 0.0, 1.0), 2.0);
        assert_eq!(GeneratorSpec::pearson().kappa_star(0.0, 0.0, 1.0), 0.0);
        assert_eq!(GeneratorSpec::new(0.5).kappa_star(-100.0, 0.0, 1.0), 0.0);
        let (y, k) = GeneratorSpec::pearson().conjugate_argument(-2.0, 1.0);
        assert_eq!((y, k), (-1.0, 1.0));
    }

    #[test]
    fn named_cases_agree_with_power_formula() {
        for case in [NamedCase::Pearson, NamedCase::Neyman, NamedCase::Hellinger] {
            let named = GeneratorSpec::named(case);
            let generic = GeneratorSpec::generic(case.alpha().unwrap());
            for x in [0.05, 0.3, 1.0, 1.7, 4.0, 12.0] {
                assert!(close(named.f(x).unwrap(), generic.f(x).unwrap(), 1e-12));
                assert!(close(named.f_prime(x).unwrap(), generic.f_prime(x).unwrap(), 1e-12));
            }
            for y in [-0.9, -0.3, 0.0, 0.2, 0.45] {
                assert!(close(named.f_star(y).unwrap(), generic.f_star(y).unwrap(), 1e-12));
                assert!(close(
                    named.f_star_prime(y).unwrap(),
                    generic.f_star_prime(y).unwrap(),
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn limits_towards_kl_and_reverse_kl() {
        for (target, spec) in [(1.0, GeneratorSpec::kl()), (0.0, GeneratorSpec::reverse_kl())] {
            for (d, tol) in [(1e-3, 2e-2), (1e-6, 2e-5)] {
                for a in [target - d, target + d] {
                    let s = GeneratorSpec::new(a);
                    assert_eq!(s.named_case(), NamedCase::Generic);
                    for x in [0.2, 0.9, 1.5, 3.0] {
                        let diff = (s.f(x).unwrap() - spec.f(x).unwrap()).abs();
                        assert!(diff < tol, "alpha={a} x={x} diff={diff}");
                    }
                }
            }
        }
    }

    #[test]
    fn f_at_zero_is_the_right_limit() {
        for a in [0.5, 1.0, 2.0, 4.0] {
            let s = GeneratorSpec::new(a);
            assert!((s.f(1e-12).unwrap() - s.f_at_zero()).abs() < 1e-5);
        }
        assert!(GeneratorSpec::new(-1.0).f_at_zero().is_infinite());
        assert!(GeneratorSpec::reverse_kl().f_at_zero().is_infinite());
    }

    #[test]
    fn divergence_examples() {
        let u = FiniteDistribution::uniform(4);
        assert_eq!(divergence(&GeneratorSpec::kl(), &u, &u).unwrap(), 0.0);

        let p = FiniteDistribution::normalized(vec![0.5, 0.5]).unwrap();
        let q = FiniteDistribution::normalized(vec![0.25, 0.75]).unwrap();
        // 0.25·½(2−1)² + 0.75·½(2/3−1)²
        let expected = 0.25 * 0.5 + 0.75 * 0.5 / 9.0;
        let d = divergence(&GeneratorSpec::pearson(), &p, &q).unwrap();
        assert!(close(d, expected, 1e-15));
        assert!(close(d, 1.0 / 6.0, 1e-15));
    }

    #[test]
    fn divergence_requires_absolute_continuity() {
        let p = FiniteDistribution::normalized(vec![0.5, 0.25, 0.25]).unwrap();
        let q = FiniteDistribution::normalized(vec![0.5, 0.5, 0.0]).unwrap();
        assert_eq!(
            divergence(&GeneratorSpec::kl(), &p, &q).unwrap_err(),
            Error::AbsoluteContinuity { outcome: 2 }
        );
        // the reverse direction is fine and uses f(0⁺)
        let d = divergence(&GeneratorSpec::kl(), &q, &p).unwrap();
        assert!(d.is_finite() && d > 0.0);
    }

    #[test]
    fn distribution_validation() {
        assert!(FiniteDistribution::normalized(vec![0.5, 0.4]).is_err());
        assert!(FiniteDistribution::new(vec![1.0, -0.1]).is_err());
        assert!(FiniteDistribution::new(vec![f64::NAN]).is_err());
        let d = FiniteDistribution::from_unnormalized(vec![1.0, 3.0]).unwrap();
        assert_eq!(d.weights(), &[0.25, 0.75]);
        assert!(d.is_normalized());
        assert_eq!(FiniteDistribution::new(vec![0.0, 2.0]).unwrap().support(), vec![1]);
    }
}
