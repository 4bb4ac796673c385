mod common;

use epo_core::{divergence, ConjugateDomain, FiniteDistribution, GeneratorSpec};
use proptest::prelude::*;

const ALPHAS: [f64; 8] = [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 4.0, 10.0];

fn alpha() -> impl Strategy<Value = f64> {
    prop::sample::select(ALPHAS.to_vec())
}

/// Finite-difference oracle for a derivative.
fn central_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-5 * x.abs().max(1.0);
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Distribution from raw positive draws.
fn normalize(raw: &[f64]) -> FiniteDistribution {
    FiniteDistribution::from_unnormalized(raw.to_vec()).unwrap()
}

#[test]
fn normalization_on_the_grid() {
    for a in ALPHAS {
        let spec = GeneratorSpec::new(a);
        assert!(spec.f(1.0).unwrap().abs() <= 1e-12, "f(1) at {a}");
        assert!(spec.f_prime(1.0).unwrap().abs() <= 1e-12, "f'(1) at {a}");
        assert!(spec.f_star(0.0).unwrap().abs() <= 1e-12, "f*(0) at {a}");
        assert!((spec.f_star_prime(0.0).unwrap() - 1.0).abs() <= 1e-12, "f*'(0) at {a}");
    }
}

#[test]
fn limits_approach_the_log_cases() {
    let xs = [0.1, 0.5, 2.0, 4.0];
    for (target, eps) in [(1.0, 1e-3), (1.0, 1e-6), (0.0, 1e-3), (0.0, 1e-6)] {
        let exact = GeneratorSpec::new(target);
        for sign in [-1.0, 1.0] {
            let near = GeneratorSpec::generic(target + sign * eps);
            for x in xs {
                let d = (near.f(x).unwrap() - exact.f(x).unwrap()).abs();
                // the generic formula converges at rate O(|α − k|)
                assert!(d <= 10.0 * eps + 1e-9, "alpha {target}±{eps}, x {x}: {d}");
            }
        }
    }
}

#[test]
fn domain_descriptors() {
    assert_eq!(GeneratorSpec::new(1.0).conjugate_domain(), ConjugateDomain::Real);
    assert_eq!(GeneratorSpec::new(0.0).conjugate_domain(), ConjugateDomain::Below(1.0));
    assert_eq!(GeneratorSpec::new(-1.0).conjugate_domain(), ConjugateDomain::Below(0.5));
    assert_eq!(GeneratorSpec::new(2.0).conjugate_domain(), ConjugateDomain::Above(-1.0));
}

#[test]
fn worked_values() {
    let pearson = GeneratorSpec::new(2.0);
    let p = FiniteDistribution::new(vec![0.5, 0.5]).unwrap();
    let q = FiniteDistribution::new(vec![0.25, 0.75]).unwrap();
    // ¼·½(2−1)² + ¾·½(⅔−1)²
    let by_hand = 0.25 * 0.5 + 0.75 * 0.5 * (1.0f64 / 3.0).powi(2);
    assert!((divergence(&pearson, &p, &q).unwrap() - by_hand).abs() < 1e-15);
    assert!((by_hand - 1.0 / 6.0).abs() < 1e-15);
    let u = FiniteDistribution::uniform(4);
    assert_eq!(divergence(&GeneratorSpec::new(1.0), &u, &u).unwrap(), 0.0);
    assert!((GeneratorSpec::new(0.0).f_star(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
    assert!((pearson.f_star(1.0).unwrap() - 1.5).abs() < 1e-15);
    assert!((GeneratorSpec::new(1.0).f_star_prime(1.0).unwrap() - std::f64::consts::E).abs() < 1e-15);
    assert!((pearson.f_star_prime(-0.25).unwrap() - 0.75).abs() < 1e-15);
}

proptest! {
    #[test]
    fn conjugacy_inversion(a in alpha(), x in 0.2f64..5.0) {
        let spec = GeneratorSpec::new(a);
        let back = spec.f_star_prime(spec.f_prime(x).unwrap()).unwrap();
        prop_assert!((back - x).abs() <= 1e-9, "alpha {a}, x {x}: {back}");
    }

    #[test]
    fn fenchel_equality(a in alpha(), t in 0.0f64..1.0) {
        let spec = GeneratorSpec::new(a);
        // y spread over the domain, staying away from an open boundary
        let y = match spec.conjugate_domain() {
            ConjugateDomain::Real => -3.0 + 5.0 * t,
            ConjugateDomain::Below(b) => b - 0.02 - (3.0 + b) * t,
            ConjugateDomain::Above(b) => b + (2.0 - b) * t,
        };
        let x = spec.f_star_prime(y).unwrap();
        let f_x = if x > 0.0 { spec.f(x).unwrap() } else { spec.f_at_zero() };
        let gap = spec.f_star(y).unwrap() + f_x - y * x;
        prop_assert!(gap.abs() <= 1e-9, "alpha {a}, y {y}: {gap}");
    }

    #[test]
    fn conjugate_is_the_supremum(a in alpha(), y in -0.9f64..0.4, xs in prop::collection::vec(0.05f64..6.0, 20)) {
        // f*(y) = sup_x (xy − f(x)) ≥ any sampled xy − f(x)
        let spec = GeneratorSpec::new(a);
        prop_assume!(spec.conjugate_domain().contains(y));
        let star = spec.f_star(y).unwrap();
        for x in xs {
            prop_assert!(star >= x * y - spec.f(x).unwrap() - 1e-12);
        }
    }

    #[test]
    fn derivatives_match_finite_differences(a in alpha(), x in 0.3f64..3.0) {
        let spec = GeneratorSpec::new(a);
        let fd = central_difference(|z| spec.f(z).unwrap(), x);
        prop_assert!((fd - spec.f_prime(x).unwrap()).abs() <= 1e-6 * fd.abs().max(1.0));
        let fd2 = central_difference(|z| spec.f_prime(z).unwrap(), x);
        prop_assert!((fd2 - spec.f_second(x).unwrap()).abs() <= 1e-6 * fd2.abs().max(1.0));
        let y = spec.f_prime(x).unwrap();
        // keep the stencil inside the domain (α = 10 puts y within 1e-5 of its bound)
        let h = match spec.conjugate_domain().bound() {
            Some(b) => 1e-5f64.min((y - b).abs() * 1e-3),
            None => 1e-5,
        };
        let fds = (spec.f_star(y + h).unwrap() - spec.f_star(y - h).unwrap()) / (2.0 * h);
        prop_assert!((fds - x).abs() <= 1e-5 * x.max(1.0), "alpha {a}, x {x}: {fds}");
    }

    #[test]
    fn symmetry_of_alpha_divergence(
        raw_p in prop::collection::vec(0.05f64..1.0, 2..8),
        seed in any::<u64>(),
        beta in prop::sample::select(vec![0.25, 0.5, 1.5]),
    ) {
        let mut r = common::rng(seed);
        let p = normalize(&raw_p);
        let q = FiniteDistribution::new(common::random_distribution(&mut r, raw_p.len())).unwrap();
        let forward = divergence(&GeneratorSpec::new(0.5 + beta), &p, &q).unwrap();
        let backward = divergence(&GeneratorSpec::new(0.5 - beta), &q, &p).unwrap();
        prop_assert!((forward - backward).abs() <= 1e-9, "{forward} vs {backward}");
    }

    #[test]
    fn divergence_is_nonnegative_and_zero_on_the_diagonal(
        a in alpha(),
        raw in prop::collection::vec(0.05f64..1.0, 2..8),
        seed in any::<u64>(),
    ) {
        let spec = GeneratorSpec::new(a);
        let p = normalize(&raw);
        let q = FiniteDistribution::new(common::random_distribution(&mut common::rng(seed), raw.len())).unwrap();
        prop_assert!(divergence(&spec, &p, &q).unwrap() >= -1e-15);
        prop_assert!(divergence(&spec, &p, &p).unwrap().abs() <= 1e-15);
    }
}
