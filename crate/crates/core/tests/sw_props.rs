use proptest::prelude::*;
use swlift::seiberg_witten::*;
use swlift::torus::*;
use swlift::{Charge, ValueClass};

fn charge() -> impl Strategy<Value = Charge> {
    prop::sample::select(vec![1, 2, -2, 3, 4]).prop_map(Charge::from_twice)
}

fn grid(n: usize) -> Grid4 {
    Grid4::new(n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn residual_is_affine_in_mu(seed in 0u64..1000, q in charge(), t in -3.0..3.0f64) {
        let cfg = random_configuration(grid(8), q, seed, 2).unwrap();
        let extra = random_two_form(grid(8), seed + 11, 2, ValueClass::Imaginary).unwrap().self_dual_part();
        let shifted = SWConfiguration { mu: &cfg.mu + &extra.scale(t), ..cfg.clone() };
        let r0 = sw_residual(&cfg).unwrap();
        let r1 = sw_residual(&shifted).unwrap();
        prop_assert_eq!(&r0.dirac_part, &r1.dirac_part);
        let diff = &(&r1.curvature_part - &r0.curvature_part) + &extra.scale(t);
        prop_assert!(diff.max_norm() <= 1e-12 * (1.0 + r0.curvature_part.max_norm()));
    }

    #[test]
    fn curvature_part_under_spinor_scaling(seed in 0u64..1000, q in charge(), t in -2.0..2.0f64) {
        let cfg = random_configuration(grid(8), q, seed, 2).unwrap();
        let scaled = SWConfiguration { phi: cfg.phi.scale_real(t), ..cfg.clone() };
        let r0 = sw_residual(&cfg).unwrap();
        let r1 = sw_residual(&scaled).unwrap();
        let expected = &r0.curvature_part - &sigma_field(&cfg.phi).scale(t * t - 1.0);
        let err = (&r1.curvature_part - &expected).max_norm();
        prop_assert!(err <= 1e-12 * (1.0 + r0.curvature_part.max_norm()), "{err:e}");
    }

    #[test]
    fn gauge_action_composes(seed in 0u64..1000, q in charge(),
                             w1 in prop::array::uniform4(-2i32..=2), w2 in prop::array::uniform4(-2i32..=2)) {
        let g = grid(8);
        let cfg = random_configuration(g, q, seed, 2).unwrap();
        let chi1 = random_scalar(g, seed + 3, 1, true).unwrap();
        let chi2 = random_scalar(g, seed + 4, 1, true).unwrap();
        let twice = gauge_transform(&gauge_transform(&cfg, w1, &chi1).unwrap(), w2, &chi2).unwrap();
        let w = std::array::from_fn(|m| w1[m] + w2[m]);
        let once = gauge_transform(&cfg, w, &(&chi1 + &chi2)).unwrap();
        prop_assert!((&twice.phi - &once.phi).max_abs() <= 1e-13);
        prop_assert!((&twice.a - &once.a).max_abs() <= 1e-12);
    }

    #[test]
    fn winding_preserves_residual_norms(seed in 0u64..1000, q in charge(), w in prop::array::uniform4(-1i32..=1)) {
        let g = grid(8);
        let cfg = random_configuration(g, q, seed, 2).unwrap();
        let r0 = sw_residual(&cfg).unwrap();
        let r1 = sw_residual(&gauge_transform(&cfg, w, &ScalarField::zeros(g)).unwrap()).unwrap();
        prop_assert!((r0.dirac_norm() - r1.dirac_norm()).abs() <= 1e-11 * r0.dirac_norm());
        prop_assert!((r0.curvature_norm() - r1.curvature_norm()).abs() <= 1e-11 * r0.curvature_norm());
    }

    #[test]
    fn conjugation_maps_residuals(seed in 0u64..1000, q in charge()) {
        let cfg = random_configuration(grid(8), q, seed, 2).unwrap();
        let r0 = sw_residual(&cfg).unwrap();
        let r1 = sw_residual(&charge_conjugate_config(&cfg)).unwrap();
        let jd = r0.dirac_part.charge_conjugate();
        prop_assert!((&r1.dirac_part - &jd).max_abs() <= 1e-12 * r0.dirac_part.max_abs());
        prop_assert!((&r1.curvature_part + &r0.curvature_part).max_norm() <= 1e-12 * r0.curvature_part.max_norm());
    }
}

#[test]
fn manufactured_solutions_are_exact() {
    for twice in [1, 2, -2, 4] {
        let cfg = manufactured_solution(grid(8), Charge::from_twice(twice), 21, 2).unwrap();
        let r = sw_residual(&cfg).unwrap();
        assert!(r.objective() <= 1e-24, "2q = {twice}: {}", r.objective());
    }
}

#[test]
fn gradient_matches_central_differences() {
    let g = grid(4);
    let cfg = random_configuration(g, Charge::HALF, 3, 1).unwrap();
    let grad = gradient(&cfg).unwrap();
    let h = 1e-5;
    for k in 0..10 {
        let t = Tangent::random(g, 100 + k, 1).unwrap();
        let fd = (objective(&t.apply(&cfg, h)).unwrap() - objective(&t.apply(&cfg, -h)).unwrap()) / (2.0 * h);
        let an = grad.dot(&t);
        let rel = (fd - an).abs() / an.abs().max(1e-12);
        assert!(rel <= 1e-6, "direction {k}: fd {fd} analytic {an} rel {rel:e}");
    }
}

#[test]
fn solver_recovers_perturbed_solution_deterministically() {
    let g = grid(4);
    let exact = manufactured_solution(g, Charge::ONE, 5, 1).unwrap();
    let start = perturb(&exact, 6, 1, 1e-3).unwrap();
    let (sol1, log1) = solve_least_squares(&start, &SolverOptions::frozen()).unwrap();
    let (sol2, log2) = solve_least_squares(&start, &SolverOptions::frozen()).unwrap();
    assert_eq!(log1.stop, StopReason::Converged);
    assert!(log1.final_objective() < 1e-10);
    assert_eq!(log1, log2);
    assert_eq!(sol1, sol2);
}

#[test]
fn solver_rejects_non_finite_start() {
    let g = grid(4);
    let mut cfg = manufactured_solution(g, Charge::ONE, 5, 1).unwrap();
    cfg.phi = cfg.phi.scale_real(f64::NAN);
    assert!(solve_least_squares(&cfg, &SolverOptions::default()).is_err());
}
