use proptest::prelude::*;
use swlift::torus::spectral::fft4;
use swlift::torus::*;
use swlift::{Charge, CliffordModel, DiracValue, ValueClass, C64};

fn charge() -> impl Strategy<Value = Charge> {
    prop::sample::select(vec![1, 2, -2, 3, 4]).prop_map(Charge::from_twice)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn leibniz_rule_without_aliasing(seed in 0u64..1000, axis in 0usize..4) {
        let g = Grid4::new(16).unwrap();
        let f = random_scalar(g, seed, 2, false).unwrap();
        let h = random_scalar(g, seed + 7, 2, false).unwrap();
        let lhs = f.mul_field(&h).spectral_partial(axis);
        let rhs = &f.spectral_partial(axis).mul_field(&h) + &f.mul_field(&h.spectral_partial(axis));
        let err = (&lhs - &rhs).max_abs();
        prop_assert!(err <= 1e-11 * lhs.max_abs().max(1.0), "{err:e}");
    }

    #[test]
    fn parseval(seed in 0u64..1000) {
        let g = Grid4::new(8).unwrap();
        let f = random_scalar(g, seed, 2, false).unwrap();
        let direct: f64 = f.values().iter().map(|z| z.norm_sqr()).sum();
        let spectral: f64 = fft4(f.values(), &g).iter().map(|z| z.norm_sqr()).sum::<f64>() / g.sites() as f64;
        prop_assert!((direct - spectral).abs() <= 1e-12 * direct);
        let l2 = l2_norm(&f).powi(2);
        prop_assert!((l2 - g.weight() * direct).abs() <= 1e-12 * l2);
    }

    #[test]
    fn curvature_splits_orthogonally(seed in 0u64..1000) {
        let g = Grid4::new(8).unwrap();
        let a = random_gauge(g, seed, 2).unwrap();
        let f = curvature(&a);
        let (p, m) = (f.self_dual_part(), f.anti_self_dual_part());
        prop_assert!((&(&p + &m) - &f).max_norm() <= 1e-13 * f.max_norm().max(1.0));
        let ip = l2_inner(&p, &m).unwrap().norm();
        prop_assert!(ip <= 1e-12 * l2_norm(&f).powi(2).max(1.0), "{ip:e}");
    }

    #[test]
    fn bianchi_identity(seed in 0u64..1000) {
        let g = Grid4::new(8).unwrap();
        let f = curvature(&random_gauge(g, seed, 2).unwrap());
        for c in exterior_derivative_two_form(&f) {
            prop_assert!(c.max_abs() <= 1e-12 * f.max_norm().max(1.0));
        }
    }

    #[test]
    fn dirac_commutes_with_conjugation(seed in 0u64..1000, q in charge()) {
        // J D_{A,q} φ = D_{−A,q} Jφ
        let g = Grid4::new(8).unwrap();
        let a = random_gauge(g, seed, 2).unwrap();
        let phi = random_spinor(g, seed + 1, 2, Chirality::Plus).unwrap();
        let lhs = dirac_x(&a, q, &phi).unwrap().charge_conjugate();
        let rhs = dirac_x(&-&a, q, &phi.charge_conjugate()).unwrap();
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-12 * lhs.max_abs().max(1.0));
    }

    #[test]
    fn dirac_of_plane_wave_is_clifford_symbol(k in prop::array::uniform4(-3i32..=3), c in prop::array::uniform4(-1.0..1.0f64)) {
        // D e^{ik·x}φ₀ = γ(ik) e^{ik·x}φ₀ with A = 0
        let g = Grid4::new(8).unwrap();
        let model = CliffordModel::get();
        let p0 = DiracValue::new(C64::new(c[0], c[1]), C64::new(c[2], c[3]), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        let kx = |x: [f64; 4]| (0..4).map(|m| f64::from(k[m]) * x[m]).sum::<f64>();
        let phi = SpinorField::from_fn(g, Chirality::Plus, |x| p0 * C64::from_polar(1.0, kx(x)));
        let out = dirac_x(&GaugeField::zeros(g), Charge::ONE, &phi).unwrap();
        let kv = k.map(|v| C64::new(0.0, f64::from(v)));
        let sym = model.gamma_covector(&kv) * p0;
        let expected = SpinorField::from_fn(g, Chirality::Minus, |x| sym * C64::from_polar(1.0, kx(x)));
        prop_assert!((&out - &expected).max_abs() <= 1e-12);
    }

    #[test]
    fn random_fields_are_deterministic(seed in 0u64..1000) {
        let g = Grid4::new(4).unwrap();
        let a = random_two_form(g, seed, 1, ValueClass::Imaginary).unwrap();
        let b = random_two_form(g, seed, 1, ValueClass::Imaginary).unwrap();
        prop_assert_eq!(a, b);
    }
}
