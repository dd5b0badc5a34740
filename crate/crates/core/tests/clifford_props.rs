use nalgebra::{Vector2, Vector4};
use proptest::prelude::*;
use swlift::clifford::{embed_plus, plus_block, sigma_endomorphism};
use swlift::{CliffordModel, Mat2, Mat4, TwoFormFibre, C64};

fn weyl() -> impl Strategy<Value = Vector2<C64>> {
    prop::array::uniform4(-2.0..2.0f64)
        .prop_map(|a| Vector2::new(C64::new(a[0], a[1]), C64::new(a[2], a[3])))
}

fn dirac() -> impl Strategy<Value = Vector4<C64>> {
    (weyl(), weyl()).prop_map(|(u, v)| Vector4::new(u[0], u[1], v[0], v[1]))
}

fn coeffs3() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(-2.0..2.0f64)
}

fn imaginary_self_dual(c: [f64; 3]) -> TwoFormFibre {
    let model = CliffordModel::get();
    (0..3).fold(TwoFormFibre::zero(), |acc, k| acc + model.sd_basis()[k] * C64::new(0.0, c[k]))
}

fn anti_self_dual(c: [f64; 3]) -> TwoFormFibre {
    let model = CliffordModel::get();
    (0..3).fold(TwoFormFibre::zero(), |acc, k| acc + model.asd_basis()[k] * C64::new(c[k], 0.3 * c[k]))
}

#[test]
fn gammas_anticommute_exactly() {
    let model = CliffordModel::get();
    for i in 0..4 {
        for j in 0..4 {
            let ac = model.gamma(i) * model.gamma(j) + model.gamma(j) * model.gamma(i);
            let expected = if i == j { -Mat4::identity() * C64::new(2.0, 0.0) } else { Mat4::zeros() };
            assert!((ac - expected).norm() <= 1e-15, "({i},{j})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn anti_self_dual_forms_kill_positive_spinors(c in coeffs3(), phi in weyl()) {
        let model = CliffordModel::get();
        let w = anti_self_dual(c);
        let m = model.weyl_plus() * model.gamma_two_form(&w) * model.weyl_plus();
        prop_assert!(m.norm() <= 1e-13);
        prop_assert!((model.gamma_two_form_plus(&w) * phi).norm() <= 1e-13);
    }

    #[test]
    fn gamma_tau_squares_to_twice_norm(c in coeffs3(), phi in weyl()) {
        let model = CliffordModel::get();
        let tau = imaginary_self_dual(c);
        let g = model.gamma_two_form_plus(&tau);
        let lhs = g * g * phi;
        let rhs = phi * C64::new(2.0 * tau.norm_sq(), 0.0);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn sigma_is_trace_free_hermitian_and_cubic(phi in weyl()) {
        let model = CliffordModel::get();
        let g = model.gamma_two_form_plus(&model.sigma(&phi));
        let scale = 1.0 + phi.norm_squared();
        prop_assert!(g.trace().norm() <= 1e-13 * scale);
        prop_assert!((g - g.adjoint()).norm() <= 1e-13 * scale);
        let (lhs, rhs) = model.sigma_cubic_check(&phi);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * scale * (1.0 + phi.norm()));
        // independent oracle: the trace-free part of φφ†
        prop_assert!((g - sigma_endomorphism(&phi)).norm() <= 1e-13 * scale);
        let direct = phi * phi.adjoint() - Mat2::identity() * C64::new(0.5 * phi.norm_squared(), 0.0);
        prop_assert!((g - direct).norm() <= 1e-13 * scale);
    }

    #[test]
    fn self_dual_action_roundtrips(a in -2.0..2.0f64, b in -2.0..2.0f64, c in -2.0..2.0f64) {
        // Hermitian trace-free h ↦ τ ↦ γ(τ)|S⁺ and back.
        let model = CliffordModel::get();
        let h = Mat2::new(C64::new(a, 0.0), C64::new(b, c), C64::new(b, -c), C64::new(-a, 0.0));
        let tau = model.form_from_hermitian(&h);
        prop_assert!(tau.self_dual_defect() <= 1e-13);
        prop_assert!(tau.real_defect() <= 1e-13);
        prop_assert!((model.gamma_two_form_plus(&tau) - h).norm() <= 1e-13);
    }

    #[test]
    fn imaginary_self_dual_forms_roundtrip(c in coeffs3()) {
        let model = CliffordModel::get();
        let tau = imaginary_self_dual(c);
        let back = model.form_from_hermitian(&model.gamma_two_form_plus(&tau));
        prop_assert!((back - tau).norm() <= 1e-13);
    }

    #[test]
    fn conjugation_is_an_isometry(psi in dirac(), phi in weyl()) {
        let model = CliffordModel::get();
        prop_assert!((model.charge_conjugate_fibre(&psi).norm() - psi.norm()).abs() <= 1e-13);
        prop_assert!((model.charge_conjugate_weyl(&phi).norm() - phi.norm()).abs() <= 1e-13);
    }

    #[test]
    fn conjugation_commutes_with_real_clifford_multiplication(v in prop::array::uniform4(-1.0..1.0f64), psi in dirac()) {
        let model = CliffordModel::get();
        let g = model.gamma_vector(&v);
        let lhs = model.charge_conjugate_fibre(&(g * psi));
        let rhs = g * model.charge_conjugate_fibre(&psi);
        prop_assert!((lhs - rhs).norm() <= 1e-13);
    }

    #[test]
    fn volume_form_acts_by_minus_one_on_positive(phi in weyl()) {
        let model = CliffordModel::get();
        let p = embed_plus(&phi);
        prop_assert!((model.dvol() * p + p).norm() <= 1e-15 * (1.0 + p.norm()));
        prop_assert!(plus_block(&(model.gamma(0) * model.gamma(1))).trace().norm() <= 1e-15);
    }
}
