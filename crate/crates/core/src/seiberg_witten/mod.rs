//! Perturbed Seiberg–Witten equations on the flat torus,
//!
//! ```text
//! D_{A_n} φ = 0,    F_{A_n}⁺ = σ(φ, φ) + μ,    F_{A_n} = 2q·F_A,
//! ```
//!
//! with residuals, symmetry actions and a least-squares solver.

pub mod solver;

pub use solver::{
    gradient, jvp, objective, solve_least_squares, vjp, ConvergenceLog, LogRecord, SolverOptions,
    StopReason, Tangent, FROZEN_ITERATION_BUDGET,
};

use crate::clifford::CliffordModel;
use crate::torus::{
    curvature, dirac_x, l2_norm, random_gauge, random_spinor, Chirality, GaugeField, Grid4,
    ScalarField, SpectralPartial, SpinorField, TwoFormField,
};
use crate::twoform::ValueClass;
use crate::{par, Charge, Error, Result, WeylValue, C64};

/// Tolerance for the imaginary self-dual check on `μ`, relative to `max|μ|`
/// (floored at 1).
pub const MU_TOLERANCE: f64 = 1e-12;

/// A pair `(A, φ)` with charge `q` and perturbation `μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SWConfiguration {
    pub a: GaugeField,
    pub phi: SpinorField,
    pub q: Charge,
    pub mu: TwoFormField,
}

impl SWConfiguration {
    /// Validate grids, chirality, charge and `μ ∈ iΛ²₊`.
    pub fn new(a: GaugeField, phi: SpinorField, q: Charge, mu: TwoFormField) -> Result<Self> {
        q.nonzero()?;
        phi.require(Chirality::Plus)?;
        a.grid().check_same(&phi.grid())?;
        a.grid().check_same(&mu.grid())?;
        let scale = mu.max_norm().max(1.0);
        let defect = mu.max_self_dual_defect().max(mu.max_real_defect());
        if defect > MU_TOLERANCE * scale {
            return Err(Error::NotSelfDual(defect));
        }
        Ok(Self {
            a,
            phi,
            q,
            mu: mu.with_class(ValueClass::Imaginary),
        })
    }

    pub fn grid(&self) -> Grid4 {
        self.a.grid()
    }
}

/// `(D_{A_n}φ, 2q·F_A⁺ − σ(φ,φ) − μ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SWResidual {
    pub dirac_part: SpinorField,
    pub curvature_part: TwoFormField,
}

impl SWResidual {
    pub fn dirac_norm(&self) -> f64 {
        l2_norm(&self.dirac_part)
    }

    pub fn curvature_norm(&self) -> f64 {
        l2_norm(&self.curvature_part)
    }

    /// `‖R_D‖² + ‖R_C‖²`.
    pub fn objective(&self) -> f64 {
        self.dirac_norm().powi(2) + self.curvature_norm().powi(2)
    }
}

/// `σ(φ, φ)` evaluated pointwise.
pub fn sigma_field(phi: &SpinorField) -> TwoFormField {
    let model = CliffordModel::get();
    TwoFormField::from_sites(phi.grid(), ValueClass::Imaginary, |i| {
        model.sigma(&phi.weyl_at(i))
    })
}

pub fn sw_residual(cfg: &SWConfiguration) -> Result<SWResidual> {
    cfg.q.nonzero()?;
    cfg.phi.require(Chirality::Plus)?;
    cfg.grid().check_same(&cfg.phi.grid())?;
    cfg.grid().check_same(&cfg.mu.grid())?;
    let dirac_part = dirac_x(&cfg.a, cfg.q, &cfg.phi)?;
    let f_plus = curvature(&cfg.a).self_dual_part().scale(2.0 * cfg.q.value());
    let curvature_part = &(&f_plus - &sigma_field(&cfg.phi)) - &cfg.mu;
    Ok(SWResidual {
        dirac_part,
        curvature_part: curvature_part.with_class(ValueClass::Imaginary),
    })
}

/// `μ := 2q·F_A⁺ − σ(φ,φ)`, which zeroes the curvature residual.
pub fn manufactured_mu(a: &GaugeField, phi: &SpinorField, q: Charge) -> TwoFormField {
    let f_plus = curvature(a).self_dual_part().scale(2.0 * q.value());
    (&f_plus - &sigma_field(phi)).with_class(ValueClass::Imaginary)
}

/// Connection making the nowhere-vanishing `φ` harmonic:
/// `a_μ = Re⟨γ_μφ, t⟩ / |φ|²` with `t = (i/q)·Σγ_ν∂_νφ`.
///
/// The four vectors `γ_μφ` are real-orthogonal of length `|φ|` and span
/// `S⁻` over `ℝ`, so the expansion is exact.
pub fn harmonic_connection(phi: &SpinorField, q: Charge) -> Result<GaugeField> {
    q.nonzero()?;
    phi.require(Chirality::Plus)?;
    let grid = phi.grid();
    let model = CliffordModel::get();
    let d0 = dirac_x(&GaugeField::zeros(grid), q, phi)?;
    let iq = C64::new(0.0, 1.0 / q.value());
    let vals = par::map(grid.sites(), |i| {
        let p = phi.dirac_at(i);
        let t = d0.dirac_at(i) * iq;
        let n2 = p.norm_squared();
        std::array::from_fn::<f64, 4, _>(|mu| (model.gamma(mu) * p).dotc(&t).re / n2)
    });
    let comps = std::array::from_fn(|mu| vals.iter().map(|v| v[mu]).collect());
    GaugeField::from_components(grid, comps)
}

/// Exact discrete solution: `φ = (1, 0) + noise` with `max|noise| = 0.3`,
/// the connection from [`harmonic_connection`], and `μ` from
/// [`manufactured_mu`].
pub fn manufactured_solution(grid: Grid4, q: Charge, seed: u64, kmax: usize) -> Result<SWConfiguration> {
    q.nonzero()?;
    let noise = random_spinor(grid, seed, kmax, Chirality::Plus)?;
    let m = noise.max_abs();
    let noise = if m > 0.0 { noise.scale_real(0.3 / m) } else { noise };
    let base = SpinorField::constant_weyl(grid, WeylValue::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)));
    let phi = &base + &noise;
    let a = harmonic_connection(&phi, q)?;
    let mu = manufactured_mu(&a, &phi, q);
    SWConfiguration::new(a, phi, q, mu)
}

/// Add band-limited noise of sup-norm `eps` to `φ` and to the oscillatory
/// part of `A`, keeping `q` and `μ`.
pub fn perturb(cfg: &SWConfiguration, seed: u64, kmax: usize, eps: f64) -> Result<SWConfiguration> {
    let grid = cfg.grid();
    let dphi = random_spinor(grid, seed, kmax, Chirality::Plus)?;
    let dphi = dphi.scale_real(eps / dphi.max_abs().max(f64::MIN_POSITIVE));
    let da = random_gauge(grid, seed.wrapping_add(1), kmax)?;
    let da = GaugeField::from_parts(
        grid,
        std::array::from_fn(|mu| da.oscillatory(mu).to_vec()),
        [0.0; 4],
    )?;
    let da = da.scale(eps / da.max_abs().max(f64::MIN_POSITIVE));
    Ok(SWConfiguration {
        a: &cfg.a + &da,
        phi: &cfg.phi + &dphi,
        q: cfg.q,
        mu: cfg.mu.clone(),
    })
}

/// Random configuration with band-limited `A`, `φ` and imaginary self-dual `μ`.
pub fn random_configuration(grid: Grid4, q: Charge, seed: u64, kmax: usize) -> Result<SWConfiguration> {
    let a = random_gauge(grid, seed, kmax)?;
    let phi = random_spinor(grid, seed.wrapping_add(1), kmax, Chirality::Plus)?;
    let mu = crate::torus::random_two_form(grid, seed.wrapping_add(2), kmax, ValueClass::Imaginary)?
        .self_dual_part();
    SWConfiguration::new(a, phi, q, mu)
}

/// Gauge transformation by `h = e^{i(w·x + χ)}`:
///
/// ```text
/// a ↦ a + (w + dχ)/q,    φ ↦ e^{−i(w·x + χ)} φ.
/// ```
///
/// Winding `w` shifts the holonomy by `w/q`; `χ` must be real.
pub fn gauge_transform(cfg: &SWConfiguration, w: [i32; 4], chi: &ScalarField) -> Result<SWConfiguration> {
    let grid = cfg.grid();
    grid.check_same(&chi.grid())?;
    let q = cfg.q.nonzero()?.value();
    let dchi: Vec<Vec<f64>> = (0..4)
        .map(|mu| chi.spectral_partial(mu).real_parts())
        .collect();
    let osc = std::array::from_fn(|mu| {
        cfg.a
            .oscillatory(mu)
            .iter()
            .zip(&dchi[mu])
            .map(|(a, d)| a + d / q)
            .collect()
    });
    let hol = std::array::from_fn(|mu| cfg.a.holonomy()[mu] + f64::from(w[mu]) / q);
    let a = GaugeField::from_parts(grid, osc, hol)?;
    let phi = cfg.phi.map_sites(Chirality::Plus, |i, v| {
        let x = grid.point(i);
        let theta: f64 = (0..4).map(|mu| f64::from(w[mu]) * x[mu]).sum::<f64>() + chi.at(i).re;
        v * C64::from_polar(1.0, -theta)
    });
    Ok(SWConfiguration {
        a,
        phi,
        q: cfg.q,
        mu: cfg.mu.clone(),
    })
}

/// Charge conjugation `(A, φ, μ, q) ↦ (A, Jφ, −μ, −q)`.
///
/// The base potential is kept in the fixed fibre trivialization; flipping
/// the charge reverses the coupling `2q·A`, so `F_{A_n}` changes sign as
/// required. The residuals map to `(J·R_D, −R_C)`. Since `J² = −1`,
/// applying the map twice returns `(A, −φ, μ, q)`, which differs from the
/// input by the constant gauge transformation `−1`.
pub fn charge_conjugate_config(cfg: &SWConfiguration) -> SWConfiguration {
    SWConfiguration {
        a: cfg.a.clone(),
        phi: cfg.phi.charge_conjugate(),
        q: -cfg.q,
        mu: -&cfg.mu,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TwoFormFibre;

    fn grid(n: usize) -> Grid4 {
        Grid4::new(n).unwrap()
    }

    #[test]
    fn reducible_style_zero() {
        let g = grid(4);
        let a = random_gauge(g, 1, 1).unwrap();
        let phi = SpinorField::zeros(g, Chirality::Plus);
        let mu = manufactured_mu(&a, &phi, Charge::HALF);
        let cfg = SWConfiguration::new(a, phi, Charge::HALF, mu).unwrap();
        let r = sw_residual(&cfg).unwrap();
        assert!(r.dirac_part.max_abs() < 1e-15);
        assert!(r.curvature_part.max_norm() < 1e-13);
    }

    #[test]
    fn constant_spinor_without_connection() {
        let g = grid(4);
        let c = WeylValue::new(C64::new(0.7, 0.0), C64::new(0.0, -0.2));
        let phi = SpinorField::constant_weyl(g, c);
        let model = CliffordModel::get();
        let mu = TwoFormField::constant(g, -model.sigma(&c));
        let cfg = SWConfiguration::new(GaugeField::zeros(g), phi, Charge::ONE, mu.clone()).unwrap();
        let r = sw_residual(&cfg).unwrap();
        assert!(r.objective() < 1e-28);
        let mm = manufactured_mu(&cfg.a, &cfg.phi, cfg.q);
        assert!((&mm - &mu).max_norm() < 1e-15);
    }

    #[test]
    fn manufactured_solution_is_exact() {
        for twice in [1, 2, -1] {
            let cfg = manufactured_solution(grid(8), Charge::from_twice(twice), 7, 2).unwrap();
            assert!(cfg.phi.min_abs() > 0.5);
            let r = sw_residual(&cfg).unwrap();
            assert!(r.dirac_part.max_abs() < 1e-12, "2q = {twice}");
            assert!(r.curvature_part.max_norm() < 1e-12);
        }
    }

    #[test]
    fn random_configurations_have_nonzero_residual() {
        for seed in 0..3 {
            let cfg = random_configuration(grid(4), Charge::HALF, seed, 1).unwrap();
            let r = sw_residual(&cfg).unwrap();
            assert!(r.dirac_norm() > 1e-3 && r.curvature_norm() > 1e-3);
        }
    }

    #[test]
    fn configuration_validation() {
        let g = grid(4);
        let a = GaugeField::zeros(g);
        let phi = SpinorField::zeros(g, Chirality::Plus);
        let mu = TwoFormField::zeros(g, ValueClass::Imaginary);
        assert!(matches!(
            SWConfiguration::new(a.clone(), phi.clone(), Charge::from_twice(0), mu.clone()),
            Err(Error::ZeroCharge)
        ));
        let asd = TwoFormField::constant(g, TwoFormFibre::imaginary([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]));
        assert!(matches!(
            SWConfiguration::new(a.clone(), phi.clone(), Charge::ONE, asd),
            Err(Error::NotSelfDual(_))
        ));
        let minus = SpinorField::zeros(g, Chirality::Minus);
        assert!(SWConfiguration::new(a, minus, Charge::ONE, mu).is_err());
    }

    #[test]
    fn trivial_gauge_transform_is_identity() {
        let cfg = random_configuration(grid(4), Charge::ONE, 3, 1).unwrap();
        let out = gauge_transform(&cfg, [0; 4], &ScalarField::zeros(cfg.grid())).unwrap();
        assert_eq!(out, cfg);
    }

    #[test]
    fn conjugation_twice_negates_spinor() {
        let cfg = random_configuration(grid(4), Charge::HALF, 5, 1).unwrap();
        let twice = charge_conjugate_config(&charge_conjugate_config(&cfg));
        assert_eq!(twice.q, cfg.q);
        assert_eq!(twice.a, cfg.a);
        assert!((&twice.phi + &cfg.phi).max_abs() < 1e-14);
        assert!((&twice.mu - &cfg.mu).max_norm() == 0.0);
    }
}
