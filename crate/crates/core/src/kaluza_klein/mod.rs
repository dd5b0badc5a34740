//! Charge-sector spinors on `Y = T⁴ × S¹` with the Kaluza–Klein metric
//! `g_Y = Σ dx² + r²(dθ + a)²`, where `A = i·a` and `K = ∂_θ`.
//!
//! A sector spinor is `ψ(x, θ) = e^{−iqθ} φ(x)`, so `L_K ψ = −iqψ` holds by
//! construction. The fibre measure is normalized, giving `‖ψ‖ = ‖φ‖`.
//!
//! The orthonormal frame is `e_μ* = ∂_μ − a_μ∂_θ`, `e₅ = K/r`. Its only
//! non-vanishing structure constants are `g([e_μ*, e_ν*], e₅) = −r·f_μν`
//! with `F_A = i·f`. Levi-Civita coefficients follow from the Koszul formula
//! and the spin connection is `Ω_A = ¼ Σ_{B,C} ω_ABC γ_B γ_C`.

pub mod ricci;

pub use ricci::{ricci_kk, ricci_kk_with_base, ricci_oracle, ricci_oracle_with_step, RicciEntry, RicciTable};

use serde::{Deserialize, Serialize};

use crate::clifford::{embed_plus, CliffordModel};
use crate::seiberg_witten::{sw_residual, SWConfiguration};
use crate::torus::{
    covariant_derivative, curvature, dirac_x, l2_inner, l2_norm, Chirality, GaugeField, Grid4,
    ScalarField, SpinorField, TwoFormField,
};
use crate::twoform::PAIRS;
use crate::{par, Charge, DiracValue, Error, Mat4, Result, TwoFormFibre, C64};

/// Fibre radius: constant or a positive function on `X`.
#[derive(Clone, Debug, PartialEq)]
pub enum Radius {
    Constant(f64),
    Field(ScalarField),
}

/// Base connection, fibre radius and charge; the mass is `m = −q/r`.
#[derive(Clone, Debug, PartialEq)]
pub struct KKGeometry {
    pub a: GaugeField,
    pub radius: Radius,
    pub q: Charge,
}

impl KKGeometry {
    pub fn constant(a: GaugeField, r: f64, q: Charge) -> Result<Self> {
        q.nonzero()?;
        if !(r > 0.0) {
            return Err(Error::NonPositiveRadius(r));
        }
        Ok(Self {
            a,
            radius: Radius::Constant(r),
            q,
        })
    }

    /// Varying radius; `r` must be real and positive at every site.
    pub fn varying(a: GaugeField, r: ScalarField, q: Charge) -> Result<Self> {
        q.nonzero()?;
        a.grid().check_same(&r.grid())?;
        let min = r.min_real();
        if !(min > 0.0) {
            return Err(Error::NonPositiveRadius(min));
        }
        Ok(Self {
            a,
            radius: Radius::Field(r),
            q,
        })
    }

    /// The geometry naturally attached to a configuration.
    pub fn for_config(cfg: &SWConfiguration, r: f64) -> Result<Self> {
        Self::constant(cfg.a.clone(), r, cfg.q)
    }

    pub fn grid(&self) -> Grid4 {
        self.a.grid()
    }

    pub fn radius_at(&self, idx: usize) -> f64 {
        match &self.radius {
            Radius::Constant(r) => *r,
            Radius::Field(f) => f.at(idx).re,
        }
    }

    pub fn constant_radius(&self) -> Result<f64> {
        match self.radius {
            Radius::Constant(r) => Ok(r),
            Radius::Field(_) => Err(Error::VaryingRadius),
        }
    }

    /// `m(x) = −q / r(x)`.
    pub fn mass_at(&self, idx: usize) -> f64 {
        -self.q.value() / self.radius_at(idx)
    }

    /// Constant mass; fails for varying radius.
    pub fn mass(&self) -> Result<f64> {
        Ok(-self.q.value() / self.constant_radius()?)
    }
}

/// `ψ = e^{−iqθ}·base(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorSpinor {
    pub base: SpinorField,
    pub q: Charge,
}

impl SectorSpinor {
    pub fn grid(&self) -> Grid4 {
        self.base.grid()
    }

    /// `ψ(x_idx, θ)`.
    pub fn value_at(&self, idx: usize, theta: f64) -> DiracValue {
        self.base.dirac_at(idx) * C64::from_polar(1.0, -self.q.value() * theta)
    }

    /// `L_K ψ = −iqψ`.
    pub fn fibre_derivative(&self) -> SectorSpinor {
        SectorSpinor {
            base: self.base.scale(C64::new(0.0, -self.q.value())),
            q: self.q,
        }
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.base)
    }

    /// Fibrewise conjugation `dvol∘J`, mapping `V_{−q}` to `V_{q}`.
    pub fn conjugate5(&self) -> SectorSpinor {
        let model = CliffordModel::get();
        SectorSpinor {
            base: self
                .base
                .map_sites(self.base.chirality(), |_, v| model.charge_conjugate_fibre5(&v)),
            q: -self.q,
        }
    }
}

/// `Q_{−q}`: the lift keeps the chirality of `φ`.
pub fn lift(phi: &SpinorField, q: Charge) -> SectorSpinor {
    SectorSpinor {
        base: phi.clone(),
        q,
    }
}

pub fn unlift(psi: &SectorSpinor) -> SpinorField {
    psi.base.clone()
}

/// Levi-Civita data in the frame `(e₁*, …, e₄*, K/r)` for constant `r`.
#[derive(Clone, Debug)]
pub struct FrameConnection {
    r: f64,
    f: Vec<[f64; 6]>,
}

impl FrameConnection {
    pub fn new(geom: &KKGeometry) -> Result<Self> {
        let r = geom.constant_radius()?;
        let curv = curvature(&geom.a);
        let f = par::map(geom.grid().sites(), |i| curv.fibre_at(i).coeffs.map(|z| z.im));
        Ok(Self { r, f })
    }

    fn f_at(&self, idx: usize, mu: usize, nu: usize) -> f64 {
        if mu == nu {
            return 0.0;
        }
        let (a, b, s) = if mu < nu { (mu, nu, 1.0) } else { (nu, mu, -1.0) };
        let k = PAIRS.iter().position(|&p| p == (a, b)).expect("pair");
        s * self.f[idx][k]
    }

    /// `g([E_A, E_B], E_C)`.
    pub fn structure_constant(&self, idx: usize, a: usize, b: usize, c: usize) -> f64 {
        if a < 4 && b < 4 && c == 4 {
            -self.r * self.f_at(idx, a, b)
        } else {
            0.0
        }
    }

    /// `ω_ABC = g(∇_{E_A} E_B, E_C)`.
    pub fn omega(&self, idx: usize, a: usize, b: usize, c: usize) -> f64 {
        0.5 * (self.structure_constant(idx, a, b, c) - self.structure_constant(idx, b, c, a)
            + self.structure_constant(idx, c, a, b))
    }

    /// `Ω_A = ¼ Σ_{B,C} ω_ABC γ_B γ_C`.
    pub fn spin_matrix(&self, idx: usize, a: usize) -> Mat4 {
        let model = CliffordModel::get();
        let mut m = Mat4::zeros();
        for b in 0..5 {
            for c in 0..5 {
                let w = self.omega(idx, a, b, c);
                if w != 0.0 {
                    m += model.frame_gamma(b) * model.frame_gamma(c) * C64::new(0.25 * w, 0.0);
                }
            }
        }
        m
    }
}

fn check_sector(psi: &SectorSpinor, geom: &KKGeometry) -> Result<()> {
    psi.grid().check_same(&geom.grid())
}

/// `E_A ψ` for the frame index `A` (4 is the fibre direction).
fn frame_derivative(psi: &SectorSpinor, geom: &KKGeometry, a: usize, r: f64) -> Result<SpinorField> {
    let base = psi.base.to_full();
    if a < 4 {
        covariant_derivative(&geom.a, psi.q, &base, a)
    } else {
        Ok(base.scale(C64::new(0.0, -psi.q.value() / r)))
    }
}

/// Spinorial Levi-Civita derivative `∇^Y_{E_A} ψ` built from frame
/// derivatives and the Koszul coefficients.
pub fn nabla_y(psi: &SectorSpinor, geom: &KKGeometry, a: usize) -> Result<SectorSpinor> {
    check_sector(psi, geom)?;
    if a > 4 {
        return Err(Error::OutOfRange(format!("frame index {a}")));
    }
    let conn = FrameConnection::new(geom)?;
    let d = frame_derivative(psi, geom, a, conn.r)?;
    let base = d.map_sites(Chirality::Full, |i, v| v + conn.spin_matrix(i, a) * psi.base.dirac_at(i));
    Ok(SectorSpinor { base, q: psi.q })
}

/// Right-hand sides of the covariant-derivative lift formulas:
///
/// ```text
/// ∇_{e_μ*} ψ = Q(∇_{A_n, μ} φ) − (r/4)·i·γ(K/r)·γ(i_{e_μ} F_A)·ψ
/// ∇_{K/r} ψ  = (1/r)·L_K ψ − (r/4)·i·γ(F_A)·ψ
/// ```
pub fn nabla_y_lifted_formula(psi: &SectorSpinor, geom: &KKGeometry, a: usize) -> Result<SectorSpinor> {
    check_sector(psi, geom)?;
    let r = geom.constant_radius()?;
    let model = CliffordModel::get();
    let curv = curvature(&geom.a);
    let i = C64::new(0.0, 1.0);
    let base = if a < 4 {
        let d = covariant_derivative(&geom.a, psi.q, &psi.base.to_full(), a)?;
        d.map_sites(Chirality::Full, |idx, v| {
            let ivf = model.gamma_covector(&curv.fibre_at(idx).interior(a));
            v - model.gamma_k() * ivf * psi.base.dirac_at(idx) * (i * 0.25 * r)
        })
    } else {
        let lk = psi.fibre_derivative().base.to_full();
        lk.map_sites(Chirality::Full, |idx, v| {
            let gf = model.gamma_two_form(&curv.fibre_at(idx));
            v * C64::new(1.0 / r, 0.0) - gf * psi.base.dirac_at(idx) * (i * 0.25 * r)
        })
    };
    Ok(SectorSpinor { base, q: psi.q })
}

/// `D^Y ψ = Σ_A γ(E_A) ∇^Y_{E_A} ψ`, assembled from the frame connection.
/// Requires constant radius. Works in every sector, including `q = 0`.
pub fn dirac_y_frame(psi: &SectorSpinor, geom: &KKGeometry) -> Result<SectorSpinor> {
    check_sector(psi, geom)?;
    let conn = FrameConnection::new(geom)?;
    let model = CliffordModel::get();
    let d: Vec<SpinorField> = (0..5)
        .map(|a| frame_derivative(psi, geom, a, conn.r))
        .collect::<Result<_>>()?;
    let base = SpinorField::from_sites(psi.grid(), Chirality::Full, |i| {
        let p = psi.base.dirac_at(i);
        (0..5).fold(DiracValue::zeros(), |acc, a| {
            acc + model.frame_gamma(a) * (d[a].dirac_at(i) + conn.spin_matrix(i, a) * p)
        })
    });
    Ok(SectorSpinor { base, q: psi.q })
}

/// `D^Y ψ = Q(D^X_{A_n} φ + m φ − (1/8m) γ(F_{A_n}⁺) φ)` for a lifted
/// positive spinor, with `F_{A_n} = 2q·F_A` and `m = −q/r(x)`; supports a
/// varying radius.
pub fn dirac_y_reduced(psi: &SectorSpinor, geom: &KKGeometry) -> Result<SectorSpinor> {
    check_sector(psi, geom)?;
    psi.q.nonzero()?;
    psi.base.require(Chirality::Plus)?;
    let model = CliffordModel::get();
    let q = psi.q.value();
    let dx = dirac_x(&geom.a, psi.q, &psi.base)?;
    let f_plus = curvature(&geom.a).self_dual_part();
    let base = SpinorField::from_sites(psi.grid(), Chirality::Full, |i| {
        let m = -q / geom.radius_at(i);
        let phi = psi.base.weyl_at(i);
        let g = model.gamma_two_form_plus(&(f_plus.fibre_at(i) * (2.0 * q)));
        let plus = phi * C64::new(m, 0.0) - g * phi * C64::new(1.0 / (8.0 * m), 0.0);
        dx.dirac_at(i) + embed_plus(&plus)
    });
    Ok(SectorSpinor { base, q: psi.q })
}

/// Which construction of `D^Y` to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiracPath {
    Frame,
    Reduced,
}

pub fn dirac_y(psi: &SectorSpinor, geom: &KKGeometry, path: DiracPath) -> Result<SectorSpinor> {
    match path {
        DiracPath::Frame => dirac_y_frame(psi, geom),
        DiracPath::Reduced => dirac_y_reduced(psi, geom),
    }
}

/// `D^Yψ + (1/16m)|ψ|²ψ − mψ + (1/8m)γ(μ)ψ` given a value for `D^Yψ`.
pub fn cubic_residual_given(
    dy: &SectorSpinor,
    psi: &SectorSpinor,
    geom: &KKGeometry,
    mu: &TwoFormField,
) -> Result<SectorSpinor> {
    check_sector(psi, geom)?;
    dy.grid().check_same(&psi.grid())?;
    mu.grid().check_same(&psi.grid())?;
    if psi.q != geom.q || dy.q != psi.q {
        return Err(Error::Inconsistent(format!(
            "sector charge {} vs geometry charge {}",
            psi.q, geom.q
        )));
    }
    let model = CliffordModel::get();
    let base = SpinorField::from_sites(psi.grid(), Chirality::Full, |i| {
        let m = geom.mass_at(i);
        let p = psi.base.dirac_at(i);
        let n2 = p.norm_squared();
        dy.base.dirac_at(i) + p * C64::new(n2 / (16.0 * m) - m, 0.0)
            + model.gamma_two_form(&mu.fibre_at(i)) * p * C64::new(1.0 / (8.0 * m), 0.0)
    });
    Ok(SectorSpinor { base, q: psi.q })
}

/// Residual of the cubic Dirac equation
/// `D^Yψ = −(1/16m)|ψ|²ψ + mψ − (1/8m)γ(μ)ψ`.
pub fn cubic_residual(
    psi: &SectorSpinor,
    geom: &KKGeometry,
    mu: &TwoFormField,
    path: DiracPath,
) -> Result<SectorSpinor> {
    let dy = dirac_y(psi, geom, path)?;
    cubic_residual_given(&dy, psi, geom, mu)
}

/// Outcome of [`residual_decomposition_check`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    /// `max|cubic − (Q(R_D) − (1/8m)γ(R_C)ψ)|` divided by `scale`.
    pub relative_deviation: f64,
    pub scale: f64,
    /// Sites with `|φ| > τ_φ`.
    pub converse_sites: usize,
    /// Sites where the residual norms recovered from the cubic residual
    /// disagree with the direct ones.
    pub converse_failures: usize,
    pub converse_max_error: f64,
    pub tau_phi: f64,
}

impl DecompositionReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.relative_deviation <= tol && self.converse_failures == 0
    }
}

/// Relative factor below `max|φ|` at which sites are skipped by the converse.
pub const TAU_PHI_RELATIVE: f64 = 1e-6;
/// Relative agreement required of the recovered residual norms.
pub const CONVERSE_TOLERANCE: f64 = 1e-9;

/// Verify `cubic(Q φ) = Q(R_D) − (1/8m)γ(R_C)·Qφ` and recover `|R_D|`,
/// `|R_C|` pointwise from the cubic residual where `|φ| > τ_φ`, using
/// `|γ(τ)φ| = √2·|τ|·|φ|` for imaginary self-dual `τ`.
pub fn residual_decomposition_check(cfg: &SWConfiguration, geom: &KKGeometry) -> Result<DecompositionReport> {
    if geom.a != cfg.a || geom.q != cfg.q {
        return Err(Error::Inconsistent("geometry does not carry the configuration's connection and charge".into()));
    }
    let model = CliffordModel::get();
    let psi = lift(&cfg.phi, cfg.q);
    let dy = dirac_y_reduced(&psi, geom)?;
    let cubic = cubic_residual_given(&dy, &psi, geom, &cfg.mu)?;
    let res = sw_residual(cfg)?;
    let grid = cfg.grid();

    let predicted = SpinorField::from_sites(grid, Chirality::Full, |i| {
        let m = geom.mass_at(i);
        let g = model.gamma_two_form(&res.curvature_part.fibre_at(i));
        res.dirac_part.dirac_at(i) - g * psi.base.dirac_at(i) * C64::new(1.0 / (8.0 * m), 0.0)
    });
    let deviation = (&cubic.base - &predicted).max_abs();
    let scale = par::max(grid.sites(), |i| {
        let m = geom.mass_at(i).abs();
        let p = psi.base.dirac_at(i).norm();
        let mu = cfg.mu.fibre_at(i).norm();
        dy.base.dirac_at(i).norm() + m * p + p.powi(3) / (16.0 * m) + mu * p / (8.0 * m)
    })
    .max(f64::MIN_POSITIVE);

    let tau_phi = TAU_PHI_RELATIVE * cfg.phi.max_abs();
    let checks = par::map(grid.sites(), |i| {
        let p = cfg.phi.norm_sq_at(i).sqrt();
        if p <= tau_phi {
            return None;
        }
        let c = cubic.base.dirac_at(i);
        let minus = (c[2].norm_sqr() + c[3].norm_sqr()).sqrt();
        let plus = (c[0].norm_sqr() + c[1].norm_sqr()).sqrt();
        let rd = res.dirac_part.norm_sq_at(i).sqrt();
        let rc = res.curvature_part.fibre_at(i).norm();
        let rc_rec = 8.0 * geom.mass_at(i).abs() * plus / (std::f64::consts::SQRT_2 * p);
        let err_d = (minus - rd).abs() / rd.max(1.0);
        let err_c = (rc_rec - rc).abs() / rc.max(1.0);
        Some(err_d.max(err_c))
    });
    let converse: Vec<f64> = checks.into_iter().flatten().collect();
    Ok(DecompositionReport {
        relative_deviation: deviation / scale,
        scale,
        converse_sites: converse.len(),
        converse_failures: converse.iter().filter(|&&e| !(e <= CONVERSE_TOLERANCE)).count(),
        converse_max_error: converse.iter().fold(0.0_f64, |m, &e| m.max(e)),
        tau_phi,
    })
}

/// Gross–Neveu action
/// `S[ψ] = ∫_X Re⟨ψ, D^Yψ⟩ − m|ψ|² + (1/32m)|ψ|⁴` (normalized fibre),
/// using the frame construction of `D^Y`.
pub fn gross_neveu_action(psi: &SectorSpinor, geom: &KKGeometry) -> Result<f64> {
    let m = geom.mass()?;
    if psi.q != geom.q {
        return Err(Error::Inconsistent("sector charge differs from geometry charge".into()));
    }
    let dy = dirac_y_frame(psi, geom)?;
    let full = psi.base.to_full();
    let kinetic = l2_inner(&full, &dy.base)?.re;
    let grid = psi.grid();
    let potential = par::sum(grid.sites(), |i| {
        let n2 = full.norm_sq_at(i);
        -m * n2 + n2 * n2 / (32.0 * m)
    }) * grid.weight();
    Ok(kinetic + potential)
}

/// `L²` gradient of [`gross_neveu_action`]:
/// `2(D^Yψ − mψ + (1/16m)|ψ|²ψ)`.
pub fn action_gradient(psi: &SectorSpinor, geom: &KKGeometry) -> Result<SectorSpinor> {
    let grid = psi.grid();
    let zero = TwoFormField::zeros(grid, crate::ValueClass::Imaginary);
    let r = cubic_residual(psi, geom, &zero, DiracPath::Frame)?;
    Ok(SectorSpinor {
        base: r.base.scale_real(2.0),
        q: r.q,
    })
}

/// Imaginary two-form `i·c·(e^{ij})` helper used in examples and checks.
pub fn imaginary_pair_form(i: usize, j: usize, c: f64) -> TwoFormFibre {
    TwoFormFibre::basis(i, j) * C64::new(0.0, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{random_gauge, random_spinor};
    use crate::{ValueClass, WeylValue};

    fn grid(n: usize) -> Grid4 {
        Grid4::new(n).unwrap()
    }

    #[test]
    fn geometry_validation() {
        let g = grid(4);
        assert!(KKGeometry::constant(GaugeField::zeros(g), 0.0, Charge::ONE).is_err());
        assert!(KKGeometry::constant(GaugeField::zeros(g), 1.0, Charge::from_twice(0)).is_err());
        let neg = ScalarField::from_real_fn(g, |x| x[0].sin());
        assert!(matches!(
            KKGeometry::varying(GaugeField::zeros(g), neg, Charge::ONE),
            Err(Error::NonPositiveRadius(_))
        ));
        let r = ScalarField::from_real_fn(g, |x| 2.0 + 0.5 * x[0].sin());
        let geom = KKGeometry::varying(GaugeField::zeros(g), r, Charge::ONE).unwrap();
        assert!(matches!(geom.mass(), Err(Error::VaryingRadius)));
        let psi = lift(&SpinorField::zeros(g, Chirality::Plus), Charge::ONE);
        assert!(matches!(dirac_y_frame(&psi, &geom), Err(Error::VaryingRadius)));
    }

    #[test]
    fn mass_for_radius_two() {
        let geom = KKGeometry::constant(GaugeField::zeros(grid(4)), 2.0, Charge::ONE).unwrap();
        assert_eq!(geom.mass().unwrap(), -0.5);
    }

    #[test]
    fn connection_coefficients_are_antisymmetric() {
        let g = grid(4);
        let geom = KKGeometry::constant(random_gauge(g, 1, 1).unwrap(), 1.3, Charge::HALF).unwrap();
        let conn = FrameConnection::new(&geom).unwrap();
        for idx in [0, 17, 200] {
            for a in 0..5 {
                for b in 0..5 {
                    for c in 0..5 {
                        let s = conn.omega(idx, a, b, c) + conn.omega(idx, a, c, b);
                        assert!(s.abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn spin_connection_is_clifford_compatible() {
        // [Ω_A, γ_B] = Σ_C ω_ABC γ_C
        let g = grid(4);
        let geom = KKGeometry::constant(random_gauge(g, 2, 1).unwrap(), 0.7, Charge::ONE).unwrap();
        let conn = FrameConnection::new(&geom).unwrap();
        let model = CliffordModel::get();
        let idx = 33;
        for a in 0..5 {
            let om = conn.spin_matrix(idx, a);
            for b in 0..5 {
                let gb = model.frame_gamma(b);
                let lhs = om * gb - gb * om;
                let rhs = (0..5).fold(Mat4::zeros(), |acc, c| {
                    acc + model.frame_gamma(c) * C64::new(conn.omega(idx, a, b, c), 0.0)
                });
                assert!((lhs - rhs).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn flat_connection_horizontal_derivative_is_lift() {
        let g = grid(4);
        let a = GaugeField::flat(g, [0.2, -0.4, 0.0, 1.0]);
        let geom = KKGeometry::constant(a.clone(), 1.0, Charge::HALF).unwrap();
        let phi = random_spinor(g, 3, 1, Chirality::Plus).unwrap();
        let psi = lift(&phi, Charge::HALF);
        for mu in 0..4 {
            let lhs = nabla_y(&psi, &geom, mu).unwrap();
            let rhs = covariant_derivative(&a, Charge::HALF, &phi, mu).unwrap();
            assert!((&lhs.base - &rhs).max_abs() < 1e-13);
        }
    }

    #[test]
    fn zero_spinor_maps_to_zero() {
        let g = grid(4);
        let geom = KKGeometry::constant(random_gauge(g, 1, 1).unwrap(), 1.0, Charge::ONE).unwrap();
        let psi = lift(&SpinorField::zeros(g, Chirality::Full), Charge::ONE);
        assert_eq!(nabla_y(&psi, &geom, 4).unwrap().base.max_abs(), 0.0);
        let mu = TwoFormField::zeros(g, ValueClass::Imaginary);
        let r = cubic_residual(&psi, &geom, &mu, DiracPath::Frame).unwrap();
        assert_eq!(r.base.max_abs(), 0.0);
        assert_eq!(gross_neveu_action(&psi, &geom).unwrap(), 0.0);
    }

    #[test]
    fn neutral_sector_constant_spinor_is_harmonic() {
        let g = grid(4);
        let geom = KKGeometry::constant(GaugeField::zeros(g), 1.0, Charge::ONE).unwrap();
        let base = SpinorField::from_fn(g, Chirality::Full, |_| {
            DiracValue::new(C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, 0.0), C64::new(0.0, 0.0))
        });
        let psi = lift(&base, Charge::from_twice(0));
        assert!(dirac_y_frame(&psi, &geom).unwrap().base.max_abs() < 1e-15);
    }

    #[test]
    fn constant_charged_spinor_pure_fibre_term() {
        // D^Y Q(φ₀) = −iγ(K)(q/r)φ₀ = m φ₀ for φ₀ ∈ S⁺ and A = 0.
        let g = grid(4);
        let r = 1.5;
        let q = Charge::from_twice(3);
        let geom = KKGeometry::constant(GaugeField::zeros(g), r, q).unwrap();
        let phi0 = WeylValue::new(C64::new(0.3, 0.1), C64::new(-1.0, 0.0));
        let psi = lift(&SpinorField::constant_weyl(g, phi0), q);
        let frame = dirac_y_frame(&psi, &geom).unwrap();
        let expected = embed_plus(&phi0) * C64::new(-q.value() / r, 0.0);
        assert!((frame.base.dirac_at(5) - expected).norm() < 1e-14);
        let reduced = dirac_y_reduced(&psi, &geom).unwrap();
        assert!((&frame.base - &reduced.base).max_abs() < 1e-14);
    }

    #[test]
    fn reduced_requires_positive_chirality() {
        let g = grid(4);
        let geom = KKGeometry::constant(GaugeField::zeros(g), 1.0, Charge::ONE).unwrap();
        let psi = lift(&SpinorField::zeros(g, Chirality::Full), Charge::ONE);
        assert!(matches!(dirac_y_reduced(&psi, &geom), Err(Error::Chirality { .. })));
    }

    #[test]
    fn lift_roundtrip_and_isometry() {
        let phi = random_spinor(grid(4), 8, 1, Chirality::Plus).unwrap();
        let psi = lift(&phi, Charge::HALF);
        assert_eq!(unlift(&psi), phi);
        assert_eq!(psi.norm(), l2_norm(&phi));
        let v = psi.value_at(3, std::f64::consts::PI);
        assert!((v + phi.dirac_at(3) * C64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
