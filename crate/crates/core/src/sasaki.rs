//! Kähler–Einstein solutions of the perturbed equations and the induced
//! Sasaki η-Einstein structure on the circle bundle, checked at a model
//! point.
//!
//! At the model point the Kähler form is `ω = e¹² + e³⁴`, which acts on `S⁺`
//! as `γ(iω) = 2·diag(1, −1)`. The spinors are constant, so only the
//! curvature equation carries content.

use serde::{Deserialize, Serialize};

use crate::clifford::{embed_plus, CliffordModel};
use crate::kaluza_klein::ricci_kk_with_base;
use crate::{Error, Mat2, Result, TwoFormFibre, WeylValue, C64};

/// `𝔰ᶜ_can` (determinant line `K⁻¹`) or its conjugate `𝔰ᶜ_can ⊗ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    Canonical,
    Conjugate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KEParameters {
    pub lambda: f64,
    pub t: f64,
    pub structure: Structure,
}

impl KEParameters {
    pub fn new(lambda: f64, t: f64, structure: Structure) -> Result<Self> {
        let p = Self { lambda, t, structure };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (l, t) = (self.lambda, self.t);
        if !l.is_finite() || !t.is_finite() || l == 0.0 {
            return Err(Error::OutOfRange(format!("λ = {l}, t = {t}")));
        }
        let ok = match self.structure {
            Structure::Canonical => t < -l,
            Structure::Conjugate => t > l,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{:?} requires {} (λ = {l}, t = {t})", self.structure, match self.structure {
                Structure::Canonical => "t < −λ",
                Structure::Conjugate => "t > λ",
            })))
        }
    }

    fn sign(&self) -> f64 {
        match self.structure {
            Structure::Canonical => 1.0,
            Structure::Conjugate => -1.0,
        }
    }
}

/// The Kähler form at the model point.
pub fn kahler_form() -> TwoFormFibre {
    TwoFormFibre::basis(0, 1) + TwoFormFibre::basis(2, 3)
}

/// Fibrewise solution data.
#[derive(Clone, Debug, PartialEq)]
pub struct KESolution {
    pub phi0: WeylValue,
    /// `γ(F⁺_{A₀})` on `S⁺`.
    pub gamma_f: Mat2,
    /// `γ(μ)` on `S⁺`, `μ = itω`.
    pub gamma_mu: Mat2,
    /// `γ(σ(φ₀, φ₀))` on `S⁺`.
    pub gamma_sigma: Mat2,
    /// `|γ(F⁺)φ₀ − γ(σ)φ₀ − γ(μ)φ₀|`.
    pub curvature_residual: f64,
}

/// `φ₀ = (2√(−λ−t), 0)` with `F = −iλω` (canonical) or
/// `φ₀ = (0, 2√(−λ+t))` with `F = iλω` (conjugate).
pub fn ke_solution(p: &KEParameters) -> Result<KESolution> {
    p.validate()?;
    let model = CliffordModel::get();
    let s = p.sign();
    let alpha = 2.0 * (-p.lambda - s * p.t).sqrt();
    let phi0 = match p.structure {
        Structure::Canonical => WeylValue::new(C64::new(alpha, 0.0), C64::new(0.0, 0.0)),
        Structure::Conjugate => WeylValue::new(C64::new(0.0, 0.0), C64::new(alpha, 0.0)),
    };
    let omega = kahler_form();
    let f = omega * C64::new(0.0, -s * p.lambda);
    let mu = omega * C64::new(0.0, p.t);
    let gamma_f = model.gamma_two_form_plus(&f.self_dual_part());
    let gamma_mu = model.gamma_two_form_plus(&mu);
    let gamma_sigma = model.gamma_two_form_plus(&model.sigma(&phi0));
    let curvature_residual = ((gamma_f - gamma_sigma - gamma_mu) * phi0).norm();
    Ok(KESolution {
        phi0,
        gamma_f,
        gamma_mu,
        gamma_sigma,
        curvature_residual,
    })
}

/// Mass, `|ψ|²` and eigenvalue of the lifted constant spinor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedEigenvalue {
    pub m: f64,
    pub norm_sq: f64,
    /// From the case table.
    pub nu: f64,
    /// `−(1/16m)|ψ|² + m − (1/8m)·ε_μ` with `ε_μ` the `γ(μ)` eigenvalue.
    pub nu_generic: f64,
    /// `λ/(4m) + m`.
    pub nu_closed: f64,
}

pub fn lifted_eigenvalue(p: &KEParameters) -> Result<LiftedEigenvalue> {
    p.validate()?;
    let (l, t) = (p.lambda, p.t);
    let s = p.sign();
    let m = -s * 0.25 * l.abs();
    let norm_sq = 4.0 * (-l - s * t);
    let nu = match (p.structure, l < 0.0) {
        (Structure::Canonical, true) => 1.0 - 0.25 * l.abs(),
        (Structure::Canonical, false) => -1.0 - 0.25 * l,
        (Structure::Conjugate, true) => -1.0 + 0.25 * l.abs(),
        (Structure::Conjugate, false) => 1.0 + 0.25 * l,
    };
    let eps_mu = 2.0 * s * t;
    Ok(LiftedEigenvalue {
        m,
        norm_sq,
        nu,
        nu_generic: -norm_sq / (16.0 * m) + m - eps_mu / (8.0 * m),
        nu_closed: l / (4.0 * m) + m,
    })
}

/// `D^Y ψ` at the model point computed from the Clifford model: the reduced
/// operator on a constant spinor is `m − (1/8m)γ(F_{A_n}⁺)` with
/// `F_{A_n} = F_{A₀}`.
pub fn lifted_eigenvalue_from_clifford(p: &KEParameters) -> Result<f64> {
    let sol = ke_solution(p)?;
    let le = lifted_eigenvalue(p)?;
    let m = le.m;
    let out = sol.phi0 * C64::new(m, 0.0) - sol.gamma_f * sol.phi0 * C64::new(1.0 / (8.0 * m), 0.0);
    let psi = embed_plus(&sol.phi0);
    let n2 = psi.norm_squared();
    Ok((embed_plus(&out).dotc(&psi) / n2).re)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SasakiReport {
    pub lambda: f64,
    /// Non-spin radius `2/|λ|`.
    pub radius: f64,
    /// Spin radius `4/|λ|`.
    pub radius_spin: f64,
    pub alpha_g: f64,
    pub alpha_eta: f64,
    pub scal: f64,
    pub friedrich_gap: f64,
    /// Largest deviation between the Kaluza–Klein Ricci values and
    /// `(λ−2)g + (6−λ)η⊗η`, over both radius conventions.
    pub closed_form_deviation: f64,
}

/// Ricci data of `g_Y` from [`ricci_kk_with_base`] with `Ric_X = λg`.
pub fn sasaki_curvature_report(lambda: f64) -> Result<SasakiReport> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::OutOfRange(format!("λ = {lambda}")));
    }
    let mut ric_x = [[0.0; 4]; 4];
    for (i, row) in ric_x.iter_mut().enumerate() {
        row[i] = lambda;
    }
    let omega = kahler_form();
    let closed_g = lambda - 2.0;
    let closed_eta = 6.0 - lambda;
    let mut dev: f64 = 0.0;
    let mut measured = (0.0, 0.0);
    // Non-spin: A = A_can⁻¹, r = 2/|λ|. Spin: A = ½A_can⁻¹, r = 4/|λ|.
    for (scale, r) in [(1.0, 2.0 / lambda.abs()), (0.5, 4.0 / lambda.abs())] {
        let f = omega * C64::new(0.0, -scale * lambda);
        let horiz = ricci_kk_with_base(&f, r, &ric_x, 0, 0);
        let vert = ricci_kk_with_base(&f, r, &ric_x, 4, 4);
        let off = (0..4)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .map(|(i, j)| ricci_kk_with_base(&f, r, &ric_x, i, j).abs())
            .fold(0.0_f64, f64::max);
        let diag = (0..4)
            .map(|i| (ricci_kk_with_base(&f, r, &ric_x, i, i) - closed_g).abs())
            .fold(0.0_f64, f64::max);
        dev = dev.max(diag).max(off).max((vert - (closed_g + closed_eta)).abs());
        if scale == 1.0 {
            measured = (horiz, vert - horiz);
        }
    }
    Ok(SasakiReport {
        lambda,
        radius: 2.0 / lambda.abs(),
        radius_spin: 4.0 / lambda.abs(),
        alpha_g: measured.0,
        alpha_eta: measured.1,
        scal: 4.0 * measured.0 + (measured.0 + measured.1),
        friedrich_gap: friedrich_gap(lambda),
        closed_form_deviation: dev,
    })
}

/// `(1 + λ/4)² − (5/4)(λ − 1)`, which equals `(λ − 6)²/16`.
pub fn friedrich_gap(lambda: f64) -> f64 {
    (1.0 + 0.25 * lambda).powi(2) - 1.25 * (lambda - 1.0)
}

pub fn friedrich_gap_square(lambda: f64) -> f64 {
    (lambda - 6.0).powi(2) / 16.0
}

/// One line of the `ke-report` table. Both structures use `|ψ|² = 16`,
/// i.e. `t = −λ − 4` (canonical) and `t = λ + 4` (conjugate); `m` is the
/// conjugate structure's mass, the canonical one is `−m`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KERow {
    pub lambda: f64,
    pub r: f64,
    pub m: f64,
    pub norm_sq: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
    pub alpha_g: f64,
    pub alpha_eta: f64,
    pub scal: f64,
    pub gap: f64,
}

pub fn ke_row(lambda: f64) -> Result<KERow> {
    let conj = lifted_eigenvalue(&KEParameters::new(lambda, lambda + 4.0, Structure::Conjugate)?)?;
    let can = lifted_eigenvalue(&KEParameters::new(lambda, -lambda - 4.0, Structure::Canonical)?)?;
    let rep = sasaki_curvature_report(lambda)?;
    Ok(KERow {
        lambda,
        r: rep.radius,
        m: conj.m,
        norm_sq: conj.norm_sq,
        nu_plus: conj.nu,
        nu_minus: can.nu,
        alpha_g: rep.alpha_g,
        alpha_eta: rep.alpha_eta,
        scal: rep.scal,
        gap: rep.friedrich_gap,
    })
}
