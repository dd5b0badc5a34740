//! Fibrewise Clifford algebra for dimensions 4 and 5.
//!
//! Conventions (frozen):
//!
//! * `v·w + w·v = −2 g(v, w)`.
//! * Chiral basis: `γ_μ = [[0, τ_μ], [−τ_μ†, 0]]` with
//!   `τ = (iσ₁, iσ₂, iσ₃, 1)`. `S⁺` is spanned by components 0 and 1.
//! * `dvol = γ₁γ₂γ₃γ₄`, which acts as `−1` on `S⁺` and `+1` on `S⁻`.
//! * The unit fibre vector acts as `γ_K = i·dvol`.
//! * Two-forms act by `γ(ω) = Σ_{i<j} ω_ij γ_i γ_j`.
//! * Charge conjugation is `J(φ) = C·φ̄` with `C γ̄_μ = γ_μ C`, `C` unitary,
//!   phase fixed so that its first dominant entry is real and positive.
//!   `J` squares to `−1`; the spinor modules are quaternionic.

use std::sync::OnceLock;

use nalgebra::{DMatrix, Matrix2, Matrix3, Matrix4, Vector2, Vector3, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::twoform::{TwoFormFibre, ValueClass, PAIRS};
use crate::{Error, Result, C64};

pub type Mat4 = Matrix4<C64>;
pub type Mat2 = Matrix2<C64>;
/// Two components in the chosen frame of `S⁺` (or `S⁻`).
pub type WeylValue = Vector2<C64>;
/// Four components; `S⁺` occupies components 0–1.
pub type DiracValue = Vector4<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Fixed matrix model of Clifford multiplication on `Δ₄ ≅ Δ₅ ≅ ℂ⁴`.
#[derive(Clone, Debug)]
pub struct CliffordModel {
    gamma: [Mat4; 4],
    gamma_k: Mat4,
    dvol: Mat4,
    weyl_plus: Mat4,
    weyl_minus: Mat4,
    pair_products: [Mat4; 6],
    sd_basis: [TwoFormFibre; 3],
    asd_basis: [TwoFormFibre; 3],
    // γ(i·sd_k) restricted to S⁺; Hermitian and trace-free.
    sd_action: [Mat2; 3],
    sd_gram_inv: Matrix3<f64>,
    conj: Mat4,
}

fn pauli() -> [Mat2; 3] {
    [
        Mat2::new(ZERO, ONE, ONE, ZERO),
        Mat2::new(ZERO, -I, I, ZERO),
        Mat2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

fn block(ul: &Mat2, ur: &Mat2, ll: &Mat2, lr: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(ul);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(ur);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(ll);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(lr);
    m
}

/// Solve `C γ̄_μ = γ_μ C` for all μ and normalize `C` to a unitary.
fn conjugation_intertwiner(gamma: &[Mat4; 4]) -> Mat4 {
    // Row-major vec(C): unknown index 4r + s.
    let mut sys = DMatrix::<C64>::zeros(64, 16);
    for (mu, g) in gamma.iter().enumerate() {
        let gbar = g.map(|z| z.conj());
        for r in 0..4 {
            for s in 0..4 {
                let row = 16 * mu + 4 * r + s;
                for t in 0..4 {
                    // (C γ̄)_{rs} = Σ_t C_{rt} γ̄_{ts}
                    sys[(row, 4 * r + t)] += gbar[(t, s)];
                    // (γ C)_{rs} = Σ_t γ_{rt} C_{ts}
                    sys[(row, 4 * t + s)] -= g[(r, t)];
                }
            }
        }
    }
    let svd = sys.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let mut c = Mat4::from_fn(|r, s| v_t[(k, 4 * r + s)].conj());
    let scale = (c.adjoint() * c)[(0, 0)].re.sqrt();
    c /= C64::new(scale, 0.0);
    let peak = c.iter().fold(0.0_f64, |m, z| m.max(z.norm()));
    let lead = c
        .transpose()
        .iter()
        .copied()
        .find(|z| z.norm() > 0.5 * peak)
        .unwrap_or(ONE);
    c * (lead.conj() / lead.norm())
}

impl CliffordModel {
    /// Build the model. Deterministic: every call returns the same matrices.
    pub fn build() -> Self {
        let [s1, s2, s3] = pauli();
        let tau = [s1 * I, s2 * I, s3 * I, Mat2::identity()];
        let z = Mat2::zeros();
        let gamma: [Mat4; 4] = std::array::from_fn(|m| block(&z, &tau[m], &(-tau[m].adjoint()), &z));

        let mut dvol = gamma[0] * gamma[1] * gamma[2] * gamma[3];
        // Orientation sign: dvol must act as −1 on the S⁺ block.
        if dvol[(0, 0)].re > 0.0 {
            dvol = -dvol;
        }
        let gamma_k = dvol * I;
        let weyl_plus = (Mat4::identity() - dvol) * C64::new(0.5, 0.0);
        let weyl_minus = (Mat4::identity() + dvol) * C64::new(0.5, 0.0);
        let pair_products = PAIRS.map(|(i, j)| gamma[i] * gamma[j]);

        let sd_basis = [
            TwoFormFibre::real([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]),
            TwoFormFibre::real([0.0, 1.0, 0.0, 0.0, -1.0, 0.0]),
            TwoFormFibre::real([0.0, 0.0, 1.0, 1.0, 0.0, 0.0]),
        ];
        let asd_basis = [
            TwoFormFibre::real([1.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
            TwoFormFibre::real([0.0, 1.0, 0.0, 0.0, 1.0, 0.0]),
            TwoFormFibre::real([0.0, 0.0, 1.0, -1.0, 0.0, 0.0]),
        ];

        let act = |w: &TwoFormFibre| -> Mat4 {
            w.coeffs
                .iter()
                .zip(pair_products.iter())
                .fold(Mat4::zeros(), |acc, (c, p)| acc + p * *c)
        };
        let sd_action = sd_basis.map(|w| {
            let m = act(&(w * I));
            m.fixed_view::<2, 2>(0, 0).into_owned()
        });
        let gram = Matrix3::from_fn(|k, l| (sd_action[k] * sd_action[l]).trace().re);
        let sd_gram_inv = gram
            .try_inverse()
            .expect("self-dual action basis is linearly independent");
        let conj = conjugation_intertwiner(&gamma);

        Self {
            gamma,
            gamma_k,
            dvol,
            weyl_plus,
            weyl_minus,
            pair_products,
            sd_basis,
            asd_basis,
            sd_action,
            sd_gram_inv,
            conj,
        }
    }

    /// Shared, lazily built model.
    pub fn get() -> &'static CliffordModel {
        static MODEL: OnceLock<CliffordModel> = OnceLock::new();
        MODEL.get_or_init(CliffordModel::build)
    }

    pub fn gamma(&self, mu: usize) -> &Mat4 {
        &self.gamma[mu]
    }

    pub fn gammas(&self) -> &[Mat4; 4] {
        &self.gamma
    }

    /// Clifford action of the unit vertical vector.
    pub fn gamma_k(&self) -> &Mat4 {
        &self.gamma_k
    }

    /// Five-dimensional frame `(e₁*, …, e₄*, K/r)`; index 4 is the fibre.
    pub fn frame_gamma(&self, a: usize) -> &Mat4 {
        if a < 4 {
            &self.gamma[a]
        } else {
            &self.gamma_k
        }
    }

    pub fn dvol(&self) -> &Mat4 {
        &self.dvol
    }

    pub fn weyl_plus(&self) -> &Mat4 {
        &self.weyl_plus
    }

    pub fn weyl_minus(&self) -> &Mat4 {
        &self.weyl_minus
    }

    pub fn sd_basis(&self) -> &[TwoFormFibre; 3] {
        &self.sd_basis
    }

    pub fn asd_basis(&self) -> &[TwoFormFibre; 3] {
        &self.asd_basis
    }

    /// `γ_i γ_j` for `PAIRS[k]`.
    pub fn pair_product(&self, k: usize) -> &Mat4 {
        &self.pair_products[k]
    }

    pub fn conjugation_matrix(&self) -> &Mat4 {
        &self.conj
    }

    /// `γ(v) = Σ v_μ γ_μ`.
    pub fn gamma_vector(&self, v: &[f64; 4]) -> Mat4 {
        self.gamma
            .iter()
            .zip(v.iter())
            .fold(Mat4::zeros(), |acc, (g, &c)| acc + g * C64::new(c, 0.0))
    }

    /// `γ(v)` for a complexified covector.
    pub fn gamma_covector(&self, v: &[C64; 4]) -> Mat4 {
        self.gamma
            .iter()
            .zip(v.iter())
            .fold(Mat4::zeros(), |acc, (g, &c)| acc + g * c)
    }

    /// The `S⁺ → S⁻` block of `γ(v)`.
    pub fn gamma_vector_restricted(&self, v: &[f64; 4]) -> Mat2 {
        minus_plus_block(&self.gamma_vector(v))
    }

    /// `γ(ω) = Σ_{i<j} ω_ij γ_i γ_j`.
    pub fn gamma_two_form(&self, w: &TwoFormFibre) -> Mat4 {
        w.coeffs
            .iter()
            .zip(self.pair_products.iter())
            .fold(Mat4::zeros(), |acc, (c, p)| acc + p * *c)
    }

    /// `γ(ω)` restricted to `S⁺`.
    pub fn gamma_two_form_plus(&self, w: &TwoFormFibre) -> Mat2 {
        plus_block(&self.gamma_two_form(w))
    }

    /// Inverse of `γ|_{S⁺}` on imaginary self-dual forms: the unique
    /// `τ ∈ iΛ²₊` with `γ(τ)|_{S⁺} = h` for Hermitian trace-free `h`.
    pub fn form_from_hermitian(&self, h: &Mat2) -> TwoFormFibre {
        let rhs = Vector3::from_fn(|k, _| (self.sd_action[k] * h).trace().re);
        let c = self.sd_gram_inv * rhs;
        let w = (0..3).fold(TwoFormFibre::zero(), |acc, k| acc + self.sd_basis[k] * c[k]);
        (w * I).with_class(ValueClass::Imaginary)
    }

    /// `σ(φ, φ) ∈ iΛ²₊` with `γ(σ)|_{S⁺} = φφ† − ½|φ|²`.
    pub fn sigma(&self, phi: &WeylValue) -> TwoFormFibre {
        self.form_from_hermitian(&sigma_endomorphism(phi))
    }

    /// `(γ(σ(φ,φ))φ, ½|φ|²φ)`.
    pub fn sigma_cubic_check(&self, phi: &WeylValue) -> (WeylValue, WeylValue) {
        let lhs = self.gamma_two_form_plus(&self.sigma(phi)) * phi;
        let rhs = phi * C64::new(0.5 * phi.norm_squared(), 0.0);
        (lhs, rhs)
    }

    /// Whether `γ(τ)φ = 0 ⇔ (τ = 0 or φ = 0)` holds for this pair, deciding
    /// "zero" at `tol`.
    pub fn kernel_dichotomy_check(&self, tau: &TwoFormFibre, phi: &WeylValue, tol: f64) -> bool {
        let image = self.gamma_two_form_plus(tau) * phi;
        let in_kernel = image.norm() <= tol;
        let trivial = tau.norm() <= tol || phi.norm() <= tol;
        in_kernel == trivial
    }

    /// Charge conjugation `J(φ) = C φ̄`. Anti-linear, isometric, preserves
    /// chirality, commutes with real Clifford multiplication, `J² = −1`.
    pub fn charge_conjugate_fibre(&self, phi: &DiracValue) -> DiracValue {
        self.conj * phi.map(|z| z.conj())
    }

    /// Charge conjugation of a positive Weyl value.
    pub fn charge_conjugate_weyl(&self, phi: &WeylValue) -> WeylValue {
        project_plus(&self.charge_conjugate_fibre(&embed_plus(phi)))
    }

    /// Five-dimensional conjugation `dvol ∘ J`, which anticommutes with all
    /// five frame gammas (the orientation of `Y` flips with `K ↦ −K`).
    pub fn charge_conjugate_fibre5(&self, psi: &DiracValue) -> DiracValue {
        self.dvol * self.charge_conjugate_fibre(psi)
    }

    /// Randomized check of the fibrewise identities.
    pub fn identity_suite(&self, seed: u64, trials: usize) -> Result<IdentityReport> {
        if trials == 0 {
            return Err(Error::NoTrials);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = IdentityAccumulator::default();

        // Deterministic relations, independent of trials.
        let mut dev4 = 0.0_f64;
        let mut dev5 = 0.0_f64;
        for a in 0..5 {
            for b in 0..5 {
                let delta = if a == b { 2.0 } else { 0.0 };
                let ga = self.frame_gamma(a);
                let gb = self.frame_gamma(b);
                let m = ga * gb + gb * ga + Mat4::identity() * C64::new(delta, 0.0);
                let d = max_abs(&m);
                if a < 4 && b < 4 {
                    dev4 = dev4.max(d);
                }
                dev5 = dev5.max(d);
            }
        }
        acc.record("clifford_relations_4d", dev4);
        acc.record("clifford_relations_5d", dev5);
        acc.record(
            "gamma_k_squared",
            max_abs(&(self.gamma_k * self.gamma_k + Mat4::identity())),
        );

        for _ in 0..trials {
            let phi_p = random_weyl(&mut rng);
            let phi_m = random_weyl(&mut rng);
            let psi_p = embed_plus(&phi_p);
            let psi_m = embed_minus(&phi_m);
            acc.record(
                "dvol_on_weyl",
                (self.dvol * psi_p + psi_p).norm().max((self.dvol * psi_m - psi_m).norm()),
            );

            let w = random_complex_form(&mut rng);
            let (wp, wm) = w.selfdual_split();
            let gp = self.gamma_two_form(&wp);
            let gm = self.gamma_two_form(&wm);
            acc.record(
                "dvol_on_two_forms",
                max_abs(&(self.dvol * gp + gp)).max(max_abs(&(self.dvol * gm - gm))),
            );
            acc.record(
                "anti_self_dual_kills_plus",
                max_abs(&(self.weyl_plus * gm * self.weyl_plus)),
            );
            acc.record(
                "self_dual_trace_free_on_plus",
                plus_block(&gp).trace().norm() + max_abs(&(self.weyl_minus * gp * self.weyl_minus)),
            );

            let tau = random_imaginary_self_dual(&mut rng);
            let gt = self.gamma_two_form_plus(&tau);
            acc.record(
                "gamma_tau_squared",
                (gt * gt * phi_p - phi_p * C64::new(2.0 * tau.norm_sq(), 0.0)).norm(),
            );
            acc.record(
                "gamma_tau_hermitian",
                max_abs2(&(gt - gt.adjoint())) + gt.trace().norm(),
            );
            acc.record_flag(
                "kernel_dichotomy",
                self.kernel_dichotomy_check(&tau, &phi_p, 1e-12)
                    && self.kernel_dichotomy_check(&TwoFormFibre::zero(), &phi_p, 1e-12)
                    && self.kernel_dichotomy_check(&tau, &WeylValue::zeros(), 1e-12),
            );

            let lhs = (0..4).fold(Mat4::zeros(), |acc, l| {
                acc + self.gamma[l] * self.gamma_covector(&w.interior(l))
            });
            acc.record(
                "interior_trace_formula",
                max_abs(&(lhs - self.gamma_two_form(&w) * C64::new(2.0, 0.0))),
            );

            let (l, r) = self.sigma_cubic_check(&phi_p);
            acc.record("sigma_cubic", (l - r).norm());
            let s = self.sigma(&phi_p);
            acc.record(
                "sigma_imaginary_self_dual",
                s.real_defect() + s.self_dual_defect(),
            );
            acc.record(
                "sigma_endomorphism",
                max_abs2(&(self.gamma_two_form_plus(&s) - sigma_endomorphism(&phi_p))),
            );
            let h = random_hermitian_trace_free(&mut rng);
            acc.record(
                "sigma_inverse_roundtrip",
                max_abs2(&(self.gamma_two_form_plus(&self.form_from_hermitian(&h)) - h)),
            );

            acc.record("vertical_on_lifted_plus", (self.gamma_k * psi_p + psi_p * I).norm());
            let lhs = self.gamma_k * self.gamma_two_form(&w) * psi_p;
            let rhs = embed_plus(&(self.gamma_two_form_plus(&wp) * phi_p)) * (-I);
            acc.record("vertical_two_form_on_plus", (lhs - rhs).norm());

            let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let psi = random_dirac(&mut rng);
            let gv = self.gamma_vector(&v);
            acc.record(
                "conjugation_intertwines_real_vectors",
                (gv * self.charge_conjugate_fibre(&psi) - self.charge_conjugate_fibre(&(gv * psi)))
                    .norm(),
            );
            acc.record(
                "conjugation_isometry",
                (self.charge_conjugate_fibre(&psi).norm() - psi.norm()).abs(),
            );
        }
        Ok(acc.finish(seed, trials, IDENTITY_THRESHOLD))
    }
}

/// Threshold applied to every fibrewise identity.
pub const IDENTITY_THRESHOLD: f64 = 1e-12;

/// `CliffordModel::build`, as a free function.
pub fn build_clifford_model() -> CliffordModel {
    CliffordModel::build()
}

/// `φφ† − ½|φ|² Id`.
pub fn sigma_endomorphism(phi: &WeylValue) -> Mat2 {
    let outer = phi * phi.adjoint();
    outer - Mat2::identity() * C64::new(0.5 * phi.norm_squared(), 0.0)
}

pub fn plus_block(m: &Mat4) -> Mat2 {
    m.fixed_view::<2, 2>(0, 0).into_owned()
}

pub fn minus_block(m: &Mat4) -> Mat2 {
    m.fixed_view::<2, 2>(2, 2).into_owned()
}

/// Block mapping `S⁺` into `S⁻`.
pub fn minus_plus_block(m: &Mat4) -> Mat2 {
    m.fixed_view::<2, 2>(2, 0).into_owned()
}

pub fn embed_plus(phi: &WeylValue) -> DiracValue {
    DiracValue::new(phi[0], phi[1], ZERO, ZERO)
}

pub fn embed_minus(phi: &WeylValue) -> DiracValue {
    DiracValue::new(ZERO, ZERO, phi[0], phi[1])
}

pub fn project_plus(psi: &DiracValue) -> WeylValue {
    WeylValue::new(psi[0], psi[1])
}

pub fn project_minus(psi: &DiracValue) -> WeylValue {
    WeylValue::new(psi[2], psi[3])
}

fn max_abs(m: &Mat4) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn max_abs2(m: &Mat2) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

fn cgauss(rng: &mut impl Rng) -> C64 {
    C64::new(gauss(rng), gauss(rng))
}

fn random_weyl(rng: &mut impl Rng) -> WeylValue {
    WeylValue::new(cgauss(rng), cgauss(rng))
}

fn random_dirac(rng: &mut impl Rng) -> DiracValue {
    DiracValue::new(cgauss(rng), cgauss(rng), cgauss(rng), cgauss(rng))
}

fn random_complex_form(rng: &mut impl Rng) -> TwoFormFibre {
    TwoFormFibre::new(std::array::from_fn(|_| cgauss(rng)), ValueClass::Complex)
}

fn random_imaginary_self_dual(rng: &mut impl Rng) -> TwoFormFibre {
    TwoFormFibre::imaginary(std::array::from_fn(|_| gauss(rng))).self_dual_part()
}

fn random_hermitian_trace_free(rng: &mut impl Rng) -> Mat2 {
    let a = gauss(rng);
    let b = cgauss(rng);
    Mat2::new(C64::new(a, 0.0), b, b.conj(), C64::new(-a, 0.0))
}

/// One line of an identity report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// Maximum deviations of the fibrewise identities over random samples.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl IdentityReport {
    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Default)]
struct IdentityAccumulator {
    entries: Vec<(&'static str, f64)>,
}

impl IdentityAccumulator {
    fn record(&mut self, name: &'static str, dev: f64) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some((_, d)) => *d = if dev.is_nan() { dev } else { d.max(dev) },
            None => self.entries.push((name, dev)),
        }
    }

    // Boolean checks count failures; any failure exceeds the threshold.
    fn record_flag(&mut self, name: &'static str, ok: bool) {
        let failures = self
            .entries
            .iter()
            .find(|(n, _)| *n == name)
            .map_or(0.0, |(_, d)| *d);
        let value = failures + if ok { 0.0 } else { 1.0 };
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some((_, d)) => *d = value,
            None => self.entries.push((name, value)),
        }
    }

    fn finish(self, seed: u64, trials: usize, threshold: f64) -> IdentityReport {
        let checks: Vec<IdentityCheck> = self
            .entries
            .into_iter()
            .map(|(name, dev)| IdentityCheck {
                name: name.to_string(),
                max_deviation: dev,
                threshold,
                pass: dev <= threshold,
            })
            .collect();
        let pass = checks.iter().all(|c| c.pass);
        IdentityReport {
            seed,
            trials,
            checks,
            pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> &'static CliffordModel {
        CliffordModel::get()
    }

    #[test]
    fn gamma_one_squares_to_minus_identity() {
        let g = model().gamma(0);
        assert!(max_abs(&(g * g + Mat4::identity())) <= 1e-15);
    }

    #[test]
    fn dvol_acts_as_minus_one_on_first_basis_vector() {
        let e = DiracValue::new(ONE, ZERO, ZERO, ZERO);
        assert!((model().dvol() * e + e).norm() <= 1e-15);
    }

    #[test]
    fn gamma_k_squares_to_minus_identity() {
        let k = model().gamma_k();
        assert!(max_abs(&(k * k + Mat4::identity())) <= 1e-15);
    }

    #[test]
    fn model_is_deterministic() {
        let a = CliffordModel::build();
        let b = CliffordModel::build();
        assert_eq!(a.gamma, b.gamma);
        assert_eq!(a.conj, b.conj);
    }

    #[test]
    fn gamma_vector_basic_cases() {
        let m = model();
        assert_eq!(m.gamma_vector(&[1.0, 0.0, 0.0, 0.0]), *m.gamma(0));
        assert_eq!(m.gamma_vector(&[0.0; 4]), Mat4::zeros());
        let g = m.gamma_vector(&[1.0, 1.0, 0.0, 0.0]);
        assert!(max_abs(&(g * g + Mat4::identity() * C64::new(2.0, 0.0))) <= 1e-15);
        // restricted block is the S⁺ → S⁻ part
        let r = m.gamma_vector_restricted(&[0.0, 0.0, 0.0, 1.0]);
        assert!(max_abs2(&(r + Mat2::identity())) <= 1e-15);
    }

    #[test]
    fn gamma_vector_swaps_chirality() {
        let m = model();
        let g = m.gamma_vector(&[0.3, -1.0, 2.0, 0.7]);
        assert!(max_abs(&(m.weyl_plus() * g * m.weyl_plus())) <= 1e-15);
        assert!(max_abs(&(m.weyl_minus() * g * m.weyl_minus())) <= 1e-15);
    }

    #[test]
    fn kaehler_form_acts_diagonally() {
        // γ(iω) = 2 diag(1, −1) on S⁺ for ω = e¹² + e³⁴.
        let w = TwoFormFibre::imaginary([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let g = model().gamma_two_form_plus(&w);
        let expected = Mat2::new(C64::new(2.0, 0.0), ZERO, ZERO, C64::new(-2.0, 0.0));
        assert!(max_abs2(&(g - expected)) <= 1e-15);
    }

    #[test]
    fn gamma_of_zero_form_is_zero() {
        assert_eq!(model().gamma_two_form(&TwoFormFibre::zero()), Mat4::zeros());
    }

    #[test]
    fn unit_imaginary_self_dual_squares_to_two() {
        let w = TwoFormFibre::imaginary([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]) * (0.5_f64.sqrt());
        assert!((w.norm_sq() - 1.0).abs() < 1e-15);
        let g = model().gamma_two_form_plus(&w);
        assert!(max_abs2(&(g * g - Mat2::identity() * C64::new(2.0, 0.0))) <= 1e-14);
    }

    #[test]
    fn sigma_matches_closed_form_matrix() {
        let m = model();
        let alpha = C64::new(0.7, -0.2);
        let beta = C64::new(-1.1, 0.4);
        let phi = WeylValue::new(alpha, beta);
        let g = m.gamma_two_form_plus(&m.sigma(&phi));
        let a2 = alpha.norm_sqr();
        let b2 = beta.norm_sqr();
        let expected = Mat2::new(
            C64::new(0.5 * (a2 - b2), 0.0),
            alpha * beta.conj(),
            alpha.conj() * beta,
            C64::new(0.5 * (b2 - a2), 0.0),
        );
        assert!(max_abs2(&(g - expected)) <= 1e-14);
    }

    #[test]
    fn sigma_of_unit_spinor() {
        let m = model();
        let g = m.gamma_two_form_plus(&m.sigma(&WeylValue::new(ONE, ZERO)));
        let expected = Mat2::new(C64::new(0.5, 0.0), ZERO, ZERO, C64::new(-0.5, 0.0));
        assert!(max_abs2(&(g - expected)) <= 1e-15);
        assert_eq!(m.sigma(&WeylValue::zeros()).norm(), 0.0);
    }

    #[test]
    fn sigma_cubic_examples() {
        let m = model();
        let (l, r) = m.sigma_cubic_check(&WeylValue::new(ONE, ZERO));
        assert!((l - WeylValue::new(C64::new(0.5, 0.0), ZERO)).norm() <= 1e-15);
        assert!((r - l).norm() <= 1e-15);
        let (l, r) = m.sigma_cubic_check(&WeylValue::new(ONE, ONE));
        assert!((l - WeylValue::new(ONE, ONE)).norm() <= 1e-14);
        assert!((r - WeylValue::new(ONE, ONE)).norm() <= 1e-15);
        let (l, r) = m.sigma_cubic_check(&WeylValue::zeros());
        assert_eq!(l.norm() + r.norm(), 0.0);
    }

    #[test]
    fn kernel_dichotomy_examples() {
        let m = model();
        let tau = TwoFormFibre::imaginary([1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        let phi = WeylValue::new(ONE, C64::new(0.0, 2.0));
        assert!((m.gamma_two_form_plus(&tau) * phi).norm() > 0.1);
        assert!(m.kernel_dichotomy_check(&tau, &phi, 1e-12));
        assert!(m.kernel_dichotomy_check(&TwoFormFibre::zero(), &phi, 1e-12));
    }

    #[test]
    fn conjugation_is_quaternionic() {
        let m = model();
        let phi = DiracValue::new(ONE, ZERO, ZERO, ZERO);
        let twice = m.charge_conjugate_fibre(&m.charge_conjugate_fibre(&phi));
        assert!((twice + phi).norm() <= 1e-14);
        let four = m.charge_conjugate_fibre(&m.charge_conjugate_fibre(&twice));
        assert!((four - phi).norm() <= 1e-14);
    }

    #[test]
    fn conjugation_is_antilinear_and_preserves_chirality() {
        let m = model();
        let phi0 = DiracValue::new(C64::new(0.3, 0.1), C64::new(-1.0, 0.5), ZERO, ZERO);
        let lhs = m.charge_conjugate_fibre(&(phi0 * I));
        let rhs = m.charge_conjugate_fibre(&phi0) * (-I);
        assert!((lhs - rhs).norm() <= 1e-15);
        let c = m.charge_conjugate_fibre(&phi0);
        assert!((m.weyl_minus() * c).norm() <= 1e-15);
    }

    #[test]
    fn five_dimensional_conjugation_anticommutes_with_frame() {
        let m = model();
        let psi = DiracValue::new(C64::new(0.3, 0.1), C64::new(-1.0, 0.5), ONE, I);
        for a in 0..5 {
            let g = m.frame_gamma(a);
            let lhs = m.charge_conjugate_fibre5(&(g * psi));
            let rhs = -(g * m.charge_conjugate_fibre5(&psi));
            assert!((lhs - rhs).norm() <= 1e-14, "frame index {a}");
        }
    }

    #[test]
    fn identity_suite_passes_and_rejects_zero_trials() {
        let m = model();
        let report = m.identity_suite(1, 100).unwrap();
        for c in &report.checks {
            assert!(c.pass, "{} deviates by {:e}", c.name, c.max_deviation);
        }
        assert!(report.pass);
        assert!(matches!(m.identity_suite(1, 0), Err(Error::NoTrials)));
    }
}
