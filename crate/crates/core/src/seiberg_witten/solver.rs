//! Matrix-free Levenberg–Marquardt for `min ‖R_D‖² + ‖R_C‖²` over the
//! oscillatory potential, the holonomies and `φ`.
//!
//! Damped normal equations `(J*J + λ)δ = −J*R` are solved by conjugate
//! gradients with a Fourier-diagonal preconditioner. Gauge directions lie in
//! the kernel of `J` and are left unfixed; the damping keeps the system
//! definite.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{sw_residual, SWConfiguration, SWResidual};
use crate::clifford::CliffordModel;
use crate::torus::spectral::{fft4, ifft4, wavenumber};
use crate::torus::{curvature, dirac_x, Chirality, GaugeField, Grid4, SpectralPartial, SpinorField, TwoFormField};
use crate::twoform::{ValueClass, PAIRS};
use crate::{par, DiracValue, Error, Mat2, Result, C64};

/// Knobs for [`solve_least_squares`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Stop once the objective is at or below this value.
    pub tolerance: f64,
    /// Initial Levenberg–Marquardt damping.
    pub damping: f64,
    pub cg_max_iterations: usize,
    pub cg_tolerance: f64,
    pub stagnation_window: usize,
    pub stagnation_relative: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iterations: 30,
            tolerance: 1e-12,
            damping: 1e-4,
            cg_max_iterations: 200,
            cg_tolerance: 1e-10,
            stagnation_window: 5,
            stagnation_relative: 1e-14,
        }
    }
}

/// Iteration budget used by the reference runs, fixed once and not tuned
/// per configuration.
pub const FROZEN_ITERATION_BUDGET: usize = 10;

impl SolverOptions {
    /// Defaults with the iteration budget set to [`FROZEN_ITERATION_BUDGET`].
    pub fn frozen() -> Self {
        Self {
            max_iterations: FROZEN_ITERATION_BUDGET,
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Converged,
    MaxIterations,
    Stagnation,
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StopReason::Converged => "converged",
            StopReason::MaxIterations => "max-iterations",
            StopReason::Stagnation => "stagnation",
        })
    }
}

/// One row of the convergence log.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogRecord {
    pub iteration: usize,
    pub objective: f64,
    pub step_norm: f64,
    pub damping: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceLog {
    pub records: Vec<LogRecord>,
    pub stop: StopReason,
    pub iterations: usize,
    pub accepted_steps: usize,
}

impl ConvergenceLog {
    pub fn initial_objective(&self) -> f64 {
        self.records.first().map_or(f64::NAN, |r| r.objective)
    }

    pub fn final_objective(&self) -> f64 {
        self.records.last().map_or(f64::NAN, |r| r.objective)
    }

    /// CSV with header `iteration,objective,step_norm,damping`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for r in &self.records {
            out.serialize(r)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Tangent vector in parameter space. The inner product is the Euclidean one
/// on the sample values.
#[derive(Clone, Debug, PartialEq)]
pub struct Tangent {
    /// Oscillatory potential; kept mean-free.
    pub b: [Vec<f64>; 4],
    pub holonomy: [f64; 4],
    pub phi: [Vec<C64>; 2],
}

impl Tangent {
    pub fn zeros(grid: Grid4) -> Self {
        let s = grid.sites();
        Self {
            b: std::array::from_fn(|_| vec![0.0; s]),
            holonomy: [0.0; 4],
            phi: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); s]),
        }
    }

    /// Deterministic band-limited direction.
    pub fn random(grid: Grid4, seed: u64, kmax: usize) -> Result<Self> {
        let a = crate::torus::random_gauge(grid, seed, kmax)?;
        let p = crate::torus::random_spinor(grid, seed.wrapping_add(1), kmax, Chirality::Plus)?;
        Ok(Self {
            b: std::array::from_fn(|mu| a.oscillatory(mu).to_vec()),
            holonomy: a.holonomy(),
            phi: [p.component(0).to_vec(), p.component(1).to_vec()],
        })
    }

    pub fn dot(&self, o: &Tangent) -> f64 {
        let n = self.b[0].len();
        let b: f64 = (0..4).map(|mu| par::sum(n, |i| self.b[mu][i] * o.b[mu][i])).sum();
        let h: f64 = (0..4).map(|mu| self.holonomy[mu] * o.holonomy[mu]).sum();
        let p: f64 = (0..2)
            .map(|c| par::sum(n, |i| (self.phi[c][i].conj() * o.phi[c][i]).re))
            .sum();
        b + h + p
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// `self += s·o`.
    pub fn axpy(&mut self, s: f64, o: &Tangent) {
        for mu in 0..4 {
            par::for_each_mut(&mut self.b[mu], |i, v| *v += s * o.b[mu][i]);
            self.holonomy[mu] += s * o.holonomy[mu];
        }
        for c in 0..2 {
            par::for_each_mut(&mut self.phi[c], |i, v| *v += o.phi[c][i] * s);
        }
    }

    pub fn scaled(&self, s: f64) -> Tangent {
        let mut out = Tangent::zeros_like(self);
        out.axpy(s, self);
        out
    }

    fn zeros_like(t: &Tangent) -> Tangent {
        let s = t.b[0].len();
        Tangent {
            b: std::array::from_fn(|_| vec![0.0; s]),
            holonomy: [0.0; 4],
            phi: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); s]),
        }
    }

    fn project_mean_free(&mut self) {
        for b in self.b.iter_mut() {
            let mean = par::sum(b.len(), |i| b[i]) / b.len() as f64;
            b.iter_mut().for_each(|v| *v -= mean);
        }
    }

    fn phi_field(&self, grid: Grid4) -> SpinorField {
        SpinorField::from_components(grid, Chirality::Plus, self.phi.to_vec())
            .expect("tangent shape matches grid")
    }

    /// `cfg + s·t` (the oscillatory increment is projected mean-free).
    pub fn apply(&self, cfg: &SWConfiguration, s: f64) -> SWConfiguration {
        let grid = cfg.grid();
        let mut t = self.clone();
        t.project_mean_free();
        let osc = std::array::from_fn(|mu| {
            cfg.a.oscillatory(mu).iter().zip(&t.b[mu]).map(|(a, d)| a + s * d).collect()
        });
        let hol = std::array::from_fn(|mu| cfg.a.holonomy()[mu] + s * t.holonomy[mu]);
        SWConfiguration {
            a: GaugeField::from_parts(grid, osc, hol).expect("shape"),
            phi: &cfg.phi + &t.phi_field(grid).scale_real(s),
            q: cfg.q,
            mu: cfg.mu.clone(),
        }
    }
}

/// `‖R_D‖² + ‖R_C‖²`.
pub fn objective(cfg: &SWConfiguration) -> Result<f64> {
    Ok(sw_residual(cfg)?.objective())
}

fn hermitian_variation(p: &crate::WeylValue, d: &crate::WeylValue) -> Mat2 {
    let re = p.dotc(d).re;
    p * d.adjoint() + d * p.adjoint() - Mat2::identity() * C64::new(re, 0.0)
}

/// Linearized residual `J·t`.
pub fn jvp(cfg: &SWConfiguration, t: &Tangent) -> Result<SWResidual> {
    let grid = cfg.grid();
    let model = CliffordModel::get();
    let q = cfg.q.nonzero()?.value();
    let mut t = t.clone();
    t.project_mean_free();
    let dphi = t.phi_field(grid);
    let dd = dirac_x(&cfg.a, cfg.q, &dphi)?;
    let iq = C64::new(0.0, q);
    let dirac_part = dd.map_sites(Chirality::Minus, |i, v| {
        let p = cfg.phi.dirac_at(i);
        (0..4).fold(v, |acc, mu| {
            acc + model.gamma(mu) * p * (iq * (t.b[mu][i] + t.holonomy[mu]))
        })
    });
    let db = GaugeField::from_parts(grid, t.b.clone(), [0.0; 4])?;
    let df = curvature(&db).self_dual_part().scale(2.0 * q);
    let dsigma = TwoFormField::from_sites(grid, ValueClass::Imaginary, |i| {
        let h = hermitian_variation(&cfg.phi.weyl_at(i), &dphi.weyl_at(i));
        model.form_from_hermitian(&h)
    });
    Ok(SWResidual {
        dirac_part,
        curvature_part: (&df - &dsigma).with_class(ValueClass::Imaginary),
    })
}

/// Adjoint `J*ρ` for the weighted `L²` residual pairing and the Euclidean
/// parameter pairing.
pub fn vjp(cfg: &SWConfiguration, rho: &SWResidual) -> Result<Tangent> {
    let grid = cfg.grid();
    let model = CliffordModel::get();
    let q = cfg.q.nonzero()?.value();
    let w = grid.weight();
    let rd = rho.dirac_part.project(Chirality::Minus);
    let rc = rho.curvature_part.self_dual_part();

    // Dirac block
    let dstar = dirac_x(&cfg.a, cfg.q, &rd)?;
    let g_sd: Vec<Mat2> = par::map(grid.sites(), |i| {
        let f = rc.fibre_at(i);
        let imag = crate::TwoFormFibre::new(f.coeffs.map(|z| C64::new(0.0, z.im)), ValueClass::Imaginary);
        model.gamma_two_form_plus(&imag)
    });
    let phi_grad = dstar.map_sites(Chirality::Plus, |i, v| {
        let p = cfg.phi.weyl_at(i);
        let s = g_sd[i] * p * C64::new(0.5, 0.0);
        (v - crate::clifford::embed_plus(&s)) * C64::new(w, 0.0)
    });

    // Potential block
    let iq = C64::new(0.0, q);
    let coupling: Vec<[f64; 4]> = par::map(grid.sites(), |i| {
        let p = cfg.phi.dirac_at(i);
        let r: DiracValue = rd.dirac_at(i);
        std::array::from_fn(|mu| r.dotc(&(model.gamma(mu) * p * iq)).re)
    });
    let s_im: Vec<crate::torus::ScalarField> = (0..6)
        .map(|k| {
            let v = rc.components()[k].iter().map(|z| C64::new(z.im, 0.0)).collect();
            crate::torus::ScalarField::from_values(grid, v).expect("length")
        })
        .collect();
    let s_at = |l: usize, k: usize| -> Option<(usize, f64)> {
        if l == k {
            None
        } else if l < k {
            PAIRS.iter().position(|&p| p == (l, k)).map(|i| (i, 1.0))
        } else {
            PAIRS.iter().position(|&p| p == (k, l)).map(|i| (i, -1.0))
        }
    };
    let mut tangent = Tangent::zeros(grid);
    for l in 0..4 {
        let mut div = vec![0.0; grid.sites()];
        for k in 0..4 {
            if let Some((idx, sign)) = s_at(l, k) {
                let d = s_im[idx].spectral_partial(k);
                par::for_each_mut(&mut div, |i, v| *v += sign * d.at(i).re);
            }
        }
        tangent.b[l] = par::map(grid.sites(), |i| w * (coupling[i][l] + 2.0 * q * div[i]));
        tangent.holonomy[l] = w * par::sum(grid.sites(), |i| coupling[i][l]);
    }
    tangent.project_mean_free();
    tangent.phi = [phi_grad.component(0).to_vec(), phi_grad.component(1).to_vec()];
    Ok(tangent)
}

/// Gradient of [`objective`] with respect to the parameters.
pub fn gradient(cfg: &SWConfiguration) -> Result<Tangent> {
    let r = sw_residual(cfg)?;
    Ok(vjp(cfg, &r)?.scaled(2.0))
}

struct Preconditioner {
    grid: Grid4,
    phi_shift: f64,
    b_scale: f64,
    b_shift: f64,
    hol: f64,
    damping: f64,
}

impl Preconditioner {
    fn new(cfg: &SWConfiguration, damping: f64) -> Self {
        let grid = cfg.grid();
        let s = grid.sites() as f64;
        let q2 = cfg.q.value().powi(2);
        let phi2 = par::sum(grid.sites(), |i| cfg.phi.norm_sq_at(i)) / s;
        let a2 = par::sum(grid.sites(), |i| (0..4).map(|mu| cfg.a.at(mu, i).powi(2)).sum::<f64>()) / s;
        let w = grid.weight();
        Self {
            grid,
            phi_shift: w * (0.5 * phi2 + q2 * a2),
            b_scale: 2.0 * q2 * w,
            b_shift: w * q2 * phi2,
            hol: w * s * q2 * phi2,
            damping,
        }
    }

    fn filter(&self, v: &[C64], scale: f64, shift: f64) -> Vec<C64> {
        let g = &self.grid;
        let n = g.n();
        let mut spec = fft4(v, g);
        par::for_each_mut(&mut spec, |idx, z| {
            let k2: f64 = g.coords(idx).iter().map(|&j| (wavenumber(j, n) as f64).powi(2)).sum();
            *z /= scale * k2 + shift + self.damping;
        });
        ifft4(&spec, g)
    }

    fn apply(&self, r: &Tangent) -> Tangent {
        let w = self.grid.weight();
        let mut out = Tangent::zeros(self.grid);
        for mu in 0..4 {
            let v: Vec<C64> = r.b[mu].iter().map(|&x| C64::new(x, 0.0)).collect();
            out.b[mu] = self.filter(&v, self.b_scale, self.b_shift).iter().map(|z| z.re).collect();
            out.holonomy[mu] = r.holonomy[mu] / (self.hol + self.damping);
        }
        out.project_mean_free();
        for c in 0..2 {
            out.phi[c] = self.filter(&r.phi[c], w, self.phi_shift);
        }
        out
    }
}

/// Preconditioned CG for `(J*J + λ)x = rhs`.
fn pcg(cfg: &SWConfiguration, rhs: &Tangent, damping: f64, opts: &SolverOptions) -> Result<Tangent> {
    let pre = Preconditioner::new(cfg, damping);
    let op = |x: &Tangent| -> Result<Tangent> {
        let mut y = vjp(cfg, &jvp(cfg, x)?)?;
        y.axpy(damping, x);
        Ok(y)
    };
    let mut x = Tangent::zeros(cfg.grid());
    let mut r = rhs.clone();
    let mut z = pre.apply(&r);
    let mut p = z.clone();
    let mut rz = r.dot(&z);
    let r0 = r.norm();
    if r0 == 0.0 {
        return Ok(x);
    }
    for _ in 0..opts.cg_max_iterations {
        let ap = op(&p)?;
        let pap = p.dot(&ap);
        if pap <= 0.0 || !pap.is_finite() {
            break;
        }
        let alpha = rz / pap;
        x.axpy(alpha, &p);
        r.axpy(-alpha, &ap);
        if r.norm() <= opts.cg_tolerance * r0 {
            break;
        }
        z = pre.apply(&r);
        let rz_new = r.dot(&z);
        let beta = rz_new / rz;
        rz = rz_new;
        let mut next = z.clone();
        next.axpy(beta, &p);
        p = next;
    }
    Ok(x)
}

/// Minimize `‖R_D‖² + ‖R_C‖²` starting from `cfg0`.
///
/// Each iteration either accepts a step that lowers the objective or
/// increases the damping. Once the damping exceeds `1e10` a backtracking
/// gradient step is tried instead; if that fails as well the run stops with
/// [`StopReason::Stagnation`]. A zero iteration budget with the objective
/// above tolerance also reports stagnation.
pub fn solve_least_squares(
    cfg0: &SWConfiguration,
    opts: &SolverOptions,
) -> Result<(SWConfiguration, ConvergenceLog)> {
    let mut cfg = cfg0.clone();
    let mut f = objective(&cfg)?;
    if !f.is_finite() {
        return Err(Error::Diverged(0));
    }
    let mut damping = opts.damping;
    let mut records = vec![LogRecord {
        iteration: 0,
        objective: f,
        step_norm: 0.0,
        damping,
    }];
    let mut history = vec![f];
    let mut accepted = 0;
    let mut iterations = 0;

    let stop = loop {
        if f <= opts.tolerance {
            break StopReason::Converged;
        }
        if opts.max_iterations == 0 {
            break StopReason::Stagnation;
        }
        if iterations >= opts.max_iterations {
            break StopReason::MaxIterations;
        }
        iterations += 1;

        let residual = sw_residual(&cfg)?;
        let g = vjp(&cfg, &residual)?;
        if !g.norm().is_finite() {
            return Err(Error::Diverged(iterations));
        }

        let mut step = None;
        if damping <= 1e10 {
            let delta = pcg(&cfg, &g.scaled(-1.0), damping, opts)?;
            let trial = delta.apply(&cfg, 1.0);
            let ft = objective(&trial)?;
            if ft.is_finite() && ft < f {
                step = Some((trial, ft, delta.norm()));
                damping = (damping / 3.0).max(1e-15);
            } else {
                damping *= 2.0;
            }
        } else {
            // Armijo backtracking along −∇f = −2J*R.
            let grad = g.scaled(2.0);
            let gg = grad.dot(&grad);
            let mut alpha = f / gg.max(f64::MIN_POSITIVE);
            for _ in 0..60 {
                let trial = grad.apply(&cfg, -alpha);
                let ft = objective(&trial)?;
                if ft.is_finite() && ft <= f - 1e-4 * alpha * gg {
                    step = Some((trial, ft, alpha * gg.sqrt()));
                    damping = opts.damping;
                    break;
                }
                alpha *= 0.5;
            }
            if step.is_none() {
                records.push(LogRecord {
                    iteration: iterations,
                    objective: f,
                    step_norm: 0.0,
                    damping,
                });
                break StopReason::Stagnation;
            }
        }

        let step_norm = match step {
            Some((trial, ft, norm)) => {
                cfg = trial;
                f = ft;
                accepted += 1;
                history.push(f);
                norm
            }
            None => 0.0,
        };
        records.push(LogRecord {
            iteration: iterations,
            objective: f,
            step_norm,
            damping,
        });

        let win = opts.stagnation_window;
        if step_norm > 0.0 && win > 0 && history.len() > win {
            let old = history[history.len() - 1 - win];
            if (old - f) <= opts.stagnation_relative * old {
                break StopReason::Stagnation;
            }
        }
    };

    Ok((
        cfg,
        ConvergenceLog {
            records,
            stop,
            iterations,
            accepted_steps: accepted,
        },
    ))
}
