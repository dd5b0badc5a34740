use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use swlift::kaluza_klein::{
    cubic_residual, dirac_y_frame, dirac_y_reduced, lift, residual_decomposition_check, ricci_oracle_with_step,
    DiracPath, KKGeometry,
};
use swlift::sasaki::{ke_row, ke_solution, KEParameters, Structure};
use swlift::seiberg_witten::{
    charge_conjugate_config, gauge_transform, manufactured_solution, perturb, random_configuration,
    solve_least_squares, sw_residual, SWConfiguration,
};
use swlift::torus::io::{write_file, FieldDump};
use swlift::torus::spectral::fft4;
use swlift::torus::*;
use swlift::{CliffordModel, WeylValue, C64};

use crate::config::RunConfig;
use crate::report::Check;

/// Configuration problems detected while running a command.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

fn rel_dev(a: &SpinorField, b: &SpinorField) -> f64 {
    (a - b).max_abs() / a.max_abs().max(b.max_abs()).max(f64::MIN_POSITIVE)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn verify(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut out = Outcome::default();
    let tol = &cfg.tolerances;
    let rep = CliffordModel::get().identity_suite(cfg.seed, cfg.trials)?;
    for c in &rep.checks {
        let threshold = if c.name == "kernel_dichotomy" { 0.0 } else { tol.identity };
        out.checks.push(Check::at_most(format!("clifford/{}", c.name), c.max_deviation, threshold));
    }

    let g = cfg.grid4();
    let k = cfg.grid.kmax;
    let seed = cfg.seed;
    // products of two fields must stay below the Nyquist mode
    let k_prod = k.min((g.n() / 2 - 1) / 2);
    let f = random_scalar(g, seed, k_prod, false)?;
    let h = random_scalar(g, seed.wrapping_add(1), k_prod, false)?;
    let mut leibniz = 0.0_f64;
    for axis in 0..4 {
        let lhs = f.mul_field(&h).spectral_partial(axis);
        let rhs = &f.spectral_partial(axis).mul_field(&h) + &f.mul_field(&h.spectral_partial(axis));
        leibniz = leibniz.max((&lhs - &rhs).max_abs() / lhs.max_abs().max(1.0));
    }
    out.checks.push(Check::at_most(format!("torus/leibniz(kmax={k_prod})"), leibniz, tol.field));

    let direct: f64 = f.values().iter().map(|z| z.norm_sqr()).sum();
    let spectral: f64 = fft4(f.values(), &g).iter().map(|z| z.norm_sqr()).sum::<f64>() / g.sites() as f64;
    out.checks.push(Check::at_most("torus/parseval", rel(direct, spectral), tol.field));

    let a = random_gauge(g, seed.wrapping_add(2), k)?;
    let curv = curvature(&a);
    let (fp, fm) = (curv.self_dual_part(), curv.anti_self_dual_part());
    let split = (&(&fp + &fm) - &curv).max_norm() / curv.max_norm().max(1.0);
    out.checks.push(Check::at_most("torus/selfdual_split", split, tol.field));
    let ip = l2_inner(&fp, &fm)?.norm() / l2_norm(&curv).powi(2).max(1.0);
    out.checks.push(Check::at_most("torus/selfdual_orthogonal", ip, tol.field));
    let bianchi = exterior_derivative_two_form(&curv)
        .iter()
        .map(|c| c.max_abs())
        .fold(0.0_f64, f64::max)
        / curv.max_norm().max(1.0);
    out.checks.push(Check::at_most("torus/bianchi", bianchi, tol.field));

    let q = cfg.charge();
    let phi = random_spinor(g, seed.wrapping_add(3), k, Chirality::Plus)?;
    let lhs = dirac_x(&a, q, &phi)?.charge_conjugate();
    let rhs = dirac_x(&-&a, q, &phi.charge_conjugate())?;
    out.checks.push(Check::at_most("torus/dirac_conjugation", rel_dev(&lhs, &rhs), tol.field));
    Ok(out)
}

fn residual_norms(c: &SWConfiguration, r: f64) -> anyhow::Result<[f64; 3]> {
    let res = sw_residual(c)?;
    let geom = KKGeometry::for_config(c, r)?;
    let cubic = cubic_residual(&lift(&c.phi, c.q), &geom, &c.mu, DiracPath::Reduced)?;
    Ok([res.dirac_norm(), res.curvature_norm(), cubic.norm()])
}

pub fn lift_check(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let mut out = Outcome::default();
    let g = cfg.grid4();
    let k = cfg.grid.kmax;
    let q = cfg.charge();
    let r = cfg.physics.radius;
    let tol = cfg.tolerances.lift;
    let model = CliffordModel::get();

    let mut two_path = 0.0_f64;
    let mut minus = 0.0_f64;
    let mut plus = 0.0_f64;
    let mut decomposition = 0.0_f64;
    let mut converse_failures = 0usize;
    let mut gauge = 0.0_f64;
    let mut conj = 0.0_f64;
    let mut flat_curvature = 0.0_f64;
    for i in 0..cfg.configurations as u64 {
        let seed = cfg.seed.wrapping_add(10 * i);
        let mut c = random_configuration(g, q, seed, k)?;
        if cfg.physics.flat_connection {
            c.a = GaugeField::flat(g, c.a.holonomy());
        }
        let geom = KKGeometry::for_config(&c, r)?;
        let psi = lift(&c.phi, q);
        let frame = dirac_y_frame(&psi, &geom)?;
        let reduced = dirac_y_reduced(&psi, &geom)?;
        two_path = two_path.max(rel_dev(&frame.base, &reduced.base));

        minus = minus.max(rel_dev(&frame.base.project(Chirality::Minus), &dirac_x(&c.a, q, &c.phi)?));
        let m = geom.mass()?;
        let fp = curvature(&c.a).self_dual_part();
        flat_curvature = flat_curvature.max(fp.max_norm());
        let expected_plus = c.phi.map_sites(Chirality::Plus, |idx, v| {
            let gf = model.gamma_two_form(&(fp.fibre_at(idx) * (2.0 * q.value())));
            v * C64::new(m, 0.0) - gf * v * C64::new(1.0 / (8.0 * m), 0.0)
        });
        plus = plus.max(rel_dev(&frame.base.project(Chirality::Plus), &expected_plus));

        let rep = residual_decomposition_check(&c, &geom)?;
        decomposition = decomposition.max(rep.relative_deviation);
        converse_failures += rep.converse_failures;

        let base = residual_norms(&c, r)?;
        for w in [[1, 0, 0, 0], [0, -1, 1, 0]] {
            let moved = gauge_transform(&c, w, &ScalarField::zeros(g))?;
            let n = residual_norms(&moved, r)?;
            gauge = gauge.max((0..3).map(|j| rel(base[j], n[j])).fold(0.0, f64::max));
        }
        let bar = charge_conjugate_config(&c);
        let r0 = cubic_residual(&psi, &geom, &c.mu, DiracPath::Reduced)?;
        let r1 = cubic_residual(&lift(&bar.phi, bar.q), &KKGeometry::for_config(&bar, r)?, &bar.mu, DiracPath::Reduced)?;
        conj = conj.max(rel_dev(&r1.base, &r0.conjugate5().base));
    }
    out.checks.push(Check::at_most("two_path_dirac", two_path, tol));
    out.checks.push(Check::at_most("chirality_split_minus", minus, tol));
    out.checks.push(Check::at_most("chirality_split_plus", plus, tol));
    out.checks.push(Check::at_most("residual_decomposition", decomposition, tol));
    out.checks.push(Check::at_most("converse_failures", converse_failures as f64, 0.0));
    out.checks.push(Check::at_most("gauge_winding", gauge, tol));
    out.checks.push(Check::at_most("charge_conjugation", conj, tol));
    if cfg.physics.flat_connection {
        out.checks.push(Check::at_most("flat_curvature_term", flat_curvature, 0.0));
    }

    let exact = manufactured_solution(g, q, cfg.seed, k)?;
    let rx = ScalarField::from_real_fn(g, |x| r * (1.0 + 0.25 * x[0].sin()));
    let geom = KKGeometry::varying(exact.a.clone(), rx, q)?;
    let rep = residual_decomposition_check(&exact, &geom)?;
    let cubic = cubic_residual(&lift(&exact.phi, q), &geom, &exact.mu, DiracPath::Reduced)?;
    out.checks.push(Check::at_most("varying_radius", cubic.base.max_abs() / rep.scale, tol));

    // D^Y Q(φ₀) = m φ₀ for constant φ₀ ∈ S⁺ and A = 0, with m = −q/r
    let geom0 = KKGeometry::constant(GaugeField::zeros(g), r, q)?;
    let phi0 = SpinorField::constant_weyl(g, WeylValue::new(C64::new(1.0, 0.5), C64::new(-0.25, 1.0)));
    let m = -q.value() / r;
    let dy = dirac_y_frame(&lift(&phi0, q), &geom0)?;
    let mass = rel_dev(&dy.base, &phi0.to_full().scale_real(m)).max((geom0.mass()? - m).abs());
    out.checks.push(Check::at_most("mass_term", mass, tol));
    out.notes.push(format!("m = -q/r = {m}"));
    out.notes.push("smooth gauge phases are covered by the acceptance suite on a resolved grid".into());
    Ok(out)
}

pub fn solve(cfg: &RunConfig, dir: &Path) -> anyhow::Result<Outcome> {
    let mut out = Outcome::default();
    let g = cfg.grid4();
    let q = cfg.charge();
    let exact = manufactured_solution(g, q, cfg.seed, cfg.grid.kmax)?;
    let start = perturb(&exact, cfg.seed.wrapping_add(1), cfg.grid.kmax, cfg.perturbation)?;
    let (sol, log) = solve_least_squares(&start, &cfg.solver)?;

    let csv = std::fs::File::create(dir.join("convergence.csv")).context("writing convergence.csv")?;
    log.write_csv(csv)?;
    write_file(&dir.join("final_gauge.swl"), &FieldDump::Gauge(sol.a.clone()))?;
    write_file(&dir.join("final_spinor.swl"), &FieldDump::Spinor(sol.phi.clone()))?;
    write_file(
        &dir.join("final_sector.swl"),
        &FieldDump::Sector {
            charge: q,
            base: sol.phi.to_full(),
        },
    )?;

    let f = log.final_objective();
    out.checks.push(Check::at_most("objective", f, cfg.solver.tolerance));

    // ‖cubic‖ ≤ ‖R_D‖ + (√2 max|φ| / 8|m|)‖R_C‖ ≤ C·√(‖R_D‖² + ‖R_C‖²)
    let r = cfg.physics.radius;
    let geom = KKGeometry::for_config(&sol, r)?;
    let cubic = cubic_residual(&lift(&sol.phi, q), &geom, &sol.mu, DiracPath::Reduced)?.norm();
    let m = geom.mass()?.abs();
    let c = std::f64::consts::SQRT_2 * (std::f64::consts::SQRT_2 * sol.phi.max_abs() / (8.0 * m)).max(1.0);
    let sw = f.sqrt();
    let ratio = if cubic == 0.0 { 0.0 } else { cubic / (c * sw) };
    out.checks.push(Check::at_most("lifted_residual_bound", ratio, 1.0));
    out.notes.push(format!("stop = {}, iterations = {}, accepted = {}", log.stop, log.iterations, log.accepted_steps));
    out.notes.push(format!("initial objective = {:e}, final objective = {f:e}", log.initial_objective()));
    out.notes.push(format!("lifted residual {cubic:e} vs SW residual {sw:e}, C = {c:e}"));
    Ok(out)
}

pub fn ke_report(cfg: &RunConfig, dir: &Path) -> anyhow::Result<Outcome> {
    let lambdas = &cfg.ke.lambdas;
    if lambdas.is_empty() {
        return Err(UsageError("ke.lambdas is empty".into()).into());
    }
    if let Some(l) = lambdas.iter().find(|l| **l == 0.0 || !l.is_finite()) {
        return Err(UsageError(format!("ke.lambdas contains {l}; λ must be finite and non-zero")).into());
    }
    let mut out = Outcome::default();
    let mut csv = String::from("lambda,r,m,norm_sq,nu_plus,nu_minus,alpha_g,alpha_eta,scal,gap\n");
    for &l in lambdas {
        let row = ke_row(l)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            row.lambda, row.r, row.m, row.norm_sq, row.nu_plus, row.nu_minus, row.alpha_g, row.alpha_eta, row.scal, row.gap
        );
        let s = l.signum();
        let expect = [
            2.0 / l.abs(),
            l.abs() / 4.0,
            16.0,
            s + l.abs() / 4.0,
            -s - l.abs() / 4.0,
            l - 2.0,
            6.0 - l,
            4.0 * (l - 1.0),
            (l - 6.0).powi(2) / 16.0,
        ];
        let got = [row.r, row.m, row.norm_sq, row.nu_plus, row.nu_minus, row.alpha_g, row.alpha_eta, row.scal, row.gap];
        let mut dev = got.iter().zip(expect).map(|(a, b)| (a - b).abs()).fold(0.0_f64, f64::max);
        for p in [
            KEParameters::new(l, -l - 4.0, Structure::Canonical)?,
            KEParameters::new(l, l + 4.0, Structure::Conjugate)?,
        ] {
            dev = dev.max(ke_solution(&p)?.curvature_residual);
        }
        out.checks.push(Check::at_most(format!("lambda={l}"), dev, cfg.tolerances.ke));
    }
    std::fs::write(dir.join("ke_report.csv"), csv).context("writing ke_report.csv")?;
    Ok(out)
}

pub fn ricci(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let rc = &cfg.ricci;
    let table = ricci_oracle_with_step(rc.c, rc.r, rc.step).map_err(|e| match e {
        swlift::Error::StepUnderflow(_) | swlift::Error::NonPositiveRadius(_) => {
            anyhow::Error::new(UsageError(e.to_string()))
        }
        other => other.into(),
    })?;
    let mut out = Outcome::default();
    for e in &table.entries {
        out.checks.push(Check::at_most(e.name.clone(), e.deviation, cfg.tolerances.ricci));
        out.notes.push(format!("{}: oracle {:.9} formula {:.9}", e.name, e.oracle, e.formula));
    }
    Ok(out)
}
