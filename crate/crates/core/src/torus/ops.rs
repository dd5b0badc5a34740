use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::fields::{Chirality, GaugeField, ScalarField, SpinorField, TwoFormField};
use super::{spectral, Grid4};
use crate::clifford::CliffordModel;
use crate::twoform::{ValueClass, PAIRS};
use crate::{par, Charge, DiracValue, Result, C64};

/// Exact derivative of band-limited data along one axis (0-based).
pub trait SpectralPartial: Sized {
    fn spectral_partial(&self, axis: usize) -> Self;
}

impl SpectralPartial for ScalarField {
    fn spectral_partial(&self, axis: usize) -> Self {
        let g = self.grid();
        ScalarField::from_values(g, spectral::partial(self.values(), &g, axis))
            .expect("length preserved")
    }
}

impl SpectralPartial for SpinorField {
    fn spectral_partial(&self, axis: usize) -> Self {
        let g = self.grid();
        let comps = self
            .components()
            .iter()
            .map(|c| spectral::partial(c, &g, axis))
            .collect();
        SpinorField::from_components(g, self.chirality(), comps).expect("shape preserved")
    }
}

impl SpectralPartial for TwoFormField {
    fn spectral_partial(&self, axis: usize) -> Self {
        let g = self.grid();
        let comps = std::array::from_fn(|k| spectral::partial(&self.components()[k], &g, axis));
        TwoFormField::from_components(g, comps, self.class()).expect("shape preserved")
    }
}

/// `F_A = dA`, stored as `i·f` with `f_μν = ∂_μ a_ν − ∂_ν a_μ`.
pub fn curvature(a: &GaugeField) -> TwoFormField {
    let g = a.grid();
    let d: Vec<[Vec<C64>; 4]> = (0..4)
        .map(|nu| {
            let comp: Vec<C64> = a.oscillatory(nu).iter().map(|&v| C64::new(v, 0.0)).collect();
            std::array::from_fn(|mu| spectral::partial(&comp, &g, mu))
        })
        .collect();
    let comps = PAIRS.map(|(mu, nu)| {
        let (x, y) = (&d[nu][mu], &d[mu][nu]);
        par::map(g.sites(), |i| C64::new(0.0, (x[i] - y[i]).re))
    });
    TwoFormField::from_components(g, comps, ValueClass::Imaginary).expect("shape preserved")
}

/// Components of `dF` in the order 123, 124, 134, 234.
pub fn exterior_derivative_two_form(f: &TwoFormField) -> [ScalarField; 4] {
    let g = f.grid();
    let comp = |i: usize, j: usize| -> ScalarField {
        let sign = if i < j { 1.0 } else { -1.0 };
        let k = PAIRS
            .iter()
            .position(|&p| p == (i.min(j), i.max(j)))
            .expect("distinct indices");
        ScalarField::from_values(g, f.components()[k].iter().map(|z| z * sign).collect())
            .expect("length")
    };
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    triples.map(|(l, m, n)| {
        let a = comp(m, n).spectral_partial(l);
        let b = comp(n, l).spectral_partial(m);
        let c = comp(l, m).spectral_partial(n);
        &(&a + &b) + &c
    })
}

/// `∇_μφ = ∂_μφ + i q a_μ φ`.
pub fn covariant_derivative(a: &GaugeField, q: Charge, phi: &SpinorField, axis: usize) -> Result<SpinorField> {
    a.grid().check_same(&phi.grid())?;
    let qv = q.value();
    let d = phi.spectral_partial(axis);
    let coupling: Vec<C64> = (0..a.grid().sites())
        .map(|i| C64::new(0.0, qv * a.at(axis, i)))
        .collect();
    let coupled = phi.mul_scalar(&ScalarField::from_values(a.grid(), coupling)?);
    Ok(&d + &coupled)
}

/// Twisted Dirac operator `D = Σ γ_μ(∂_μ + i q a_μ)`.
pub fn dirac_x(a: &GaugeField, q: Charge, phi: &SpinorField) -> Result<SpinorField> {
    a.grid().check_same(&phi.grid())?;
    let model = CliffordModel::get();
    let nabla: Vec<SpinorField> = (0..4)
        .map(|mu| covariant_derivative(a, q, phi, mu))
        .collect::<Result<_>>()?;
    Ok(SpinorField::from_sites(phi.grid(), phi.chirality().flipped(), |i| {
        (0..4).fold(DiracValue::zeros(), |acc, mu| {
            acc + model.gamma(mu) * nabla[mu].dirac_at(i)
        })
    }))
}

/// Fields with an `L²` structure `⟨f, g⟩ = Σ_x conj(f)·g · (2π/N)⁴`.
pub trait L2Field {
    fn grid(&self) -> Grid4;
    fn site_inner(&self, other: &Self, idx: usize) -> C64;
}

impl L2Field for ScalarField {
    fn grid(&self) -> Grid4 {
        ScalarField::grid(self)
    }
    fn site_inner(&self, other: &Self, idx: usize) -> C64 {
        self.at(idx).conj() * other.at(idx)
    }
}

impl L2Field for SpinorField {
    fn grid(&self) -> Grid4 {
        SpinorField::grid(self)
    }
    fn site_inner(&self, other: &Self, idx: usize) -> C64 {
        if self.chirality() == other.chirality() {
            self.components()
                .iter()
                .zip(other.components())
                .map(|(a, b)| a[idx].conj() * b[idx])
                .sum()
        } else {
            self.dirac_at(idx).dotc(&other.dirac_at(idx))
        }
    }
}

impl L2Field for TwoFormField {
    fn grid(&self) -> Grid4 {
        TwoFormField::grid(self)
    }
    fn site_inner(&self, other: &Self, idx: usize) -> C64 {
        self.fibre_at(idx).inner(&other.fibre_at(idx))
    }
}

impl L2Field for GaugeField {
    fn grid(&self) -> Grid4 {
        GaugeField::grid(self)
    }
    fn site_inner(&self, other: &Self, idx: usize) -> C64 {
        C64::new((0..4).map(|mu| self.at(mu, idx) * other.at(mu, idx)).sum(), 0.0)
    }
}

pub fn l2_inner<F: L2Field + Sync>(f: &F, g: &F) -> Result<C64> {
    let grid = f.grid();
    grid.check_same(&g.grid())?;
    let re = par::sum(grid.sites(), |i| f.site_inner(g, i).re);
    let im = par::sum(grid.sites(), |i| f.site_inner(g, i).im);
    Ok(C64::new(re, im) * grid.weight())
}

pub fn l2_norm<F: L2Field + Sync>(f: &F) -> f64 {
    let grid = f.grid();
    (par::sum(grid.sites(), |i| f.site_inner(f, i).re) * grid.weight()).sqrt()
}

/// Kind selector for [`random_band_limited`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Spinor(Chirality),
    Gauge,
    TwoForm(ValueClass),
}

/// Result of [`random_band_limited`].
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Spinor(SpinorField),
    Gauge(GaugeField),
    TwoForm(TwoFormField),
}

// Gaussian Fourier coefficients on |k_μ| ≤ kmax, scaled to O(1) site values.
fn band_limited_values(grid: &Grid4, kmax: usize, rng: &mut ChaCha8Rng, mean_free: bool) -> Vec<C64> {
    let n = grid.n();
    let side = 2 * kmax + 1;
    let count = side.pow(4);
    let scale = grid.sites() as f64 / (count as f64).sqrt();
    let mut spec = vec![C64::new(0.0, 0.0); grid.sites()];
    for m in 0..count {
        let k = [m / side.pow(3), (m / side.pow(2)) % side, (m / side) % side, m % side]
            .map(|c| c as i64 - kmax as i64);
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        if mean_free && k == [0; 4] {
            continue;
        }
        let idx = grid.index(k.map(|c| c.rem_euclid(n as i64) as usize));
        spec[idx] = C64::new(re, im) * scale;
    }
    spectral::ifft4(&spec, grid)
}

pub fn random_scalar(grid: Grid4, seed: u64, kmax: usize, real: bool) -> Result<ScalarField> {
    grid.check_band_limit(kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = band_limited_values(&grid, kmax, &mut rng, false);
    if real {
        v.iter_mut().for_each(|z| z.im = 0.0);
    }
    ScalarField::from_values(grid, v)
}

pub fn random_spinor(grid: Grid4, seed: u64, kmax: usize, chirality: Chirality) -> Result<SpinorField> {
    grid.check_band_limit(kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = (0..chirality.arity())
        .map(|_| band_limited_values(&grid, kmax, &mut rng, false))
        .collect();
    SpinorField::from_components(grid, chirality, comps)
}

/// Real mean-free oscillation plus Gaussian holonomies of scale ½.
pub fn random_gauge(grid: Grid4, seed: u64, kmax: usize) -> Result<GaugeField> {
    grid.check_band_limit(kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let osc = std::array::from_fn(|_| {
        band_limited_values(&grid, kmax, &mut rng, true)
            .into_iter()
            .map(|z| z.re)
            .collect()
    });
    let holonomy = std::array::from_fn(|_| {
        let h: f64 = StandardNormal.sample(&mut rng);
        0.5 * h
    });
    GaugeField::from_parts(grid, osc, holonomy)
}

pub fn random_two_form(grid: Grid4, seed: u64, kmax: usize, class: ValueClass) -> Result<TwoFormField> {
    grid.check_band_limit(kmax)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = std::array::from_fn(|_| {
        let v = band_limited_values(&grid, kmax, &mut rng, false);
        match class {
            ValueClass::Real => v.into_iter().map(|z| C64::new(z.re, 0.0)).collect(),
            ValueClass::Imaginary => v.into_iter().map(|z| C64::new(0.0, z.re)).collect(),
            ValueClass::Complex => v,
        }
    });
    TwoFormField::from_components(grid, comps, class)
}

/// Deterministic random field with Fourier support in `|k_μ| ≤ kmax`.
pub fn random_band_limited(grid: Grid4, seed: u64, kmax: usize, kind: FieldKind) -> Result<AnyField> {
    Ok(match kind {
        FieldKind::Spinor(c) => AnyField::Spinor(random_spinor(grid, seed, kmax, c)?),
        FieldKind::Gauge => AnyField::Gauge(random_gauge(grid, seed, kmax)?),
        FieldKind::TwoForm(class) => AnyField::TwoForm(random_two_form(grid, seed, kmax, class)?),
    })
}
