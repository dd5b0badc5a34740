use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::Grid4;
use crate::clifford::{embed_minus, embed_plus, project_minus, project_plus, CliffordModel};
use crate::twoform::{TwoFormFibre, ValueClass};
use crate::{par, DiracValue, Error, Result, WeylValue, C64};

/// Which spinor module a field takes values in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    Plus,
    Minus,
    Full,
}

impl Chirality {
    pub fn arity(self) -> usize {
        match self {
            Chirality::Full => 4,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Chirality::Plus => "plus",
            Chirality::Minus => "minus",
            Chirality::Full => "full",
        }
    }

    /// Chirality of `γ(v)·φ`.
    pub fn flipped(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
            Chirality::Full => Chirality::Full,
        }
    }

    pub fn embed(self, v: &[C64]) -> DiracValue {
        match self {
            Chirality::Plus => embed_plus(&WeylValue::new(v[0], v[1])),
            Chirality::Minus => embed_minus(&WeylValue::new(v[0], v[1])),
            Chirality::Full => DiracValue::new(v[0], v[1], v[2], v[3]),
        }
    }

    /// Components of `psi` belonging to this chirality.
    pub fn project(self, psi: &DiracValue) -> Vec<C64> {
        match self {
            Chirality::Plus => project_plus(psi).iter().copied().collect(),
            Chirality::Minus => project_minus(psi).iter().copied().collect(),
            Chirality::Full => psi.iter().copied().collect(),
        }
    }
}

fn zip_with(a: &[C64], b: &[C64], f: impl Fn(C64, C64) -> C64 + Sync + Send) -> Vec<C64> {
    assert_eq!(a.len(), b.len(), "field length mismatch");
    par::map(a.len(), |i| f(a[i], b[i]))
}

/// Complex scalar function on the grid (real functions have zero imaginary part).
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid4,
    values: Vec<C64>,
}

impl ScalarField {
    pub fn zeros(grid: Grid4) -> Self {
        Self::constant(grid, C64::new(0.0, 0.0))
    }

    pub fn constant(grid: Grid4, c: C64) -> Self {
        Self {
            grid,
            values: vec![c; grid.sites()],
        }
    }

    pub fn from_values(grid: Grid4, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.sites() {
            return Err(Error::Format(format!(
                "expected {} values, got {}",
                grid.sites(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid4, f: impl Fn([f64; 4]) -> C64 + Sync + Send) -> Self {
        let values = par::map(grid.sites(), |i| f(grid.point(i)));
        Self { grid, values }
    }

    pub fn from_real_fn(grid: Grid4, f: impl Fn([f64; 4]) -> f64 + Sync + Send) -> Self {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    pub fn grid(&self) -> Grid4 {
        self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn at(&self, idx: usize) -> C64 {
        self.values[idx]
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    pub fn max_abs(&self) -> f64 {
        par::max(self.values.len(), |i| self.values[i].norm())
    }

    pub fn min_real(&self) -> f64 {
        self.values.iter().fold(f64::INFINITY, |m, z| m.min(z.re))
    }

    pub fn map(&self, f: impl Fn(C64) -> C64 + Sync + Send) -> Self {
        Self {
            grid: self.grid,
            values: par::map(self.values.len(), |i| f(self.values[i])),
        }
    }

    pub fn mul_field(&self, other: &Self) -> Self {
        Self {
            grid: self.grid,
            values: zip_with(&self.values, &other.values, |a, b| a * b),
        }
    }
}

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: zip_with(&self.values, &rhs.values, |a, b| a + b),
        }
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: zip_with(&self.values, &rhs.values, |a, b| a - b),
        }
    }
}

/// Spinor field with values in `S⁺`, `S⁻` or the full module, stored
/// component-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    grid: Grid4,
    chirality: Chirality,
    comps: Vec<Vec<C64>>,
}

impl SpinorField {
    pub fn zeros(grid: Grid4, chirality: Chirality) -> Self {
        Self {
            grid,
            chirality,
            comps: vec![vec![C64::new(0.0, 0.0); grid.sites()]; chirality.arity()],
        }
    }

    pub fn from_components(grid: Grid4, chirality: Chirality, comps: Vec<Vec<C64>>) -> Result<Self> {
        if comps.len() != chirality.arity() || comps.iter().any(|c| c.len() != grid.sites()) {
            return Err(Error::Format(format!(
                "{} spinor needs {} components of {} sites",
                chirality.name(),
                chirality.arity(),
                grid.sites()
            )));
        }
        Ok(Self {
            grid,
            chirality,
            comps,
        })
    }

    /// Build from per-site Dirac values, keeping only the components of
    /// `chirality`.
    pub fn from_sites(
        grid: Grid4,
        chirality: Chirality,
        f: impl Fn(usize) -> DiracValue + Sync + Send,
    ) -> Self {
        let vals = par::map(grid.sites(), |i| chirality.project(&f(i)));
        let comps = (0..chirality.arity())
            .map(|c| vals.iter().map(|v| v[c]).collect())
            .collect();
        Self {
            grid,
            chirality,
            comps,
        }
    }

    pub fn from_fn(
        grid: Grid4,
        chirality: Chirality,
        f: impl Fn([f64; 4]) -> DiracValue + Sync + Send,
    ) -> Self {
        Self::from_sites(grid, chirality, |i| f(grid.point(i)))
    }

    /// Positive Weyl field from per-site values.
    pub fn from_weyl_fn(grid: Grid4, f: impl Fn([f64; 4]) -> WeylValue + Sync + Send) -> Self {
        Self::from_fn(grid, Chirality::Plus, |x| embed_plus(&f(x)))
    }

    pub fn constant_weyl(grid: Grid4, v: WeylValue) -> Self {
        Self::from_weyl_fn(grid, |_| v)
    }

    pub fn grid(&self) -> Grid4 {
        self.grid
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn components(&self) -> &[Vec<C64>] {
        &self.comps
    }

    pub fn component(&self, c: usize) -> &[C64] {
        &self.comps[c]
    }

    pub fn require(&self, chirality: Chirality) -> Result<()> {
        if self.chirality == chirality {
            Ok(())
        } else {
            Err(Error::Chirality {
                expected: chirality.name(),
                got: self.chirality.name(),
            })
        }
    }

    /// Value at a site embedded in the full module.
    pub fn dirac_at(&self, idx: usize) -> DiracValue {
        let v: Vec<C64> = self.comps.iter().map(|c| c[idx]).collect();
        self.chirality.embed(&v)
    }

    /// Two-component value at a site (the `S⁺` part for full fields).
    pub fn weyl_at(&self, idx: usize) -> WeylValue {
        WeylValue::new(self.comps[0][idx], self.comps[1][idx])
    }

    pub fn norm_sq_at(&self, idx: usize) -> f64 {
        self.comps.iter().map(|c| c[idx].norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        par::max(self.grid.sites(), |i| self.norm_sq_at(i).sqrt())
    }

    pub fn min_abs(&self) -> f64 {
        (0..self.grid.sites()).fold(f64::INFINITY, |m, i| m.min(self.norm_sq_at(i).sqrt()))
    }

    /// `|φ|²` as a scalar field.
    pub fn pointwise_norm_sq(&self) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: par::map(self.grid.sites(), |i| C64::new(self.norm_sq_at(i), 0.0)),
        }
    }

    /// Apply a per-site map, producing a field of chirality `out`.
    pub fn map_sites(
        &self,
        out: Chirality,
        f: impl Fn(usize, DiracValue) -> DiracValue + Sync + Send,
    ) -> SpinorField {
        SpinorField::from_sites(self.grid, out, |i| f(i, self.dirac_at(i)))
    }

    /// The same field viewed in the full module.
    pub fn to_full(&self) -> SpinorField {
        self.map_sites(Chirality::Full, |_, v| v)
    }

    /// Project onto one chirality (the unused components are discarded).
    pub fn project(&self, chirality: Chirality) -> SpinorField {
        self.map_sites(chirality, |_, v| v)
    }

    pub fn scale(&self, s: C64) -> SpinorField {
        self.map_components(|z| z * s)
    }

    pub fn scale_real(&self, s: f64) -> SpinorField {
        self.scale(C64::new(s, 0.0))
    }

    /// Multiply pointwise by a scalar field.
    pub fn mul_scalar(&self, f: &ScalarField) -> SpinorField {
        let comps = self
            .comps
            .iter()
            .map(|c| zip_with(c, f.values(), |a, b| a * b))
            .collect();
        SpinorField { comps, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> SpinorField {
        SpinorField {
            grid: self.grid,
            chirality: self.chirality,
            comps: Vec::new(),
        }
    }

    pub fn map_components(&self, f: impl Fn(C64) -> C64 + Sync + Send) -> SpinorField {
        let comps = self.comps.iter().map(|c| par::map(c.len(), |i| f(c[i]))).collect();
        SpinorField { comps, ..self.clone_shape() }
    }

    pub(crate) fn zip(&self, other: &SpinorField, f: impl Fn(C64, C64) -> C64 + Sync + Send + Copy) -> SpinorField {
        let (a, b) = self.align(other);
        let comps = a
            .comps
            .iter()
            .zip(b.comps.iter())
            .map(|(x, y)| zip_with(x, y, f))
            .collect();
        SpinorField { comps, ..a.clone_shape() }
    }

    // Bring two fields to a common chirality (full if they differ).
    fn align<'a>(
        &'a self,
        other: &'a SpinorField,
    ) -> (std::borrow::Cow<'a, SpinorField>, std::borrow::Cow<'a, SpinorField>) {
        use std::borrow::Cow;
        assert_eq!(self.grid, other.grid, "grid mismatch");
        if self.chirality == other.chirality {
            (Cow::Borrowed(self), Cow::Borrowed(other))
        } else {
            (Cow::Owned(self.to_full()), Cow::Owned(other.to_full()))
        }
    }

    /// Fibrewise charge conjugation `J`.
    pub fn charge_conjugate(&self) -> SpinorField {
        let model = CliffordModel::get();
        self.map_sites(self.chirality, |_, v| model.charge_conjugate_fibre(&v))
    }

    /// Flat view of the data, component-major.
    pub fn flat(&self) -> Vec<C64> {
        self.comps.iter().flatten().copied().collect()
    }
}

impl Add for &SpinorField {
    type Output = SpinorField;
    fn add(self, rhs: &SpinorField) -> SpinorField {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub for &SpinorField {
    type Output = SpinorField;
    fn sub(self, rhs: &SpinorField) -> SpinorField {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &SpinorField {
    type Output = SpinorField;
    fn neg(self) -> SpinorField {
        self.map_components(|z| -z)
    }
}

impl Mul<C64> for &SpinorField {
    type Output = SpinorField;
    fn mul(self, s: C64) -> SpinorField {
        self.scale(s)
    }
}

/// Hermitian connection `A = i·a` on the trivial line bundle: a mean-free
/// oscillatory part plus constant holonomies.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeField {
    grid: Grid4,
    osc: [Vec<f64>; 4],
    holonomy: [f64; 4],
}

impl GaugeField {
    pub fn zeros(grid: Grid4) -> Self {
        Self::flat(grid, [0.0; 4])
    }

    /// Flat connection with the given constant components.
    pub fn flat(grid: Grid4, holonomy: [f64; 4]) -> Self {
        Self {
            grid,
            osc: std::array::from_fn(|_| vec![0.0; grid.sites()]),
            holonomy,
        }
    }

    /// Split arbitrary real components into mean and oscillation.
    pub fn from_components(grid: Grid4, comps: [Vec<f64>; 4]) -> Result<Self> {
        if comps.iter().any(|c| c.len() != grid.sites()) {
            return Err(Error::Format("gauge component length".into()));
        }
        let inv = 1.0 / grid.sites() as f64;
        let mut holonomy = [0.0; 4];
        let mut osc = comps;
        for (h, c) in holonomy.iter_mut().zip(osc.iter_mut()) {
            let mean = par::sum(c.len(), |i| c[i]) * inv;
            *h = mean;
            c.iter_mut().for_each(|v| *v -= mean);
        }
        Ok(Self {
            grid,
            osc,
            holonomy,
        })
    }

    /// Oscillatory part taken as given (assumed mean-free) plus holonomy.
    pub fn from_parts(grid: Grid4, osc: [Vec<f64>; 4], holonomy: [f64; 4]) -> Result<Self> {
        if osc.iter().any(|c| c.len() != grid.sites()) {
            return Err(Error::Format("gauge component length".into()));
        }
        Ok(Self {
            grid,
            osc,
            holonomy,
        })
    }

    pub fn from_fn(grid: Grid4, f: impl Fn([f64; 4]) -> [f64; 4] + Sync + Send) -> Self {
        let vals = par::map(grid.sites(), |i| f(grid.point(i)));
        let comps = std::array::from_fn(|mu| vals.iter().map(|v| v[mu]).collect());
        Self::from_components(grid, comps).expect("lengths match by construction")
    }

    pub fn grid(&self) -> Grid4 {
        self.grid
    }

    pub fn holonomy(&self) -> [f64; 4] {
        self.holonomy
    }

    pub fn oscillatory(&self, mu: usize) -> &[f64] {
        &self.osc[mu]
    }

    /// `a_μ(x)` including the holonomy.
    pub fn at(&self, mu: usize, idx: usize) -> f64 {
        self.osc[mu][idx] + self.holonomy[mu]
    }

    /// Full component `a_μ` as a scalar field.
    pub fn component(&self, mu: usize) -> ScalarField {
        ScalarField {
            grid: self.grid,
            values: par::map(self.grid.sites(), |i| C64::new(self.at(mu, i), 0.0)),
        }
    }

    pub fn scale(&self, s: f64) -> GaugeField {
        GaugeField {
            grid: self.grid,
            osc: std::array::from_fn(|mu| self.osc[mu].iter().map(|v| v * s).collect()),
            holonomy: self.holonomy.map(|h| h * s),
        }
    }

    pub fn max_abs(&self) -> f64 {
        (0..4).fold(0.0, |m: f64, mu| {
            m.max(par::max(self.grid.sites(), |i| self.at(mu, i).abs()))
        })
    }
}

impl Add for &GaugeField {
    type Output = GaugeField;
    fn add(self, rhs: &GaugeField) -> GaugeField {
        assert_eq!(self.grid, rhs.grid, "grid mismatch");
        GaugeField {
            grid: self.grid,
            osc: std::array::from_fn(|mu| {
                self.osc[mu].iter().zip(&rhs.osc[mu]).map(|(a, b)| a + b).collect()
            }),
            holonomy: std::array::from_fn(|mu| self.holonomy[mu] + rhs.holonomy[mu]),
        }
    }
}

impl Sub for &GaugeField {
    type Output = GaugeField;
    fn sub(self, rhs: &GaugeField) -> GaugeField {
        self + &rhs.scale(-1.0)
    }
}

impl Neg for &GaugeField {
    type Output = GaugeField;
    fn neg(self) -> GaugeField {
        self.scale(-1.0)
    }
}

/// Complex two-form field, six components `F_μν`, `μ < ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoFormField {
    grid: Grid4,
    comps: [Vec<C64>; 6],
    class: ValueClass,
}

impl TwoFormField {
    pub fn zeros(grid: Grid4, class: ValueClass) -> Self {
        Self {
            grid,
            comps: std::array::from_fn(|_| vec![C64::new(0.0, 0.0); grid.sites()]),
            class,
        }
    }

    pub fn from_components(grid: Grid4, comps: [Vec<C64>; 6], class: ValueClass) -> Result<Self> {
        if comps.iter().any(|c| c.len() != grid.sites()) {
            return Err(Error::Format("two-form component length".into()));
        }
        Ok(Self { grid, comps, class })
    }

    pub fn from_sites(
        grid: Grid4,
        class: ValueClass,
        f: impl Fn(usize) -> TwoFormFibre + Sync + Send,
    ) -> Self {
        let vals = par::map(grid.sites(), |i| f(i).coeffs);
        let comps = std::array::from_fn(|k| vals.iter().map(|v| v[k]).collect());
        Self { grid, comps, class }
    }

    pub fn constant(grid: Grid4, w: TwoFormFibre) -> Self {
        Self::from_sites(grid, w.class, |_| w)
    }

    pub fn grid(&self) -> Grid4 {
        self.grid
    }

    pub fn class(&self) -> ValueClass {
        self.class
    }

    pub fn components(&self) -> &[Vec<C64>; 6] {
        &self.comps
    }

    pub fn fibre_at(&self, idx: usize) -> TwoFormFibre {
        TwoFormFibre::new(std::array::from_fn(|k| self.comps[k][idx]), self.class)
    }

    pub fn map_fibres(&self, f: impl Fn(usize, TwoFormFibre) -> TwoFormFibre + Sync + Send) -> Self {
        let class = f(0, self.fibre_at(0)).class;
        Self::from_sites(self.grid, class, |i| f(i, self.fibre_at(i)))
    }

    pub fn self_dual_part(&self) -> Self {
        self.map_fibres(|_, w| w.self_dual_part())
    }

    pub fn anti_self_dual_part(&self) -> Self {
        self.map_fibres(|_, w| w.anti_self_dual_part())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            grid: self.grid,
            comps: std::array::from_fn(|k| self.comps[k].iter().map(|z| z * s).collect()),
            class: self.class,
        }
    }

    pub fn max_norm(&self) -> f64 {
        par::max(self.grid.sites(), |i| self.fibre_at(i).norm())
    }

    pub fn max_self_dual_defect(&self) -> f64 {
        par::max(self.grid.sites(), |i| self.fibre_at(i).self_dual_defect())
    }

    pub fn max_real_defect(&self) -> f64 {
        par::max(self.grid.sites(), |i| self.fibre_at(i).real_defect())
    }

    pub fn with_class(mut self, class: ValueClass) -> Self {
        self.class = class;
        self
    }
}

fn join(a: ValueClass, b: ValueClass) -> ValueClass {
    if a == b {
        a
    } else {
        ValueClass::Complex
    }
}

impl Add for &TwoFormField {
    type Output = TwoFormField;
    fn add(self, rhs: &TwoFormField) -> TwoFormField {
        TwoFormField {
            grid: self.grid,
            comps: std::array::from_fn(|k| zip_with(&self.comps[k], &rhs.comps[k], |a, b| a + b)),
            class: join(self.class, rhs.class),
        }
    }
}

impl Sub for &TwoFormField {
    type Output = TwoFormField;
    fn sub(self, rhs: &TwoFormField) -> TwoFormField {
        TwoFormField {
            grid: self.grid,
            comps: std::array::from_fn(|k| zip_with(&self.comps[k], &rhs.comps[k], |a, b| a - b)),
            class: join(self.class, rhs.class),
        }
    }
}

impl Neg for &TwoFormField {
    type Output = TwoFormField;
    fn neg(self) -> TwoFormField {
        self.scale(-1.0)
    }
}
