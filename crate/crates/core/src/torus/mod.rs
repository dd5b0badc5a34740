//! Fields on the flat torus `X = (ℝ/2πℤ)⁴` sampled on a uniform `N⁴` grid.
//!
//! Sites are stored lexicographically with the first axis slowest:
//! `idx = ((i₁N + i₂)N + i₃)N + i₄`, and `x^μ = 2π i_μ / N`.

mod fields;
pub mod io;
mod ops;
pub mod spectral;

pub use fields::{Chirality, GaugeField, ScalarField, SpinorField, TwoFormField};
pub use ops::{
    covariant_derivative, curvature, dirac_x, exterior_derivative_two_form, l2_inner, l2_norm,
    random_band_limited, random_gauge, random_scalar, random_spinor, random_two_form, AnyField,
    FieldKind, L2Field, SpectralPartial,
};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform grid with `N` points per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid4 {
    n: usize,
}

impl Grid4 {
    /// `N` must be even and at least 4.
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidGrid(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sites(&self) -> usize {
        self.n.pow(4)
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Volume weight of one site, `(2π/N)⁴`.
    pub fn weight(&self) -> f64 {
        self.spacing().powi(4)
    }

    /// Distance in storage between neighbours along `axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow(3 - axis as u32)
    }

    pub fn index(&self, i: [usize; 4]) -> usize {
        i.iter().fold(0, |acc, &c| acc * self.n + c % self.n)
    }

    pub fn coords(&self, idx: usize) -> [usize; 4] {
        let n = self.n;
        [idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n]
    }

    pub fn point(&self, idx: usize) -> [f64; 4] {
        let h = self.spacing();
        self.coords(idx).map(|c| c as f64 * h)
    }

    pub fn check_same(&self, other: &Grid4) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::GridMismatch(self.n, other.n))
        }
    }

    /// Generators need `kmax < N/2` so that no mode reaches Nyquist.
    pub fn check_band_limit(&self, kmax: usize) -> Result<()> {
        if 2 * kmax >= self.n {
            Err(Error::BandLimit { kmax, n: self.n })
        } else {
            Ok(())
        }
    }
}
