//! Two-forms on a single fibre of `Λ²T*ℝ⁴ ⊗ ℂ`.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::C64;

/// Index pairs `(i, j)`, `i < j`, in storage order: 12, 13, 14, 23, 24, 34
/// (zero-based here).
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

// *e_{ij} = HODGE_SIGN[k] · e_{kl} where (k,l) is PAIRS[5 - index].
const HODGE_SIGN: [f64; 6] = [1.0, -1.0, 1.0, 1.0, -1.0, 1.0];

/// Whether the coefficients are known to be real, imaginary or neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ValueClass {
    Real,
    Imaginary,
    Complex,
}

/// `ω = Σ_{i<j} ω_ij e^i ∧ e^j` at one point, in an oriented orthonormal
/// coframe of flat `ℝ⁴`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoFormFibre {
    pub coeffs: [C64; 6],
    pub class: ValueClass,
}

fn pair_index(i: usize, j: usize) -> Option<(usize, f64)> {
    let (a, b, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    PAIRS
        .iter()
        .position(|&p| p == (a, b))
        .map(|k| (k, sign))
}

impl TwoFormFibre {
    pub fn zero() -> Self {
        Self {
            coeffs: [C64::new(0.0, 0.0); 6],
            class: ValueClass::Real,
        }
    }

    pub fn new(coeffs: [C64; 6], class: ValueClass) -> Self {
        Self { coeffs, class }
    }

    pub fn real(coeffs: [f64; 6]) -> Self {
        Self::new(coeffs.map(|c| C64::new(c, 0.0)), ValueClass::Real)
    }

    /// `i·ω` for a real coefficient list.
    pub fn imaginary(coeffs: [f64; 6]) -> Self {
        Self::new(coeffs.map(|c| C64::new(0.0, c)), ValueClass::Imaginary)
    }

    /// The elementary form `e^i ∧ e^j` (zero-based indices; `i ≠ j`).
    pub fn basis(i: usize, j: usize) -> Self {
        let mut w = Self::zero();
        if let Some((k, s)) = pair_index(i, j) {
            w.coeffs[k] = C64::new(s, 0.0);
        }
        w
    }

    /// `ω(e_i, e_j)` for any ordered pair; zero on the diagonal.
    pub fn component(&self, i: usize, j: usize) -> C64 {
        match pair_index(i, j) {
            Some((k, s)) => self.coeffs[k] * s,
            None => C64::new(0.0, 0.0),
        }
    }

    /// Hodge star for the standard orientation `e¹∧e²∧e³∧e⁴`.
    pub fn hodge_star(&self) -> Self {
        let mut out = [C64::new(0.0, 0.0); 6];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.coeffs[5 - k] * HODGE_SIGN[k];
        }
        Self::new(out, self.class)
    }

    pub fn self_dual_part(&self) -> Self {
        (*self + self.hodge_star()) * 0.5
    }

    pub fn anti_self_dual_part(&self) -> Self {
        (*self - self.hodge_star()) * 0.5
    }

    /// `(ω⁺, ω⁻)` with `ω = ω⁺ + ω⁻`, `*ω± = ±ω±`.
    pub fn selfdual_split(&self) -> (Self, Self) {
        (self.self_dual_part(), self.anti_self_dual_part())
    }

    /// `|ω|² = Σ_{i<j} |ω_ij|²`.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Hermitian pairing `Σ_{i<j} conj(ω_ij) η_ij`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Components of the 1-form `i_{e_l} ω = Σ_j ω(e_l, e_j) e^j`.
    pub fn interior(&self, l: usize) -> [C64; 4] {
        std::array::from_fn(|j| self.component(l, j))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.map(|c| c.conj()), self.class)
    }

    /// Largest real-part magnitude (zero for genuinely imaginary forms).
    pub fn real_defect(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.re.abs()))
    }

    /// Distance from `Λ²₊`: `|ω − *ω| / 2`.
    pub fn self_dual_defect(&self) -> f64 {
        self.anti_self_dual_part().norm()
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

impl Add for TwoFormFibre {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut c = self.coeffs;
        for (x, y) in c.iter_mut().zip(rhs.coeffs.iter()) {
            *x += y;
        }
        Self::new(c, join(self.class, rhs.class))
    }
}

impl AddAssign for TwoFormFibre {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for TwoFormFibre {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for TwoFormFibre {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.map(|c| -c), self.class)
    }
}

impl Mul<f64> for TwoFormFibre {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.coeffs.map(|c| c * s), self.class)
    }
}

impl Mul<C64> for TwoFormFibre {
    type Output = Self;
    fn mul(self, s: C64) -> Self {
        let class = match (self.class, s.re == 0.0, s.im == 0.0) {
            (c, _, true) => c,
            (ValueClass::Real, true, false) => ValueClass::Imaginary,
            (ValueClass::Imaginary, true, false) => ValueClass::Real,
            _ => ValueClass::Complex,
        };
        Self::new(self.coeffs.map(|c| c * s), class)
    }
}
