//! Spin geometry of Kaluza–Klein circle bundles over the flat 4-torus.
//!
//! The crate lifts the (perturbed) Seiberg–Witten equations for a pair
//! `(A, φ)` on `T⁴` to a single Dirac equation with cubic non-linearity on
//! `Y = T⁴ × S¹`, and provides the machinery to check that correspondence
//! numerically:
//!
//! * [`clifford`]: fibrewise Clifford algebra in dimensions 4 and 5, the
//!   self-dual 2-form calculus and the quadratic map `σ`.
//! * [`torus`]: spectrally exact field calculus on `(ℝ/2πℤ)⁴`.
//! * [`seiberg_witten`]: residuals, symmetries and a Gauss–Newton solver.
//! * [`kaluza_klein`]: charge-sector spinors on `Y`, two independent
//!   constructions of `D^Y`, the cubic residual, the Gross–Neveu action and
//!   Kaluza–Klein Ricci curvature.
//! * [`sasaki`]: closed-form Kähler–Einstein / Sasaki η-Einstein data.
//!
//! Data-parallel inner loops run on rayon when the `parallel` feature is
//! enabled (the default). All reductions use a fixed blocking, so results are
//! bit-identical with and without the feature.

pub mod charge;
pub mod clifford;
pub mod error;
pub mod kaluza_klein;
pub(crate) mod par;
pub mod sasaki;
pub mod seiberg_witten;
pub mod torus;
pub mod twoform;

pub use charge::Charge;
pub use clifford::{CliffordModel, DiracValue, IdentityReport, Mat2, Mat4, WeylValue};
pub use error::{Error, Result};
pub use twoform::{TwoFormFibre, ValueClass};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Library version, echoed into reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
