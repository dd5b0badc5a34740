use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use swlift::seiberg_witten::SolverOptions;
use swlift::torus::Grid4;
use swlift::Charge;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Points per axis; even and at least 4.
    pub n: usize,
    /// Band limit of random fields; at most `n/4` so products stay resolved.
    pub kmax: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { n: 8, kmax: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhysicsConfig {
    /// The charge as the integer `2q`.
    pub charge_twice: i32,
    pub radius: f64,
    /// Use `A = 0` instead of a random connection in `lift-check`.
    pub flat_connection: bool,
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self {
            charge_twice: 1,
            radius: 1.0,
            flat_connection: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub identity: f64,
    pub field: f64,
    pub lift: f64,
    pub ricci: f64,
    pub ke: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            identity: 1e-12,
            field: 1e-11,
            lift: 1e-10,
            ricci: 1e-6,
            ke: 1e-12,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KeConfig {
    pub lambdas: Vec<f64>,
}

impl Default for KeConfig {
    fn default() -> Self {
        Self {
            lambdas: vec![-8.0, -4.0, -1.0, 2.0, 6.0, 10.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RicciConfig {
    pub c: f64,
    pub r: f64,
    pub step: f64,
}

impl Default for RicciConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            r: 1.0,
            step: swlift::kaluza_klein::ricci::DEFAULT_STEP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// Random samples for the fibrewise identity suite.
    pub trials: usize,
    /// Random configurations per check in `lift-check`.
    pub configurations: usize,
    /// Sup-norm of the perturbation applied to the manufactured start of `solve`.
    pub perturbation: f64,
    pub output: PathBuf,
    pub grid: GridConfig,
    pub physics: PhysicsConfig,
    pub tolerances: Tolerances,
    pub solver: SolverOptions,
    pub ke: KeConfig,
    pub ricci: RicciConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            trials: 1000,
            configurations: 5,
            perturbation: 1e-3,
            output: PathBuf::from("swlift-out"),
            grid: GridConfig::default(),
            physics: PhysicsConfig::default(),
            tolerances: Tolerances::default(),
            solver: SolverOptions::frozen(),
            ke: KeConfig::default(),
            ricci: RicciConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn to_toml(&self) -> anyhow::Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        let n = self.grid.n;
        if n < 4 || n % 2 != 0 {
            bail!("grid.n must be even and at least 4 (got {n})");
        }
        if self.grid.kmax > n / 4 {
            bail!("grid.kmax must be at most n/4 = {} (got {})", n / 4, self.grid.kmax);
        }
        if self.physics.charge_twice == 0 {
            bail!("physics.charge_twice must be non-zero");
        }
        if !(self.physics.radius > 0.0 && self.physics.radius.is_finite()) {
            bail!("physics.radius must be positive (got {})", self.physics.radius);
        }
        if self.trials == 0 || self.configurations == 0 {
            bail!("trials and configurations must be positive");
        }
        if !(self.perturbation >= 0.0 && self.perturbation.is_finite()) {
            bail!("perturbation must be finite and non-negative");
        }
        Ok(())
    }

    pub fn grid4(&self) -> Grid4 {
        Grid4::new(self.grid.n).expect("validated")
    }

    pub fn charge(&self) -> Charge {
        Charge::from_twice(self.physics.charge_twice)
    }
}
