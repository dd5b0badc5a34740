use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `measured <= threshold`; NaN fails.
    pub fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            measured,
            threshold,
            pass: measured <= threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Free-form facts that are not pass/fail, e.g. the solver stop reason.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time: f64,
    pub version: String,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig, checks: Vec<Check>, notes: Vec<String>, wall_time: f64) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            config: config.clone(),
            checks,
            pass,
            notes,
            wall_time,
            version: swlift::VERSION.to_string(),
        }
    }

    pub fn write_json(&self, path: &Path) -> anyhow::Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{} ({:.2} s)\n", self.command, self.wall_time);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            s += &format!(
                "  [{}] {:width$}  {:>10.3e}  <= {:.1e}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.measured,
                c.threshold,
            );
        }
        for n in &self.notes {
            s += &format!("  note: {n}\n");
        }
        s += if self.pass { "result: pass\n" } else { "result: FAIL\n" };
        s
    }
}
