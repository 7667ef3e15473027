//! Named numerical checks and the report that collects them.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
}

impl Check {
    /// Passes when `residual ≤ tolerance` (NaN fails).
    pub fn within(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { name: name.into(), pass: residual <= tolerance, residual }
    }

    /// A boolean check; `residual` carries whatever number explains it.
    pub fn flag(name: impl Into<String>, pass: bool, residual: f64) -> Self {
        Self { name: name.into(), pass, residual }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub example: String,
    pub checks: Vec<Check>,
    /// Extra measurements that do not decide pass/fail.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commentary: Option<String>,
}

impl Report {
    pub fn new(example: impl Into<String>) -> Self {
        Self { example: example.into(), checks: Vec::new(), diagnostics: Vec::new(), commentary: None }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn diagnose(&mut self, check: Check) {
        self.diagnostics.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
