//! Machine-readable verification reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub args: Value,
    pub pass: bool,
    pub hypothesis_met: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub ring: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, ring: impl Into<String>) -> Self {
        Report { suite: suite.into(), ring: ring.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, id: &str, args: Value, pass: bool, hypothesis_met: bool) {
        self.checks.push(Check { id: id.into(), args, pass, hypothesis_met });
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    /// Every check passed, whether or not its hypothesis was met.
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// Every check whose hypothesis holds passed.
    pub fn pass_within_hypothesis(&self) -> bool {
        self.checks.iter().filter(|c| c.hypothesis_met).all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    /// Per check id: `(id, total, passed)` in order of first appearance.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|e| e.0 == c.id) {
                Some(e) => {
                    e.1 += 1;
                    e.2 += c.pass as usize;
                }
                None => out.push((c.id.clone(), 1, c.pass as usize)),
            }
        }
        out
    }
}
