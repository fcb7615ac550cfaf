//! Randomized, seeded law suites.
//!
//! Each suite checks a family of exact structural identities on generated
//! fixtures and returns a per-check pass/fail record. The `check-laws` CLI
//! subcommand and the acceptance test target both run these.

pub mod gen;
mod suites;

pub use suites::*;

/// Outcome of one law suite.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: String,
    pub checks: Vec<(String, bool)>,
}

impl SuiteOutcome {
    pub fn new(name: impl Into<String>) -> Self {
        SuiteOutcome {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

impl std::fmt::Display for SuiteOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (label, ok) in &self.checks {
            writeln!(
                f,
                "  [{}] {label}",
                if *ok { "ok" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "{}: {}",
            self.name,
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}
