//! Property suites, registered by name. Each suite is deterministic given
//! its seed and sample count.

use serde::Serialize;

use crate::error::{NominalError, Result};
use crate::registry::{Named, Registry};
use crate::report::CheckReport;

pub mod actions;
pub mod adjunction;
pub mod counterexamples;
pub mod extension;
pub mod monoidal;
pub mod onedim;
pub mod oracle;
pub mod runs;
pub mod supports;

/// Name that selects every registered suite.
pub const ALL: &str = "all";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 500 }
    }
}

impl SuiteConfig {
    /// Sub-seed for the `i`-th check, so checks do not share random streams.
    pub fn seed_for(&self, i: u64) -> u64 {
        self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

pub trait Suite: Named + Send + Sync {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport>;

    fn run(&self, cfg: &SuiteConfig) -> SuiteReport {
        let checks = self.checks(cfg);
        SuiteReport { suite: self.name().to_string(), passed: checks.iter().all(CheckReport::passed), checks }
    }
}

pub fn default_suites() -> Registry<dyn Suite> {
    let mut registry: Registry<dyn Suite> = Registry::new();
    registry
        .register(Box::new(actions::Actions))
        .register(Box::new(supports::Supports))
        .register(Box::new(adjunction::Adjunction))
        .register(Box::new(monoidal::Monoidal))
        .register(Box::new(onedim::OneDim))
        .register(Box::new(runs::Automata))
        .register(Box::new(extension::Extension))
        .register(Box::new(counterexamples::Counterexamples));
    registry
}

/// Runs one suite, or all of them for [`ALL`]. Suites run on separate
/// threads; reports come back in registry (name) order.
pub fn run_suites(registry: &Registry<dyn Suite>, name: &str, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    let selected: Vec<&dyn Suite> = if name == ALL {
        registry.iter().collect()
    } else {
        vec![registry.get(name).ok_or_else(|| NominalError::Unknown { kind: "suite", name: name.to_string() })?]
    };
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> = selected.into_iter().map(|s| scope.spawn(move || s.run(cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    }))
}

/// A check with a single deterministic outcome.
pub(crate) fn exact(property: impl Into<String>, ok: bool, detail: impl FnOnce() -> String) -> CheckReport {
    let mut report = CheckReport::new(property);
    report.record(ok, detail);
    report
}

/// Folds a sequence of exact comparisons into one report.
pub(crate) fn exact_all<I>(property: impl Into<String>, cases: I) -> CheckReport
where
    I: IntoIterator<Item = (bool, String)>,
{
    let mut report = CheckReport::new(property);
    for (ok, detail) in cases {
        report.record(ok, || detail);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        let names: Vec<_> = default_suites().names().collect();
        assert_eq!(
            names,
            vec!["actions", "adjunction", "automata", "counterexamples", "extension", "monoidal", "onedim", "supports"]
        );
    }

    #[test]
    fn unknown_suite() {
        let err = run_suites(&default_suites(), "bogus", &SuiteConfig::default()).unwrap_err();
        assert!(err.to_string().contains("unknown suite"));
    }
}
