use serde::Serialize;

/// Outcome of a sampled property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub samples: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl CheckReport {
    pub fn new(property: impl Into<String>) -> Self {
        CheckReport { property: property.into(), samples: 0, failures: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Records one sample; keeps only the first counterexample.
    pub fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    /// Records a sample that must not fail with an error.
    pub fn record_result<E: std::fmt::Display>(&mut self, result: Result<bool, E>, describe: impl FnOnce() -> String) {
        match result {
            Ok(ok) => self.record(ok, describe),
            Err(e) => self.record(false, || format!("{}: {}", describe(), e)),
        }
    }
}
