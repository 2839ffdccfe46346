//! Recovering a renaming-equivariant language from its separated part.

use std::collections::BTreeSet;

use crate::automata::{sample_separated_word, sample_word, MooreAutomaton};
use crate::examples::{fifo_automaton, first_repeats_automaton, last_letter_automaton, FifoConfig};
use crate::nominal::Sampler;
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::{exact, Suite, SuiteConfig};

pub struct Extension;

impl Named for Extension {
    fn name(&self) -> &'static str {
        "extension"
    }

    fn description(&self) -> &'static str {
        "extended separated language equals the full language; sb-equivariance controls"
    }
}

/// Minimum sample count for the language comparison.
pub const EXTENSION_SAMPLES: usize = 1000;
pub const MAX_LEN: usize = 6;

impl Suite for Extension {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        let samples = cfg.samples.max(EXTENSION_SAMPLES);
        vec![
            extension_matches_run(&fifo, samples, cfg.seed_for(0)),
            extension_on_separated_words(&fifo, cfg.samples, cfg.seed_for(1)),
            freshness_invariance(&fifo, cfg.samples, cfg.seed_for(2)),
            sb_equivariance_controls(cfg.samples, cfg.seed_for(3)),
        ]
    }
}

/// `extend(restrict(A))(w) = run(A)(w)` on sampled words with repeats.
pub fn extension_matches_run(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: extended separated language equals the language", a.name()));
    let Ok(sep) = a.restrict() else {
        return exact(report.property, false, || "restrict failed".into());
    };
    // a small pool makes repeated atoms common
    let mut s = Sampler::with_pool(seed, 3);
    for _ in 0..samples {
        let w = sample_word(a, &mut s, MAX_LEN);
        let result = (|| Ok::<_, crate::NominalError>(sep.extend_language(&w)? == a.run(&w)?))();
        report.record_result(result, || format!("w = {}", w));
    }
    report
}

pub fn extension_on_separated_words(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: extension agrees with the separated run", a.name()));
    let Ok(sep) = a.restrict() else {
        return exact(report.property, false, || "restrict failed".into());
    };
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let w = sample_separated_word(a, &mut s, MAX_LEN);
        let result = (|| Ok::<_, crate::NominalError>(sep.extend_language(&w)? == sep.run_separated(&w)?))();
        report.record_result(result, || format!("w = {}", w));
    }
    report
}

pub fn freshness_invariance(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: extension ignores the choice of fresh atoms", a.name()));
    let Ok(sep) = a.restrict() else {
        return exact(report.property, false, || "restrict failed".into());
    };
    let mut s = Sampler::with_pool(seed, 3);
    for _ in 0..samples {
        let w = sample_word(a, &mut s, MAX_LEN);
        let shift = s.index(5) + 1;
        let avoid: BTreeSet<_> = s.distinct_atoms(shift).into_iter().chain(w.support()).collect();
        let mut far = w.support();
        far.extend((0..20).map(|i| crate::atoms::Atom(100 + i)));
        let result = (|| {
            let base = sep.extend_language(&w)?;
            Ok::<_, crate::NominalError>(
                base == sep.extend_language_avoiding(&w, &avoid)? && base == sep.extend_language_avoiding(&w, &far)?,
            )
        })();
        report.record_result(result, || format!("w = {}", w));
    }
    report
}

/// FIFO and the atom-free echo automaton pass the sampled test; the
/// first-letter-repeats acceptor must fail it.
pub fn sb_equivariance_controls(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("sb-equivariance: FIFO and echo pass, repeat fails");
    let expectations = [
        (fifo_automaton(FifoConfig { n: 3 }), true),
        (last_letter_automaton(), true),
        (first_repeats_automaton(), false),
    ];
    for (a, should_pass) in expectations {
        match a.check_sb_equivariance(samples, seed, MAX_LEN) {
            Ok(r) => {
                let ok = r.passed() == should_pass && (should_pass || r.counterexample.is_some());
                report.record(ok, || match &r.counterexample {
                    Some(c) => format!("{}: unexpected failure: {}", a.name(), c),
                    None => format!("{}: no counterexample found", a.name()),
                });
            }
            Err(e) => report.record(false, || format!("{}: {}", a.name(), e)),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = Extension.run(&SuiteConfig { seed: 4, samples: 100 });
        assert!(report.passed, "{:#?}", report);
    }
}
