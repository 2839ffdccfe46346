//! The nuclear set `𝔸 + {∗}`: a lawful renaming set whose atoms have finite
//! permutation supports but no finite substitution support.

use std::collections::BTreeSet;

use crate::atoms::{Atom, Subst};
use crate::examples::{nuclear_act, nuclear_witness, Nuclear};
use crate::nominal::{supports_under, Monoid, Sampler};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::{Suite, SuiteConfig};

pub struct Counterexamples;

impl Named for Counterexamples {
    fn name(&self) -> &'static str {
        "counterexamples"
    }

    fn description(&self) -> &'static str {
        "nuclear set: action laws, witnesses against finite substitution supports"
    }
}

const SUPPORT_TRIALS: usize = 40;

impl Suite for Counterexamples {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        vec![
            action_laws(cfg.samples, cfg.seed_for(0)),
            star_fixed(cfg.samples, cfg.seed_for(1)),
            witnesses(cfg.samples, cfg.seed_for(2)),
        ]
    }
}

fn sample_subst(s: &mut Sampler) -> Subst {
    if s.coin(0.5) {
        s.perm().into_subst()
    } else {
        s.subst()
    }
}

fn sample_element(s: &mut Sampler) -> Nuclear {
    if s.coin(0.2) {
        Nuclear::Star
    } else {
        Nuclear::Atom(s.atom())
    }
}

pub fn action_laws(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("nuclear set: identity and composition laws");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let x = sample_element(&mut s);
        let (m, n) = (sample_subst(&mut s), sample_subst(&mut s));
        let id = x.act(&Subst::identity()) == x;
        let comp = x.act(&Subst::compose(&m, &n)) == x.act(&n).act(&m);
        report.record(id && comp, || format!("x = {:?}, m = {}, n = {}", x, m, n));
    }
    report
}

pub fn star_fixed(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("nuclear set: ∗ is fixed by every substitution");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let m = sample_subst(&mut s);
        report.record(Nuclear::Star.act(&m) == Nuclear::Star, || format!("m = {}", m));
    }
    report
}

/// For sampled `a` and finite `C`, the witness pair agrees on `C` and
/// separates `a`, while permutations fixing `C ∪ {a}` never move `a`.
pub fn witnesses(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("nuclear set: every finite C fails as a substitution support");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let a = s.atom();
        let size = s.index(5);
        let mut c: BTreeSet<Atom> = s.distinct_atoms(size).into_iter().collect();
        if s.coin(0.5) {
            c.insert(a);
        }
        let (m1, m2) = nuclear_witness(a, &c);
        let agree = m1.agrees_on(&m2, &c);
        let separates = Nuclear::Atom(a).act(&m1) != Nuclear::Atom(a).act(&m2);
        let mut with_a = c.clone();
        with_a.insert(a);
        let v = Nuclear::Atom(a).to_value();
        let perm_support = supports_under(&v, &with_a, Monoid::Perm, nuclear_act, &mut s, SUPPORT_TRIALS);
        report.record(agree && separates && perm_support, || {
            format!(
                "a = {}, C = {:?}: m1 = {}, m2 = {}, agree {}, separate {}, Perm-support {}",
                a, c, m1, m2, agree, separates, perm_support
            )
        });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = Counterexamples.run(&SuiteConfig { seed: 1, samples: 100 });
        assert!(report.passed, "{:#?}", report);
    }
}
