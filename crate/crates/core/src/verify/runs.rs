//! Automaton semantics: compositionality, equivariance of languages and
//! components, agreement of full and separated runs, and reachable orbit
//! counts against independent oracles.

use std::collections::BTreeSet;

use crate::atoms::Atom;
use crate::automata::{sample_separated_word, sample_word, MooreAutomaton, SearchOrder, Word};
use crate::error::Result;
use crate::examples::{fifo_alphabet, fifo_automaton, fifo_outputs, fifo_states, FifoConfig, POP, PUT};
use crate::nominal::{is_equivariant, NomValue, NominalSetDesc, Sampler};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::oracle::{bell_by_enumeration, concrete_reachable_orbits};
use crate::verify::{exact, exact_all, Suite, SuiteConfig};

pub struct Automata;

impl Named for Automata {
    fn name(&self) -> &'static str {
        "automata"
    }

    fn description(&self) -> &'static str {
        "run semantics, equivariance, restriction, reachable orbit counts"
    }
}

pub const MAX_TABLE_N: usize = 5;
const MAX_LEN: usize = 6;

impl Suite for Automata {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        vec![
            compositional(&fifo, cfg.samples, cfg.seed_for(0)),
            perm_language(&fifo, cfg.samples, cfg.seed_for(1)),
            components_equivariant(3, cfg.samples, cfg.seed_for(2)),
            restriction_agrees(&fifo, cfg.samples, cfg.seed_for(3)),
            separated_domain(&fifo, cfg.samples, cfg.seed_for(4)),
            nominal_counts(MAX_TABLE_N),
            separated_counts(MAX_TABLE_N),
            concrete_counts(4),
            restriction_reaches_less(4),
            order_independent(MAX_TABLE_N),
        ]
    }
}

/// `1 + Σ_{k ≤ n} Bell(k)`: every queue content pattern plus the sink.
pub fn bell_sum_oracle(n: usize) -> usize {
    1 + (0..=n).map(bell_by_enumeration).sum::<usize>()
}

/// Reachable orbit count of the full and separated FIFO automata.
pub fn fifo_counts(n: usize) -> Result<(usize, usize)> {
    let fifo = fifo_automaton(FifoConfig { n });
    Ok((fifo.reachable_orbits()?.len(), fifo.restrict()?.reachable_orbits()?.len()))
}

pub fn compositional(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: runs compose along concatenation", a.name()));
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let (u, v) = (sample_word(a, &mut s, MAX_LEN / 2), sample_word(a, &mut s, MAX_LEN / 2));
        let q = s.member(a.states()).expect("nonempty");
        let uv = Word(u.letters().iter().chain(v.letters()).cloned().collect());
        let result = (|| Ok::<_, crate::NominalError>(a.run_from(&q, &uv)? == a.run_from(&a.run_from(&q, &u)?, &v)?))();
        report.record_result(result, || format!("q = {}, u = {}, v = {}", q, u, v));
    }
    report
}

pub fn perm_language(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: L(g·w) = g·L(w)", a.name()));
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let w = sample_word(a, &mut s, MAX_LEN);
        let g = s.perm();
        let result = (|| Ok::<_, crate::NominalError>(a.run(&w.permute(&g))? == a.run(&w)?.permute(&g)))();
        report.record_result(result, || format!("g = {}, w = {}", g.as_subst(), w));
    }
    report
}

/// Transition and output maps of FIFO(n) are equivariant and land in the
/// declared sets.
pub fn components_equivariant(n: usize, samples: usize, seed: u64) -> CheckReport {
    let fifo = fifo_automaton(FifoConfig { n });
    let q = fifo_states(n);
    let qs = NominalSetDesc::product(q.clone(), fifo_alphabet());
    let delta = is_equivariant(
        |v| match v.as_tuple() {
            Some([state, letter]) => fifo.step(state, letter),
            _ => v.clone(),
        },
        &qs,
        &q,
        samples,
        seed,
    );
    let out = is_equivariant(|v| fifo.output(v), &q, &fifo_outputs(), samples, seed + 1);
    let mut merged = CheckReport::new(format!("{}: δ and o are equivariant", fifo.name()));
    for r in [delta, out] {
        merged.samples += r.samples;
        merged.failures += r.failures;
        if merged.counterexample.is_none() {
            merged.counterexample = r.counterexample;
        }
    }
    merged
}

pub fn restriction_agrees(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: restriction agrees on separated words", a.name()));
    let mut s = Sampler::new(seed);
    let Ok(sep) = a.restrict() else {
        return exact(report.property, false, || "restrict failed".into());
    };
    report.record(sep.initial() == a.initial(), || "initial state changed".into());
    for _ in 0..samples {
        let w = sample_separated_word(a, &mut s, MAX_LEN);
        let result = (|| Ok::<_, crate::NominalError>(sep.run_separated(&w)? == a.run(&w)?))();
        report.record_result(result, || format!("w = {}", w));
    }
    report
}

/// For FIFO the states visited on `w` only hold atoms of earlier letters,
/// so the separated run is defined exactly on pairwise separated words.
pub fn separated_domain(a: &MooreAutomaton, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{}: separated run is defined exactly on separated words", a.name()));
    let mut s = Sampler::with_pool(seed, 4);
    let Ok(sep) = a.restrict() else {
        return exact(report.property, false, || "restrict failed".into());
    };
    for _ in 0..samples {
        let w = sample_word(a, &mut s, MAX_LEN);
        let defined = sep.run_separated(&w).is_ok();
        report.record(defined == w.is_separated(), || format!("w = {}: defined = {}", w, defined));
    }
    report
}

pub fn nominal_counts(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| match fifo_counts(n) {
        Ok((full, _)) => {
            let expected = bell_sum_oracle(n);
            (full == expected, format!("n = {}: {} orbits, 1 + ΣBell = {}", n, full, expected))
        }
        Err(e) => (false, format!("n = {}: {}", n, e)),
    });
    exact_all("FIFO reachable orbits = 1 + Σ Bell(k)", cases.collect::<Vec<_>>())
}

pub fn separated_counts(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| match fifo_counts(n) {
        Ok((_, sep)) => (sep == n + 2, format!("n = {}: {} orbits, expected {}", n, sep, n + 2)),
        Err(e) => (false, format!("n = {}: {}", n, e)),
    });
    exact_all("separated FIFO reachable orbits = n + 2", cases.collect::<Vec<_>>())
}

/// Orbit counts from exploring concrete states over a finite atom pool.
pub fn concrete_counts(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| {
        let fifo = fifo_automaton(FifoConfig { n });
        let atoms = (n + 1) as u32;
        let letters: Vec<NomValue> = (0..atoms)
            .map(|i| NomValue::tagged(PUT, NomValue::atom(Atom(i))))
            .chain([NomValue::label(POP)])
            .collect();
        let full = concrete_reachable_orbits(&fifo, &letters, atoms, false);
        let sep = concrete_reachable_orbits(&fifo, &letters, atoms, true);
        let (sym_full, sym_sep) = fifo_counts(n).unwrap_or((usize::MAX, usize::MAX));
        (
            full == sym_full && sep == sym_sep,
            format!("n = {}: concrete ({}, {}), symbolic ({}, {})", n, full, sep, sym_full, sym_sep),
        )
    });
    exact_all("reachable orbits match concrete exploration", cases.collect::<Vec<_>>())
}

pub fn restriction_reaches_less(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| {
        let fifo = fifo_automaton(FifoConfig { n });
        let full: BTreeSet<_> = fifo.reachable_orbits().unwrap_or_default().into_iter().collect();
        let sep: BTreeSet<_> =
            fifo.restrict().and_then(|s| s.reachable_orbits()).unwrap_or_default().into_iter().collect();
        (!sep.is_empty() && sep.is_subset(&full), format!("n = {}: {} separated, {} full", n, sep.len(), full.len()))
    });
    exact_all("separated reachable orbits ⊆ full reachable orbits", cases.collect::<Vec<_>>())
}

pub fn order_independent(max: usize) -> CheckReport {
    let cases = (0..=max).flat_map(|n| {
        let fifo = fifo_automaton(FifoConfig { n });
        let sep = fifo.restrict().expect("full automaton");
        [fifo, sep].into_iter().map(move |a| {
            let bfs = a.reachable_orbits_in(SearchOrder::BreadthFirst);
            let dfs = a.reachable_orbits_in(SearchOrder::DepthFirst);
            (bfs.is_ok() && bfs == dfs, format!("n = {}, {:?}", n, a.kind()))
        })
    });
    exact_all("reachable orbits do not depend on search order", cases.collect::<Vec<_>>())
}
