//! Supports: transfer along permutations, minimality, agreement of the
//! permutation and substitution support tests, orbit shapes as complete
//! invariants, and orbit counts of products against brute force.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{fresh, Atom, Perm};
use crate::examples::{fifo_alphabet, fifo_automaton, fifo_outputs, fifo_states, FifoConfig};
use crate::nominal::{is_equivariant, orbit_shape, supports, transfers_support, Monoid, NomValue, NominalSetDesc, Sampler};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::counterexamples::witnesses;
use crate::verify::oracle::{partial_injections_by_enumeration, product_orbits_by_enumeration};
use crate::verify::{exact_all, Suite, SuiteConfig};

pub struct Supports;

impl Named for Supports {
    fn name(&self) -> &'static str {
        "supports"
    }

    fn description(&self) -> &'static str {
        "support transfer, minimality, Perm/Sb support agreement, orbit invariants, product orbit counts, nuclear witnesses"
    }
}

/// Minimum sample count for the transfer check.
pub const TRANSFER_SAMPLES: usize = 1000;

const SUPPORT_TRIALS: usize = 40;

fn a() -> NominalSetDesc {
    NominalSetDesc::Atoms
}

fn mixed_sets() -> Vec<NominalSetDesc> {
    vec![
        a(),
        NominalSetDesc::power(a(), 3),
        NominalSetDesc::sep_power(a(), 3),
        NominalSetDesc::words_up_to(a(), 3),
        NominalSetDesc::sep_words_up_to(a(), 3),
        fifo_states(3),
        NominalSetDesc::product(fifo_alphabet(), NominalSetDesc::sep_power(a(), 2)),
        NominalSetDesc::free(NominalSetDesc::product(a(), a())),
    ]
}

fn sb_sets() -> Vec<NominalSetDesc> {
    mixed_sets().into_iter().filter(NominalSetDesc::has_sb_action).collect()
}

impl Suite for Supports {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        vec![
            transfer(cfg.samples.max(TRANSFER_SAMPLES), cfg.seed_for(0)),
            minimality(cfg.samples, cfg.seed_for(1)),
            perm_sb_agreement(cfg.samples, cfg.seed_for(2)),
            preservation(cfg.samples, cfg.seed_for(3)),
            shape_invariant(cfg.samples, cfg.seed_for(4)),
            product_orbits(),
            separated_orbits_multiply(),
            witnesses(cfg.samples, cfg.seed_for(5)),
        ]
    }
}

/// `supp(g·x) = g·supp(x)`.
pub fn transfer(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("supp(g·x) = g·supp(x)");
    let mut s = Sampler::new(seed);
    let sets = mixed_sets();
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let Some(v) = s.member(x) else { continue };
        let g = s.perm();
        report.record(transfers_support(&v, &g), || format!("x = {}, g = {}", v, g.as_subst()));
    }
    report
}

/// Permutations fixing `supp(x)` fix `x`, and dropping any atom from the
/// support lets a permutation move `x`.
pub fn minimality(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("supp(x) is the least support");
    let mut s = Sampler::new(seed);
    let sets = mixed_sets();
    let mut values: Vec<NomValue> = sets.iter().flat_map(|x| x.orbits()).map(|o| o.representative().clone()).collect();
    for i in 0..samples {
        values.extend(s.member(&sets[i % sets.len()]));
    }
    for v in values {
        let supp = v.support();
        let g = s.perm_fixing(&supp);
        let fixed = v.permute(&g) == v;
        let avoid: BTreeSet<Atom> = supp.iter().copied().chain(g.as_subst().mentioned()).collect();
        let b = fresh(&avoid, 1)[0];
        let each_needed = supp.iter().all(|a| v.permute(&Perm::swap(*a, b)) != v);
        report.record(fixed && each_needed, || format!("x = {}, g = {}", v, g.as_subst()));
    }
    report
}

/// On renaming sets, a finite set supports `x` under permutations iff it
/// does under substitutions, iff it contains `supp(x)`.
pub fn perm_sb_agreement(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("Perm-support and Sb-support agree on renaming sets");
    let mut s = Sampler::new(seed);
    let sets = sb_sets();
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let Some(v) = s.member(x) else { continue };
        let mut c: BTreeSet<Atom> = v.support().into_iter().filter(|_| s.coin(0.7)).collect();
        let extra = s.index(3);
        c.extend(s.distinct_atoms(extra));
        let truth = v.support().is_subset(&c);
        let perm = supports(&v, &c, Monoid::Perm, &mut s, SUPPORT_TRIALS);
        let sb = supports(&v, &c, Monoid::Sb, &mut s, SUPPORT_TRIALS);
        report.record(perm == truth && sb == truth, || {
            format!("x = {}, C = {:?}: supp ⊆ C is {}, Perm test {}, Sb test {}", v, c, truth, perm, sb)
        });
    }
    report
}

/// Equivariant maps shrink supports; checked through the equivariance
/// sampler, which also tests `supp(f(x)) ⊆ supp(x)`.
pub fn preservation(samples: usize, seed: u64) -> CheckReport {
    let fifo = fifo_automaton(FifoConfig { n: 3 });
    let q = fifo_states(3);
    let qs = NominalSetDesc::product(q.clone(), fifo_alphabet());
    let a2 = NominalSetDesc::product(a(), a());
    let reports = [
        is_equivariant(
            |v| match v.as_tuple() {
                Some([state, letter]) => fifo.step(state, letter),
                _ => v.clone(),
            },
            &qs,
            &q,
            samples,
            seed,
        ),
        is_equivariant(|v| fifo.output(v), &q, &fifo_outputs(), samples, seed + 1),
        is_equivariant(|v| v.as_tuple().map(|t| t[0].clone()).unwrap_or_else(|| v.clone()), &a2, &a(), samples, seed + 2),
    ];
    let mut merged = CheckReport::new("equivariant maps preserve supports");
    for r in reports {
        merged.samples += r.samples;
        merged.failures += r.failures;
        if merged.counterexample.is_none() {
            merged.counterexample = r.counterexample.map(|c| format!("{}: {}", r.property, c));
        }
    }
    merged
}

/// Independent orbit test: align supports in first-occurrence order and
/// check whether the induced permutation maps one value to the other.
fn same_orbit(v: &NomValue, w: &NomValue) -> bool {
    let (sv, sw) = (v.support_order(), w.support_order());
    if sv.len() != sw.len() {
        return false;
    }
    let alignment: BTreeMap<Atom, Atom> = sv.into_iter().zip(sw).collect();
    Perm::extend_injection(&alignment).map(|g| v.permute(&g) == *w).unwrap_or(false)
}

pub fn shape_invariant(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("orbit shapes are equal iff values share an orbit");
    let mut s = Sampler::new(seed);
    let sets = mixed_sets();
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let Some(v) = s.member(x) else { continue };
        let w = if s.coin(0.5) { v.permute(&s.perm()) } else { s.member(x).expect("nonempty") };
        let result = orbit_shape(&v, x).and_then(|sv| Ok(sv == orbit_shape(&w, x)?)).map(|eq| eq == same_orbit(&v, &w));
        report.record_result(result, || format!("X = {}, x = {}, y = {}", x, v, w));
    }
    report
}

/// `|orbits(𝔸^(k) × 𝔸^(j))|` from the orbit enumerator, from concrete
/// enumeration under the symmetric group, and from counting partial
/// injections, for `k, j ≤ 3`.
pub fn product_orbits() -> CheckReport {
    let cases = (0..=3).flat_map(|k| (0..=3).map(move |j| (k, j))).map(|(k, j)| {
        let set = NominalSetDesc::product(NominalSetDesc::sep_power(a(), k), NominalSetDesc::sep_power(a(), j));
        let enumerated = set.orbits().len();
        let concrete = product_orbits_by_enumeration(k, j);
        let injections = partial_injections_by_enumeration(k, j);
        (
            enumerated == concrete && concrete == injections,
            format!("k = {}, j = {}: enumerator {}, concrete {}, partial injections {}", k, j, enumerated, concrete, injections),
        )
    });
    exact_all("product orbit counts match brute force", cases.collect::<Vec<_>>())
}

pub fn separated_orbits_multiply() -> CheckReport {
    let sets = [
        a(),
        NominalSetDesc::power(a(), 2),
        NominalSetDesc::words_up_to(a(), 2),
        fifo_alphabet(),
        NominalSetDesc::Unit,
    ];
    let mut cases = Vec::new();
    for x in &sets {
        for y in &sets {
            let sep = NominalSetDesc::sep_product(x.clone(), y.clone()).orbits().len();
            let expected = x.orbits().len() * y.orbits().len();
            cases.push((sep == expected, format!("{} ⊛ {}: {} orbits, expected {}", x, y, sep, expected)));
        }
    }
    exact_all("separated product orbits multiply", cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = Supports.run(&SuiteConfig { seed: 11, samples: 60 });
        assert!(report.passed, "{:#?}", report);
    }
}
