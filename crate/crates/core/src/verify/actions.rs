//! Monoid laws for substitutions and permutations, action laws on values
//! and free elements, and functor laws for the free construction.

use std::collections::{BTreeMap, BTreeSet};

use crate::atoms::{fresh, Atom, Perm, Subst};
use crate::examples::{fifo_alphabet, fifo_states};
use crate::free::{act_free, free_elem, free_map, sample_free};
use crate::nominal::{act, NomValue, NominalSetDesc, Sampler};
use crate::nominal::set::FreeBase;
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::{Suite, SuiteConfig};

pub struct Actions;

impl Named for Actions {
    fn name(&self) -> &'static str {
        "actions"
    }

    fn description(&self) -> &'static str {
        "monoid laws, action laws, injection extension, freshness, functor laws"
    }
}

fn a2() -> NominalSetDesc {
    NominalSetDesc::product(NominalSetDesc::Atoms, NominalSetDesc::Atoms)
}

/// Renaming sets exercised by the action-law checks.
fn sb_sets() -> Vec<NominalSetDesc> {
    vec![
        NominalSetDesc::Atoms,
        a2(),
        NominalSetDesc::words_up_to(NominalSetDesc::Atoms, 3),
        fifo_states(3),
        fifo_alphabet(),
        NominalSetDesc::free(a2()),
        NominalSetDesc::free(NominalSetDesc::sep_power(NominalSetDesc::Atoms, 2)),
    ]
}

impl Suite for Actions {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        vec![
            monoid_laws(cfg.samples, cfg.seed_for(0)),
            permutation_group(cfg.samples, cfg.seed_for(1)),
            injection_extension(cfg.samples, cfg.seed_for(2)),
            freshness(cfg.samples, cfg.seed_for(3)),
            value_action_laws(cfg.samples, cfg.seed_for(4)),
            permutation_only_action(cfg.samples, cfg.seed_for(5)),
            free_action_laws(cfg.samples, cfg.seed_for(6)),
            functor_laws(cfg.samples, cfg.seed_for(7)),
        ]
    }
}

pub fn monoid_laws(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("substitutions form a monoid under composition");
    let mut s = Sampler::new(seed);
    let id = Subst::identity();
    for _ in 0..samples {
        let (m, n, p) = (s.subst(), s.subst(), s.subst());
        let assoc = Subst::compose(&Subst::compose(&m, &n), &p) == Subst::compose(&m, &Subst::compose(&n, &p));
        let unital = Subst::compose(&id, &m) == m && Subst::compose(&m, &id) == m;
        let a = s.atom();
        let pointwise = Subst::compose(&m, &n).apply(a) == m.apply(n.apply(a));
        report.record(assoc && unital && pointwise, || format!("m = {}, n = {}, p = {}, a = {}", m, n, p, a));
    }
    report
}

pub fn permutation_group(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("permutations are closed under composition and inverse");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let (g, h) = (s.perm(), s.perm());
        let gh = Perm::compose(&g, &h);
        let closed = gh.as_subst().is_injective();
        let inverse = Perm::compose(&g, &g.inverse()).is_identity() && Perm::compose(&g.inverse(), &g).is_identity();
        let anti = gh.inverse() == Perm::compose(&h.inverse(), &g.inverse());
        report.record(closed && inverse && anti, || format!("g = {}, h = {}", g.as_subst(), h.as_subst()));
    }
    report
}

pub fn injection_extension(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("extend_injection extends partial injections");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let k = s.index(5);
        let from = s.distinct_atoms(k);
        let to = s.distinct_atoms(k);
        let partial: BTreeMap<Atom, Atom> = from.iter().copied().zip(to.iter().copied()).collect();
        let ok = match Perm::extend_injection(&partial) {
            Ok(g) => partial.iter().all(|(a, b)| g.apply(*a) == *b) && g.as_subst().is_injective(),
            Err(_) => false,
        };
        report.record(ok, || format!("{:?}", partial));
    }
    let clash: BTreeMap<Atom, Atom> = [(Atom(0), Atom(5)), (Atom(1), Atom(5))].into();
    report.record(Perm::extend_injection(&clash).is_err(), || "non-injective input accepted".into());
    report
}

pub fn freshness(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("fresh atoms avoid the given set and are distinct");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let k = s.index(6);
        let avoid: BTreeSet<Atom> = s.distinct_atoms(k).into_iter().collect();
        let count = s.index(4);
        let out = fresh(&avoid, count);
        let distinct: BTreeSet<Atom> = out.iter().copied().collect();
        let ok = out.len() == count && distinct.len() == count && distinct.is_disjoint(&avoid);
        report.record(ok, || format!("avoid {:?}, got {:?}", avoid, out));
    }
    report
}

pub fn value_action_laws(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("substitution action: identity and composition laws");
    let mut s = Sampler::new(seed);
    let sets = sb_sets();
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let Some(v) = s.member(x) else { continue };
        let (m, n) = (s.subst(), s.subst());
        let result = (|| {
            let id = act(&Subst::identity(), &v, x)? == v;
            let composite = act(&Subst::compose(&m, &n), &v, x)?;
            let stepwise = act(&m, &act(&n, &v, x)?, x)?;
            Ok::<_, crate::NominalError>(id && composite == stepwise && x.contains(&composite))
        })();
        report.record_result(result, || format!("X = {}, x = {}, m = {}, n = {}", x, v, m, n));
    }
    report
}

pub fn permutation_only_action(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("separated sets: permutation action laws, substitutions rejected");
    let mut s = Sampler::new(seed);
    let sets = [
        NominalSetDesc::sep_power(NominalSetDesc::Atoms, 2),
        NominalSetDesc::sep_words_up_to(NominalSetDesc::Atoms, 3),
        NominalSetDesc::sep_product(fifo_alphabet(), NominalSetDesc::Atoms),
    ];
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let Some(v) = s.member(x) else { continue };
        let (g, h) = (s.perm(), s.perm());
        let laws = v.permute(&Perm::compose(&g, &h)) == v.permute(&h).permute(&g) && x.contains(&v.permute(&g));
        // collapse two support atoms when there are two
        let order = v.support_order();
        let rejected = match order.as_slice() {
            [a, b, ..] => act(&Subst::from_pairs([(*a, *b)]), &v, x).is_err(),
            _ => true,
        };
        report.record(laws && rejected, || format!("X = {}, x = {}", x, v));
    }
    report
}

pub fn free_action_laws(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("free elements: action laws and class invariance");
    let mut s = Sampler::new(seed);
    let bases = [
        NominalSetDesc::Atoms,
        a2(),
        NominalSetDesc::sep_power(NominalSetDesc::Atoms, 2),
        NominalSetDesc::words_up_to(NominalSetDesc::Atoms, 2),
    ];
    for i in 0..samples {
        let x = &bases[i % bases.len()];
        let Some(v) = s.member(x) else { continue };
        let (m, n) = (s.subst(), s.subst());
        let result = free_elem(&m, &v, x).map(|e| {
            let id = act_free(&Subst::identity(), &e) == e;
            let comp = act_free(&Subst::compose(&n, &m), &e) == act_free(&n, &act_free(&m, &e));
            // n·[m, x] = [n m, x]
            let class = free_elem(&Subst::compose(&n, &m), &v, x).map(|f| f == act_free(&n, &e)).unwrap_or(false);
            id && comp && class
        });
        report.record_result(result, || format!("X = {}, x = {}, m = {}, n = {}", x, v, m, n));
    }
    report
}

fn swap_pair(v: &NomValue) -> NomValue {
    match v.as_tuple() {
        Some([a, b]) => NomValue::pair(b.clone(), a.clone()),
        _ => v.clone(),
    }
}

fn first(v: &NomValue) -> NomValue {
    v.as_tuple().and_then(<[NomValue]>::first).cloned().unwrap_or_else(|| v.clone())
}

pub fn functor_laws(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("free construction preserves identities and composition");
    let mut s = Sampler::new(seed);
    let x = a2();
    let a = NominalSetDesc::Atoms;
    let base = FreeBase::new(x.clone());
    let id_map = free_map(|v: &NomValue| v.clone(), &x);
    let f_map = free_map(swap_pair, &x);
    let g_map = free_map(first, &a);
    let gf_map = free_map(|v: &NomValue| first(&swap_pair(v)), &a);
    for _ in 0..samples {
        let e = sample_free(&base, &mut s).expect("nonempty");
        let result = (|| {
            let id = id_map(&e)? == e;
            let composite = gf_map(&e)?;
            let stepwise = g_map(&f_map(&e)?)?;
            // F(f)([m, x]) = [m, f(x)] on a non-canonical representative
            let m = s.subst();
            let v = s.member(&x).expect("nonempty");
            let on_class = f_map(&free_elem(&m, &v, &x)?)? == free_elem(&m, &swap_pair(&v), &x)?;
            Ok::<_, crate::NominalError>(id && composite == stepwise && on_class)
        })();
        report.record_result(result, || format!("e = {}", e));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = Actions.run(&SuiteConfig { seed: 3, samples: 60 });
        assert!(report.passed, "{:#?}", report);
    }
}
