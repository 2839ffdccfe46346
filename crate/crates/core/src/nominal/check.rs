//! Sampled checks for equivariance and supports. Maps are black boxes, so
//! these are tests, not decisions.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;

use crate::atoms::{fresh, Atom, Perm, Subst};
use crate::error::{NominalError, Result};
use crate::nominal::sample::Sampler;
use crate::nominal::set::NominalSetDesc;
use crate::nominal::value::NomValue;
use crate::report::CheckReport;

/// Which monoid a check quantifies over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monoid {
    Perm,
    Sb,
}

/// Samples pairs `(g, x)` and checks `f(g·x) = g·f(x)`, that `f(x)` lands in
/// `y`, and that `supp(f(x)) ⊆ supp(x)`.
pub fn is_equivariant<F>(f: F, x: &NominalSetDesc, y: &NominalSetDesc, samples: usize, seed: u64) -> CheckReport
where
    F: Fn(&NomValue) -> NomValue,
{
    let mut report = CheckReport::new(format!("equivariance {} -> {}", x, y));
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let Some(v) = sampler.member(x) else { break };
        let g = sampler.perm();
        let fv = f(&v);
        let lhs = f(&v.permute(&g));
        let rhs = fv.permute(&g);
        let in_codomain = y.contains(&fv);
        let preserves_support = fv.support().is_subset(&v.support());
        report.record(lhs == rhs && in_codomain && preserves_support, || {
            if !in_codomain {
                format!("f({}) = {} is not in {}", v, fv, y)
            } else if !preserves_support {
                format!("supp(f({})) = supp({}) is not contained in supp({})", v, fv, v)
            } else {
                format!("g = {}, x = {}: f(g·x) = {} but g·f(x) = {}", g, v, lhs, rhs)
            }
        });
    }
    report
}

/// Samples `(m, x)` with `m` an arbitrary substitution and checks
/// `f(m·x) = m·f(x)`. Both sets must carry a substitution action.
pub fn is_sb_equivariant<F>(f: F, x: &NominalSetDesc, y: &NominalSetDesc, samples: usize, seed: u64) -> Result<CheckReport>
where
    F: Fn(&NomValue) -> NomValue,
{
    for set in [x, y] {
        if !set.has_sb_action() {
            return Err(NominalError::NoSubstitutionAction { set: set.to_string(), subst: "<sampled>".into() });
        }
    }
    let mut report = CheckReport::new(format!("sb-equivariance {} -> {}", x, y));
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let Some(v) = sampler.member(x) else { break };
        let m = sampler.subst();
        let lhs = f(&v.rename(&m));
        let rhs = f(&v).rename(&m);
        report.record(lhs == rhs, || format!("m = {}, x = {}: f(m·x) = {} but m·f(x) = {}", m, v, lhs, rhs));
    }
    Ok(report)
}

/// Atoms a support test moves around: the pool, the support of the element,
/// the candidate set and two atoms fresh for all of them.
fn test_universe(v: &NomValue, c: &BTreeSet<Atom>, pool: u32) -> Vec<Atom> {
    let mut universe: BTreeSet<Atom> = (0..pool).map(Atom).collect();
    universe.extend(v.support());
    universe.extend(c.iter().copied());
    let extra = fresh(&universe, 2);
    universe.extend(extra);
    universe.into_iter().collect()
}

/// Randomized test of "`c` supports `v`": draws pairs of monoid elements
/// that agree on `c` and compares their actions on `v`. `true` means no
/// distinguishing pair was found in `trials` attempts.
pub fn supports_under<A>(v: &NomValue, c: &BTreeSet<Atom>, monoid: Monoid, act: A, sampler: &mut Sampler, trials: usize) -> bool
where
    A: Fn(&Subst, &NomValue) -> NomValue,
{
    let universe = test_universe(v, c, sampler.pool());
    let outside: Vec<Atom> = universe.iter().copied().filter(|a| !c.contains(a)).collect();
    for _ in 0..trials {
        let (m1, m2) = match monoid {
            Monoid::Perm => {
                let mut shuffled = universe.clone();
                shuffled.shuffle(sampler.rng());
                let g1 = Subst::from_pairs(universe.iter().copied().zip(shuffled));
                let mut moved = outside.clone();
                moved.shuffle(sampler.rng());
                let h = Subst::from_pairs(outside.iter().copied().zip(moved));
                let g2 = Subst::compose(&g1, &h);
                (g1, g2)
            }
            Monoid::Sb => {
                let pick = |s: &mut Sampler| universe[s.index(universe.len())];
                let m1 = Subst::from_pairs(universe.iter().map(|a| (*a, pick(sampler))).collect::<Vec<_>>());
                let m2 = Subst::from_pairs(
                    universe
                        .iter()
                        .map(|a| if c.contains(a) { (*a, m1.apply(*a)) } else { (*a, pick(sampler)) })
                        .collect::<Vec<_>>(),
                );
                (m1, m2)
            }
        };
        if act(&m1, v) != act(&m2, v) {
            return false;
        }
    }
    true
}

/// Support test for the natural (pointwise) action on values.
pub fn supports(v: &NomValue, c: &BTreeSet<Atom>, monoid: Monoid, sampler: &mut Sampler, trials: usize) -> bool {
    supports_under(v, c, monoid, |m, x| x.rename(m), sampler, trials)
}

/// `g·supp(x) = supp(g·x)`.
pub fn transfers_support(v: &NomValue, g: &Perm) -> bool {
    let moved: BTreeSet<Atom> = v.support().into_iter().map(|a| g.apply(a)).collect();
    moved == v.permute(g).support()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> NominalSetDesc {
        NominalSetDesc::product(NominalSetDesc::Atoms, NominalSetDesc::Atoms)
    }

    #[test]
    fn projection_is_equivariant() {
        let first = |v: &NomValue| v.as_tuple().unwrap()[0].clone();
        let report = is_equivariant(first, &a2(), &NominalSetDesc::Atoms, 200, 1);
        assert!(report.passed(), "{:?}", report);
        assert_eq!(report.samples, 200);
    }

    #[test]
    fn constant_atom_is_not_equivariant() {
        let constant = |_: &NomValue| NomValue::atom(0u32);
        let report = is_equivariant(constant, &a2(), &NominalSetDesc::Atoms, 200, 1);
        assert!(!report.passed());
        assert!(report.counterexample.is_some());
    }

    #[test]
    fn least_support_passes_both_tests() {
        let mut s = Sampler::new(5);
        let v = NomValue::atoms([1, 2, 1]);
        let supp = v.support();
        assert!(supports(&v, &supp, Monoid::Perm, &mut s, 64));
        assert!(supports(&v, &supp, Monoid::Sb, &mut s, 64));
        let smaller: BTreeSet<Atom> = [Atom(1)].into();
        assert!(!supports(&v, &smaller, Monoid::Perm, &mut s, 64));
        assert!(!supports(&v, &smaller, Monoid::Sb, &mut s, 64));
    }

    #[test]
    fn sb_equivariance_requires_sb_sets() {
        let sep = NominalSetDesc::sep_product(NominalSetDesc::Atoms, NominalSetDesc::Atoms);
        assert!(is_sb_equivariant(|v| v.clone(), &sep, &sep, 10, 0).is_err());
    }
}
