//! Brute-force counting oracles. None of these go through orbit shapes or
//! restricted growth strings; they enumerate concrete objects over a finite
//! atom range and count classes directly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::atoms::{Atom, Perm, Subst};
use crate::automata::{MooreAutomaton, Word};
use crate::nominal::value::NomValue;

/// Number of set partitions of an `n`-set: the distinct equality patterns
/// among all `n^n` maps `0..n → 0..n`.
pub fn bell_by_enumeration(n: usize) -> usize {
    if n == 0 {
        return 1;
    }
    let mut patterns: BTreeSet<Vec<usize>> = BTreeSet::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut digits = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            digits.push(c % n);
            c /= n;
        }
        // position i points at the first position carrying the same value
        let kernel: Vec<usize> = (0..n).map(|i| (0..n).find(|&j| digits[j] == digits[i]).unwrap()).collect();
        patterns.insert(kernel);
    }
    patterns.len()
}

/// Partial injections from a `j`-set into a `k`-set, counted over all
/// `(k+1)^j` partial maps.
pub fn partial_injections_by_enumeration(j: usize, k: usize) -> usize {
    let base = k + 1;
    let total = base.pow(j as u32);
    (0..total)
        .filter(|code| {
            let mut c = *code;
            let mut used = BTreeSet::new();
            for _ in 0..j {
                let d = c % base;
                c /= base;
                if d < k && !used.insert(d) {
                    return false;
                }
            }
            true
        })
        .count()
}

/// Number of orbits of a finite family of values under all permutations of
/// `0..atoms`. The family must be closed under those permutations. Classes
/// are merged along the generators `(0 1)` and `(0 1 .. atoms-1)`.
pub fn orbits_under_symmetric_group(values: &[NomValue], atoms: u32) -> usize {
    let index: HashMap<&NomValue, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..values.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut generators = Vec::new();
    if atoms >= 2 {
        generators.push(Perm::swap(Atom(0), Atom(1)));
        let cycle = Subst::from_pairs((0..atoms).map(|i| (Atom(i), Atom((i + 1) % atoms))));
        generators.push(cycle.to_perm().expect("cycle"));
    }
    for (i, v) in values.iter().enumerate() {
        for g in &generators {
            let image = v.permute(g);
            let j = *index.get(&image).expect("family closed under permutations");
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..values.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// All injective `k`-tuples over `0..atoms`.
pub fn injective_tuples(k: usize, atoms: u32) -> Vec<Vec<Atom>> {
    let mut out: Vec<Vec<Atom>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for t in &out {
            for a in (0..atoms).map(Atom).filter(|a| !t.contains(a)) {
                let mut u = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Orbits of `𝔸^(k) × 𝔸^(j)` counted on concrete pairs over `k + j` atoms.
pub fn product_orbits_by_enumeration(k: usize, j: usize) -> usize {
    let atoms = (k + j) as u32;
    let tuple = |t: &Vec<Atom>| NomValue::tuple(t.iter().copied().map(NomValue::atom).collect());
    let lefts = injective_tuples(k, atoms);
    let rights = injective_tuples(j, atoms);
    let values: Vec<NomValue> =
        lefts.iter().flat_map(|l| rights.iter().map(move |r| NomValue::pair(tuple(l), tuple(r)))).collect();
    orbits_under_symmetric_group(&values, atoms)
}

/// Reachable states of `a` explored concretely with letters drawn from
/// `letters`, then counted up to permutations of `0..atoms`.
///
/// Exploring with all letters over a pool at least as large as the state
/// dimension plus one reaches every orbit that has a member over the pool.
pub fn concrete_reachable_orbits(a: &MooreAutomaton, letters: &[NomValue], atoms: u32, separated: bool) -> usize {
    let mut seen: BTreeMap<NomValue, ()> = BTreeMap::new();
    let mut stack = vec![a.initial().clone()];
    seen.insert(a.initial().clone(), ());
    while let Some(q) = stack.pop() {
        for l in letters {
            if separated && !q.support().is_disjoint(&l.support()) {
                continue;
            }
            let next = a.run_from(&q, &Word(vec![l.clone()])).expect("letters are alphabet members");
            if seen.insert(next.clone(), ()).is_none() {
                stack.push(next);
            }
        }
    }
    let states: Vec<NomValue> = seen.into_keys().collect();
    // close under the atom permutations so the union-find sees whole orbits
    let mut closed: BTreeSet<NomValue> = states.iter().cloned().collect();
    let mut frontier = states;
    let generators: Vec<Perm> = if atoms >= 2 {
        vec![
            Perm::swap(Atom(0), Atom(1)),
            Subst::from_pairs((0..atoms).map(|i| (Atom(i), Atom((i + 1) % atoms)))).to_perm().expect("cycle"),
        ]
    } else {
        Vec::new()
    };
    while let Some(v) = frontier.pop() {
        for g in &generators {
            let w = v.permute(g);
            if closed.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    let closed: Vec<NomValue> = closed.into_iter().collect();
    orbits_under_symmetric_group(&closed, atoms)
}
