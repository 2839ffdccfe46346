//! Orbits under the equality symmetry.
//!
//! Every set built from [`NominalSetDesc`] constructors has orbits with trivial
//! stabilizer, so an orbit is pinned down by its value skeleton together with
//! the equality pattern of the atoms filling it. We store both at once as the
//! canonical representative: the member whose support is `0..k` in
//! first-occurrence order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::atoms::Atom;
use crate::error::{NominalError, Result};
use crate::nominal::set::{free_value, NominalSetDesc};
use crate::nominal::value::NomValue;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitShape {
    path: Vec<u8>,
    canon: NomValue,
}

impl OrbitShape {
    pub(crate) fn from_canonical(path: Vec<u8>, canon: NomValue) -> Self {
        debug_assert_eq!(canon, canon.canonical());
        OrbitShape { path, canon }
    }

    /// Coproduct choices leading to this orbit.
    pub fn path(&self) -> &[u8] {
        &self.path
    }

    pub fn representative(&self) -> &NomValue {
        &self.canon
    }

    pub fn skeleton(&self) -> NomValue {
        self.canon.skeleton()
    }

    pub fn pattern(&self) -> Vec<usize> {
        self.canon.equality_pattern()
    }

    /// Size of the least support of every member.
    pub fn support_size(&self) -> usize {
        self.canon.support().len()
    }

    fn sort_key(&self) -> (&[u8], NomValue, Vec<usize>) {
        (&self.path, self.skeleton(), self.pattern())
    }

    pub fn describe(&self) -> ShapeDescription {
        ShapeDescription {
            path: self.path.iter().map(|c| if *c == 0 { 'L' } else { 'R' }).collect(),
            representative: self.canon.to_string(),
            pattern: self.pattern(),
            support_size: self.support_size(),
        }
    }
}

impl Ord for OrbitShape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for OrbitShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OrbitShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canon)
    }
}

impl fmt::Debug for OrbitShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orbit({:?}, {})", self.path, self.canon)
    }
}

/// Machine-readable summary of an orbit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeDescription {
    pub path: String,
    pub representative: String,
    pub pattern: Vec<usize>,
    pub support_size: usize,
}

pub fn orbit_shape(v: &NomValue, x: &NominalSetDesc) -> Result<OrbitShape> {
    let path = x
        .membership_path(v)
        .ok_or_else(|| NominalError::NotMember { value: v.to_string(), set: x.to_string() })?;
    Ok(OrbitShape { path, canon: v.canonical() })
}

pub fn representative(s: &OrbitShape) -> NomValue {
    s.canon.clone()
}

/// All partial injections from `0..from` into `0..into`, as `Some(target)` or
/// `None` per source position.
pub fn partial_injections(from: usize, into: usize) -> Vec<Vec<Option<usize>>> {
    fn go(pos: usize, from: usize, into: usize, used: &mut Vec<bool>, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
        if pos == from {
            out.push(cur.clone());
            return;
        }
        cur.push(None);
        go(pos + 1, from, into, used, cur, out);
        cur.pop();
        for t in 0..into {
            if !used[t] {
                used[t] = true;
                cur.push(Some(t));
                go(pos + 1, from, into, used, cur, out);
                cur.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, from, into, &mut vec![false; into], &mut Vec::new(), &mut out);
    out
}

/// Restricted growth strings of length `n`: set partitions of `0..n` with
/// blocks numbered by first occurrence.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, blocks: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            go(n, blocks.max(b + 1), cur, out);
            cur.pop();
        }
    }
    go(n, 0, &mut cur, &mut out);
    out
}

/// Renames the canonical `0..j` support of `right` so that it lines up with a
/// left component of support size `k`: matched atoms reuse the left atom,
/// unmatched ones get `k, k+1, ..` in order.
fn align_right(right: &NomValue, matching: &[Option<usize>], k: usize) -> NomValue {
    let mut next = k;
    let targets: Vec<u32> = matching
        .iter()
        .map(|m| match m {
            Some(t) => *t as u32,
            None => {
                next += 1;
                (next - 1) as u32
            }
        })
        .collect();
    right.map_atoms(&|a| Atom(targets[a.0 as usize]))
}

type Rep = (Vec<u8>, NomValue);

fn reps(x: &NominalSetDesc) -> Vec<Rep> {
    use NominalSetDesc::*;
    match x {
        Atoms => vec![(vec![], NomValue::atom(0u32))],
        Unit => vec![(vec![], NomValue::unit())],
        Discrete(labels) => labels.iter().map(|l| (vec![], NomValue::label(l.clone()))).collect(),
        Tag(name, inner) => {
            reps(inner).into_iter().map(|(p, v)| (p, NomValue::tagged(name.clone(), v))).collect()
        }
        Product(l, r) | SepProduct(l, r) => {
            let separated = matches!(x, SepProduct(..));
            let rights = reps(r);
            let mut out = Vec::new();
            for (pl, vl) in reps(l) {
                let k = vl.support().len();
                for (pr, vr) in &rights {
                    let j = vr.support().len();
                    let matchings = if separated { vec![vec![None; j]] } else { partial_injections(j, k) };
                    for m in matchings {
                        let path = pl.iter().chain(pr).copied().collect();
                        let pair = NomValue::pair(vl.clone(), align_right(vr, &m, k));
                        out.push((path, pair.canonical()));
                    }
                }
            }
            out
        }
        Coproduct(l, r) => {
            let tag = |c: u8| move |(p, v): Rep| (std::iter::once(c).chain(p).collect(), v);
            reps(l).into_iter().map(tag(0)).chain(reps(r).into_iter().map(tag(1))).collect()
        }
        WordsUpTo(letter, n) | SepWordsUpTo(letter, n) => {
            let separated = matches!(x, SepWordsUpTo(..));
            let letters = reps(letter);
            let mut layer: Vec<(Vec<u8>, Vec<NomValue>, usize)> = vec![(vec![], vec![], 0)];
            let mut out: Vec<Rep> = vec![(vec![], NomValue::unit())];
            for _ in 0..*n {
                let mut next = Vec::new();
                for (path, word, k) in &layer {
                    for (pl, vl) in &letters {
                        let j = vl.support().len();
                        let matchings = if separated { vec![vec![None; j]] } else { partial_injections(j, *k) };
                        for m in matchings {
                            let aligned = align_right(vl, &m, *k);
                            let fresh = m.iter().filter(|t| t.is_none()).count();
                            let mut w = word.clone();
                            w.push(aligned);
                            let p: Vec<u8> = path.iter().chain(pl).copied().collect();
                            next.push((p, w, k + fresh));
                        }
                    }
                }
                out.extend(next.iter().map(|(p, w, _)| (p.clone(), NomValue::tuple(w.clone()))));
                layer = next;
            }
            out
        }
        Free(base) => {
            let mut out = Vec::new();
            for (id, shape) in base.orbits().iter().enumerate() {
                for rgs in restricted_growth_strings(shape.support_size()) {
                    let images: Vec<Atom> = rgs.into_iter().map(|b| Atom(b as u32)).collect();
                    out.push((shape.path().to_vec(), free_value(id, &images)));
                }
            }
            out
        }
    }
}

pub(crate) fn enumerate_orbits(x: &NominalSetDesc) -> Vec<OrbitShape> {
    let set: BTreeSet<OrbitShape> =
        reps(x).into_iter().map(|(path, v)| OrbitShape::from_canonical(path, v.canonical())).collect();
    set.into_iter().collect()
}

/// Maximum support size, plus the one-dimensional decomposition
/// `X ≅ Y + ∐_I 𝔸` as `(|Y|, |I|)` when the dimension is at most one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dimension {
    pub dimension: usize,
    pub decomposition: Option<(usize, usize)>,
}

pub fn dimension(x: &NominalSetDesc) -> Dimension {
    let orbits = x.orbits();
    let dimension = orbits.iter().map(OrbitShape::support_size).max().unwrap_or(0);
    let decomposition = (dimension <= 1).then(|| {
        let zero = orbits.iter().filter(|s| s.support_size() == 0).count();
        (zero, orbits.len() - zero)
    });
    Dimension { dimension, decomposition }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> NominalSetDesc {
        NominalSetDesc::Atoms
    }

    fn a_cubed() -> NominalSetDesc {
        NominalSetDesc::product(NominalSetDesc::product(a(), a()), a())
    }

    #[test]
    fn shapes_identify_orbits() {
        let x = a_cubed();
        let t = |p: [u32; 3]| NomValue::pair(NomValue::atoms([p[0], p[1]]), NomValue::atom(p[2]));
        assert_eq!(orbit_shape(&t([1, 1, 2]), &x).unwrap(), orbit_shape(&t([3, 3, 7]), &x).unwrap());
        let a2 = NominalSetDesc::product(a(), a());
        assert_ne!(
            orbit_shape(&NomValue::atoms([1, 2]), &a2).unwrap(),
            orbit_shape(&NomValue::atoms([1, 1]), &a2).unwrap()
        );
        assert_eq!(x.orbits().len(), 5);
    }

    #[test]
    fn orbit_counts() {
        assert_eq!(NominalSetDesc::product(a(), a()).orbits().len(), 2);
        assert_eq!(NominalSetDesc::sep_product(a(), a()).orbits().len(), 1);
        assert_eq!(NominalSetDesc::words_up_to(a(), 3).orbits().len(), 9);
        assert_eq!(NominalSetDesc::sep_words_up_to(a(), 3).orbits().len(), 4);
        assert_eq!(NominalSetDesc::Unit.orbits().len(), 1);
    }

    #[test]
    fn representatives() {
        let a2 = NominalSetDesc::product(a(), a());
        let s = orbit_shape(&NomValue::atoms([7, 7]), &a2).unwrap();
        assert_eq!(representative(&s), NomValue::atoms([0, 0]));
        let bot = NominalSetDesc::discrete(["⊥"]);
        let s = orbit_shape(&NomValue::label("⊥"), &bot).unwrap();
        assert_eq!(representative(&s), NomValue::label("⊥"));
        let w = NominalSetDesc::words_up_to(a(), 3);
        let s = orbit_shape(&NomValue::atoms([1, 2, 1]), &w).unwrap();
        assert_eq!(representative(&s), NomValue::atoms([0, 1, 0]));
    }

    #[test]
    fn representative_round_trips_through_shape() {
        for x in [a_cubed(), NominalSetDesc::words_up_to(a(), 3), NominalSetDesc::free(NominalSetDesc::product(a(), a()))] {
            for s in x.orbits() {
                assert_eq!(orbit_shape(&representative(&s), &x).unwrap(), s);
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&a()), Dimension { dimension: 1, decomposition: Some((0, 1)) });
        let alphabet = NominalSetDesc::coproduct(NominalSetDesc::discrete(["s"]), a()).unwrap();
        assert_eq!(dimension(&alphabet), Dimension { dimension: 1, decomposition: Some((1, 1)) });
        let w = dimension(&NominalSetDesc::words_up_to(a(), 3));
        assert_eq!(w.dimension, 3);
        assert_eq!(w.decomposition, None);
    }

    #[test]
    fn orbits_are_sorted_and_distinct() {
        let orbits = NominalSetDesc::words_up_to(a(), 3).orbits();
        assert!(orbits.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn partial_injection_counts() {
        // sum over i of C(j,i) C(k,i) i!
        assert_eq!(partial_injections(1, 1).len(), 2);
        assert_eq!(partial_injections(2, 2).len(), 7);
        assert_eq!(partial_injections(3, 2).len(), 13);
        assert_eq!(partial_injections(0, 3).len(), 1);
    }

    #[test]
    fn rgs_counts_are_bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| restricted_growth_strings(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }
}
