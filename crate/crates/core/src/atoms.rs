//! Atoms and the two monoids acting on them: finite substitutions and the
//! finite permutations sitting inside them.
//!
//! Both maps are stored normalized, with fixpoints dropped, so structural
//! equality is extensional equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::NominalError;

/// A name. Atoms carry nothing but equality.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(pub u32);

impl Atom {
    pub fn id(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Atom {
    fn from(id: u32) -> Self {
        Atom(id)
    }
}

/// A finite substitution: a map on atoms that moves finitely many of them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subst {
    map: BTreeMap<Atom, Atom>,
}

impl Subst {
    pub fn identity() -> Self {
        Subst::default()
    }

    /// Builds a substitution from explicit pairs. Later pairs override earlier
    /// ones for the same source atom; fixpoints are dropped.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (Atom, Atom)>,
    {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            map.insert(a, b);
        }
        map.retain(|a, b| a != b);
        Subst { map }
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.map.get(&a).copied().unwrap_or(a)
    }

    /// `outer ∘ inner`: first `inner`, then `outer`.
    pub fn compose(outer: &Subst, inner: &Subst) -> Subst {
        let domain: BTreeSet<Atom> = outer.map.keys().chain(inner.map.keys()).copied().collect();
        Subst::from_pairs(domain.into_iter().map(|a| (a, outer.apply(inner.apply(a)))))
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &Subst) -> Subst {
        Subst::compose(self, inner)
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Atoms moved by the substitution.
    pub fn domain(&self) -> impl Iterator<Item = Atom> + '_ {
        self.map.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (Atom, Atom)> + '_ {
        self.map.iter().map(|(a, b)| (*a, *b))
    }

    /// Every atom mentioned by the stored entries, sources and targets.
    pub fn mentioned(&self) -> BTreeSet<Atom> {
        self.map.iter().flat_map(|(a, b)| [*a, *b]).collect()
    }

    /// A finite-support substitution is injective exactly when it permutes its
    /// own domain.
    pub fn is_injective(&self) -> bool {
        let image: BTreeSet<Atom> = self.map.values().copied().collect();
        image.len() == self.map.len() && image.iter().all(|b| self.map.contains_key(b))
    }

    pub fn to_perm(&self) -> Option<Perm> {
        self.is_injective().then(|| Perm { inner: self.clone() })
    }

    /// Agreement on a finite set of atoms.
    pub fn agrees_on<'a, I>(&self, other: &Subst, atoms: I) -> bool
    where
        I: IntoIterator<Item = &'a Atom>,
    {
        atoms.into_iter().all(|a| self.apply(*a) == other.apply(*a))
    }

    /// Groups the atoms of `atoms` by their image.
    pub fn kernel_partition(&self, atoms: &BTreeSet<Atom>) -> Vec<Vec<Atom>> {
        kernel_partition(self, atoms)
    }
}

impl fmt::Debug for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}->{}", a, b)?;
        }
        write!(f, "}}")
    }
}

/// A finite permutation. Always a valid [`Subst`] as well.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Perm {
    inner: Subst,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }

    /// Exchanges `a` and `b`.
    pub fn swap(a: Atom, b: Atom) -> Perm {
        Perm { inner: Subst::from_pairs([(a, b), (b, a)]) }
    }

    pub fn apply(&self, a: Atom) -> Atom {
        self.inner.apply(a)
    }

    pub fn compose(outer: &Perm, inner: &Perm) -> Perm {
        Perm { inner: Subst::compose(&outer.inner, &inner.inner) }
    }

    pub fn inverse(&self) -> Perm {
        Perm { inner: Subst::from_pairs(self.inner.entries().map(|(a, b)| (b, a))) }
    }

    pub fn as_subst(&self) -> &Subst {
        &self.inner
    }

    pub fn into_subst(self) -> Subst {
        self.inner
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// Extends a finite partial injection to a permutation.
    ///
    /// Leftover image atoms (images outside the domain) are sent, in ascending
    /// order, to leftover domain atoms (domain atoms outside the image), also in
    /// ascending order. This closes every open chain of the injection.
    pub fn extend_injection(partial: &BTreeMap<Atom, Atom>) -> Result<Perm, NominalError> {
        let image: BTreeSet<Atom> = partial.values().copied().collect();
        if image.len() != partial.len() {
            return Err(NominalError::NonInjective(format!("{:?}", partial)));
        }
        let open_ends = image.iter().filter(|b| !partial.contains_key(b));
        let open_starts = partial.keys().filter(|a| !image.contains(a));
        let closing = open_ends.zip(open_starts).map(|(end, start)| (*end, *start));
        let pairs = partial.iter().map(|(a, b)| (*a, *b)).chain(closing);
        Ok(Perm { inner: Subst::from_pairs(pairs) })
    }
}

impl From<Perm> for Subst {
    fn from(g: Perm) -> Subst {
        g.inner
    }
}

impl TryFrom<Subst> for Perm {
    type Error = NominalError;

    fn try_from(m: Subst) -> Result<Perm, NominalError> {
        m.to_perm().ok_or_else(|| NominalError::NotPermutation(m.to_string()))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.inner, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.inner, f)
    }
}

/// Partition of `atoms` into blocks of atoms with equal image under `m`.
/// Blocks are sorted, and ordered by their least element.
pub fn kernel_partition(m: &Subst, atoms: &BTreeSet<Atom>) -> Vec<Vec<Atom>> {
    let mut by_image: BTreeMap<Atom, Vec<Atom>> = BTreeMap::new();
    for &a in atoms {
        by_image.entry(m.apply(a)).or_default().push(a);
    }
    let mut blocks: Vec<Vec<Atom>> = by_image.into_values().collect();
    blocks.sort();
    blocks
}

/// The `count` smallest atoms not in `avoid`.
pub fn fresh(avoid: &BTreeSet<Atom>, count: usize) -> Vec<Atom> {
    (0u32..).map(Atom).filter(|a| !avoid.contains(a)).take(count).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(pairs: &[(u32, u32)]) -> Subst {
        Subst::from_pairs(pairs.iter().map(|&(a, b)| (Atom(a), Atom(b))))
    }

    fn set(atoms: &[u32]) -> BTreeSet<Atom> {
        atoms.iter().copied().map(Atom).collect()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(Subst::compose(&Subst::identity(), &Subst::identity()), Subst::identity());
        // pointwise: 1 -> 1 -> 2, 2 -> 1 -> 2
        assert_eq!(Subst::compose(&s(&[(1, 2)]), &s(&[(2, 1)])), s(&[(1, 2)]));
        let sw = Perm::swap(Atom(1), Atom(2));
        assert!(Perm::compose(&sw, &sw).is_identity());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(s(&[(1, 2)]).apply(Atom(1)), Atom(2));
        assert_eq!(s(&[(1, 2)]).apply(Atom(3)), Atom(3));
        assert_eq!(Perm::swap(Atom(1), Atom(2)).apply(Atom(2)), Atom(1));
    }

    #[test]
    fn swap_examples() {
        assert_eq!(Perm::swap(Atom(1), Atom(2)).apply(Atom(1)), Atom(2));
        assert_eq!(Perm::swap(Atom(1), Atom(1)), Perm::identity());
        assert_eq!(Perm::swap(Atom(1), Atom(2)).apply(Atom(5)), Atom(5));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Perm::identity().inverse(), Perm::identity());
        let sw = Perm::swap(Atom(1), Atom(2));
        assert_eq!(sw.inverse(), sw);
        let cycle: Perm = s(&[(1, 2), (2, 3), (3, 1)]).try_into().unwrap();
        let expected: Perm = s(&[(1, 3), (2, 1), (3, 2)]).try_into().unwrap();
        assert_eq!(cycle.inverse(), expected);
    }

    #[test]
    fn extend_injection_examples() {
        let empty = BTreeMap::new();
        assert_eq!(Perm::extend_injection(&empty).unwrap(), Perm::identity());
        let fixed: BTreeMap<_, _> = [(Atom(1), Atom(1))].into();
        assert_eq!(Perm::extend_injection(&fixed).unwrap(), Perm::identity());
        let single: BTreeMap<_, _> = [(Atom(1), Atom(2))].into();
        assert_eq!(Perm::extend_injection(&single).unwrap(), Perm::swap(Atom(1), Atom(2)));
    }

    #[test]
    fn extend_injection_rejects_collisions() {
        let bad: BTreeMap<_, _> = [(Atom(1), Atom(3)), (Atom(2), Atom(3))].into();
        assert!(matches!(Perm::extend_injection(&bad), Err(NominalError::NonInjective(_))));
    }

    #[test]
    fn extend_injection_closes_chains() {
        // 1 -> 2 -> 3 is an open chain, 5 -> 7 another one
        let f: BTreeMap<_, _> =
            [(Atom(1), Atom(2)), (Atom(2), Atom(3)), (Atom(5), Atom(7))].into();
        let g = Perm::extend_injection(&f).unwrap();
        for (a, b) in &f {
            assert_eq!(g.apply(*a), *b);
        }
        assert!(g.as_subst().is_injective());
        assert_eq!(g.apply(Atom(3)), Atom(1));
        assert_eq!(g.apply(Atom(7)), Atom(5));
    }

    #[test]
    fn kernel_examples() {
        let one = vec![Atom(1)];
        let two = vec![Atom(2)];
        assert_eq!(kernel_partition(&Subst::identity(), &set(&[1, 2])), vec![one, two]);
        assert_eq!(kernel_partition(&s(&[(2, 1)]), &set(&[1, 2])), vec![vec![Atom(1), Atom(2)]]);
        assert_eq!(
            kernel_partition(&s(&[(2, 1)]), &set(&[3, 4])),
            vec![vec![Atom(3)], vec![Atom(4)]]
        );
    }

    #[test]
    fn fresh_examples() {
        assert_eq!(fresh(&set(&[]), 2), vec![Atom(0), Atom(1)]);
        assert_eq!(fresh(&set(&[0, 1, 3]), 2), vec![Atom(2), Atom(4)]);
        assert!(fresh(&set(&[5]), 0).is_empty());
    }

    #[test]
    fn injective_substitutions_are_permutations() {
        assert!(s(&[(1, 2), (2, 1)]).to_perm().is_some());
        assert!(s(&[(1, 2)]).to_perm().is_none());
        assert!(s(&[(1, 3), (2, 3)]).to_perm().is_none());
    }

    #[test]
    fn display_matches_literal_syntax() {
        assert_eq!(s(&[(3, 2), (1, 2)]).to_string(), "{1->2, 3->2}");
    }
}
