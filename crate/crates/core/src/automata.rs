//! Nominal Moore automata and their separated counterparts.
//!
//! A [`MooreAutomaton`] keeps its transition and output maps as oracles on
//! values ([`Dynamics`]). The same data can be read as a full automaton, with
//! transitions on every state/letter pair, or as a separated automaton, which
//! only consults transitions on pairs with disjoint supports.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::atoms::{fresh, Atom, Perm, Subst};
use crate::error::{NominalError, Result};
use crate::nominal::orbit::{dimension, orbit_shape, partial_injections, OrbitShape};
use crate::nominal::sample::Sampler;
use crate::nominal::set::{act, NominalSetDesc};
use crate::nominal::value::NomValue;
use crate::report::CheckReport;

/// Transition and output maps. Both must be equivariant.
pub trait Dynamics: Send + Sync {
    fn step(&self, state: &NomValue, letter: &NomValue) -> NomValue;
    fn output(&self, state: &NomValue) -> NomValue;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Full,
    Separated,
}

impl Kind {
    fn label(self) -> &'static str {
        match self {
            Kind::Full => "full",
            Kind::Separated => "separated",
        }
    }
}

/// A finite sequence of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<NomValue>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[NomValue] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> BTreeSet<Atom> {
        self.0.iter().flat_map(NomValue::support).collect()
    }

    pub fn rename(&self, m: &Subst) -> Word {
        Word(self.0.iter().map(|l| l.rename(m)).collect())
    }

    pub fn permute(&self, g: &Perm) -> Word {
        Word(self.0.iter().map(|l| l.permute(g)).collect())
    }

    /// Letters pairwise separated.
    pub fn is_separated(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.0.iter().all(|l| {
            let s = l.support();
            let ok = s.is_disjoint(&seen);
            seen.extend(s);
            ok
        })
    }
}

impl From<Vec<NomValue>> for Word {
    fn from(letters: Vec<NomValue>) -> Self {
        Word(letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{}", l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOrder {
    BreadthFirst,
    DepthFirst,
}

#[derive(Clone)]
pub struct MooreAutomaton {
    name: String,
    states: NominalSetDesc,
    alphabet: NominalSetDesc,
    output: NominalSetDesc,
    initial: NomValue,
    dynamics: Arc<dyn Dynamics>,
    kind: Kind,
}

impl fmt::Debug for MooreAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MooreAutomaton")
            .field("name", &self.name)
            .field("states", &self.states)
            .field("alphabet", &self.alphabet)
            .field("output", &self.output)
            .field("initial", &self.initial)
            .field("kind", &self.kind)
            .finish()
    }
}

impl MooreAutomaton {
    /// A full automaton. The initial state must be a member of `states` with
    /// empty support.
    pub fn new(
        name: impl Into<String>,
        states: NominalSetDesc,
        alphabet: NominalSetDesc,
        output: NominalSetDesc,
        initial: NomValue,
        dynamics: Arc<dyn Dynamics>,
    ) -> Result<Self> {
        states.check_member(&initial)?;
        if !initial.support().is_empty() {
            return Err(NominalError::NotMember {
                value: initial.to_string(),
                set: "equivariant initial states".into(),
            });
        }
        Ok(MooreAutomaton { name: name.into(), states, alphabet, output, initial, dynamics, kind: Kind::Full })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn states(&self) -> &NominalSetDesc {
        &self.states
    }

    pub fn alphabet(&self) -> &NominalSetDesc {
        &self.alphabet
    }

    pub fn output_set(&self) -> &NominalSetDesc {
        &self.output
    }

    pub fn initial(&self) -> &NomValue {
        &self.initial
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn output(&self, state: &NomValue) -> NomValue {
        self.dynamics.output(state)
    }

    /// One transition, without separation checks.
    pub fn step(&self, state: &NomValue, letter: &NomValue) -> NomValue {
        self.dynamics.step(state, letter)
    }

    fn expect_kind(&self, expected: Kind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(NominalError::KindMismatch { expected: expected.label(), found: self.kind.label() })
        }
    }

    fn check_letters(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|l| self.alphabet.check_member(l))
    }

    /// State reached from `state` after reading `w`.
    pub fn run_from(&self, state: &NomValue, w: &Word) -> Result<NomValue> {
        self.check_letters(w)?;
        Ok(w.letters().iter().fold(state.clone(), |q, a| self.dynamics.step(&q, a)))
    }

    /// Language semantics: the output of the state reached on `w`.
    pub fn run(&self, w: &Word) -> Result<NomValue> {
        self.expect_kind(Kind::Full)?;
        let last = self.run_from(&self.initial, w)?;
        Ok(self.dynamics.output(&last))
    }

    /// Separated language semantics. Defined when the letters are pairwise
    /// separated and every visited state is separated from the rest of the
    /// word; violations report the 1-based letter position.
    pub fn run_separated(&self, w: &Word) -> Result<NomValue> {
        self.expect_kind(Kind::Separated)?;
        self.check_letters(w)?;
        let letters = w.letters();
        let mut seen = BTreeSet::new();
        for (i, l) in letters.iter().enumerate() {
            let s = l.support();
            if let Some(a) = s.intersection(&seen).next() {
                return Err(NominalError::SeparationViolation {
                    position: i + 1,
                    detail: format!("atom {} of letter {} already occurs earlier", a, l),
                });
            }
            seen.extend(s);
        }
        let mut state = self.initial.clone();
        for (i, l) in letters.iter().enumerate() {
            let rest: BTreeSet<Atom> = letters[i..].iter().flat_map(NomValue::support).collect();
            if let Some(a) = state.support().intersection(&rest).next() {
                return Err(NominalError::SeparationViolation {
                    position: i + 1,
                    detail: format!("state {} shares atom {} with the remaining word", state, a),
                });
            }
            state = self.dynamics.step(&state, l);
        }
        Ok(self.dynamics.output(&state))
    }

    /// The same data read as a separated automaton.
    pub fn restrict(&self) -> Result<MooreAutomaton> {
        self.expect_kind(Kind::Full)?;
        Ok(MooreAutomaton { kind: Kind::Separated, ..self.clone() })
    }

    pub fn reachable_orbits(&self) -> Result<Vec<OrbitShape>> {
        self.reachable_orbits_in(SearchOrder::BreadthFirst)
    }

    /// Orbit-level reachability. For a reached representative with support
    /// `C = 0..k` and each alphabet orbit with support size `j`, every way of
    /// placing the `j` letter atoms on atoms of `C` or on fresh atoms is tried
    /// (full), or only the all-fresh placement (separated).
    pub fn reachable_orbits_in(&self, order: SearchOrder) -> Result<Vec<OrbitShape>> {
        let letters = self.alphabet.orbits();
        let start = orbit_shape(&self.initial, &self.states)?;
        let mut visited: BTreeSet<OrbitShape> = BTreeSet::from([start.clone()]);
        let mut frontier = VecDeque::from([start]);
        while let Some(shape) = match order {
            SearchOrder::BreadthFirst => frontier.pop_front(),
            SearchOrder::DepthFirst => frontier.pop_back(),
        } {
            let state = shape.representative();
            let k = shape.support_size();
            for letter in &letters {
                let j = letter.support_size();
                let placements = match self.kind {
                    Kind::Full => partial_injections(j, k),
                    Kind::Separated => vec![vec![None; j]],
                };
                for placement in placements {
                    let a = place_letter(letter.representative(), &placement, k);
                    let next = self.dynamics.step(state, &a);
                    let next_shape = orbit_shape(&next, &self.states)?;
                    if visited.insert(next_shape.clone()) {
                        frontier.push_back(next_shape);
                    }
                }
            }
        }
        Ok(visited.into_iter().collect())
    }

    /// Extends the separated language to all words: letters carrying an atom
    /// are freshened, the separated run is taken, and the fresh atoms are
    /// substituted back in the output.
    pub fn extend_language(&self, w: &Word) -> Result<NomValue> {
        self.extend_language_avoiding(w, &BTreeSet::new())
    }

    /// As [`extend_language`](Self::extend_language), with the fresh atoms
    /// additionally chosen outside `avoid`.
    pub fn extend_language_avoiding(&self, w: &Word, avoid: &BTreeSet<Atom>) -> Result<NomValue> {
        self.expect_kind(Kind::Separated)?;
        for set in [&self.alphabet, &self.output] {
            if !set.has_sb_action() {
                return Err(NominalError::NoSubstitutionAction { set: set.to_string(), subst: "<extension>".into() });
            }
        }
        let dim = dimension(&self.alphabet);
        if dim.dimension > 1 {
            let witness = self.alphabet.orbits().into_iter().find(|s| s.support_size() > 1).expect("witness");
            return Err(NominalError::DimensionTooLarge {
                set: self.alphabet.to_string(),
                dimension: dim.dimension,
                witness: witness.to_string(),
            });
        }
        self.check_letters(w)?;
        let mut taken = w.support();
        taken.extend(avoid.iter().copied());
        let carrying = w.letters().iter().filter(|l| !l.support().is_empty()).count();
        let mut bs = fresh(&taken, carrying).into_iter();
        let mut back = Vec::new();
        let letters = w
            .letters()
            .iter()
            .map(|l| match l.support().into_iter().next() {
                None => l.clone(),
                Some(a) => {
                    let b = bs.next().expect("one fresh atom per carrying letter");
                    back.push((b, a));
                    l.permute(&Perm::swap(a, b))
                }
            })
            .collect();
        let separated = self.run_separated(&Word(letters))?;
        act(&Subst::from_pairs(back), &separated, &self.output)
    }

    /// Samples words and substitutions and checks `L(m·w) = m·L(w)`.
    pub fn check_sb_equivariance(&self, samples: usize, seed: u64, max_len: usize) -> Result<CheckReport> {
        self.expect_kind(Kind::Full)?;
        for set in [&self.alphabet, &self.output] {
            if !set.has_sb_action() {
                return Err(NominalError::NoSubstitutionAction { set: set.to_string(), subst: "<sampled>".into() });
            }
        }
        let mut report = CheckReport::new(format!("{}: language is sb-equivariant", self.name));
        let mut sampler = Sampler::with_pool(seed, 4);
        for _ in 0..samples {
            let w = sample_word(self, &mut sampler, max_len);
            let m = sampler.subst();
            let result = (|| -> Result<(NomValue, NomValue)> {
                let lhs = self.run(&w.rename(&m))?;
                let rhs = act(&m, &self.run(&w)?, &self.output)?;
                Ok((lhs, rhs))
            })();
            match result {
                Ok((lhs, rhs)) => report.record(lhs == rhs, || {
                    format!("m = {}, w = {}: L(m·w) = {} but m·L(w) = {}", m, w, lhs, rhs)
                }),
                Err(e) => report.record(false, || format!("m = {}, w = {}: {}", m, w, e)),
            }
        }
        Ok(report)
    }
}

/// Places the canonical letter atoms `0..j`: `Some(t)` reuses state atom `t`,
/// `None` takes the next fresh atom from `k` upward.
fn place_letter(letter: &NomValue, placement: &[Option<usize>], k: usize) -> NomValue {
    let mut next = k as u32;
    let targets: BTreeMap<Atom, Atom> = placement
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let t = match p {
                Some(t) => Atom(*t as u32),
                None => {
                    next += 1;
                    Atom(next - 1)
                }
            };
            (Atom(i as u32), t)
        })
        .collect();
    letter.map_atoms(&|a| targets[&a])
}

/// A random word of length at most `max_len` over the automaton's alphabet.
pub fn sample_word(a: &MooreAutomaton, sampler: &mut Sampler, max_len: usize) -> Word {
    let len = sampler.index(max_len + 1);
    Word(sampler.members(a.alphabet(), len))
}

/// A random separated word of length at most `max_len`.
pub fn sample_separated_word(a: &MooreAutomaton, sampler: &mut Sampler, max_len: usize) -> Word {
    let len = sampler.index(max_len + 1);
    let orbits = a.alphabet().orbits();
    let mut used = BTreeSet::new();
    let mut letters = Vec::with_capacity(len);
    for _ in 0..len {
        let shape = &orbits[sampler.index(orbits.len())];
        let k = shape.support_size();
        let pool: Vec<Atom> = (0..sampler.pool() + 2 * max_len as u32).map(Atom).filter(|a| !used.contains(a)).collect();
        let mut chosen = Vec::with_capacity(k);
        for _ in 0..k {
            let candidates: Vec<Atom> = pool.iter().copied().filter(|a| !chosen.contains(a)).collect();
            chosen.push(candidates[sampler.index(candidates.len())]);
        }
        used.extend(chosen.iter().copied());
        letters.push(shape.representative().map_atoms(&|x| chosen[x.0 as usize]));
    }
    Word(letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{fifo_automaton, FifoConfig};

    fn put(a: u32) -> NomValue {
        NomValue::tagged("Put", NomValue::atom(a))
    }

    fn pop() -> NomValue {
        NomValue::label("Pop")
    }

    #[test]
    fn run_examples() {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        assert_eq!(fifo.run(&Word::empty()).unwrap(), NomValue::label("⊥"));
        assert_eq!(fifo.run(&Word(vec![put(1), put(2), pop()])).unwrap(), NomValue::atom(2u32));
        assert_eq!(fifo.run(&Word(vec![pop()])).unwrap(), NomValue::label("⊥"));
    }

    #[test]
    fn run_rejects_foreign_letters() {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        let err = fifo.run(&Word(vec![NomValue::label("Push")])).unwrap_err();
        assert!(matches!(err, NominalError::NotMember { .. }));
    }

    #[test]
    fn run_separated_examples() {
        let sep = fifo_automaton(FifoConfig { n: 3 }).restrict().unwrap();
        assert_eq!(sep.run_separated(&Word(vec![put(1), put(2), pop()])).unwrap(), NomValue::atom(2u32));
        match sep.run_separated(&Word(vec![put(1), put(1)])) {
            Err(NominalError::SeparationViolation { position, .. }) => assert_eq!(position, 2),
            other => panic!("expected violation, got {:?}", other),
        }
        assert_eq!(sep.run_separated(&Word::empty()).unwrap(), NomValue::label("⊥"));
    }

    #[test]
    fn kinds_are_enforced() {
        let fifo = fifo_automaton(FifoConfig { n: 2 });
        let sep = fifo.restrict().unwrap();
        assert!(matches!(fifo.run_separated(&Word::empty()), Err(NominalError::KindMismatch { .. })));
        assert!(matches!(sep.run(&Word::empty()), Err(NominalError::KindMismatch { .. })));
        assert!(sep.restrict().is_err());
        assert_eq!(sep.initial(), fifo.initial());
        assert_eq!(sep.output(&NomValue::atoms([4])), fifo.output(&NomValue::atoms([4])));
    }

    #[test]
    fn reachable_counts_for_three() {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        assert_eq!(fifo.reachable_orbits().unwrap().len(), 10);
        assert_eq!(fifo.restrict().unwrap().reachable_orbits().unwrap().len(), 5);
        assert_eq!(fifo_automaton(FifoConfig { n: 0 }).reachable_orbits().unwrap().len(), 2);
    }

    #[test]
    fn extension_examples() {
        let sep = fifo_automaton(FifoConfig { n: 3 }).restrict().unwrap();
        assert_eq!(sep.extend_language(&Word(vec![put(1), put(1), pop()])).unwrap(), NomValue::atom(1u32));
        let w = Word(vec![put(3), put(5), pop()]);
        assert_eq!(sep.extend_language(&w).unwrap(), sep.run_separated(&w).unwrap());
    }

    #[test]
    fn extension_rejects_high_dimensional_alphabets() {
        struct Pairs;
        impl Dynamics for Pairs {
            fn step(&self, _: &NomValue, _: &NomValue) -> NomValue {
                NomValue::unit()
            }
            fn output(&self, _: &NomValue) -> NomValue {
                NomValue::unit()
            }
        }
        let a2 = NominalSetDesc::product(NominalSetDesc::Atoms, NominalSetDesc::Atoms);
        let aut = MooreAutomaton::new("pairs", NominalSetDesc::Unit, a2, NominalSetDesc::Unit, NomValue::unit(), Arc::new(Pairs))
            .unwrap()
            .restrict()
            .unwrap();
        assert!(matches!(aut.extend_language(&Word::empty()), Err(NominalError::DimensionTooLarge { .. })));
    }

    #[test]
    fn initial_state_must_be_equivariant() {
        struct Id;
        impl Dynamics for Id {
            fn step(&self, s: &NomValue, _: &NomValue) -> NomValue {
                s.clone()
            }
            fn output(&self, s: &NomValue) -> NomValue {
                s.clone()
            }
        }
        let a = NominalSetDesc::Atoms;
        assert!(MooreAutomaton::new("x", a.clone(), a.clone(), a, NomValue::atom(0u32), Arc::new(Id)).is_err());
    }

    #[test]
    fn separated_word_sampler_separates() {
        let fifo = fifo_automaton(FifoConfig { n: 3 });
        let mut s = Sampler::new(11);
        for _ in 0..100 {
            assert!(sample_separated_word(&fifo, &mut s, 6).is_separated());
        }
    }
}
