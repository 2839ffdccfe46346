//! Concrete automata and sets: the bounded FIFO queue, two small automata
//! used as positive and negative controls, and the nuclear set.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::atoms::{fresh, Atom, Subst};
use crate::automata::{Dynamics, MooreAutomaton};
use crate::nominal::set::NominalSetDesc;
use crate::nominal::value::NomValue;

pub const BOTTOM: &str = "⊥";
pub const PUT: &str = "Put";
pub const POP: &str = "Pop";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FifoConfig {
    /// Queue capacity.
    pub n: usize,
}

/// `Q = 𝔸^{≤n} + {⊥}`.
pub fn fifo_states(n: usize) -> NominalSetDesc {
    NominalSetDesc::coproduct(NominalSetDesc::words_up_to(NominalSetDesc::Atoms, n), NominalSetDesc::discrete([BOTTOM]))
        .expect("words and labels are disjoint")
}

/// `Σ = {Put(a)} + {Pop}`.
pub fn fifo_alphabet() -> NominalSetDesc {
    NominalSetDesc::coproduct(NominalSetDesc::tag(PUT, NominalSetDesc::Atoms), NominalSetDesc::discrete([POP]))
        .expect("tagged atoms and labels are disjoint")
}

/// `O = 𝔸 + {⊥}`.
pub fn fifo_outputs() -> NominalSetDesc {
    NominalSetDesc::coproduct(NominalSetDesc::Atoms, NominalSetDesc::discrete([BOTTOM])).expect("disjoint")
}

struct Fifo {
    capacity: usize,
}

impl Dynamics for Fifo {
    fn step(&self, state: &NomValue, letter: &NomValue) -> NomValue {
        let bottom = NomValue::label(BOTTOM);
        let Some(queue) = state.as_tuple() else { return bottom };
        match letter.as_tagged() {
            Some((PUT, value)) if queue.len() < self.capacity => {
                let mut next = queue.to_vec();
                next.push(value.clone());
                NomValue::tuple(next)
            }
            Some(_) => bottom,
            None if !queue.is_empty() => NomValue::tuple(queue[1..].to_vec()),
            None => bottom,
        }
    }

    fn output(&self, state: &NomValue) -> NomValue {
        match state.as_tuple().and_then(<[NomValue]>::first) {
            Some(front) => front.clone(),
            None => NomValue::label(BOTTOM),
        }
    }
}

/// The bounded FIFO queue of capacity `n`, starting from the empty queue.
pub fn fifo_automaton(cfg: FifoConfig) -> MooreAutomaton {
    MooreAutomaton::new(
        format!("fifo[{}]", cfg.n),
        fifo_states(cfg.n),
        fifo_alphabet(),
        fifo_outputs(),
        NomValue::unit(),
        Arc::new(Fifo { capacity: cfg.n }),
    )
    .expect("empty queue is an equivariant state")
}

const START: &str = "start";
const REPEATED: &str = "repeated";

struct FirstRepeats;

impl Dynamics for FirstRepeats {
    fn step(&self, state: &NomValue, letter: &NomValue) -> NomValue {
        match (state.as_label(), state.as_atom()) {
            (Some(START), _) => letter.clone(),
            (_, Some(first)) if letter.as_atom() == Some(first) => NomValue::label(REPEATED),
            _ => state.clone(),
        }
    }

    fn output(&self, state: &NomValue) -> NomValue {
        NomValue::label(if state.as_label() == Some(REPEATED) { "yes" } else { "no" })
    }
}

/// Accepts words over `𝔸` whose first letter occurs again later. Its language
/// is permutation- but not substitution-equivariant.
pub fn first_repeats_automaton() -> MooreAutomaton {
    let states = NominalSetDesc::coproduct(NominalSetDesc::discrete([START, REPEATED]), NominalSetDesc::Atoms)
        .expect("disjoint");
    MooreAutomaton::new(
        "repeat",
        states,
        NominalSetDesc::Atoms,
        NominalSetDesc::discrete(["no", "yes"]),
        NomValue::label(START),
        Arc::new(FirstRepeats),
    )
    .expect("start is a label")
}

struct LastLetter;

impl Dynamics for LastLetter {
    fn step(&self, _: &NomValue, letter: &NomValue) -> NomValue {
        letter.clone()
    }

    fn output(&self, state: &NomValue) -> NomValue {
        state.clone()
    }
}

/// Outputs the last letter read over the atom-free alphabet `{x, y}`.
pub fn last_letter_automaton() -> MooreAutomaton {
    MooreAutomaton::new(
        "echo",
        NominalSetDesc::discrete(["none", "x", "y"]),
        NominalSetDesc::discrete(["x", "y"]),
        NominalSetDesc::discrete(["none", "x", "y"]),
        NomValue::label("none"),
        Arc::new(LastLetter),
    )
    .expect("labels")
}

/// Element of the nuclear set `𝔸 + {∗}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nuclear {
    Atom(Atom),
    Star,
}

impl Nuclear {
    /// Injective substitutions rename atoms; any non-injective one collapses
    /// every atom to `∗`, wherever the collision happens.
    pub fn act(self, m: &Subst) -> Nuclear {
        match self {
            Nuclear::Atom(a) if m.is_injective() => Nuclear::Atom(m.apply(a)),
            _ => Nuclear::Star,
        }
    }

    pub fn to_value(self) -> NomValue {
        match self {
            Nuclear::Atom(a) => NomValue::atom(a),
            Nuclear::Star => NomValue::label("∗"),
        }
    }

    pub fn from_value(v: &NomValue) -> Option<Nuclear> {
        match (v.as_atom(), v.as_label()) {
            (Some(a), _) => Some(Nuclear::Atom(a)),
            (_, Some("∗")) => Some(Nuclear::Star),
            _ => None,
        }
    }
}

/// Action on the value encoding; used by the generic support tests.
pub fn nuclear_act(m: &Subst, v: &NomValue) -> NomValue {
    Nuclear::from_value(v).map(|x| x.act(m).to_value()).unwrap_or_else(|| v.clone())
}

/// Substitutions `m1` (injective) and `m2` (not) that agree on `c` but send
/// the atom `a` to different elements, so `c` is no substitution-support of
/// `a`. The collision of `m2` sits on two atoms fresh for `c` and `a`.
pub fn nuclear_witness(a: Atom, c: &BTreeSet<Atom>) -> (Subst, Subst) {
    let mut avoid = c.clone();
    avoid.insert(a);
    let bs = fresh(&avoid, 2);
    (Subst::identity(), Subst::from_pairs([(bs[0], bs[1])]))
}
