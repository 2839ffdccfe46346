//! Name-keyed registries of interchangeable components: automaton families
//! and verification suites are both selected by name at runtime.

use std::collections::BTreeMap;

use crate::automata::MooreAutomaton;
use crate::examples::{fifo_automaton, first_repeats_automaton, last_letter_automaton, FifoConfig};

/// Anything that can be registered under a fixed name.
pub trait Named {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
}

pub struct Registry<T: ?Sized + Named> {
    entries: BTreeMap<&'static str, Box<T>>,
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: BTreeMap::new() }
    }
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `entry`, replacing any previous entry of the same name.
    pub fn register(&mut self, entry: Box<T>) -> &mut Self {
        self.entries.insert(entry.name(), entry);
        self
    }

    pub fn get(&self, name: &str) -> Option<&T> {
        self.entries.get(name).map(Box::as_ref)
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &T> {
        self.entries.values().map(Box::as_ref)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A family of automata indexed by a size parameter.
pub trait AutomatonFamily: Named + Send + Sync {
    fn build(&self, n: usize) -> MooreAutomaton;
}

pub struct FifoFamily;

impl Named for FifoFamily {
    fn name(&self) -> &'static str {
        "fifo"
    }

    fn description(&self) -> &'static str {
        "bounded FIFO queue of capacity n over Put(a)/Pop"
    }
}

impl AutomatonFamily for FifoFamily {
    fn build(&self, n: usize) -> MooreAutomaton {
        fifo_automaton(FifoConfig { n })
    }
}

pub struct FirstRepeatsFamily;

impl Named for FirstRepeatsFamily {
    fn name(&self) -> &'static str {
        "repeat"
    }

    fn description(&self) -> &'static str {
        "does the first letter occur again (n is ignored)"
    }
}

impl AutomatonFamily for FirstRepeatsFamily {
    fn build(&self, _: usize) -> MooreAutomaton {
        first_repeats_automaton()
    }
}

pub struct LastLetterFamily;

impl Named for LastLetterFamily {
    fn name(&self) -> &'static str {
        "echo"
    }

    fn description(&self) -> &'static str {
        "outputs the last letter over {x, y} (n is ignored)"
    }
}

impl AutomatonFamily for LastLetterFamily {
    fn build(&self, _: usize) -> MooreAutomaton {
        last_letter_automaton()
    }
}

pub fn default_automata() -> Registry<dyn AutomatonFamily> {
    let mut registry: Registry<dyn AutomatonFamily> = Registry::new();
    registry
        .register(Box::new(FifoFamily))
        .register(Box::new(FirstRepeatsFamily))
        .register(Box::new(LastLetterFamily));
    registry
}
