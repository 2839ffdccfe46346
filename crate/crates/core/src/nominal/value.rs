use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atoms::{Atom, Perm, Subst};

/// A concrete element of a nominal set: a finite tree with atoms at some of
/// its leaves.
///
/// Atom occurrences read left to right, depth first, fix the canonical order
/// of the support.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NomValue {
    Atom { atom: Atom },
    Label { name: String },
    Tuple { children: Vec<NomValue> },
    Tagged { name: String, child: Box<NomValue> },
}

impl NomValue {
    pub fn atom(a: impl Into<Atom>) -> Self {
        NomValue::Atom { atom: a.into() }
    }

    pub fn label(name: impl Into<String>) -> Self {
        NomValue::Label { name: name.into() }
    }

    pub fn tuple(children: Vec<NomValue>) -> Self {
        NomValue::Tuple { children }
    }

    pub fn unit() -> Self {
        NomValue::Tuple { children: Vec::new() }
    }

    pub fn pair(x: NomValue, y: NomValue) -> Self {
        NomValue::Tuple { children: vec![x, y] }
    }

    pub fn tagged(name: impl Into<String>, child: NomValue) -> Self {
        NomValue::Tagged { name: name.into(), child: Box::new(child) }
    }

    /// A word (or plain tuple) of atoms.
    pub fn atoms<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        NomValue::tuple(ids.into_iter().map(NomValue::atom).collect())
    }

    pub fn as_atom(&self) -> Option<Atom> {
        match self {
            NomValue::Atom { atom } => Some(*atom),
            _ => None,
        }
    }

    pub fn as_label(&self) -> Option<&str> {
        match self {
            NomValue::Label { name } => Some(name),
            _ => None,
        }
    }

    pub fn as_tuple(&self) -> Option<&[NomValue]> {
        match self {
            NomValue::Tuple { children } => Some(children),
            _ => None,
        }
    }

    pub fn as_tagged(&self) -> Option<(&str, &NomValue)> {
        match self {
            NomValue::Tagged { name, child } => Some((name, child)),
            _ => None,
        }
    }

    /// Every atom occurrence, depth first.
    pub fn occurrences(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a));
        out
    }

    fn visit_atoms(&self, f: &mut impl FnMut(Atom)) {
        match self {
            NomValue::Atom { atom } => f(*atom),
            NomValue::Label { .. } => {}
            NomValue::Tuple { children } => children.iter().for_each(|c| c.visit_atoms(f)),
            NomValue::Tagged { child, .. } => child.visit_atoms(f),
        }
    }

    pub fn support(&self) -> BTreeSet<Atom> {
        self.occurrences().into_iter().collect()
    }

    /// Support atoms in order of first occurrence.
    pub fn support_order(&self) -> Vec<Atom> {
        let mut seen = BTreeSet::new();
        self.occurrences().into_iter().filter(|a| seen.insert(*a)).collect()
    }

    pub fn map_atoms(&self, f: &impl Fn(Atom) -> Atom) -> NomValue {
        match self {
            NomValue::Atom { atom } => NomValue::Atom { atom: f(*atom) },
            NomValue::Label { .. } => self.clone(),
            NomValue::Tuple { children } => {
                NomValue::Tuple { children: children.iter().map(|c| c.map_atoms(f)).collect() }
            }
            NomValue::Tagged { name, child } => {
                NomValue::Tagged { name: name.clone(), child: Box::new(child.map_atoms(f)) }
            }
        }
    }

    /// Pointwise renaming. Membership in a particular set is not checked here;
    /// see [`crate::nominal::act`].
    pub fn rename(&self, m: &Subst) -> NomValue {
        self.map_atoms(&|a| m.apply(a))
    }

    pub fn permute(&self, g: &Perm) -> NomValue {
        self.map_atoms(&|a| g.apply(a))
    }

    /// Renames the support to `0..k` in first-occurrence order.
    pub fn canonical(&self) -> NomValue {
        let order = self.support_order();
        let index: BTreeMap<Atom, Atom> =
            order.iter().enumerate().map(|(i, a)| (*a, Atom(i as u32))).collect();
        self.map_atoms(&|a| index[&a])
    }

    /// Same tree with every atom replaced by its occurrence position.
    pub fn skeleton(&self) -> NomValue {
        let counter = std::cell::Cell::new(0u32);
        self.map_atoms(&|_| {
            let i = counter.get();
            counter.set(i + 1);
            Atom(i)
        })
    }

    /// Block index of every atom occurrence, blocks numbered by first occurrence.
    pub fn equality_pattern(&self) -> Vec<usize> {
        let order = self.support_order();
        self.occurrences()
            .into_iter()
            .map(|a| order.iter().position(|b| *b == a).expect("occurring atom"))
            .collect()
    }
}

impl fmt::Display for NomValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NomValue::Atom { atom } => write!(f, "{}", atom),
            NomValue::Label { name } => write!(f, "{}", name),
            NomValue::Tuple { children } => {
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", c)?;
                }
                write!(f, ")")
            }
            NomValue::Tagged { name, child } => match child.as_ref() {
                NomValue::Tuple { .. } => write!(f, "{}{}", name, child),
                _ => write!(f, "{}({})", name, child),
            },
        }
    }
}

impl fmt::Debug for NomValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_examples() {
        let ids = |v: &NomValue| v.support().into_iter().map(Atom::id).collect::<Vec<_>>();
        assert_eq!(ids(&NomValue::atoms([1, 2, 1])), vec![1, 2]);
        assert!(NomValue::label("⊥").support().is_empty());
    }

    #[test]
    fn canonical_and_pattern() {
        let v = NomValue::atoms([7, 3, 7]);
        assert_eq!(v.canonical(), NomValue::atoms([0, 1, 0]));
        assert_eq!(v.equality_pattern(), vec![0, 1, 0]);
        assert_eq!(v.skeleton(), NomValue::atoms([0, 1, 2]));
    }

    #[test]
    fn json_node_kinds() {
        let v = NomValue::tagged("Put", NomValue::atom(4u32));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"kind":"tagged","name":"Put","child":{"kind":"atom","atom":4}}"#);
        let back: NomValue = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
        let t = serde_json::to_value(NomValue::tuple(vec![NomValue::label("⊥")])).unwrap();
        assert_eq!(t["kind"], "tuple");
        assert_eq!(t["children"][0]["kind"], "label");
    }

    #[test]
    fn display() {
        assert_eq!(NomValue::atoms([1, 2]).to_string(), "(1,2)");
        assert_eq!(NomValue::tagged("Put", NomValue::atom(3u32)).to_string(), "Put(3)");
        assert_eq!(NomValue::unit().to_string(), "()");
    }
}
