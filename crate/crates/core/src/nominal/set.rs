use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::atoms::{Atom, Subst};
use crate::error::{NominalError, Result};
use crate::nominal::orbit::{enumerate_orbits, OrbitShape};
use crate::nominal::value::NomValue;

/// Tag under which elements of a free construction are encoded as values.
pub const FREE_TAG: &str = "free";

/// Descriptor of an orbit-finite nominal set, as a constructor tree.
///
/// Elements are encoded as [`NomValue`]s:
///
/// | descriptor          | element                                   |
/// |---------------------|-------------------------------------------|
/// | `Atoms`             | `Atom`                                    |
/// | `Unit`              | empty `Tuple`                             |
/// | `Discrete(ls)`      | `Label(l)` with `l ∈ ls`                  |
/// | `Tag(n, X)`         | `Tagged(n, x)`                            |
/// | `Product`/`SepProduct` | 2-`Tuple`                              |
/// | `Coproduct(X, Y)`   | an element of `X` or of `Y`, untagged     |
/// | `WordsUpTo`/`SepWordsUpTo` | `Tuple` of letters                 |
/// | `Free(X)`           | `Tagged("free", (base-orbit-id, (images..)))` |
///
/// Coproduct summands must be disjoint; [`NominalSetDesc::coproduct`] checks
/// this on orbit representatives.
#[derive(Clone, PartialEq, Eq)]
pub enum NominalSetDesc {
    Atoms,
    Unit,
    Discrete(BTreeSet<String>),
    Tag(String, Box<NominalSetDesc>),
    Product(Box<NominalSetDesc>, Box<NominalSetDesc>),
    SepProduct(Box<NominalSetDesc>, Box<NominalSetDesc>),
    Coproduct(Box<NominalSetDesc>, Box<NominalSetDesc>),
    WordsUpTo(Box<NominalSetDesc>, usize),
    SepWordsUpTo(Box<NominalSetDesc>, usize),
    Free(FreeBase),
}

/// The argument of a free construction, with its orbit list cached so that
/// base-orbit ids can be resolved cheaply.
#[derive(Clone)]
pub struct FreeBase {
    inner: Arc<NominalSetDesc>,
    orbits: Arc<OnceLock<Vec<OrbitShape>>>,
}

impl FreeBase {
    pub fn new(inner: NominalSetDesc) -> Self {
        FreeBase { inner: Arc::new(inner), orbits: Arc::new(OnceLock::new()) }
    }

    pub fn desc(&self) -> &NominalSetDesc {
        &self.inner
    }

    pub fn orbits(&self) -> &[OrbitShape] {
        self.orbits.get_or_init(|| self.inner.orbits())
    }

    pub fn orbit_id(&self, shape: &OrbitShape) -> Option<usize> {
        self.orbits().binary_search(shape).ok()
    }
}

impl PartialEq for FreeBase {
    fn eq(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

impl Eq for FreeBase {}

impl NominalSetDesc {
    pub fn atoms() -> Self {
        NominalSetDesc::Atoms
    }

    pub fn unit() -> Self {
        NominalSetDesc::Unit
    }

    pub fn discrete<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        NominalSetDesc::Discrete(labels.into_iter().map(Into::into).collect())
    }

    pub fn tag(name: impl Into<String>, x: NominalSetDesc) -> Self {
        NominalSetDesc::Tag(name.into(), Box::new(x))
    }

    pub fn product(x: NominalSetDesc, y: NominalSetDesc) -> Self {
        NominalSetDesc::Product(Box::new(x), Box::new(y))
    }

    pub fn sep_product(x: NominalSetDesc, y: NominalSetDesc) -> Self {
        NominalSetDesc::SepProduct(Box::new(x), Box::new(y))
    }

    /// Disjoint union; rejects summands that share an orbit.
    pub fn coproduct(x: NominalSetDesc, y: NominalSetDesc) -> Result<Self> {
        // Membership is equivariant, so checking orbit representatives suffices.
        if let Some(shared) = x.orbits().into_iter().find(|s| y.contains(s.representative())) {
            let set = format!("sum({},{})", x, y);
            return Err(NominalError::OverlappingSummands { set, witness: shared.to_string() });
        }
        Ok(NominalSetDesc::Coproduct(Box::new(x), Box::new(y)))
    }

    pub fn words_up_to(x: NominalSetDesc, n: usize) -> Self {
        NominalSetDesc::WordsUpTo(Box::new(x), n)
    }

    pub fn sep_words_up_to(x: NominalSetDesc, n: usize) -> Self {
        NominalSetDesc::SepWordsUpTo(Box::new(x), n)
    }

    pub fn free(x: NominalSetDesc) -> Self {
        NominalSetDesc::Free(FreeBase::new(x))
    }

    /// `X × X × … × X` (`k` factors, nested to the left); `1` for `k = 0`.
    pub fn power(x: NominalSetDesc, k: usize) -> Self {
        Self::fold_power(x, k, NominalSetDesc::product)
    }

    /// `X ⊛ X ⊛ … ⊛ X` (`k` factors, nested to the left); `1` for `k = 0`.
    pub fn sep_power(x: NominalSetDesc, k: usize) -> Self {
        Self::fold_power(x, k, NominalSetDesc::sep_product)
    }

    fn fold_power(x: NominalSetDesc, k: usize, combine: fn(NominalSetDesc, NominalSetDesc) -> NominalSetDesc) -> Self {
        match k {
            0 => NominalSetDesc::Unit,
            _ => (1..k).fold(x.clone(), |acc, _| combine(acc, x.clone())),
        }
    }

    /// Whether substitutions (not only permutations) act on the set.
    pub fn has_sb_action(&self) -> bool {
        use NominalSetDesc::*;
        match self {
            Atoms | Unit | Discrete(_) | Free(_) => true,
            Tag(_, x) | WordsUpTo(x, _) => x.has_sb_action(),
            Product(x, y) | Coproduct(x, y) => x.has_sb_action() && y.has_sb_action(),
            SepProduct(..) | SepWordsUpTo(..) => false,
        }
    }

    pub fn contains(&self, v: &NomValue) -> bool {
        self.membership_path(v).is_some()
    }

    pub fn check_member(&self, v: &NomValue) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(NominalError::NotMember { value: v.to_string(), set: self.to_string() })
        }
    }

    /// Coproduct choices (0 = left, 1 = right) made while matching `v`, in
    /// depth-first order; `None` when `v` is not a member.
    pub(crate) fn membership_path(&self, v: &NomValue) -> Option<Vec<u8>> {
        let mut path = Vec::new();
        self.walk(v, &mut path).then_some(path)
    }

    fn walk(&self, v: &NomValue, path: &mut Vec<u8>) -> bool {
        use NominalSetDesc::*;
        match self {
            Atoms => v.as_atom().is_some(),
            Unit => v.as_tuple().is_some_and(|c| c.is_empty()),
            Discrete(labels) => v.as_label().is_some_and(|l| labels.contains(l)),
            Tag(name, x) => match v.as_tagged() {
                Some((n, child)) if n == name => x.walk(child, path),
                _ => false,
            },
            Product(x, y) | SepProduct(x, y) => {
                let Some([a, b]) = v.as_tuple() else { return false };
                if !(x.walk(a, path) && y.walk(b, path)) {
                    return false;
                }
                !matches!(self, SepProduct(..)) || a.support().is_disjoint(&b.support())
            }
            Coproduct(x, y) => {
                let mark = path.len();
                path.push(0);
                if x.walk(v, path) {
                    return true;
                }
                path.truncate(mark);
                path.push(1);
                if y.walk(v, path) {
                    return true;
                }
                path.truncate(mark);
                false
            }
            WordsUpTo(x, n) | SepWordsUpTo(x, n) => {
                let Some(letters) = v.as_tuple() else { return false };
                if letters.len() > *n || !letters.iter().all(|l| x.walk(l, path)) {
                    return false;
                }
                if matches!(self, SepWordsUpTo(..)) {
                    let mut seen = BTreeSet::new();
                    for l in letters {
                        let s = l.support();
                        if !s.is_disjoint(&seen) {
                            return false;
                        }
                        seen.extend(s);
                    }
                }
                true
            }
            Free(base) => match decode_free_value(v) {
                Some((id, images)) => match base.orbits().get(id) {
                    Some(shape) if shape.support_size() == images.len() => {
                        path.extend_from_slice(shape.path());
                        true
                    }
                    _ => false,
                },
                None => false,
            },
        }
    }

    /// All orbits, deterministically ordered.
    pub fn orbits(&self) -> Vec<OrbitShape> {
        enumerate_orbits(self)
    }
}

/// Encodes an element of a free construction: the id of its base orbit and
/// the images of the canonical support atoms.
pub fn free_value(base_id: usize, images: &[Atom]) -> NomValue {
    NomValue::tagged(
        FREE_TAG,
        NomValue::pair(
            NomValue::label(base_id.to_string()),
            NomValue::tuple(images.iter().copied().map(NomValue::atom).collect()),
        ),
    )
}

pub fn decode_free_value(v: &NomValue) -> Option<(usize, Vec<Atom>)> {
    let (tag, body) = v.as_tagged()?;
    if tag != FREE_TAG {
        return None;
    }
    let [id, images] = body.as_tuple()? else { return None };
    let id: usize = id.as_label()?.parse().ok()?;
    let images = images.as_tuple()?.iter().map(NomValue::as_atom).collect::<Option<Vec<_>>>()?;
    Some((id, images))
}

/// Applies a substitution to a member of `x`.
///
/// Non-injective substitutions are rejected on sets that only carry a
/// permutation action.
pub fn act(m: &Subst, v: &NomValue, x: &NominalSetDesc) -> Result<NomValue> {
    x.check_member(v)?;
    if !x.has_sb_action() && !m.is_injective() {
        return Err(NominalError::NoSubstitutionAction { set: x.to_string(), subst: m.to_string() });
    }
    Ok(v.rename(m))
}

impl fmt::Display for NominalSetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use NominalSetDesc::*;
        match self {
            Atoms => write!(f, "A"),
            Unit => write!(f, "1"),
            Discrete(labels) => {
                write!(f, "D{{")?;
                for (i, l) in labels.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", l)?;
                }
                write!(f, "}}")
            }
            Tag(name, x) => write!(f, "tag({},{})", name, x),
            Product(x, y) => write!(f, "prod({},{})", x, y),
            SepProduct(x, y) => write!(f, "sep({},{})", x, y),
            Coproduct(x, y) => write!(f, "sum({},{})", x, y),
            WordsUpTo(x, n) => write!(f, "wordsle({},{})", x, n),
            SepWordsUpTo(x, n) => write!(f, "sepwordsle({},{})", x, n),
            Free(base) => write!(f, "free({})", base.desc()),
        }
    }
}

impl fmt::Debug for NominalSetDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
