//! The free nominal renaming set `F(X)` over a permutation-nominal set `X`.
//!
//! An element `[m, x]` is stored in normal form: the orbit of `x` together with
//! the images under `m` of the canonical support atoms of that orbit's
//! representative. Because orbits of constructible sets have trivial
//! stabilizers, two pairs are related exactly when their normal forms are
//! equal. [`sim_oracle`] decides the relation directly, without normal forms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::atoms::{fresh, Atom, Perm, Subst};
use crate::error::{NominalError, Result};
use crate::nominal::orbit::{dimension, orbit_shape, Dimension, OrbitShape};
use crate::nominal::sample::Sampler;
use crate::nominal::set::{act, decode_free_value, free_value, FreeBase, NominalSetDesc};
use crate::nominal::value::NomValue;
use crate::report::CheckReport;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeElem {
    base: OrbitShape,
    images: Vec<Atom>,
}

/// Wire form: `{"base": <shape id>, "images": [atoms]}`, where the shape id
/// indexes the ordered orbit list of the base set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeElemJson {
    pub base: usize,
    pub images: Vec<Atom>,
}

impl FreeElem {
    pub fn new(base: OrbitShape, images: Vec<Atom>) -> Result<Self> {
        if base.support_size() != images.len() {
            return Err(NominalError::MalformedFreeElem(format!("{} with images {:?}", base, images)));
        }
        Ok(FreeElem { base, images })
    }

    pub fn base(&self) -> &OrbitShape {
        &self.base
    }

    pub fn images(&self) -> &[Atom] {
        &self.images
    }

    /// The substitution sending canonical support atom `i` to `images[i]`.
    pub fn substitution(&self) -> Subst {
        Subst::from_pairs(self.images.iter().enumerate().map(|(i, b)| (Atom(i as u32), *b)))
    }

    pub fn support(&self) -> BTreeSet<Atom> {
        self.images.iter().copied().collect()
    }

    pub fn to_value(&self, base: &FreeBase) -> Result<NomValue> {
        let id = base
            .orbit_id(&self.base)
            .ok_or_else(|| NominalError::MalformedFreeElem(self.to_string()))?;
        Ok(free_value(id, &self.images))
    }

    pub fn from_value(v: &NomValue, base: &FreeBase) -> Result<Self> {
        let malformed = || NominalError::MalformedFreeElem(v.to_string());
        let (id, images) = decode_free_value(v).ok_or_else(malformed)?;
        let shape = base.orbits().get(id).ok_or_else(malformed)?.clone();
        FreeElem::new(shape, images)
    }

    pub fn to_json(&self, base: &FreeBase) -> Result<FreeElemJson> {
        let id = base
            .orbit_id(&self.base)
            .ok_or_else(|| NominalError::MalformedFreeElem(self.to_string()))?;
        Ok(FreeElemJson { base: id, images: self.images.clone() })
    }

    pub fn from_json(json: &FreeElemJson, base: &FreeBase) -> Result<Self> {
        let shape = base
            .orbits()
            .get(json.base)
            .ok_or_else(|| NominalError::MalformedFreeElem(format!("{:?}", json)))?
            .clone();
        FreeElem::new(shape, json.images.clone())
    }
}

impl fmt::Display for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} | ", self.base)?;
        for (i, a) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", a)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FreeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Normal form of the class `[m, x]`.
///
/// `x = g·rep` where `g` sends canonical atom `i` to the `i`-th support atom
/// `s_i` of `x`; then `[m, x] = [m g, rep]`, whose images are `m(s_i)`.
pub fn free_elem(m: &Subst, x: &NomValue, set: &NominalSetDesc) -> Result<FreeElem> {
    let base = orbit_shape(x, set)?;
    let images = x.support_order().into_iter().map(|a| m.apply(a)).collect();
    Ok(FreeElem { base, images })
}

/// Decides `(m1, x1) ∼ (m2, x2)` by searching for a permutation `g` with
/// `g·x1 = x2` and `m1|C = (m2 ∘ g)|C` for `C = supp(x1)`.
///
/// The only candidate `g` comes from aligning the two supports in
/// first-occurrence order; any other choice differs on `C` and so fails to
/// map `x1` to `x2`.
pub fn sim_oracle(m1: &Subst, x1: &NomValue, m2: &Subst, x2: &NomValue, set: &NominalSetDesc) -> Result<bool> {
    set.check_member(x1)?;
    set.check_member(x2)?;
    let (s1, s2) = (x1.support_order(), x2.support_order());
    if s1.len() != s2.len() {
        return Ok(false);
    }
    let alignment: BTreeMap<Atom, Atom> = s1.iter().copied().zip(s2.iter().copied()).collect();
    let g = Perm::extend_injection(&alignment)?;
    if x1.permute(&g) != *x2 {
        return Ok(false);
    }
    let m2g = Subst::compose(m2, g.as_subst());
    Ok(m1.agrees_on(&m2g, &x1.support()))
}

/// `n · [m, x] = [n m, x]`.
pub fn act_free(n: &Subst, e: &FreeElem) -> FreeElem {
    FreeElem { base: e.base.clone(), images: e.images.iter().map(|a| n.apply(*a)).collect() }
}

/// `η(x) = [id, x]`.
pub fn unit(x: &NomValue, set: &NominalSetDesc) -> Result<FreeElem> {
    free_elem(&Subst::identity(), x, set)
}

/// `ε([m, y]) = m·y`, for `e` built over the underlying permutation set of
/// the renaming set `y_set`.
pub fn counit(e: &FreeElem, y_set: &NominalSetDesc) -> Result<NomValue> {
    if !y_set.has_sb_action() {
        return Err(NominalError::NoSubstitutionAction { set: y_set.to_string(), subst: e.substitution().to_string() });
    }
    act(&e.substitution(), e.base.representative(), y_set)
}

/// Transpose of an equivariant `f: X → U(Y)`: `f♯([m, x]) = m·f(x)`.
pub fn sharp<'a, F>(f: F, y_set: &'a NominalSetDesc) -> impl Fn(&FreeElem) -> Result<NomValue> + 'a
where
    F: Fn(&NomValue) -> NomValue + 'a,
{
    move |e| act(&e.substitution(), &f(e.base.representative()), y_set)
}

/// Transpose of a renaming-equivariant `h: F(X) → Y`: `h♭(x) = h([id, x])`.
pub fn flat<'a, H>(h: H, x_set: &'a NominalSetDesc) -> impl Fn(&NomValue) -> Result<NomValue> + 'a
where
    H: Fn(&FreeElem) -> Result<NomValue> + 'a,
{
    move |x| h(&unit(x, x_set)?)
}

/// Action of the functor on an equivariant map: `F(f)([m, x]) = [m, f(x)]`.
pub fn free_map<'a, F>(f: F, y_set: &'a NominalSetDesc) -> impl Fn(&FreeElem) -> Result<FreeElem> + 'a
where
    F: Fn(&NomValue) -> NomValue + 'a,
{
    move |e| free_elem(&e.substitution(), &f(e.base.representative()), y_set)
}

/// `p([m, (x, y)]) = ([m, x], [m, y])` for `e` over `X ⊛ Y`.
pub fn monoidal_p(e: &FreeElem, x_set: &NominalSetDesc, y_set: &NominalSetDesc) -> Result<(FreeElem, FreeElem)> {
    let Some([x, y]) = e.base.representative().as_tuple() else {
        return Err(NominalError::MalformedFreeElem(e.to_string()));
    };
    let m = e.substitution();
    Ok((free_elem(&m, x, x_set)?, free_elem(&m, y, y_set)?))
}

/// Inverse of [`monoidal_p`]: renames the right base representative away
/// from the left one, pairs them, and concatenates the image tuples.
pub fn monoidal_p_inv(e1: &FreeElem, e2: &FreeElem, x_set: &NominalSetDesc, y_set: &NominalSetDesc) -> Result<FreeElem> {
    let x = e1.base.representative();
    let y = e2.base.representative();
    let x_support = x.support();
    let y_order = y.support_order();
    let targets = fresh(&x_support, y_order.len());
    let renaming: BTreeMap<Atom, Atom> = y_order.iter().copied().zip(targets.iter().copied()).collect();
    let g = Perm::extend_injection(&renaming)?;
    let y_fresh = y.permute(&g);
    // m sends supp(x) like e1 and g·supp(y) like e2 after undoing g.
    let pairs = x
        .support_order()
        .into_iter()
        .zip(e1.images.iter().copied())
        .chain(targets.iter().copied().zip(e2.images.iter().copied()));
    let m = Subst::from_pairs(pairs);
    let sep = NominalSetDesc::sep_product(x_set.clone(), y_set.clone());
    free_elem(&m, &NomValue::pair(x.clone(), y_fresh), &sep)
}

/// Orbits of `U(F(X))`: one per base orbit and equality pattern of images.
pub fn orbits_free(x_set: &NominalSetDesc) -> Vec<OrbitShape> {
    NominalSetDesc::free(x_set.clone()).orbits()
}

/// A random element of `F(X)`; images may collide.
pub fn sample_free(base: &FreeBase, sampler: &mut Sampler) -> Option<FreeElem> {
    let orbits = base.orbits();
    if orbits.is_empty() {
        return None;
    }
    let shape = orbits[sampler.index(orbits.len())].clone();
    let images = (0..shape.support_size()).map(|_| sampler.atom()).collect();
    Some(FreeElem { base: shape, images })
}

/// Preimage of `e` under the unit for a set of dimension at most one: with
/// support `{a}` and `b = m(a)`, `[m, x] = [id, (a b)·x]`.
fn unit_preimage(e: &FreeElem) -> NomValue {
    let rep = e.base.representative();
    match e.images.first() {
        None => rep.clone(),
        Some(b) => rep.permute(&Perm::swap(Atom(0), *b)),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OneDimReport {
    pub set: String,
    pub dimension: Dimension,
    pub checks: Vec<CheckReport>,
}

impl OneDimReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }
}

/// Verifies that unit (and, for renaming sets, counit) are bijections for a
/// set of dimension at most one, on every orbit and on sampled elements, and
/// that every `m·y` is some `g·y`.
pub fn one_dim_isos(x_set: &NominalSetDesc, samples: usize, seed: u64) -> Result<OneDimReport> {
    let dim = dimension(x_set);
    let orbits = x_set.orbits();
    if dim.dimension > 1 {
        let witness = orbits.iter().find(|s| s.support_size() > 1).expect("orbit of maximal dimension");
        return Err(NominalError::DimensionTooLarge {
            set: x_set.to_string(),
            dimension: dim.dimension,
            witness: witness.to_string(),
        });
    }
    let base = FreeBase::new(x_set.clone());
    let free_orbits = orbits_free(x_set);
    let mut sampler = Sampler::new(seed);
    let mut checks = Vec::new();

    let mut on_orbits = CheckReport::new("unit is a bijection on orbits");
    on_orbits.record(orbits.len() == free_orbits.len(), || {
        format!("{} orbits in X but {} in UF(X)", orbits.len(), free_orbits.len())
    });
    for shape in &orbits {
        let rep = shape.representative();
        on_orbits.record_result(unit(rep, x_set).map(|e| unit_preimage(&e) == *rep), || format!("orbit {}", shape));
    }
    for free_shape in &free_orbits {
        let e = FreeElem::from_value(free_shape.representative(), &base)?;
        let x = unit_preimage(&e);
        on_orbits.record_result(unit(&x, x_set).map(|u| u == e), || format!("no preimage for {}", e));
    }
    checks.push(on_orbits);

    let mut sampled = CheckReport::new("unit is a bijection on samples");
    for _ in 0..samples {
        let (Some(x), Some(y)) = (sampler.member(x_set), sampler.member(x_set)) else { break };
        let injective = unit(&x, x_set).and_then(|ux| Ok((ux == unit(&y, x_set)?) == (x == y)));
        sampled.record_result(injective, || format!("unit({}) vs unit({})", x, y));
        let e = sample_free(&base, &mut sampler).expect("nonempty set");
        let x = unit_preimage(&e);
        sampled.record_result(unit(&x, x_set).map(|u| u == e), || format!("no preimage for {}", e));
    }
    checks.push(sampled);

    if x_set.has_sb_action() {
        let mut counit_check = CheckReport::new("counit is a bijection");
        let mut seen: BTreeMap<NomValue, FreeElem> = BTreeMap::new();
        let mut free_samples: Vec<FreeElem> = free_orbits
            .iter()
            .map(|s| FreeElem::from_value(s.representative(), &base))
            .collect::<Result<_>>()?;
        free_samples.extend((0..samples).filter_map(|_| sample_free(&base, &mut sampler)));
        for e in free_samples {
            match counit(&e, x_set) {
                Ok(y) => {
                    let clash = seen.get(&y).filter(|other| **other != e).cloned();
                    counit_check.record(clash.is_none(), || {
                        format!("counit({}) = counit({}) = {}", e, clash.clone().unwrap(), y)
                    });
                    seen.entry(y).or_insert(e);
                }
                Err(err) => counit_check.record(false, || format!("counit({}): {}", e, err)),
            }
        }
        for _ in 0..samples {
            let Some(y) = sampler.member(x_set) else { break };
            let round = unit(&y, x_set).and_then(|u| counit(&u, x_set)).map(|back| back == y);
            counit_check.record_result(round, || format!("counit(unit({})) != {}", y, y));
        }
        checks.push(counit_check);

        let mut orbit_closure = CheckReport::new("every m·y is some g·y");
        for _ in 0..samples {
            let Some(y) = sampler.member(x_set) else { break };
            let m = sampler.subst();
            let g = match y.support().into_iter().next() {
                None => Perm::identity(),
                Some(a) => Perm::swap(a, m.apply(a)),
            };
            let my = act(&m, &y, x_set)?;
            let gy = y.permute(&g);
            orbit_closure.record(my == gy, || format!("m = {}, y = {}: m·y = {} but g·y = {}", m, y, my, gy));
        }
        checks.push(orbit_closure);
    }

    Ok(OneDimReport { set: x_set.to_string(), dimension: dim, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> NominalSetDesc {
        NominalSetDesc::Atoms
    }

    fn sep2() -> NominalSetDesc {
        NominalSetDesc::sep_product(a(), a())
    }

    fn s(pairs: &[(u32, u32)]) -> Subst {
        Subst::from_pairs(pairs.iter().map(|&(x, y)| (Atom(x), Atom(y))))
    }

    fn distinct_pair() -> OrbitShape {
        orbit_shape(&NomValue::atoms([0, 1]), &sep2()).unwrap()
    }

    fn elem(shape: &OrbitShape, images: &[u32]) -> FreeElem {
        FreeElem::new(shape.clone(), images.iter().copied().map(Atom).collect()).unwrap()
    }

    #[test]
    fn free_elem_examples() {
        let pair = NomValue::atoms([0, 1]);
        assert_eq!(free_elem(&Subst::identity(), &pair, &sep2()).unwrap(), elem(&distinct_pair(), &[0, 1]));
        assert_eq!(free_elem(&s(&[(1, 0)]), &pair, &sep2()).unwrap(), elem(&distinct_pair(), &[0, 0]));
        let swapped = Perm::swap(Atom(0), Atom(5)).into_subst();
        assert_eq!(
            free_elem(&swapped, &pair, &sep2()).unwrap(),
            free_elem(&Subst::identity(), &NomValue::atoms([5, 1]), &sep2()).unwrap()
        );
        assert_eq!(free_elem(&swapped, &pair, &sep2()).unwrap().images(), &[Atom(5), Atom(1)]);
    }

    #[test]
    fn sim_oracle_examples() {
        let pair = NomValue::atoms([0, 1]);
        let m = s(&[(0, 3)]);
        assert!(sim_oracle(&m, &pair, &m, &pair, &sep2()).unwrap());
        let flipped = NomValue::atoms([1, 0]);
        assert!(!sim_oracle(&Subst::identity(), &pair, &Subst::identity(), &flipped, &sep2()).unwrap());
    }

    #[test]
    fn act_free_examples() {
        let e = elem(&distinct_pair(), &[0, 1]);
        assert_eq!(act_free(&Subst::identity(), &e), e);
        assert_eq!(act_free(&s(&[(0, 3)]), &e), elem(&distinct_pair(), &[3, 1]));
        assert_eq!(act_free(&s(&[(1, 0)]), &e), elem(&distinct_pair(), &[0, 0]));
    }

    #[test]
    fn unit_examples() {
        let atom_shape = orbit_shape(&NomValue::atom(0u32), &a()).unwrap();
        assert_eq!(unit(&NomValue::atom(3u32), &a()).unwrap(), elem(&atom_shape, &[3]));
        let bot = NominalSetDesc::discrete(["⊥"]);
        let u = unit(&NomValue::label("⊥"), &bot).unwrap();
        assert!(u.images().is_empty());
        assert_eq!(unit(&NomValue::atoms([0, 1]), &sep2()).unwrap(), elem(&distinct_pair(), &[0, 1]));
    }

    #[test]
    fn counit_examples() {
        let a2 = NominalSetDesc::product(a(), a());
        let v = NomValue::atoms([4, 2]);
        assert_eq!(counit(&unit(&v, &a2).unwrap(), &a2).unwrap(), v);
        let atom_shape = orbit_shape(&NomValue::atom(0u32), &a()).unwrap();
        assert_eq!(counit(&elem(&atom_shape, &[7]), &a()).unwrap(), NomValue::atom(7u32));
        let pair_shape = orbit_shape(&NomValue::atoms([0, 1]), &a2).unwrap();
        assert_eq!(counit(&elem(&pair_shape, &[0, 0]), &a2).unwrap(), NomValue::atoms([0, 0]));
        assert!(matches!(
            counit(&elem(&distinct_pair(), &[0, 0]), &sep2()),
            Err(NominalError::NoSubstitutionAction { .. })
        ));
    }

    #[test]
    fn sharp_of_first_projection_collapses() {
        let first = |v: &NomValue| v.as_tuple().unwrap()[0].clone();
        let a = a();
        let f_sharp = sharp(first, &a);
        assert_eq!(f_sharp(&elem(&distinct_pair(), &[5, 5])).unwrap(), NomValue::atom(5u32));
    }

    #[test]
    fn sharp_of_identity_is_counit() {
        let a = a();
        let id_sharp = sharp(|v: &NomValue| v.clone(), &a);
        let atom_shape = orbit_shape(&NomValue::atom(0u32), &a).unwrap();
        for b in 0..5 {
            let e = elem(&atom_shape, &[b]);
            assert_eq!(id_sharp(&e).unwrap(), counit(&e, &a).unwrap());
        }
    }

    #[test]
    fn monoidal_examples() {
        let (e1, e2) = monoidal_p(&elem(&distinct_pair(), &[3, 3]), &a(), &a()).unwrap();
        let atom_shape = orbit_shape(&NomValue::atom(0u32), &a()).unwrap();
        assert_eq!(e1, elem(&atom_shape, &[3]));
        assert_eq!(e2, elem(&atom_shape, &[3]));

        let ua = unit(&NomValue::atom(4u32), &a()).unwrap();
        let joined = monoidal_p_inv(&ua, &ua, &a(), &a()).unwrap();
        assert_eq!(joined, elem(&distinct_pair(), &[4, 4]));
        assert_eq!(joined.base().representative(), &NomValue::atoms([0, 1]));

        let (x, y) = (NomValue::atom(1u32), NomValue::atom(2u32));
        let direct = unit(&NomValue::pair(x.clone(), y.clone()), &sep2()).unwrap();
        let (ux, uy) = (unit(&x, &a()).unwrap(), unit(&y, &a()).unwrap());
        assert_eq!(monoidal_p(&direct, &a(), &a()).unwrap(), (ux.clone(), uy.clone()));
        assert_eq!(monoidal_p_inv(&ux, &uy, &a(), &a()).unwrap(), direct);
    }

    #[test]
    fn free_orbit_counts() {
        assert_eq!(orbits_free(&a()).len(), 1);
        assert_eq!(orbits_free(&NominalSetDesc::product(a(), a())).len(), 3);
        assert_eq!(orbits_free(&NominalSetDesc::Unit).len(), 1);
        // F(A ⊛ A) ≅ F(A) × F(A) ≅ A × A: equal and distinct images.
        let product_of_free = NominalSetDesc::product(NominalSetDesc::free(a()), NominalSetDesc::free(a()));
        assert_eq!(orbits_free(&sep2()).len(), 2);
        assert_eq!(orbits_free(&sep2()).len(), product_of_free.orbits().len());
    }

    #[test]
    fn one_dim_examples() {
        assert!(one_dim_isos(&a(), 100, 1).unwrap().passed());
        let alphabet = NominalSetDesc::coproduct(NominalSetDesc::discrete(["s"]), a()).unwrap();
        assert!(one_dim_isos(&alphabet, 100, 2).unwrap().passed());
        match one_dim_isos(&NominalSetDesc::product(a(), a()), 10, 3) {
            Err(NominalError::DimensionTooLarge { dimension, witness, .. }) => {
                assert_eq!(dimension, 2);
                assert_eq!(witness, "(0,1)");
            }
            other => panic!("expected rejection, got {:?}", other.map(|r| r.passed())),
        }
    }

    #[test]
    fn json_wire_form() {
        let base = FreeBase::new(NominalSetDesc::product(a(), a()));
        let e = unit(&NomValue::atoms([3, 5]), base.desc()).unwrap();
        let json = e.to_json(&base).unwrap();
        let text = serde_json::to_string(&json).unwrap();
        assert_eq!(text, r#"{"base":1,"images":[3,5]}"#);
        assert_eq!(FreeElem::from_json(&json, &base).unwrap(), e);
        let v = e.to_value(&base).unwrap();
        assert!(NominalSetDesc::Free(base.clone()).contains(&v));
        assert_eq!(FreeElem::from_value(&v, &base).unwrap(), e);
    }
}
