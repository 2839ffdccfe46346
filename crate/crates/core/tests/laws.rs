use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use sepnom::free::{act_free, free_elem, sim_oracle};
use sepnom::nominal::{act, orbit_shape};
use sepnom::{fresh, Atom, NomValue, NominalSetDesc, Perm, Subst};

fn subst() -> impl Strategy<Value = Subst> {
    prop::collection::vec((0u32..8, 0u32..8), 0..6)
        .prop_map(|pairs| Subst::from_pairs(pairs.into_iter().map(|(a, b)| (Atom(a), Atom(b))).collect::<BTreeMap<_, _>>()))
}

fn perm() -> impl Strategy<Value = Perm> {
    Just((0u32..8).map(Atom).collect::<Vec<_>>()).prop_shuffle().prop_map(|image| {
        Subst::from_pairs((0u32..8).map(Atom).zip(image)).to_perm().expect("bijection of 0..8")
    })
}

fn word() -> impl Strategy<Value = NomValue> {
    prop::collection::vec(0u32..8, 0..5).prop_map(NomValue::atoms)
}

fn words3() -> NominalSetDesc {
    NominalSetDesc::words_up_to(NominalSetDesc::Atoms, 4)
}

proptest! {
    #[test]
    fn composition_is_associative(m in subst(), n in subst(), p in subst()) {
        prop_assert_eq!(
            Subst::compose(&Subst::compose(&m, &n), &p),
            Subst::compose(&m, &Subst::compose(&n, &p))
        );
    }

    #[test]
    fn identity_is_neutral(m in subst()) {
        prop_assert_eq!(Subst::compose(&Subst::identity(), &m), m.clone());
        prop_assert_eq!(Subst::compose(&m, &Subst::identity()), m);
    }

    #[test]
    fn composition_applies_inner_first(m in subst(), n in subst(), a in 0u32..10) {
        prop_assert_eq!(Subst::compose(&m, &n).apply(Atom(a)), m.apply(n.apply(Atom(a))));
    }

    #[test]
    fn inverse_cancels(g in perm()) {
        prop_assert!(Perm::compose(&g, &g.inverse()).is_identity());
        prop_assert!(Perm::compose(&g.inverse(), &g).is_identity());
    }

    #[test]
    fn action_is_a_monoid_action(v in word(), m in subst(), n in subst()) {
        let x = words3();
        prop_assert_eq!(act(&Subst::identity(), &v, &x).unwrap(), v.clone());
        prop_assert_eq!(
            act(&Subst::compose(&m, &n), &v, &x).unwrap(),
            act(&m, &act(&n, &v, &x).unwrap(), &x).unwrap()
        );
    }

    #[test]
    fn support_moves_with_permutations(v in word(), g in perm()) {
        let moved: BTreeSet<Atom> = v.support().into_iter().map(|a| g.apply(a)).collect();
        prop_assert_eq!(v.permute(&g).support(), moved);
    }

    #[test]
    fn shapes_are_permutation_invariant(v in word(), g in perm()) {
        let x = words3();
        prop_assert_eq!(orbit_shape(&v, &x).unwrap(), orbit_shape(&v.permute(&g), &x).unwrap());
    }

    #[test]
    fn canonical_forms_are_idempotent(v in word()) {
        prop_assert_eq!(v.canonical().canonical(), v.canonical());
    }

    #[test]
    fn extension_respects_partial_map(pairs in prop::collection::btree_map(0u32..10, 0u32..10, 0..5)) {
        let partial: BTreeMap<Atom, Atom> = pairs.into_iter().map(|(a, b)| (Atom(a), Atom(b))).collect();
        let injective = partial.values().collect::<BTreeSet<_>>().len() == partial.len();
        match Perm::extend_injection(&partial) {
            Ok(g) => {
                prop_assert!(injective);
                for (a, b) in &partial {
                    prop_assert_eq!(g.apply(*a), *b);
                }
            }
            Err(_) => prop_assert!(!injective),
        }
    }

    #[test]
    fn fresh_atoms_are_fresh(avoid in prop::collection::btree_set(0u32..12, 0..8), k in 0usize..5) {
        let avoid: BTreeSet<Atom> = avoid.into_iter().map(Atom).collect();
        let out = fresh(&avoid, k);
        prop_assert_eq!(out.len(), k);
        prop_assert!(out.iter().all(|a| !avoid.contains(a)));
        prop_assert_eq!(out.iter().collect::<BTreeSet<_>>().len(), k);
    }

    #[test]
    fn free_classes_are_stable(v in word(), m in subst(), n in subst(), g in perm()) {
        let x = words3();
        // [m, x] = [m g⁻¹, g·x]
        let moved = v.permute(&g);
        let m_moved = Subst::compose(&m, g.inverse().as_subst());
        prop_assert_eq!(free_elem(&m, &v, &x).unwrap(), free_elem(&m_moved, &moved, &x).unwrap());
        prop_assert!(sim_oracle(&m, &v, &m_moved, &moved, &x).unwrap());
        prop_assert_eq!(
            act_free(&n, &free_elem(&m, &v, &x).unwrap()),
            free_elem(&Subst::compose(&n, &m), &v, &x).unwrap()
        );
    }
}
