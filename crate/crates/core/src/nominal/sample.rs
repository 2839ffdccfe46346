//! Seeded sampling of atoms, permutations, substitutions and set members.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atoms::{Atom, Perm, Subst};
use crate::nominal::orbit::OrbitShape;
use crate::nominal::set::NominalSetDesc;
use crate::nominal::value::NomValue;

/// Default size of the atom pool `0..pool` that samples draw from. Small
/// enough that random substitutions collide often.
pub const DEFAULT_POOL: u32 = 8;

pub struct Sampler {
    rng: ChaCha8Rng,
    pool: u32,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), pool: DEFAULT_POOL }
    }

    pub fn with_pool(seed: u64, pool: u32) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), pool: pool.max(1) }
    }

    pub fn pool(&self) -> u32 {
        self.pool
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn atom(&mut self) -> Atom {
        Atom(self.rng.gen_range(0..self.pool))
    }

    /// `count` distinct atoms from the pool (the pool grows if needed).
    pub fn distinct_atoms(&mut self, count: usize) -> Vec<Atom> {
        let size = self.pool.max(count as u32);
        let mut all: Vec<Atom> = (0..size).map(Atom).collect();
        all.shuffle(&mut self.rng);
        all.truncate(count);
        all
    }

    /// A uniformly random permutation of the pool.
    pub fn perm(&mut self) -> Perm {
        let mut targets: Vec<Atom> = (0..self.pool).map(Atom).collect();
        targets.shuffle(&mut self.rng);
        let pairs = (0..self.pool).map(Atom).zip(targets);
        Subst::from_pairs(pairs).to_perm().expect("shuffle is a bijection")
    }

    /// A random permutation of the pool fixing every atom of `fixed`.
    pub fn perm_fixing(&mut self, fixed: &BTreeSet<Atom>) -> Perm {
        let movable: Vec<Atom> = (0..self.pool).map(Atom).filter(|a| !fixed.contains(a)).collect();
        let mut targets = movable.clone();
        targets.shuffle(&mut self.rng);
        Subst::from_pairs(movable.into_iter().zip(targets)).to_perm().expect("shuffle is a bijection")
    }

    /// A random substitution on the pool; each atom is moved with probability
    /// one half, to a uniformly chosen pool atom.
    pub fn subst(&mut self) -> Subst {
        let mut pairs = Vec::new();
        for a in (0..self.pool).map(Atom) {
            if self.coin(0.5) {
                pairs.push((a, Atom(self.rng.gen_range(0..self.pool))));
            }
        }
        Subst::from_pairs(pairs)
    }

    /// A random substitution that agrees with `m` on `fixed`.
    pub fn subst_agreeing(&mut self, m: &Subst, fixed: &BTreeSet<Atom>) -> Subst {
        let other = self.subst();
        let pairs: Vec<(Atom, Atom)> = (0..self.pool)
            .map(Atom)
            .chain(m.domain())
            .chain(fixed.iter().copied())
            .map(|a| if fixed.contains(&a) { (a, m.apply(a)) } else { (a, other.apply(a)) })
            .collect();
        Subst::from_pairs(pairs)
    }

    /// A member of the given orbit, with its support drawn at random.
    pub fn member_of(&mut self, shape: &OrbitShape) -> NomValue {
        let k = shape.support_size();
        let atoms = self.distinct_atoms(k);
        shape.representative().map_atoms(&|a| atoms[a.0 as usize])
    }

    /// A member of `x`: a uniformly chosen orbit, then a random placement.
    pub fn member(&mut self, x: &NominalSetDesc) -> Option<NomValue> {
        let orbits = x.orbits();
        if orbits.is_empty() {
            return None;
        }
        let i = self.index(orbits.len());
        Some(self.member_of(&orbits[i]))
    }

    pub fn members(&mut self, x: &NominalSetDesc, count: usize) -> Vec<NomValue> {
        let orbits = x.orbits();
        if orbits.is_empty() {
            return Vec::new();
        }
        (0..count)
            .map(|_| {
                let i = self.index(orbits.len());
                self.member_of(&orbits[i])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_sampling_is_reproducible() {
        let x = NominalSetDesc::words_up_to(NominalSetDesc::Atoms, 3);
        let a = Sampler::new(7).members(&x, 20);
        let b = Sampler::new(7).members(&x, 20);
        assert_eq!(a, b);
        assert!(a.iter().all(|v| x.contains(v)));
    }

    #[test]
    fn perm_fixing_fixes() {
        let mut s = Sampler::new(1);
        let fixed: BTreeSet<Atom> = [Atom(1), Atom(4)].into();
        for _ in 0..50 {
            let g = s.perm_fixing(&fixed);
            assert!(fixed.iter().all(|a| g.apply(*a) == *a));
        }
    }

    #[test]
    fn agreeing_substitutions_agree() {
        let mut s = Sampler::new(3);
        let fixed: BTreeSet<Atom> = [Atom(0), Atom(2), Atom(11)].into();
        for _ in 0..50 {
            let m = s.subst();
            let n = s.subst_agreeing(&m, &fixed);
            assert!(m.agrees_on(&n, &fixed));
        }
    }
}
