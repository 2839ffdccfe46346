//! The free construction sends separated products to products: the
//! comparison map and its inverse, plus the orbit counts that follow.

use crate::error::Result;
use crate::examples::fifo_alphabet;
use crate::free::{monoidal_p, monoidal_p_inv, orbits_free, sample_free};
use crate::nominal::set::FreeBase;
use crate::nominal::{NominalSetDesc, Sampler};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::oracle::bell_by_enumeration;
use crate::verify::{exact, exact_all, Suite, SuiteConfig};

pub struct Monoidal;

impl Named for Monoidal {
    fn name(&self) -> &'static str {
        "monoidal"
    }

    fn description(&self) -> &'static str {
        "p and its inverse, Bell-number orbit counts, separated words"
    }
}

pub const MAX_BELL: usize = 5;
pub const MAX_SEP_WORDS: usize = 4;

fn a() -> NominalSetDesc {
    NominalSetDesc::Atoms
}

impl Suite for Monoidal {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        vec![
            p_inverse(cfg.samples, cfg.seed_for(0)),
            free_unit(),
            free_pair(),
            bell_counts(MAX_BELL),
            atom_power_iso(MAX_BELL),
            separated_words(MAX_SEP_WORDS),
        ]
    }
}

fn pairs() -> Vec<(NominalSetDesc, NominalSetDesc)> {
    vec![
        (a(), a()),
        (a(), NominalSetDesc::power(a(), 2)),
        (NominalSetDesc::sep_power(a(), 2), fifo_alphabet()),
        (NominalSetDesc::words_up_to(a(), 2), NominalSetDesc::Unit),
    ]
}

/// `p⁻¹ ∘ p = id` on sampled `F(X ⊛ Y)` and `p ∘ p⁻¹ = id` on sampled
/// `F X × F Y`.
pub fn p_inverse(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("p and p⁻¹ are mutually inverse");
    let mut s = Sampler::new(seed);
    let pairs = pairs();
    let bases: Vec<(FreeBase, FreeBase, FreeBase)> = pairs
        .iter()
        .map(|(x, y)| {
            (
                FreeBase::new(NominalSetDesc::sep_product(x.clone(), y.clone())),
                FreeBase::new(x.clone()),
                FreeBase::new(y.clone()),
            )
        })
        .collect();
    for i in 0..samples {
        let k = i % pairs.len();
        let (x, y) = &pairs[k];
        let (sep, fx, fy) = &bases[k];
        let e = sample_free(sep, &mut s).expect("nonempty");
        let e1 = sample_free(fx, &mut s).expect("nonempty");
        let e2 = sample_free(fy, &mut s).expect("nonempty");
        let result = (|| -> Result<bool> {
            let (l, r) = monoidal_p(&e, x, y)?;
            let left = monoidal_p_inv(&l, &r, x, y)? == e;
            let right = monoidal_p(&monoidal_p_inv(&e1, &e2, x, y)?, x, y)? == (e1.clone(), e2.clone());
            Ok(left && right)
        })();
        report.record_result(result, || format!("X = {}, Y = {}: e = {}, pair = ({}, {})", x, y, e, e1, e2));
    }
    report
}

pub fn free_unit() -> CheckReport {
    let n = orbits_free(&NominalSetDesc::Unit).len();
    exact("F(1) is a single point", n == 1, || format!("{} orbits", n))
}

/// `F(𝔸 × 𝔸)` has one orbit per equality pattern of two images under each
/// of the two base orbits: `1 + 2`.
pub fn free_pair() -> CheckReport {
    let n = orbits_free(&NominalSetDesc::power(a(), 2)).len();
    exact("F(A×A) has three orbits", n == 3, || format!("{} orbits", n))
}

/// `|orbits F(𝔸^(n))| = Bell(n)` with Bell numbers from brute force.
pub fn bell_counts(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| {
        let got = orbits_free(&NominalSetDesc::sep_power(a(), n)).len();
        let bell = bell_by_enumeration(n);
        (got == bell, format!("n = {}: {} orbits, Bell = {}", n, got, bell))
    });
    exact_all("orbits of F(A^(n)) are counted by Bell numbers", cases.collect::<Vec<_>>())
}

/// `F(𝔸^(n)) ≅ 𝔸^n`: the free set over separated tuples has as many orbits
/// as the plain `n`-fold power.
pub fn atom_power_iso(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| {
        let free = orbits_free(&NominalSetDesc::sep_power(a(), n)).len();
        let power = NominalSetDesc::power(a(), n).orbits().len();
        (free == power, format!("n = {}: F(A^(n)) {} orbits, A^n {} orbits", n, free, power))
    });
    exact_all("F(A^(n)) and A^n have equally many orbits", cases.collect::<Vec<_>>())
}

pub fn separated_words(max: usize) -> CheckReport {
    let cases = (0..=max).map(|n| {
        let free = orbits_free(&NominalSetDesc::sep_words_up_to(a(), n)).len();
        let words = NominalSetDesc::words_up_to(a(), n).orbits().len();
        (free == words, format!("n = {}: F(sepwords) {} orbits, words {} orbits", n, free, words))
    });
    exact_all("F of separated words has as many orbits as words", cases.collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = Monoidal.run(&SuiteConfig { seed: 5, samples: 60 });
        assert!(report.passed, "{:#?}", report);
    }
}
