//! The free/forgetful adjunction between permutation and renaming sets:
//! transposition round trips, triangle identities, uniqueness of the
//! extension, and the equality oracle for free elements.

use crate::atoms::Subst;
use crate::error::Result;
use crate::examples::fifo_states;
use crate::free::{act_free, counit, flat, free_elem, free_map, sample_free, sharp, sim_oracle, unit, FreeElem};
use crate::nominal::set::FreeBase;
use crate::nominal::{act, NomValue, NominalSetDesc, Sampler};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::{Suite, SuiteConfig};

pub struct Adjunction;

impl Named for Adjunction {
    fn name(&self) -> &'static str {
        "adjunction"
    }

    fn description(&self) -> &'static str {
        "sharp/flat round trips, triangle identities, uniqueness, free-element equality oracle"
    }
}

/// Minimum sample count for the equality-oracle comparison.
pub const ORACLE_SAMPLES: usize = 1000;

const FIFO_N: usize = 3;

type Map = fn(&NomValue) -> NomValue;

/// An equivariant map `X → U(Y)` used as a test subject.
struct Case {
    label: &'static str,
    x: NominalSetDesc,
    y: NominalSetDesc,
    f: Map,
}

fn a() -> NominalSetDesc {
    NominalSetDesc::Atoms
}

fn component(v: &NomValue, i: usize) -> NomValue {
    v.as_tuple().map(|t| t[i].clone()).unwrap_or_else(|| v.clone())
}

fn queue(items: Vec<NomValue>) -> NomValue {
    NomValue::tuple(items)
}

fn cases() -> Vec<Case> {
    let a_sep2 = NominalSetDesc::sep_power(a(), 2);
    let a_prod2 = NominalSetDesc::power(a(), 2);
    let q = fifo_states(FIFO_N);
    vec![
        Case { label: "id", x: a(), y: a(), f: |v| v.clone() },
        Case { label: "a ↦ aa", x: a(), y: q.clone(), f: |v| queue(vec![v.clone(), v.clone()]) },
        Case { label: "second", x: a_sep2.clone(), y: a(), f: |v| component(v, 1) },
        Case { label: "(a,b) ↦ ba", x: a_sep2, y: q.clone(), f: |v| queue(vec![component(v, 1), component(v, 0)]) },
        Case { label: "first", x: a_prod2.clone(), y: a(), f: |v| component(v, 0) },
        Case {
            label: "(a,b) ↦ aba or ⊥",
            x: a_prod2,
            y: q,
            f: |v| {
                let (p, r) = (component(v, 0), component(v, 1));
                if p == r {
                    NomValue::label(crate::examples::BOTTOM)
                } else {
                    queue(vec![p.clone(), r, p])
                }
            },
        },
    ]
}

impl Suite for Adjunction {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let mut out = Vec::new();
        for (i, case) in cases().iter().enumerate() {
            out.push(transpose_round_trips(case, cfg.samples, cfg.seed_for(i as u64)));
            out.push(uniqueness(case, cfg.samples, cfg.seed_for(100 + i as u64)));
        }
        out.push(triangle_free(cfg.samples, cfg.seed_for(200)));
        out.push(triangle_forgetful(cfg.samples, cfg.seed_for(201)));
        out.push(equality_oracle(cfg.samples.max(ORACLE_SAMPLES), cfg.seed_for(202)));
        out
    }
}

/// `flat(sharp f) = f`, `sharp(flat h) = h` for `h = sharp f`, `sharp f` is
/// renaming-equivariant, and `sharp f [m, x] = m·f(x)` on arbitrary
/// representatives.
fn transpose_round_trips(case: &Case, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{} -> {} ({}): transposition round trips", case.x, case.y, case.label));
    let mut s = Sampler::new(seed);
    let base = FreeBase::new(case.x.clone());
    let h = sharp(case.f, &case.y);
    let back = flat(&h, &case.x);
    let again = sharp(|v: &NomValue| back(v).expect("flat of a total map"), &case.y);
    for _ in 0..samples {
        let v = s.member(&case.x).expect("nonempty");
        let (m, n) = (s.subst(), s.subst());
        let e = sample_free(&base, &mut s).expect("nonempty");
        let result = (|| -> Result<bool> {
            let flat_sharp = back(&v)? == (case.f)(&v);
            let sharp_flat = again(&e)? == h(&e)?;
            let equivariant = h(&act_free(&n, &e))? == act(&n, &h(&e)?, &case.y)?;
            let on_class = h(&free_elem(&m, &v, &case.x)?)? == act(&m, &(case.f)(&v), &case.y)?;
            Ok(flat_sharp && sharp_flat && equivariant && on_class)
        })();
        report.record_result(result, || format!("x = {}, m = {}, n = {}, e = {}", v, m, n, e));
    }
    report
}

/// Any renaming-equivariant `h` with `h ∘ η = f` equals `sharp f`. The
/// candidate here is built without `sharp`: `h = ε_Y ∘ F(f)`.
fn uniqueness(case: &Case, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new(format!("{} -> {} ({}): extension is unique", case.x, case.y, case.label));
    let mut s = Sampler::new(seed);
    let base = FreeBase::new(case.x.clone());
    let ff = free_map(case.f, &case.y);
    let candidate = |e: &FreeElem| counit(&ff(e)?, &case.y);
    let h = sharp(case.f, &case.y);
    for _ in 0..samples {
        let v = s.member(&case.x).expect("nonempty");
        let e = sample_free(&base, &mut s).expect("nonempty");
        let result = (|| -> Result<bool> {
            let factors = candidate(&unit(&v, &case.x)?)? == (case.f)(&v);
            Ok(factors && candidate(&e)? == h(&e)?)
        })();
        report.record_result(result, || format!("x = {}, e = {}", v, e));
    }
    report
}

/// `ε_{F X} ∘ F(η_X) = id`, with `F X` viewed as a renaming set through the
/// free descriptor.
fn triangle_free(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("triangle: counit of F(X) after F(unit) is the identity");
    let mut s = Sampler::new(seed);
    for x in [a(), NominalSetDesc::sep_power(a(), 2), NominalSetDesc::power(a(), 2)] {
        let fx = NominalSetDesc::free(x.clone());
        let NominalSetDesc::Free(base) = &fx else { unreachable!() };
        let eta = |v: &NomValue| unit(v, &x).and_then(|e| e.to_value(base)).expect("unit of a member");
        let f_eta = free_map(eta, &fx);
        for _ in 0..samples.div_ceil(3) {
            let e = sample_free(base, &mut s).expect("nonempty");
            let result = (|| -> Result<bool> {
                let lifted = f_eta(&e)?;
                let back = counit(&lifted, &fx)?;
                Ok(FreeElem::from_value(&back, base)? == e)
            })();
            report.record_result(result, || format!("X = {}, e = {}", x, e));
        }
    }
    report
}

/// `U(ε_Y) ∘ η_{U Y} = id`.
fn triangle_forgetful(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("triangle: counit after unit is the identity");
    let mut s = Sampler::new(seed);
    for y in [a(), fifo_states(FIFO_N), NominalSetDesc::power(a(), 2)] {
        for _ in 0..samples.div_ceil(3) {
            let v = s.member(&y).expect("nonempty");
            let result = unit(&v, &y).and_then(|e| counit(&e, &y)).map(|back| back == v);
            report.record_result(result, || format!("Y = {}, y = {}", y, v));
        }
    }
    report
}

/// Normal-form equality of `[m1, x1]` and `[m2, x2]` agrees with the direct
/// search for a relating permutation. Half of the pairs are related by
/// construction, a quarter are near misses.
pub fn equality_oracle(samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new("free-element normal forms agree with the equivalence oracle");
    let mut s = Sampler::new(seed);
    let sets = [
        a(),
        NominalSetDesc::power(a(), 2),
        NominalSetDesc::sep_power(a(), 2),
        NominalSetDesc::words_up_to(a(), 3),
        fifo_states(FIFO_N),
    ];
    let mut related = 0;
    for i in 0..samples {
        let x = &sets[i % sets.len()];
        let x1 = s.member(x).expect("nonempty");
        let m1 = s.subst();
        let (m2, x2) = match s.index(4) {
            0 | 1 => {
                let g = s.perm();
                let x2 = x1.permute(&g);
                let base = Subst::compose(&m1, g.inverse().as_subst());
                (s.subst_agreeing(&base, &x2.support()), x2)
            }
            2 => {
                let g = s.perm();
                (s.subst(), x1.permute(&g))
            }
            _ => (s.subst(), s.member(x).expect("nonempty")),
        };
        let result = (|| -> Result<bool> {
            let normal = free_elem(&m1, &x1, x)? == free_elem(&m2, &x2, x)?;
            let oracle = sim_oracle(&m1, &x1, &m2, &x2, x)?;
            if oracle {
                related += 1;
            }
            Ok(normal == oracle)
        })();
        report.record_result(result, || format!("X = {}: ({}, {}) vs ({}, {})", x, m1, x1, m2, x2));
    }
    // a comparison on unrelated pairs alone would be vacuous
    report.record(related * 4 >= samples, || format!("only {} of {} pairs were related", related, samples));
    report
}
