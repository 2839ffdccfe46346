//! Sets of dimension at most one: unit and counit are bijections, renamings
//! act like permutations, and the `Y + ∐_I 𝔸` decomposition is counted.

use crate::error::NominalError;
use crate::examples::{fifo_alphabet, fifo_outputs};
use crate::free::one_dim_isos;
use crate::nominal::{dimension, NominalSetDesc};
use crate::registry::Named;
use crate::report::CheckReport;
use crate::verify::{exact, exact_all, Suite, SuiteConfig};

pub struct OneDim;

impl Named for OneDim {
    fn name(&self) -> &'static str {
        "onedim"
    }

    fn description(&self) -> &'static str {
        "unit/counit bijections and decompositions for dimension ≤ 1"
    }
}

fn a() -> NominalSetDesc {
    NominalSetDesc::Atoms
}

fn sum(x: NominalSetDesc, y: NominalSetDesc) -> NominalSetDesc {
    NominalSetDesc::coproduct(x, y).expect("disjoint summands")
}

/// Descriptors with their expected `(|Y|, |I|)`.
pub fn decomposition_cases() -> Vec<(NominalSetDesc, (usize, usize))> {
    vec![
        (a(), (0, 1)),
        (sum(NominalSetDesc::discrete(["s"]), a()), (1, 1)),
        (fifo_alphabet(), (1, 1)),
        (
            sum(
                NominalSetDesc::discrete(["a", "b"]),
                sum(NominalSetDesc::tag("x", a()), NominalSetDesc::tag("y", a())),
            ),
            (2, 2),
        ),
        (NominalSetDesc::Unit, (1, 0)),
    ]
}

fn one_dim_sets() -> Vec<NominalSetDesc> {
    let mut sets: Vec<NominalSetDesc> = decomposition_cases().into_iter().map(|(x, _)| x).collect();
    sets.push(fifo_outputs());
    sets.push(NominalSetDesc::discrete(["p", "q"]));
    sets
}

impl Suite for OneDim {
    fn checks(&self, cfg: &SuiteConfig) -> Vec<CheckReport> {
        let mut out = Vec::new();
        for (i, x) in one_dim_sets().iter().enumerate() {
            match one_dim_isos(x, cfg.samples, cfg.seed_for(i as u64)) {
                Ok(report) => out.extend(report.checks.into_iter().map(|mut c| {
                    c.property = format!("{}: {}", x, c.property);
                    c
                })),
                Err(e) => out.push(exact(format!("{}: one-dimensional checks", x), false, || e.to_string())),
            }
        }
        out.push(decompositions());
        out.push(rejects_higher_dimension());
        out
    }
}

pub fn decompositions() -> CheckReport {
    let cases = decomposition_cases().into_iter().map(|(x, expected)| {
        let got = dimension(&x).decomposition;
        (got == Some(expected), format!("{}: got {:?}, expected {:?}", x, got, expected))
    });
    exact_all("decomposition counts (|Y|, |I|)", cases.collect::<Vec<_>>())
}

pub fn rejects_higher_dimension() -> CheckReport {
    let x = NominalSetDesc::power(a(), 2);
    let result = one_dim_isos(&x, 1, 0);
    let ok = matches!(&result, Err(NominalError::DimensionTooLarge { dimension: 2, witness, .. }) if witness == "(0,1)");
    exact("dimension 2 is rejected with a witness orbit", ok, || format!("{:?}", result.map(|r| r.set)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = OneDim.run(&SuiteConfig { seed: 2, samples: 50 });
        assert!(report.passed, "{:#?}", report);
    }
}
