//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sepnom::examples::{fifo_automaton, FifoConfig};
use sepnom::verify::adjunction::{equality_oracle, ORACLE_SAMPLES};
use sepnom::verify::extension::{extension_matches_run, EXTENSION_SAMPLES};
use sepnom::verify::runs::bell_sum_oracle;
use sepnom::verify::supports::TRANSFER_SAMPLES;
use sepnom::verify::{default_suites, run_suites, SuiteConfig, SuiteReport};
use sepnom_cli::{cmd_orbits, cmd_reach, table_rows, Mode, SizeRange};

const SEED: u64 = 7;
const SAMPLES: usize = 500;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let timing = format!("{:.2?} of {:?}", elapsed, limit);
    match outcome {
        Ok(d) if elapsed < limit => Ok(format!("{}; {}", d, timing)),
        Ok(d) => Err(format!("{}; too slow: {}", d, timing)),
        Err(d) => Err(format!("{}; {}", d, timing)),
    }
}

fn suite(name: &str) -> Result<SuiteReport, String> {
    let mut reports =
        run_suites(&default_suites(), name, &SuiteConfig { seed: SEED, samples: SAMPLES }).map_err(|e| e.to_string())?;
    Ok(reports.remove(0))
}

fn summarize(report: &SuiteReport, min_samples: usize, sampled: impl Fn(&str) -> bool) -> Outcome {
    let failing: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.property, c.counterexample.clone().unwrap_or_default()))
        .collect();
    let thin: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| sampled(&c.property) && c.samples < min_samples)
        .map(|c| c.property.as_str())
        .collect();
    let total: usize = report.checks.iter().map(|c| c.samples).sum();
    let detail = format!("{} checks, {} samples", report.checks.len(), total);
    if !failing.is_empty() {
        return Err(format!("{}; failing: {}", detail, failing.join(" | ")));
    }
    if thin.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; under {} samples: {}", detail, min_samples, thin.join(" | ")))
    }
}

fn count(v: &serde_json::Value) -> u64 {
    v["orbit_count"].as_u64().unwrap_or(u64::MAX)
}

fn criterion_1() -> Outcome {
    within(Duration::from_secs(5), || {
        let reach = cmd_reach("fifo", 3, Mode::Nominal).map_err(|e| e.to_string())?;
        let cube = cmd_orbits("prod(prod(A,A),A)").map_err(|e| e.to_string())?;
        ensure(
            count(&reach) == 10 && count(&cube) == 5,
            format!("FIFO(3) reachable orbits {}, A^3 orbits {}", count(&reach), count(&cube)),
        )
    })
}

fn criterion_2() -> Outcome {
    within(Duration::from_secs(60), || {
        let rows = table_rows("fifo", &SizeRange(1..=5)).map_err(|e| e.to_string())?;
        let mut lines = Vec::new();
        let mut ok = rows.len() == 5;
        for r in &rows {
            let oracle = bell_sum_oracle(r.n);
            ok &= r.nominal == oracle && r.separated == r.n + 2 && r.separated_sink_free == r.n + 1;
            lines.push(format!(
                "n={}: nominal {} (oracle {}), separated {} (sink-free {})",
                r.n, r.nominal, oracle, r.separated, r.separated_sink_free
            ));
        }
        ensure(ok, lines.join(", "))
    })
}

fn criterion_3() -> Outcome {
    let report = extension_matches_run(&fifo_automaton(FifoConfig { n: 3 }), EXTENSION_SAMPLES, SEED);
    ensure(
        report.passed() && report.samples >= 1000,
        format!("{} words, {} failures {}", report.samples, report.failures, report.counterexample.unwrap_or_default()),
    )
}

fn criterion_4() -> Outcome {
    let report = suite("adjunction")?;
    summarize(&report, SAMPLES, |_| true)
}

fn criterion_5() -> Outcome {
    let report = suite("monoidal")?;
    summarize(&report, SAMPLES, |p| p.starts_with("p and"))
}

fn criterion_6() -> Outcome {
    let report = suite("onedim")?;
    let decompositions = report.checks.iter().find(|c| c.property.starts_with("decomposition")).map(|c| c.samples);
    let base = summarize(&report, SAMPLES, |p| p.contains("on samples") || p.contains("m·y"))?;
    ensure(decompositions.unwrap_or(0) >= 3, format!("{}; {} decomposition cases", base, decompositions.unwrap_or(0)))
}

fn criterion_7() -> Outcome {
    let report = suite("supports")?;
    let transfer = report.checks.iter().find(|c| c.property.starts_with("supp(g·x)")).map(|c| c.samples).unwrap_or(0);
    let base = summarize(&report, SAMPLES, |p| p.contains("agree") || p.contains("nuclear"))?;
    ensure(transfer >= TRANSFER_SAMPLES, format!("{}; transfer samples {}", base, transfer))
}

fn criterion_8() -> Outcome {
    let report = equality_oracle(ORACLE_SAMPLES, SEED);
    ensure(
        report.passed() && report.samples >= 1000,
        format!("{} pairs, {} disagreements {}", report.samples, report.failures, report.counterexample.unwrap_or_default()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 FIFO(3) orbit counts", criterion_1),
        ("2 nominal vs separated reachability table", criterion_2),
        ("3 extended separated language equals language", criterion_3),
        ("4 adjunction suite", criterion_4),
        ("5 monoidal suite", criterion_5),
        ("6 one-dimensional suite", criterion_6),
        ("7 support suite", criterion_7),
        ("8 free-element equality oracle", criterion_8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  criterion {}: {}", name, detail),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {}: {}", name, detail);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
