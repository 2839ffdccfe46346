//! Report builders behind the `sepnom` binary. Each command returns a JSON
//! value so that tests can inspect results without spawning a process.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use sepnom::automata::{MooreAutomaton, SearchOrder};
use sepnom::nominal::{dimension, OrbitShape};
use sepnom::registry::default_automata;
use sepnom::syntax::{parse_set, parse_word};
use sepnom::verify::{default_suites, run_suites, SuiteConfig};
use sepnom::NominalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Nominal,
    Separated,
    Extended,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nominal => "nominal",
            Mode::Separated => "separated",
            Mode::Extended => "extended",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Inclusive range of sizes, written `a..b` or as a single number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeRange(pub RangeInclusive<usize>);

impl FromStr for SizeRange {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad size '{}'", t.trim()));
        match s.split_once("..") {
            Some((lo, hi)) => {
                let (lo, hi) = (parse(lo)?, parse(hi.trim_start_matches('='))?);
                if lo > hi {
                    bail!("empty range {}", s);
                }
                Ok(SizeRange(lo..=hi))
            }
            None => {
                let n = parse(s)?;
                Ok(SizeRange(n..=n))
            }
        }
    }
}

fn build(name: &str, n: usize) -> Result<MooreAutomaton> {
    default_automata()
        .get(name)
        .map(|family| family.build(n))
        .ok_or_else(|| NominalError::Unknown { kind: "automaton", name: name.to_string() }.into())
}

/// `orbits <expr>`.
pub fn cmd_orbits(expr: &str) -> Result<Value> {
    let set = parse_set(expr)?;
    let orbits = set.orbits();
    let dim = dimension(&set);
    Ok(json!({
        "set": expr,
        "orbit_count": orbits.len(),
        "dimension": dim.dimension,
        "orbits": orbits.iter().map(OrbitShape::describe).collect::<Vec<_>>(),
    }))
}

/// `run <name> --n --word --mode`.
pub fn cmd_run(name: &str, n: usize, word: &str, mode: Mode) -> Result<Value> {
    let automaton = build(name, n)?;
    let w = parse_word(word)?;
    let output = match mode {
        Mode::Nominal => automaton.run(&w)?,
        Mode::Separated => automaton.restrict()?.run_separated(&w)?,
        Mode::Extended => automaton.restrict()?.extend_language(&w)?,
    };
    Ok(json!({
        "automaton": automaton.name(),
        "n": n,
        "mode": mode.to_string(),
        "word": w.to_string(),
        "output": output,
        "display": output.to_string(),
    }))
}

/// A reached orbit with empty support that every letter maps back to
/// itself. Letters placed on fresh atoms cover all cases since the state
/// has no atoms to collide with.
fn is_sink(a: &MooreAutomaton, shape: &OrbitShape) -> bool {
    let q = shape.representative();
    shape.support_size() == 0 && a.alphabet().orbits().iter().all(|l| a.step(q, l.representative()) == *q)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReachRow {
    pub n: usize,
    pub mode: String,
    pub orbit_count: usize,
    pub sink_free_count: usize,
}

fn reach(name: &str, n: usize, mode: Mode) -> Result<(ReachRow, Vec<OrbitShape>)> {
    let full = build(name, n)?;
    let automaton = match mode {
        Mode::Nominal => full,
        Mode::Separated => full.restrict()?,
        Mode::Extended => bail!("reach supports modes nominal and separated"),
    };
    let orbits = automaton.reachable_orbits_in(SearchOrder::BreadthFirst)?;
    let sinks = orbits.iter().filter(|s| is_sink(&automaton, s)).count();
    let row = ReachRow { n, mode: mode.to_string(), orbit_count: orbits.len(), sink_free_count: orbits.len() - sinks };
    Ok((row, orbits))
}

/// `reach <name> --n --mode`.
pub fn cmd_reach(name: &str, n: usize, mode: Mode) -> Result<Value> {
    let (row, orbits) = reach(name, n, mode)?;
    Ok(json!({
        "n": row.n,
        "mode": row.mode,
        "orbit_count": row.orbit_count,
        "sink_free_count": row.sink_free_count,
        "orbits": orbits.iter().map(OrbitShape::describe).collect::<Vec<_>>(),
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub n: usize,
    pub nominal: usize,
    pub separated: usize,
    pub separated_sink_free: usize,
}

pub fn table_rows(name: &str, range: &SizeRange) -> Result<Vec<TableRow>> {
    range
        .0
        .clone()
        .map(|n| {
            let (full, _) = reach(name, n, Mode::Nominal)?;
            let (sep, _) = reach(name, n, Mode::Separated)?;
            Ok(TableRow {
                n,
                nominal: full.orbit_count,
                separated: sep.orbit_count,
                separated_sink_free: sep.sink_free_count,
            })
        })
        .collect()
}

/// `table <name> --n a..b --format`; returns the rendered text.
pub fn cmd_table(name: &str, range: &SizeRange, format: Format) -> Result<String> {
    let rows = table_rows(name, range)?;
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({ "automaton": name, "rows": rows }))?),
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                writer.serialize(row)?;
            }
            Ok(String::from_utf8(writer.into_inner().map_err(|e| anyhow!("{}", e))?)?)
        }
    }
}

/// `verify <suite> --seed --samples`: the JSON report and whether every
/// check passed.
pub fn cmd_verify(suite: &str, seed: u64, samples: usize) -> Result<(bool, Value)> {
    let reports = run_suites(&default_suites(), suite, &SuiteConfig { seed, samples })?;
    let passed = reports.iter().all(|r| r.passed);
    Ok((passed, json!({ "seed": seed, "samples": samples, "passed": passed, "suites": reports })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_ranges() {
        assert_eq!("1..5".parse::<SizeRange>().unwrap(), SizeRange(1..=5));
        assert_eq!("1..=5".parse::<SizeRange>().unwrap(), SizeRange(1..=5));
        assert_eq!("3".parse::<SizeRange>().unwrap(), SizeRange(3..=3));
        assert!("5..1".parse::<SizeRange>().is_err());
        assert!("x".parse::<SizeRange>().is_err());
    }

    #[test]
    fn unknown_automaton() {
        let err = cmd_reach("lifo", 3, Mode::Nominal).unwrap_err();
        assert!(err.to_string().contains("unknown automaton"));
    }

    #[test]
    fn sink_free_count() {
        let v = cmd_reach("fifo", 3, Mode::Separated).unwrap();
        assert_eq!(v["orbit_count"], 5);
        assert_eq!(v["sink_free_count"], 4);
    }
}
