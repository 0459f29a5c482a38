//! CSV and JSON writers.

use std::io::Write;

use anyhow::Result;
use serde::Serialize;
use ulam_core::cyclic::CyclicUlamSet;
use ulam_core::onedim::Sequence1D;
use ulam_core::{Bound, InitialConfig, SizeFunction, UlamSet};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Column names: `x,y,z` up to three dimensions, `x1,...,xd` beyond.
pub fn header(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

/// One point per row, in the set's order (level, then lexicographic).
pub fn write_set_csv<W: Write>(set: &UlamSet, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(header(set.dim()))?;
    for p in set.points() {
        wtr.write_record(p.coords().iter().map(u64::to_string))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_sequence_csv<W: Write>(seq: &Sequence1D, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["n", "a"])?;
    for (i, a) in seq.terms().iter().enumerate() {
        wtr.write_record([(i + 1).to_string(), a.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

/// Points sorted by `x`, then residue.
pub fn write_cyclic_csv<W: Write>(set: &CyclicUlamSet, w: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["x", "r"])?;
    for p in set.sorted_points() {
        wtr.write_record([p.x.to_string(), p.r.to_string()])?;
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct SetJson<'a> {
    version: &'static str,
    dim: usize,
    config: &'a InitialConfig,
    bound: &'a Bound,
    size: &'a SizeFunction,
    size_name: &'static str,
    count: usize,
    points: Vec<&'a [u64]>,
}

pub fn set_json(set: &UlamSet) -> serde_json::Value {
    serde_json::to_value(SetJson {
        version: VERSION,
        dim: set.dim(),
        config: set.config(),
        bound: set.bound(),
        size: set.sizefn(),
        size_name: set.sizefn().name(),
        count: set.len(),
        points: set.points().iter().map(|p| p.coords()).collect(),
    })
    .expect("set serializes")
}

pub fn sequence_json(seq: &Sequence1D) -> serde_json::Value {
    serde_json::json!({
        "version": VERSION,
        "dim": 1,
        "initials": seq.initials(),
        "count": seq.len(),
        "terms": seq.terms(),
    })
}

pub fn cyclic_json(set: &CyclicUlamSet, certificate: Option<bool>) -> serde_json::Value {
    let points: Vec<[u64; 2]> = set.sorted_points().iter().map(|p| [p.x, p.r]).collect();
    let initials: Vec<[u64; 2]> = set.initials().iter().map(|p| [p.x, p.r]).collect();
    serde_json::json!({
        "version": VERSION,
        "modulus": set.modulus(),
        "initials": initials,
        "x_bound": set.x_bound(),
        "count": set.len(),
        "x_max": set.x_max(),
        "finite_certificate": certificate,
        "missing_residues": set.missing_residues(),
        "points": points,
    })
}

/// Pretty JSON with a trailing newline.
pub fn print_json(v: &impl Serialize) -> Result<()> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}
