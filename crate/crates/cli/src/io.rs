//! File formats used by the command-line tool.
//!
//! * graphs: edge-list text, one `u v` pair per line;
//! * scores: CSV `vertex,score`;
//! * partitions: CSV `vertex,set` with `set` either `core` or `periphery`;
//! * objective curves: CSV `cut,objective`.

use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

use coreperiph::{Graph, Method, ObjectiveCurve, Partition, ScoreVector};

pub fn read_graph(path: &Path, n: Option<usize>) -> Result<Graph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let parsed = Graph::from_edge_list(BufReader::new(file), n)
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(parsed.graph)
}

/// Opens `path` for writing, or standard output when `path` is `None`.
pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn reader(path: &Path) -> Result<csv::Reader<Box<dyn Read>>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(csv::Reader::from_reader(Box::new(file) as Box<dyn Read>))
}

/// Reads rows `(vertex, value)` and checks the vertices are exactly `0..n`.
fn read_indexed(path: &Path) -> Result<Vec<String>> {
    let mut rows: Vec<(usize, String)> = Vec::new();
    for (i, rec) in reader(path)?.records().enumerate() {
        let rec = rec.with_context(|| format!("{}: row {}", path.display(), i + 2))?;
        if rec.len() != 2 {
            bail!("{}: row {} has {} fields, expected 2", path.display(), i + 2, rec.len());
        }
        let v: usize = rec[0]
            .trim()
            .parse()
            .with_context(|| format!("{}: row {}: bad vertex `{}`", path.display(), i + 2, &rec[0]))?;
        rows.push((v, rec[1].trim().to_string()));
    }
    rows.sort_by_key(|r| r.0);
    for (i, (v, _)) in rows.iter().enumerate() {
        if *v != i {
            bail!("{}: vertices must be 0..n without gaps or repeats", path.display());
        }
    }
    Ok(rows.into_iter().map(|r| r.1).collect())
}

pub fn read_scores(path: &Path, method: Method) -> Result<ScoreVector> {
    let values = read_indexed(path)?
        .iter()
        .map(|s| s.parse::<f64>().with_context(|| format!("{}: bad score `{s}`", path.display())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ScoreVector::new(method, values))
}

pub fn write_scores<W: Write>(out: W, scores: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertex", "score"])?;
    for (v, s) in scores.iter().enumerate() {
        w.write_record([v.to_string(), s.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_partition(path: &Path) -> Result<Partition> {
    let mask = read_indexed(path)?
        .iter()
        .map(|s| match s.as_str() {
            "core" => Ok(true),
            "periphery" => Ok(false),
            other => bail!("{}: set must be `core` or `periphery`, got `{other}`", path.display()),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::from_mask(mask))
}

pub fn write_partition<W: Write>(out: W, part: &Partition) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["vertex", "set"])?;
    for v in 0..part.n() {
        let set = if part.is_core(v) { "core" } else { "periphery" };
        w.write_record([v.to_string(), set.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_curve<W: Write>(out: W, curve: &ObjectiveCurve) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cut", "objective"])?;
    for (c, v) in curve.cut_points.iter().zip(&curve.values) {
        w.write_record([c.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `statistic,value` rows.
pub fn write_stats<W: Write>(out: W, stats: &[(&str, String)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["statistic", "value"])?;
    for (k, v) in stats {
        w.write_record([*k, v.as_str()])?;
    }
    w.flush()?;
    Ok(())
}
