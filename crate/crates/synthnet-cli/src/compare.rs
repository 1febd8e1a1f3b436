//! Side-by-side comparison artifacts: aligned per-distribution CSVs (one
//! column per topology, rows unioned over keys, ready for log-log plotting)
//! and a scalar summary with shape divergences against the real topology.

use anyhow::Result;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use synthnet::MetricReport;

fn column_label(report: &MetricReport) -> String {
    report.name.replace(',', "_")
}

fn write_aligned<F>(
    dir: &Path,
    file: &str,
    key_name: &str,
    reports: &[&MetricReport],
    select: F,
) -> Result<()>
where
    F: Fn(&MetricReport) -> &BTreeMap<u32, u64>,
{
    let mut keys: Vec<u32> = Vec::new();
    for r in reports {
        keys.extend(select(r).keys().copied());
    }
    keys.sort_unstable();
    keys.dedup();

    let mut out = std::io::BufWriter::new(std::fs::File::create(dir.join(file))?);
    write!(out, "{key_name}")?;
    for r in reports {
        write!(out, ",{}", column_label(r))?;
    }
    writeln!(out)?;
    for k in keys {
        write!(out, "{k}")?;
        for r in reports {
            write!(out, ",{}", select(r).get(&k).copied().unwrap_or(0))?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn write_cc_curves(dir: &Path, reports: &[&MetricReport]) -> Result<()> {
    let mut keys: Vec<u32> = Vec::new();
    for r in reports {
        keys.extend(r.cc_by_degree.keys().copied());
    }
    keys.sort_unstable();
    keys.dedup();

    let mut out = std::io::BufWriter::new(std::fs::File::create(dir.join("compare_cc_by_degree.csv"))?);
    write!(out, "degree")?;
    for r in reports {
        write!(out, ",{}", column_label(r))?;
    }
    writeln!(out)?;
    for k in keys {
        write!(out, "{k}")?;
        for r in reports {
            match r.cc_by_degree.get(&k) {
                Some(stats) => write!(out, ",{}", stats.mean)?,
                None => write!(out, ",")?,
            }
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

/// Total-variation distance between two histograms viewed as probability
/// distributions over the union of their keys. Zero for identical inputs,
/// one for disjoint supports.
fn tv_distance(a: &BTreeMap<u32, u64>, b: &BTreeMap<u32, u64>) -> f64 {
    let ta: u64 = a.values().sum();
    let tb: u64 = b.values().sum();
    match (ta, tb) {
        (0, 0) => return 0.0,
        (0, _) | (_, 0) => return 1.0,
        _ => {}
    }
    let mut keys: Vec<u32> = a.keys().chain(b.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let mut dist = 0.0f64;
    for k in keys {
        let pa = a.get(&k).copied().unwrap_or(0) as f64 / ta as f64;
        let pb = b.get(&k).copied().unwrap_or(0) as f64 / tb as f64;
        dist += (pa - pb).abs();
    }
    dist / 2.0
}

/// Mean absolute difference between per-degree mean clustering curves over
/// the union of degrees; a degree absent from one side counts as zero.
fn cc_curve_divergence(a: &MetricReport, b: &MetricReport) -> f64 {
    let mut keys: Vec<u32> = a
        .cc_by_degree
        .keys()
        .chain(b.cc_by_degree.keys())
        .copied()
        .collect();
    keys.sort_unstable();
    keys.dedup();
    if keys.is_empty() {
        return 0.0;
    }
    let total: f64 = keys
        .iter()
        .map(|k| {
            let ca = a.cc_by_degree.get(k).map_or(0.0, |s| s.mean);
            let cb = b.cc_by_degree.get(k).map_or(0.0, |s| s.mean);
            (ca - cb).abs()
        })
        .sum();
    total / keys.len() as f64
}

pub fn write_comparison(
    dir: &Path,
    real: &MetricReport,
    synths: &[MetricReport],
) -> Result<()> {
    let mut all: Vec<&MetricReport> = vec![real];
    all.extend(synths.iter());

    write_aligned(dir, "compare_degree_histogram.csv", "degree", &all, |r| {
        &r.degree_histogram
    })?;
    write_aligned(dir, "compare_hop_histogram.csv", "hops", &all, |r| {
        &r.hop_histogram
    })?;
    write_aligned(dir, "compare_kcore_nodes.csv", "k", &all, |r| &r.kcore_nodes)?;
    write_aligned(dir, "compare_kcore_edges.csv", "k", &all, |r| &r.kcore_edges)?;
    write_cc_curves(dir, &all)?;

    // Scalar summary, one row per topology: sizes, bridge counts, both
    // clustering coefficients, then shape divergences against the real row.
    let mut out = std::io::BufWriter::new(std::fs::File::create(dir.join("summary.csv"))?);
    writeln!(
        out,
        "name,nodes,edges,bridges,triangle_total,global_cc,avg_cc,\
         degree_divergence,hop_divergence,kcore_divergence,cc_curve_divergence"
    )?;
    for r in &all {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            column_label(r),
            r.nodes,
            r.edges,
            r.bridge_count,
            r.triangle_total,
            r.global_cc,
            r.avg_cc,
            tv_distance(&real.degree_histogram, &r.degree_histogram),
            tv_distance(&real.hop_histogram, &r.hop_histogram),
            tv_distance(&real.kcore_nodes, &r.kcore_nodes),
            cc_curve_divergence(real, r),
        )?;
    }
    out.flush()?;
    Ok(())
}
