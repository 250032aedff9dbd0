//! Report serialization: fixed-order CSV, JSON, the path sidecar that makes
//! rows auditable, a PGM dump for field inspection, and the path-file format
//! consumed by `eval`.

use crate::runner::{AblationReport, BenchReport};
use anyhow::{bail, Context, Result};
use safegrid_core::{GridIndex, SafetyField};
use std::fmt::Write as _;
use std::path::Path;

fn opt(v: Option<f64>, precision: usize) -> String {
    v.map(|x| format!("{x:.precision$}")).unwrap_or_default()
}

/// Benchmark rows as CSV with the fixed column order
/// `scenario_id,planner,outcome,time_ms,length_m,clearance_cm,turn_deg,O,C,osi`.
pub fn bench_csv(report: &BenchReport) -> String {
    let mut out = String::from("scenario_id,planner,outcome,time_ms,length_m,clearance_cm,turn_deg,O,C,osi\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.3},{},{},{},{},{},{}",
            r.scenario_id,
            r.planner,
            if r.success { "success" } else { "failure" },
            r.time_ms,
            opt(r.length_m, 6),
            opt(r.clearance_cm, 4),
            opt(r.turn_deg, 3),
            opt(r.optimality, 6),
            opt(r.safety, 6),
            opt(r.osi, 6),
        );
    }
    out
}

/// Ablation rows as CSV: per-section metrics plus expanded-node counts.
pub fn ablation_csv(report: &AblationReport) -> String {
    let mut out = String::from(
        "mode,alpha0,beta0,scenario_id,outcome,time_ms,length_m,clearance_cm,turn_deg,expanded\n",
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{:.3},{},{},{},{}",
            r.mode,
            r.alpha0,
            r.beta0,
            r.scenario_id,
            if r.success { "success" } else { "failure" },
            r.time_ms,
            opt(r.length_m, 6),
            opt(r.clearance_cm, 4),
            opt(r.turn_deg, 3),
            r.expanded,
        );
    }
    out
}

/// Paths of all successful rows as JSON, so every reported metric can be
/// recomputed from the stored path and the map spec.
pub fn paths_sidecar(report: &BenchReport) -> String {
    let entries: Vec<serde_json::Value> = report
        .rows
        .iter()
        .filter_map(|r| {
            r.path.as_ref().map(|p| {
                serde_json::json!({
                    "scenario_id": r.scenario_id,
                    "planner": r.planner,
                    "path": p,
                })
            })
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("plain json")
}

pub fn write_bench_outputs(report: &BenchReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let write = |name: &str, data: String| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, data).with_context(|| format!("writing {}", path.display()))
    };
    write("report.csv", bench_csv(report))?;
    write("report.json", serde_json::to_string_pretty(report)?)?;
    write("paths.json", paths_sidecar(report))?;
    // the maps themselves, so stored paths can be re-audited without rerunning
    for summary in &report.meta.maps {
        let grid = crate::mapgen::generate_map(&summary.spec)?;
        write(&format!("{}.map", summary.map_id), safegrid_core::serialize_map(&grid))?;
    }
    Ok(())
}

pub fn write_ablation_outputs(report: &AblationReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv = dir.join("ablation.csv");
    std::fs::write(&csv, ablation_csv(report)).with_context(|| format!("writing {}", csv.display()))?;
    let json = dir.join("ablation.json");
    std::fs::write(&json, serde_json::to_string_pretty(report)?)
        .with_context(|| format!("writing {}", json.display()))?;
    Ok(())
}

/// Drop the `time_ms` column from a benchmark CSV, keeping everything else
/// byte for byte. Two runs with the same seed must agree on the result.
pub fn strip_time_column(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let fields: Vec<&str> = line.split(',').collect();
            let mut kept: Vec<&str> = Vec::with_capacity(fields.len());
            for (i, f) in fields.iter().enumerate() {
                if i != 3 {
                    kept.push(f);
                }
            }
            kept.join(",")
        })
        .collect::<Vec<String>>()
        .join("\n")
        + "\n"
}

/// Render a safety field as an ASCII PGM (P2): obstacles black and otherwise
/// brighter = safer, normalized against the field maximum.
pub fn field_to_pgm(field: &SafetyField) -> String {
    let (w, h) = (field.width(), field.height());
    let max = field.max_value();
    let mut out = format!("P2\n{w} {h}\n255\n");
    for row in 0..h {
        let mut line = String::new();
        for col in 0..w {
            let v = field.get(GridIndex::new(row, col));
            let pixel = if max > 0.0 {
                255 - (v / max * 255.0).round() as u32
            } else {
                255
            };
            if col > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{pixel}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Parse the path-file format used by `eval`: one `row,col` pair per line,
/// blank lines and `#` comments allowed.
pub fn parse_path_file(text: &str) -> Result<Vec<GridIndex>> {
    let mut path = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((r, c)) = line.split_once(',') else {
            bail!("line {}: expected `row,col`, got {raw:?}", lineno + 1);
        };
        let row = r.trim().parse().with_context(|| format!("line {}: bad row", lineno + 1))?;
        let col = c.trim().parse().with_context(|| format!("line {}: bad col", lineno + 1))?;
        path.push(GridIndex::new(row, col));
    }
    if path.is_empty() {
        bail!("path file contains no cells");
    }
    Ok(path)
}
