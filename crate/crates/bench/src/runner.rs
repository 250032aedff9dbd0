//! Benchmark and ablation execution: run planner x scenario cells, time the
//! plan calls, score successes, and aggregate per planner.
//!
//! Map loading, the distance transform, and safety-field construction happen
//! once per map and are excluded from the timed region; only the plan call
//! itself is measured. Cells run sequentially, so per-cell timings are
//! unaffected by other cells beyond OS scheduling.

use crate::mapgen::{generate_map, MapSpec};
use crate::scenario::{sample_scenarios, Scenario};
use anyhow::{anyhow, bail, Context, Result};
use safegrid_core::{
    astar_shortest, distance_transform, maximin_clearance_path, DistanceField, OccupancyGrid,
    PlanResult, ScenarioEvaluator, UppConfig, UppPlanner,
};
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlannerKind {
    Upp,
    AStar,
    Maximin,
}

impl PlannerKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlannerKind::Upp => "upp",
            PlannerKind::AStar => "astar",
            PlannerKind::Maximin => "maximin",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "upp" => Ok(PlannerKind::Upp),
            "astar" | "a*" => Ok(PlannerKind::AStar),
            "maximin" | "safe" => Ok(PlannerKind::Maximin),
            other => bail!("unknown planner {other:?}, expected upp, astar, or maximin"),
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        s.split(',').map(Self::parse).collect()
    }
}

/// One scenario x planner cell. Metric columns are present only on success.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub scenario_id: String,
    pub planner: String,
    pub success: bool,
    pub time_ms: f64,
    pub length_m: Option<f64>,
    pub clearance_cm: Option<f64>,
    pub turn_deg: Option<f64>,
    pub optimality: Option<f64>,
    pub safety: Option<f64>,
    pub osi: Option<f64>,
    /// Node expansions; absent when the planner panicked.
    pub expanded: Option<usize>,
    /// Stored for the sidecar audit file, not for the main report.
    #[serde(skip)]
    pub path: Option<Vec<[usize; 2]>>,
}

/// Per-planner summary statistics over all rows of a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlannerAggregate {
    pub planner: String,
    pub rows: usize,
    pub successes: usize,
    pub success_rate_pct: f64,
    pub mean_time_ms: f64,
    pub median_time_ms: f64,
    pub mean_length_m: Option<f64>,
    pub median_length_m: Option<f64>,
    pub mean_clearance_cm: Option<f64>,
    pub median_clearance_cm: Option<f64>,
    pub min_clearance_cm: Option<f64>,
    pub mean_turn_deg: Option<f64>,
    pub median_turn_deg: Option<f64>,
    pub mean_osi: Option<f64>,
    pub median_osi: Option<f64>,
    pub median_expanded: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MapSummary {
    pub map_id: String,
    pub spec: MapSpec,
    pub obstacle_cells: usize,
    pub scenarios: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchMeta {
    pub seed: u64,
    pub trials: usize,
    pub planners: Vec<String>,
    pub maps: Vec<MapSummary>,
    /// Cells run sequentially; timings still depend on OS scheduling.
    pub timing_note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub meta: BenchMeta,
    pub rows: Vec<BenchRow>,
    pub aggregates: Vec<PlannerAggregate>,
}

pub struct BenchOptions {
    pub trials: usize,
    pub seed: u64,
    pub upp: UppConfig,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { trials: 20, seed: 1, upp: UppConfig::default() }
    }
}

fn scenario_seed(base: u64, map_index: usize) -> u64 {
    base.wrapping_add((map_index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Some(if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    })
}

fn mean(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        None
    } else {
        Some(values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Run every planner on every sampled scenario of every map.
pub fn run_benchmark(
    maps: &[MapSpec],
    planners: &[PlannerKind],
    opts: &BenchOptions,
) -> Result<BenchReport> {
    if planners.is_empty() {
        bail!("at least one planner must be selected");
    }
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for (mi, spec) in maps.iter().enumerate() {
        let map_id = spec.id(mi);
        let grid = generate_map(spec).with_context(|| format!("generating {map_id}"))?;
        let dfield = distance_transform(&grid);
        let scenarios = sample_scenarios(&grid, &map_id, opts.trials, scenario_seed(opts.seed, mi))?;
        summaries.push(MapSummary {
            map_id: map_id.clone(),
            spec: *spec,
            obstacle_cells: grid.obstacle_count(),
            scenarios: scenarios.len(),
        });
        let upp = planners
            .contains(&PlannerKind::Upp)
            .then(|| UppPlanner::new(&grid, opts.upp.clone()))
            .transpose()?;
        let evaluator = ScenarioEvaluator::new(&grid, &dfield, grid.cell_size());
        for (si, sc) in scenarios.iter().enumerate() {
            for &kind in planners {
                let row = run_cell(
                    format!("{map_id}-s{si:03}"),
                    kind,
                    &grid,
                    &dfield,
                    upp.as_ref(),
                    &evaluator,
                    sc,
                )?;
                rows.push(row);
            }
        }
    }
    let aggregates = aggregate(&rows, planners);
    Ok(BenchReport {
        meta: BenchMeta {
            seed: opts.seed,
            trials: opts.trials,
            planners: planners.iter().map(|p| p.name().to_owned()).collect(),
            maps: summaries,
            timing_note: "plan call only, sequential cells; wall-clock subject to OS scheduling"
                .to_owned(),
        },
        rows,
        aggregates,
    })
}

fn run_cell(
    scenario_id: String,
    kind: PlannerKind,
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    upp: Option<&UppPlanner>,
    evaluator: &ScenarioEvaluator,
    sc: &Scenario,
) -> Result<BenchRow> {
    let started = Instant::now();
    let outcome: Option<PlanResult> = catch_unwind(AssertUnwindSafe(|| match kind {
        PlannerKind::Upp => upp.expect("planner built").plan(sc.s, sc.t),
        PlannerKind::AStar => astar_shortest(grid, sc.s, sc.t),
        PlannerKind::Maximin => maximin_clearance_path(grid, dfield, sc.s, sc.t),
    }))
    .ok();
    let time_ms = started.elapsed().as_secs_f64() * 1e3;

    let mut row = BenchRow {
        scenario_id,
        planner: kind.name().to_owned(),
        success: false,
        time_ms,
        length_m: None,
        clearance_cm: None,
        turn_deg: None,
        optimality: None,
        safety: None,
        osi: None,
        expanded: None,
        path: None,
    };
    let Some(result) = outcome else {
        return Ok(row); // planner crash: row stays failed
    };
    row.expanded = Some(result.expanded);
    if result.is_success() {
        let (metrics, score) = evaluator
            .evaluate(&result)
            .map_err(|e| anyhow!("scoring {} on {}: {e}", kind.name(), row.scenario_id))?;
        row.success = true;
        row.length_m = Some(metrics.length_m);
        row.clearance_cm = Some(metrics.min_clearance_m * 100.0);
        row.turn_deg = Some(metrics.turn_total_deg);
        row.optimality = Some(score.optimality);
        row.safety = Some(score.safety);
        row.osi = Some(score.osi);
        row.path = result
            .path
            .map(|p| p.iter().map(|n| [n.row, n.col]).collect());
    }
    Ok(row)
}

fn aggregate(rows: &[BenchRow], planners: &[PlannerKind]) -> Vec<PlannerAggregate> {
    planners
        .iter()
        .map(|kind| {
            let name = kind.name();
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.planner == name).collect();
            let successes = mine.iter().filter(|r| r.success).count();
            let times: Vec<f64> = mine.iter().map(|r| r.time_ms).collect();
            let pick = |f: fn(&BenchRow) -> Option<f64>| -> Vec<f64> {
                mine.iter().filter_map(|r| f(r)).collect()
            };
            let lengths = pick(|r| r.length_m);
            let clearances = pick(|r| r.clearance_cm);
            let turns = pick(|r| r.turn_deg);
            let osis = pick(|r| r.osi);
            let expanded = pick(|r| r.expanded.map(|e| e as f64));
            PlannerAggregate {
                planner: name.to_owned(),
                rows: mine.len(),
                successes,
                success_rate_pct: if mine.is_empty() {
                    0.0
                } else {
                    successes as f64 / mine.len() as f64 * 100.0
                },
                mean_time_ms: mean(&times).unwrap_or(0.0),
                median_time_ms: median(&times).unwrap_or(0.0),
                mean_length_m: mean(&lengths),
                median_length_m: median(&lengths),
                mean_clearance_cm: mean(&clearances),
                median_clearance_cm: median(&clearances),
                min_clearance_cm: clearances.iter().cloned().reduce(f64::min),
                mean_turn_deg: mean(&turns),
                median_turn_deg: median(&turns),
                mean_osi: mean(&osis),
                median_osi: median(&osis),
                median_expanded: median(&expanded),
            }
        })
        .collect()
}

/// Which adaptation branches stay live during an ablation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AblationMode {
    BothFixed,
    AdaptiveAlpha,
    AdaptiveBeta,
    BothAdaptive,
}

impl AblationMode {
    pub const ALL: [AblationMode; 4] = [
        AblationMode::BothFixed,
        AblationMode::AdaptiveAlpha,
        AblationMode::AdaptiveBeta,
        AblationMode::BothAdaptive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AblationMode::BothFixed => "both-fixed",
            AblationMode::AdaptiveAlpha => "adaptive-alpha",
            AblationMode::AdaptiveBeta => "adaptive-beta",
            AblationMode::BothAdaptive => "both-adaptive",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "both-fixed" | "fixed" => Ok(AblationMode::BothFixed),
            "adaptive-alpha" | "alpha" => Ok(AblationMode::AdaptiveAlpha),
            "adaptive-beta" | "beta" => Ok(AblationMode::AdaptiveBeta),
            "both-adaptive" | "adaptive" => Ok(AblationMode::BothAdaptive),
            other => bail!(
                "unknown ablation mode {other:?}, expected both-fixed, adaptive-alpha, adaptive-beta, or both-adaptive"
            ),
        }
    }

    pub fn parse_list(s: &str) -> Result<Vec<Self>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        s.split(',').map(Self::parse).collect()
    }

    /// `(adaptive_alpha, adaptive_beta)` switches for the planner config.
    pub fn switches(&self) -> (bool, bool) {
        match self {
            AblationMode::BothFixed => (false, false),
            AblationMode::AdaptiveAlpha => (true, false),
            AblationMode::AdaptiveBeta => (false, true),
            AblationMode::BothAdaptive => (true, true),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationRow {
    pub mode: String,
    pub alpha0: f64,
    pub beta0: f64,
    pub scenario_id: String,
    pub success: bool,
    pub time_ms: f64,
    pub length_m: Option<f64>,
    pub clearance_cm: Option<f64>,
    pub turn_deg: Option<f64>,
    pub expanded: usize,
}

/// Medians for one (mode, init) section.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AblationSection {
    pub mode: String,
    pub alpha0: f64,
    pub beta0: f64,
    pub successes: usize,
    pub rows: usize,
    pub median_time_ms: Option<f64>,
    pub median_length_m: Option<f64>,
    pub median_clearance_cm: Option<f64>,
    pub median_turn_deg: Option<f64>,
    pub median_expanded: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AblationReport {
    pub map_id: String,
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<AblationRow>,
    pub sections: Vec<AblationSection>,
}

/// Run the adaptive planner over one map with selected adaptation branches
/// disabled and varied initial weights. Scenarios are sampled once and shared
/// by every (mode, init) section so sections are directly comparable.
pub fn run_ablation(
    map: &MapSpec,
    modes: &[AblationMode],
    inits: &[(f64, f64)],
    trials: usize,
    seed: u64,
    base: &UppConfig,
) -> Result<AblationReport> {
    if modes.is_empty() || inits.is_empty() {
        bail!("ablation needs at least one mode and one init pair");
    }
    let map_id = map.id(0);
    let grid = generate_map(map).with_context(|| format!("generating {map_id}"))?;
    let dfield = distance_transform(&grid);
    let scenarios = sample_scenarios(&grid, &map_id, trials, scenario_seed(seed, 0))?;

    let mut rows = Vec::new();
    let mut sections = Vec::new();
    for &mode in modes {
        for &(alpha0, beta0) in inits {
            let (adaptive_alpha, adaptive_beta) = mode.switches();
            let cfg = UppConfig {
                alpha_base: alpha0,
                beta_base: beta0,
                adaptive_alpha,
                adaptive_beta,
                ..base.clone()
            };
            cfg.validate().map_err(|e| anyhow!("init ({alpha0}, {beta0}): {e}"))?;
            let planner = UppPlanner::new(&grid, cfg)?;
            let section_rows = run_ablation_section(
                mode,
                alpha0,
                beta0,
                &planner,
                &grid,
                &dfield,
                &scenarios,
            )?;
            sections.push(summarize_section(mode, alpha0, beta0, &section_rows));
            rows.extend(section_rows);
        }
    }
    Ok(AblationReport { map_id, seed, trials, rows, sections })
}

fn run_ablation_section(
    mode: AblationMode,
    alpha0: f64,
    beta0: f64,
    planner: &UppPlanner,
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    scenarios: &[Scenario],
) -> Result<Vec<AblationRow>> {
    let mut rows = Vec::with_capacity(scenarios.len());
    for (si, sc) in scenarios.iter().enumerate() {
        let started = Instant::now();
        let result = planner.plan(sc.s, sc.t);
        let time_ms = started.elapsed().as_secs_f64() * 1e3;
        let mut row = AblationRow {
            mode: mode.name().to_owned(),
            alpha0,
            beta0,
            scenario_id: format!("{}-s{si:03}", sc.map_id),
            success: result.is_success(),
            time_ms,
            length_m: None,
            clearance_cm: None,
            turn_deg: None,
            expanded: result.expanded,
        };
        if let Some(path) = &result.path {
            let cell = grid.cell_size();
            row.length_m = Some(safegrid_core::path_length(path, cell)?);
            row.clearance_cm = Some(safegrid_core::min_clearance(path, dfield, cell)? * 100.0);
            row.turn_deg = Some(safegrid_core::turning_angle(path));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn summarize_section(
    mode: AblationMode,
    alpha0: f64,
    beta0: f64,
    rows: &[AblationRow],
) -> AblationSection {
    let pick = |f: fn(&AblationRow) -> Option<f64>| -> Vec<f64> {
        rows.iter().filter_map(f).collect()
    };
    AblationSection {
        mode: mode.name().to_owned(),
        alpha0,
        beta0,
        successes: rows.iter().filter(|r| r.success).count(),
        rows: rows.len(),
        median_time_ms: median(&rows.iter().map(|r| r.time_ms).collect::<Vec<_>>()),
        median_length_m: median(&pick(|r| r.length_m)),
        median_clearance_cm: median(&pick(|r| r.clearance_cm)),
        median_turn_deg: median(&pick(|r| r.turn_deg)),
        median_expanded: median(&rows.iter().map(|r| r.expanded as f64).collect::<Vec<_>>()),
    }
}
