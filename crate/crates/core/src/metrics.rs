//! Path quality metrics and the OptiSafe index.
//!
//! Length, minimum clearance, and total turning angle are the per-path
//! measurements; OptiSafe condenses a path's joint optimality/safety standing
//! into one `[0, 1]` score by normalizing against the optimal-length and
//! maximum-clearance reference planners.

use crate::baselines::{astar_shortest, maximin_clearance_path};
use crate::error::{Error, Result};
use crate::grid::{DistanceField, GridIndex, OccupancyGrid};
use crate::planner::PlanResult;
use crate::util::{heading, wrap_angle};
use std::collections::HashMap;
use std::sync::RwLock;

/// Per-path measurements in world units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathMetrics {
    /// Geometric path length, meters.
    pub length_m: f64,
    /// Minimum clearance over path cells, meters.
    pub min_clearance_m: f64,
    /// Total absolute turning angle, degrees.
    pub turn_total_deg: f64,
    /// Planning wall time, milliseconds. Filled by the caller that timed the
    /// plan call; evaluation itself leaves it at 0.
    pub plan_time_ms: f64,
}

/// The OptiSafe decomposition: optimality index `O`, safety index `C`, the
/// balance term `1 - |O - C|`, the strength term `sqrt(O^2 + C^2) / sqrt(2)`,
/// and their product `osi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptiSafeResult {
    pub optimality: f64,
    pub safety: f64,
    pub balance: f64,
    pub strength: f64,
    pub osi: f64,
}

/// Sum of Euclidean center-to-center segment lengths, scaled to meters.
pub fn path_length(path: &[GridIndex], cell_size: f64) -> Result<f64> {
    if path.is_empty() {
        return Err(Error::InvalidParameter("path_length of an empty path".into()));
    }
    let cells: f64 = path.windows(2).map(|w| w[0].l2(w[1])).sum();
    Ok(cells * cell_size)
}

/// Minimum distance-field value over path cells, scaled to meters. A path
/// that touches an obstacle cell (clearance 0) violates the contract.
pub fn min_clearance(path: &[GridIndex], dfield: &DistanceField, cell_size: f64) -> Result<f64> {
    if path.is_empty() {
        return Err(Error::InvalidParameter("min_clearance of an empty path".into()));
    }
    let mut min = f64::INFINITY;
    for &n in path {
        if n.row >= dfield.height() || n.col >= dfield.width() {
            return Err(Error::ContractViolation(format!("path cell {n} out of bounds")));
        }
        let d = dfield.get(n);
        if d == 0.0 {
            return Err(Error::ContractViolation(format!("path touches obstacle cell {n}")));
        }
        min = min.min(d);
    }
    Ok(min * cell_size)
}

/// Total absolute heading change over interior vertices, in degrees.
/// Straight and near-empty paths report 0.
pub fn turning_angle(path: &[GridIndex]) -> f64 {
    let mut total = 0.0;
    for w in path.windows(3) {
        let h_in = heading(w[1].row as f64 - w[0].row as f64, w[1].col as f64 - w[0].col as f64);
        let h_out = heading(w[2].row as f64 - w[1].row as f64, w[2].col as f64 - w[1].col as f64);
        total += wrap_angle(h_out - h_in).abs();
    }
    total.to_degrees()
}

/// Combine a path's length and clearance with the reference values into the
/// OptiSafe decomposition.
///
/// Optimality deviation is the relative length overshoot clipped to `[0, 1]`
/// (taken as 1 when the optimal reference length is not positive); safety
/// deviation is the relative clearance shortfall, 0 when the path is at least
/// as clear as the reference and 1 when the reference clearance is not
/// positive.
pub fn optisafe(l_p: f64, l_opt: f64, d_p: f64, d_safe: f64) -> OptiSafeResult {
    let od = if l_opt > 0.0 {
        ((l_p - l_opt) / l_opt).clamp(0.0, 1.0)
    } else {
        1.0
    };
    let cd = if d_safe > 0.0 {
        if d_p >= d_safe { 0.0 } else { (d_safe - d_p) / d_safe }
    } else {
        1.0
    };
    let optimality = 1.0 - od;
    let safety = 1.0 - cd;
    let balance = 1.0 - (optimality - safety).abs();
    let strength = (optimality * optimality + safety * safety).sqrt() / std::f64::consts::SQRT_2;
    OptiSafeResult { optimality, safety, balance, strength, osi: balance * strength }
}

/// Reference lengths/clearances for one `(start, goal)` pair, in meters.
#[derive(Debug, Clone, Copy)]
struct ReferenceValues {
    l_opt_m: f64,
    d_safe_m: f64,
}

/// Evaluates planner outputs against the optimal-length and maximum-clearance
/// references on one grid, caching the reference values per `(start, goal)`.
/// Concurrent readers are fine; insertions are serialized by the lock.
#[derive(Debug)]
pub struct ScenarioEvaluator<'a> {
    grid: &'a OccupancyGrid,
    dfield: &'a DistanceField,
    cell_size: f64,
    cache: RwLock<HashMap<(GridIndex, GridIndex), ReferenceValues>>,
}

impl<'a> ScenarioEvaluator<'a> {
    pub fn new(grid: &'a OccupancyGrid, dfield: &'a DistanceField, cell_size: f64) -> Self {
        ScenarioEvaluator { grid, dfield, cell_size, cache: RwLock::new(HashMap::new()) }
    }

    fn references(&self, s: GridIndex, t: GridIndex) -> Result<ReferenceValues> {
        if let Some(v) = self.cache.read().expect("cache lock").get(&(s, t)) {
            return Ok(*v);
        }
        let optimal = astar_shortest(self.grid, s, t);
        let safest = maximin_clearance_path(self.grid, self.dfield, s, t);
        let (Some(opt_path), Some(safe_path)) = (optimal.path, safest.path) else {
            return Err(Error::Internal(format!(
                "reference planner failed on {s} -> {t} although an evaluated path exists"
            )));
        };
        let values = ReferenceValues {
            l_opt_m: path_length(&opt_path, self.cell_size)?,
            d_safe_m: min_clearance(&safe_path, self.dfield, self.cell_size)?,
        };
        self.cache.write().expect("cache lock").insert((s, t), values);
        Ok(values)
    }

    /// Metrics and OptiSafe score for a successful plan. `plan_time_ms` is
    /// left at 0 for the caller to fill in.
    pub fn evaluate(&self, result: &PlanResult) -> Result<(PathMetrics, OptiSafeResult)> {
        let path = result
            .path
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("evaluate called on a failed plan".into()))?;
        let s = path[0];
        let t = *path.last().expect("non-empty path");
        let refs = self.references(s, t)?;
        let length_m = path_length(path, self.cell_size)?;
        let min_clearance_m = min_clearance(path, self.dfield, self.cell_size)?;
        let metrics = PathMetrics {
            length_m,
            min_clearance_m,
            turn_total_deg: turning_angle(path),
            plan_time_ms: 0.0,
        };
        let score = optisafe(length_m, refs.l_opt_m, min_clearance_m, refs.d_safe_m);
        Ok((metrics, score))
    }
}

/// One-shot evaluation without a reusable cache.
pub fn evaluate_planner(
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    result: &PlanResult,
    cell_size: f64,
) -> Result<(PathMetrics, OptiSafeResult)> {
    ScenarioEvaluator::new(grid, dfield, cell_size).evaluate(result)
}
