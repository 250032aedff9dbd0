//! Reference planners and oracles: exact single-source costs, optimal-length
//! A* with the octile heuristic, the maximum-clearance (bottleneck maximin)
//! path, and plain reachability. These provide the normalization references
//! for the trade-off index and the ground truth for testing.

use crate::error::{Error, Result};
use crate::grid::{neighbors, DistanceField, GridIndex, OccupancyGrid, SQRT_2};
use crate::planner::{FailureReason, PlanOutcome, PlanResult, StepTally};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::collections::VecDeque;

/// Exact shortest-path cost from a fixed source to every cell, in cell units.
/// Unreachable cells carry `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostField {
    width: usize,
    values: Vec<f64>,
}

impl CostField {
    pub fn get(&self, n: GridIndex) -> f64 {
        self.values[n.row * self.width + n.col]
    }

    pub fn is_reachable(&self, n: GridIndex) -> bool {
        self.get(n).is_finite()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, PartialEq)]
struct QueueEntry {
    key: f64,
    seq: u64,
    node: u32,
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.total_cmp(&other.key).then(self.seq.cmp(&other.seq))
    }
}

/// Single-source shortest-path costs over the 8-connected grid (Dijkstra).
pub fn dijkstra_costs(grid: &OccupancyGrid, s: GridIndex) -> Result<CostField> {
    if !grid.in_bounds(s) || grid.is_obstacle(s) {
        return Err(Error::InvalidParameter(format!(
            "dijkstra source {s} must be a free in-bounds cell"
        )));
    }
    let n_cells = grid.len();
    let mut tally = vec![StepTally::default(); n_cells];
    let mut values = vec![f64::INFINITY; n_cells];
    let mut closed = vec![false; n_cells];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let si = grid.flat(s);
    values[si] = 0.0;
    heap.push(Reverse(QueueEntry { key: 0.0, seq, node: si as u32 }));
    while let Some(Reverse(entry)) = heap.pop() {
        let ni = entry.node as usize;
        if closed[ni] {
            continue;
        }
        closed[ni] = true;
        let n = grid.unflat(ni);
        for (m, _) in neighbors(grid, n) {
            let mi = grid.flat(m);
            if closed[mi] {
                continue;
            }
            let diagonal = m.row != n.row && m.col != n.col;
            let new_tally = tally[ni].step(diagonal);
            let g_new = new_tally.as_f64();
            if g_new < values[mi] {
                values[mi] = g_new;
                tally[mi] = new_tally;
                seq += 1;
                heap.push(Reverse(QueueEntry { key: g_new, seq, node: mi as u32 }));
            }
        }
    }
    Ok(CostField { width: grid.width(), values })
}

/// Exact distance on an empty 8-connected unit grid; admissible and
/// consistent here, so the search below returns optimal-length paths.
fn octile(n: GridIndex, t: GridIndex) -> f64 {
    let dr = n.row.abs_diff(t.row) as f64;
    let dc = n.col.abs_diff(t.col) as f64;
    dr.max(dc) + (SQRT_2 - 1.0) * dr.min(dc)
}

/// Shortest-path A*. The optimal-length reference planner.
pub fn astar_shortest(grid: &OccupancyGrid, s: GridIndex, t: GridIndex) -> PlanResult {
    astar_filtered(grid, s, t, |_| true)
}

/// A* over the subgraph of free cells passing `allowed`. Endpoints must pass
/// the filter themselves or the search fails.
fn astar_filtered(
    grid: &OccupancyGrid,
    s: GridIndex,
    t: GridIndex,
    allowed: impl Fn(GridIndex) -> bool,
) -> PlanResult {
    if !grid.in_bounds(s) || grid.is_obstacle(s) || !allowed(s) {
        return PlanResult::failure(FailureReason::InvalidStart);
    }
    if !grid.in_bounds(t) || grid.is_obstacle(t) || !allowed(t) {
        return PlanResult::failure(FailureReason::InvalidGoal);
    }
    if s == t {
        return PlanResult {
            outcome: PlanOutcome::Success,
            path: Some(vec![s]),
            expanded: 0,
            g_cost: 0.0,
            param_trace: None,
        };
    }

    let n_cells = grid.len();
    let mut g_val = vec![f64::INFINITY; n_cells];
    let mut tally = vec![StepTally::default(); n_cells];
    let mut parent = vec![u32::MAX; n_cells];
    let mut closed = vec![false; n_cells];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    let mut expanded = 0usize;

    let si = grid.flat(s);
    g_val[si] = 0.0;
    heap.push(Reverse(QueueEntry { key: octile(s, t), seq, node: si as u32 }));
    while let Some(Reverse(entry)) = heap.pop() {
        let ni = entry.node as usize;
        if closed[ni] {
            continue;
        }
        closed[ni] = true;
        let n = grid.unflat(ni);
        if n == t {
            let mut path = vec![n];
            let mut cur = ni;
            while parent[cur] != u32::MAX {
                cur = parent[cur] as usize;
                path.push(grid.unflat(cur));
            }
            path.reverse();
            return PlanResult {
                outcome: PlanOutcome::Success,
                path: Some(path),
                expanded,
                g_cost: tally[ni].as_f64(),
                param_trace: None,
            };
        }
        expanded += 1;
        for (m, _) in neighbors(grid, n) {
            let mi = grid.flat(m);
            if closed[mi] || !allowed(m) {
                continue;
            }
            let diagonal = m.row != n.row && m.col != n.col;
            let new_tally = tally[ni].step(diagonal);
            let g_new = new_tally.as_f64();
            if g_new < g_val[mi] {
                g_val[mi] = g_new;
                tally[mi] = new_tally;
                parent[mi] = ni as u32;
                seq += 1;
                heap.push(Reverse(QueueEntry { key: g_new + octile(m, t), seq, node: mi as u32 }));
            }
        }
    }
    PlanResult {
        outcome: PlanOutcome::Failure(FailureReason::Unreachable),
        path: None,
        expanded,
        g_cost: 0.0,
        param_trace: None,
    }
}

/// True iff `t` is reachable from `s` through free cells under the same move
/// rules the planners use.
pub fn bfs_reachable(grid: &OccupancyGrid, s: GridIndex, t: GridIndex) -> bool {
    if !grid.in_bounds(s) || grid.is_obstacle(s) || !grid.in_bounds(t) || grid.is_obstacle(t) {
        return false;
    }
    if s == t {
        return true;
    }
    let mut seen = vec![false; grid.len()];
    seen[grid.flat(s)] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(n) = queue.pop_front() {
        for (m, _) in neighbors(grid, n) {
            if m == t {
                return true;
            }
            let mi = grid.flat(m);
            if !seen[mi] {
                seen[mi] = true;
                queue.push_back(m);
            }
        }
    }
    false
}

/// BFS connectivity restricted to free cells whose clearance is at least
/// `threshold`.
fn reachable_at_clearance(
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    s: GridIndex,
    t: GridIndex,
    threshold: f64,
) -> bool {
    if dfield.get(s) < threshold || dfield.get(t) < threshold {
        return false;
    }
    if s == t {
        return true;
    }
    let mut seen = vec![false; grid.len()];
    seen[grid.flat(s)] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(n) = queue.pop_front() {
        for (m, _) in neighbors(grid, n) {
            if dfield.get(m) < threshold {
                continue;
            }
            if m == t {
                return true;
            }
            let mi = grid.flat(m);
            if !seen[mi] {
                seen[mi] = true;
                queue.push_back(m);
            }
        }
    }
    false
}

/// The maximum-clearance reference: among all `s -> t` paths, maximize the
/// minimum distance-field value over path cells; among those, return one of
/// minimal geometric length.
///
/// Implemented as a binary search over the sorted distinct clearance values
/// for the highest threshold that keeps `s` and `t` connected, followed by a
/// shortest-path search inside the surviving subgraph. Every path in that
/// subgraph has bottleneck exactly equal to the optimal threshold, so the
/// shortest one is also shortest among all maximin-optimal paths.
pub fn maximin_clearance_path(
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    s: GridIndex,
    t: GridIndex,
) -> PlanResult {
    if !grid.in_bounds(s) || grid.is_obstacle(s) {
        return PlanResult::failure(FailureReason::InvalidStart);
    }
    if !grid.in_bounds(t) || grid.is_obstacle(t) {
        return PlanResult::failure(FailureReason::InvalidGoal);
    }
    if s == t {
        return PlanResult {
            outcome: PlanOutcome::Success,
            path: Some(vec![s]),
            expanded: 0,
            g_cost: 0.0,
            param_trace: None,
        };
    }
    if !bfs_reachable(grid, s, t) {
        return PlanResult::failure(FailureReason::Unreachable);
    }

    // candidate thresholds: distinct clearance values of free cells, ascending
    let mut levels: Vec<f64> = grid
        .indices()
        .filter(|&n| grid.is_free(n))
        .map(|n| dfield.get(n))
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    // connectivity is monotone in the threshold, and the lowest level is
    // feasible because plain reachability holds
    let mut lo = 0usize;
    let mut hi = levels.len() - 1;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if reachable_at_clearance(grid, dfield, s, t, levels[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let threshold = levels[lo];

    astar_filtered(grid, s, t, |n| dfield.get(n) >= threshold)
}
