//! The adaptive safety-aware planner: geometry-aware initialization, the
//! hybrid distance + safety heuristic, online adaptation of the mixing and
//! safety weights, and the main best-first search.
//!
//! The heuristic for a node `n` with goal `t` is
//!
//! ```text
//! h(n) = alpha * l1(n, t) + (1 - alpha) * linf(n, t) + beta * S(n)
//! ```
//!
//! where `S` is the precomputed safety field. `beta` reacts to search
//! progress toward the goal (stalls and regressions decay it, progress grows
//! it) and `alpha` reacts to accumulated turning relative to a target angle.

use crate::error::{Error, Result};
use crate::grid::{neighbors, GridIndex, OccupancyGrid};
use crate::grid::{distance_transform, free_space_stats, FreeSpaceStats};
use crate::planner::{FailureReason, ParamSample, PlanOutcome, PlanResult, StepTally};
use crate::safety::{build_kernel, compute_safety_field, SafetyField};
use crate::util::{heading, wrap_angle};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// All tunables of the planner. `Default` gives a mid-range configuration
/// that needs no per-map tuning; any field can be overridden.
#[derive(Debug, Clone, PartialEq)]
pub struct UppConfig {
    /// Initial distance-mixing weight, within `[alpha_min, alpha_max]`.
    pub alpha_base: f64,
    /// Base safety weight before geometry scaling.
    pub beta_base: f64,
    /// Base safety radius multiplier before geometry scaling.
    pub r_base: f64,
    /// Regularizer for the inverse-distance kernel and the init formulas.
    pub epsilon: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub r_min: u32,
    pub r_max: u32,
    /// Multiplicative beta recovery on progress, > 1.
    pub gamma_rec: f64,
    /// Multiplicative beta decay on regression or sustained stall, in (0, 1).
    pub gamma_dec: f64,
    /// Stall patience: consecutive stalled expansions before beta decays.
    pub k_beta: u32,
    /// Progress dead-band in cells for the stall detector.
    pub tau_goal: f64,
    /// Multiplicative alpha recovery, > 1.
    pub eta_rec: f64,
    /// Multiplicative alpha decay, in (0, 1).
    pub eta_dec: f64,
    /// Turn-accumulation window length in expansions.
    pub k_alpha: u32,
    /// Hysteresis threshold on the accumulated turn deviation, radians.
    pub tau_ang: f64,
    /// Target turning angle per expansion, radians, in `[0, pi]`.
    pub theta_tar: f64,
    /// Disable to freeze alpha at its initial value.
    pub adaptive_alpha: bool,
    /// Disable to freeze beta at its initial value.
    pub adaptive_beta: bool,
}

impl Default for UppConfig {
    fn default() -> Self {
        UppConfig {
            alpha_base: 0.5,
            beta_base: 10.0,
            r_base: 1.0,
            epsilon: 0.01,
            alpha_min: 0.1,
            alpha_max: 0.9,
            beta_min: 1.0,
            beta_max: 50.0,
            r_min: 1,
            r_max: 10,
            gamma_rec: 1.05,
            gamma_dec: 0.90,
            k_beta: 10,
            tau_goal: 0.05,
            eta_rec: 1.05,
            eta_dec: 0.95,
            k_alpha: 8,
            tau_ang: 0.5,
            theta_tar: std::f64::consts::FRAC_PI_4,
            adaptive_alpha: true,
            adaptive_beta: true,
        }
    }
}

impl UppConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        let floats = [
            self.alpha_base, self.beta_base, self.r_base, self.epsilon, self.alpha_min,
            self.alpha_max, self.beta_min, self.beta_max, self.gamma_rec, self.gamma_dec,
            self.tau_goal, self.eta_rec, self.eta_dec, self.tau_ang, self.theta_tar,
        ];
        if floats.iter().any(|v| !v.is_finite()) {
            return bad("configuration contains a non-finite value".into());
        }
        if self.alpha_min <= 0.0 || self.alpha_min > self.alpha_max || self.alpha_max >= 1.0 {
            return bad(format!(
                "alpha bounds must satisfy 0 < min <= max < 1, got [{}, {}]",
                self.alpha_min, self.alpha_max
            ));
        }
        if self.alpha_base < self.alpha_min || self.alpha_base > self.alpha_max {
            return bad(format!(
                "alpha_base {} outside [{}, {}]",
                self.alpha_base, self.alpha_min, self.alpha_max
            ));
        }
        if self.beta_min <= 0.0 || self.beta_min > self.beta_max {
            return bad(format!(
                "beta bounds must satisfy 0 < min <= max, got [{}, {}]",
                self.beta_min, self.beta_max
            ));
        }
        if self.beta_base <= 0.0 {
            return bad(format!("beta_base must be positive, got {}", self.beta_base));
        }
        if self.r_base <= 0.0 {
            return bad(format!("r_base must be positive, got {}", self.r_base));
        }
        if self.r_min == 0 || self.r_min > self.r_max {
            return bad(format!(
                "radius bounds must satisfy 1 <= min <= max, got [{}, {}]",
                self.r_min, self.r_max
            ));
        }
        if self.epsilon <= 0.0 {
            return bad(format!("epsilon must be positive, got {}", self.epsilon));
        }
        if self.gamma_rec <= 1.0 || self.gamma_dec <= 0.0 || self.gamma_dec >= 1.0 {
            return bad(format!(
                "beta rates must satisfy gamma_rec > 1 and 0 < gamma_dec < 1, got {} / {}",
                self.gamma_rec, self.gamma_dec
            ));
        }
        if self.eta_rec <= 1.0 || self.eta_dec <= 0.0 || self.eta_dec >= 1.0 {
            return bad(format!(
                "alpha rates must satisfy eta_rec > 1 and 0 < eta_dec < 1, got {} / {}",
                self.eta_rec, self.eta_dec
            ));
        }
        if self.k_beta == 0 || self.k_alpha == 0 {
            return bad("patience windows k_beta and k_alpha must be >= 1".into());
        }
        if self.tau_goal <= 0.0 || self.tau_ang <= 0.0 {
            return bad("tolerances tau_goal and tau_ang must be positive".into());
        }
        if !(0.0..=std::f64::consts::PI).contains(&self.theta_tar) {
            return bad(format!("theta_tar must lie in [0, pi], got {}", self.theta_tar));
        }
        Ok(())
    }
}

/// The live heuristic weights. Always inside their configured intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UppParams {
    pub alpha: f64,
    pub beta: f64,
    pub r: u32,
}

/// Mutable adaptation state carried across expansions of one search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveState {
    /// Euclidean distance to goal at the previous expansion, cells.
    pub prev_dist: f64,
    /// Consecutive expansions inside the progress dead-band.
    pub stalled: u32,
    /// Accumulated turn deviation over the current window, radians.
    pub turn_sum: f64,
    /// Expansions accumulated into the current window.
    pub turn_iter: u32,
}

impl AdaptiveState {
    pub fn new(start_goal_dist: f64) -> Self {
        AdaptiveState { prev_dist: start_goal_dist, stalled: 0, turn_sum: 0.0, turn_iter: 0 }
    }
}

fn clip(x: f64, lo: f64, hi: f64) -> f64 {
    x.max(lo).min(hi)
}

/// Geometry-aware initialization: scale the safety weight by obstacle density
/// and free-space variability, scale the radius by typical free-space extent,
/// clip both, and precompute the safety field at the resulting radius.
pub fn init_params(
    grid: &OccupancyGrid,
    stats: &FreeSpaceStats,
    config: &UppConfig,
) -> (UppParams, SafetyField) {
    let beta = clip(
        config.beta_base * stats.rho * stats.sigma / (stats.mu + config.epsilon),
        config.beta_min,
        config.beta_max,
    );
    let r = (config.r_base * (stats.mu + stats.sigma)).round();
    let r = if r < config.r_min as f64 {
        config.r_min
    } else if r > config.r_max as f64 {
        config.r_max
    } else {
        r as u32
    };
    let params = UppParams { alpha: config.alpha_base, beta, r };
    let kernel = build_kernel(r, config.epsilon)
        .expect("validated config yields a valid kernel radius and epsilon");
    let field = compute_safety_field(grid, &kernel);
    (params, field)
}

/// The hybrid heuristic: mixed Manhattan/Chebyshev distance to the goal plus
/// the weighted safety penalty at `n`.
pub fn heuristic(n: GridIndex, t: GridIndex, params: &UppParams, field: &SafetyField) -> f64 {
    params.alpha * n.l1(t) + (1.0 - params.alpha) * n.linf(t) + params.beta * field.get(n)
}

/// One adaptation step, applied after popping `n` and before generating its
/// successors.
///
/// Beta follows signed progress of the expansion front: movement toward the
/// goal beyond `tau_goal` grows it, movement away decays it, and `k_beta`
/// consecutive in-band expansions decay it once and reset the stall counter.
/// Alpha accumulates the deviation of the turn angle (between the incoming
/// move direction and the goal direction) from `theta_tar`; when a window of
/// `k_alpha` expansions closes, a net positive deviation beyond `tau_ang`
/// grows alpha and a net negative one decays it.
pub fn update_params(
    n: GridIndex,
    t: GridIndex,
    parent_of_n: Option<GridIndex>,
    params: &mut UppParams,
    state: &mut AdaptiveState,
    config: &UppConfig,
) {
    let cur_dist = n.l2(t);
    if config.adaptive_beta {
        let delta = cur_dist - state.prev_dist;
        if delta < -config.tau_goal {
            state.stalled = 0;
            params.beta = (params.beta * config.gamma_rec).min(config.beta_max);
        } else if delta > config.tau_goal {
            state.stalled = 0;
            params.beta = (params.beta * config.gamma_dec).max(config.beta_min);
        } else {
            state.stalled += 1;
            if state.stalled >= config.k_beta {
                params.beta = (params.beta * config.gamma_dec).max(config.beta_min);
                state.stalled = 0;
            }
        }
    }
    state.prev_dist = cur_dist;

    if config.adaptive_alpha {
        let theta_turn = match parent_of_n {
            Some(p) => {
                let move_heading =
                    heading(n.row as f64 - p.row as f64, n.col as f64 - p.col as f64);
                let goal_heading =
                    heading(t.row as f64 - n.row as f64, t.col as f64 - n.col as f64);
                wrap_angle(goal_heading - move_heading).abs()
            }
            None => 0.0,
        };
        state.turn_sum += theta_turn - config.theta_tar;
        state.turn_iter += 1;
        if state.turn_iter >= config.k_alpha {
            if state.turn_sum > config.tau_ang {
                params.alpha = (params.alpha * config.eta_rec).min(config.alpha_max);
            } else if state.turn_sum < -config.tau_ang {
                params.alpha = (params.alpha * config.eta_dec).max(config.alpha_min);
            }
            state.turn_sum = 0.0;
            state.turn_iter = 0;
        }
    }
}

#[derive(Debug, PartialEq)]
struct OpenEntry {
    f: f64,
    h: f64,
    seq: u64,
    node: u32,
}

impl Eq for OpenEntry {}

impl PartialOrd for OpenEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OpenEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // ties in f broken by smaller h, then insertion order
        self.f
            .total_cmp(&other.f)
            .then(self.h.total_cmp(&other.h))
            .then(self.seq.cmp(&other.seq))
    }
}

/// A planner bound to one grid. Construction runs the distance transform,
/// derives the free-space statistics, and builds the safety field once, so
/// repeated `plan` calls on the same map pay only for the search itself.
/// Parameters re-initialize from the map statistics on every call.
#[derive(Debug, Clone)]
pub struct UppPlanner<'g> {
    grid: &'g OccupancyGrid,
    config: UppConfig,
    stats: FreeSpaceStats,
    init: UppParams,
    field: SafetyField,
}

impl<'g> UppPlanner<'g> {
    pub fn new(grid: &'g OccupancyGrid, config: UppConfig) -> Result<Self> {
        config.validate()?;
        let dfield = distance_transform(grid);
        let stats = free_space_stats(grid, &dfield);
        let (init, field) = init_params(grid, &stats, &config);
        Ok(UppPlanner { grid, config, stats, init, field })
    }

    pub fn initial_params(&self) -> UppParams {
        self.init
    }

    pub fn stats(&self) -> FreeSpaceStats {
        self.stats
    }

    pub fn safety_field(&self) -> &SafetyField {
        &self.field
    }

    pub fn config(&self) -> &UppConfig {
        &self.config
    }

    pub fn plan(&self, s: GridIndex, t: GridIndex) -> PlanResult {
        self.run(s, t, false)
    }

    /// Like [`plan`](Self::plan) but records the `(alpha, beta)` trajectory,
    /// one sample per expansion.
    pub fn plan_traced(&self, s: GridIndex, t: GridIndex) -> PlanResult {
        self.run(s, t, true)
    }

    fn run(&self, s: GridIndex, t: GridIndex, record_trace: bool) -> PlanResult {
        let grid = self.grid;
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
                param_trace: record_trace.then(Vec::new),
            };
        }

        let mut params = self.init;
        let mut state = AdaptiveState::new(s.l2(t));
        let n_cells = grid.len();
        let mut g_val = vec![f64::INFINITY; n_cells];
        let mut tally = vec![StepTally::default(); n_cells];
        let mut parent = vec![u32::MAX; n_cells];
        let mut closed = vec![false; n_cells];
        let mut trace = record_trace.then(Vec::new);
        let mut heap = BinaryHeap::new();
        let mut seq = 0u64;
        let mut expanded = 0usize;

        let si = grid.flat(s);
        g_val[si] = 0.0;
        let h0 = heuristic(s, t, &params, &self.field);
        heap.push(Reverse(OpenEntry { f: h0, h: h0, seq, node: si as u32 }));

        while let Some(Reverse(entry)) = heap.pop() {
            let ni = entry.node as usize;
            if closed[ni] {
                continue;
            }
            closed[ni] = true;
            let n = grid.unflat(ni);
            if n == t {
                let path = reconstruct(grid, &parent, ni);
                return PlanResult {
                    outcome: PlanOutcome::Success,
                    path: Some(path),
                    expanded,
                    g_cost: tally[ni].as_f64(),
                    param_trace: trace,
                };
            }

            let parent_of_n = (parent[ni] != u32::MAX).then(|| grid.unflat(parent[ni] as usize));
            update_params(n, t, parent_of_n, &mut params, &mut state, &self.config);
            if let Some(tr) = trace.as_mut() {
                tr.push(ParamSample { expansion: expanded, alpha: params.alpha, beta: params.beta });
            }
            expanded += 1;

            for (m, _) in neighbors(grid, n) {
                let mi = grid.flat(m);
                if closed[mi] {
                    continue;
                }
                let diagonal = m.row != n.row && m.col != n.col;
                let new_tally = tally[ni].step(diagonal);
                let g_new = new_tally.as_f64();
                if g_new < g_val[mi] {
                    g_val[mi] = g_new;
                    tally[mi] = new_tally;
                    parent[mi] = ni as u32;
                    let h = heuristic(m, t, &params, &self.field);
                    seq += 1;
                    heap.push(Reverse(OpenEntry { f: g_new + h, h, seq, node: mi as u32 }));
                }
            }
        }

        PlanResult {
            outcome: PlanOutcome::Failure(FailureReason::Unreachable),
            path: None,
            expanded,
            g_cost: 0.0,
            param_trace: trace,
        }
    }
}

fn reconstruct(grid: &OccupancyGrid, parent: &[u32], mut node: usize) -> Vec<GridIndex> {
    let mut path = vec![grid.unflat(node)];
    while parent[node] != u32::MAX {
        node = parent[node] as usize;
        path.push(grid.unflat(node));
    }
    path.reverse();
    path
}

/// One-shot convenience wrapper: initialize on `grid` and plan `s -> t`.
pub fn plan(
    grid: &OccupancyGrid,
    s: GridIndex,
    t: GridIndex,
    config: &UppConfig,
) -> Result<PlanResult> {
    Ok(UppPlanner::new(grid, config.clone())?.plan(s, t))
}
