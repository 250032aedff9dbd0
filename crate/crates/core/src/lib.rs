//! Safety-aware path planning on binary occupancy grids.
//!
//! The centerpiece is an adaptive best-first planner whose heuristic blends
//! Manhattan and Chebyshev distance with an inverse-distance obstacle
//! proximity field, and whose two weights retune themselves online from
//! search progress and turning behavior. Around it sit the supporting cast:
//! grid parsing and the exact Euclidean distance transform ([`grid`]), the
//! safety field ([`safety`]), optimal-length and maximum-clearance reference
//! planners ([`baselines`]), and path metrics together with the OptiSafe
//! trade-off index ([`metrics`]).
//!
//! All distances inside the planners are in cell units; the metrics layer
//! converts to world units using the grid's cell size.

pub mod baselines;
pub mod error;
pub mod grid;
pub mod metrics;
pub mod planner;
pub mod safety;
pub mod upp;
mod util;

pub use baselines::{astar_shortest, bfs_reachable, dijkstra_costs, maximin_clearance_path, CostField};
pub use error::{Error, Result};
pub use grid::{
    distance_transform, free_space_stats, neighbors, parse_map, parse_pgm, serialize_map,
    DistanceField, FreeSpaceStats, GridIndex, OccupancyGrid,
};
pub use metrics::{
    evaluate_planner, min_clearance, optisafe, path_length, turning_angle, OptiSafeResult,
    PathMetrics, ScenarioEvaluator,
};
pub use planner::{FailureReason, ParamSample, PlanOutcome, PlanResult};
pub use safety::{build_kernel, compute_safety_field, safety_upper_bound, SafetyField, SafetyKernel};
pub use upp::{heuristic, init_params, plan, update_params, AdaptiveState, UppConfig, UppParams, UppPlanner};
