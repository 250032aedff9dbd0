//! Result types shared by every planner in this crate.

use crate::grid::GridIndex;

/// Why a plan call came back without a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailureReason {
    /// Start cell out of bounds or occupied.
    InvalidStart,
    /// Goal cell out of bounds or occupied.
    InvalidGoal,
    /// No collision-free route exists between the endpoints.
    Unreachable,
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FailureReason::InvalidStart => write!(f, "invalid start"),
            FailureReason::InvalidGoal => write!(f, "invalid goal"),
            FailureReason::Unreachable => write!(f, "no path"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanOutcome {
    Success,
    Failure(FailureReason),
}

/// One `(alpha, beta)` snapshot taken right after the parameter update for an
/// expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSample {
    pub expansion: usize,
    pub alpha: f64,
    pub beta: f64,
}

/// Outcome of a planning call.
///
/// On success `path` runs from start to goal through valid neighbor moves and
/// `g_cost` is its geometric cost in cell units (1 per axis move, sqrt(2) per
/// diagonal). On failure `path` is `None` and `g_cost` is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub outcome: PlanOutcome,
    pub path: Option<Vec<GridIndex>>,
    /// Number of nodes whose successors were generated.
    pub expanded: usize,
    pub g_cost: f64,
    /// Adaptive-parameter trace, recorded only when requested and only by
    /// planners that adapt.
    pub param_trace: Option<Vec<ParamSample>>,
}

impl PlanResult {
    pub fn failure(reason: FailureReason) -> Self {
        PlanResult {
            outcome: PlanOutcome::Failure(reason),
            path: None,
            expanded: 0,
            g_cost: 0.0,
            param_trace: None,
        }
    }

    pub fn is_success(&self) -> bool {
        self.outcome == PlanOutcome::Success
    }
}

/// Exact step tally along a path: `axial + diagonal * sqrt(2)` cell units.
/// Tracking integer counts instead of accumulating floats makes path costs
/// identical across planners that find cost-equal paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct StepTally {
    pub axial: u32,
    pub diagonal: u32,
}

impl StepTally {
    pub fn step(self, diagonal: bool) -> StepTally {
        StepTally {
            axial: self.axial + u32::from(!diagonal),
            diagonal: self.diagonal + u32::from(diagonal),
        }
    }

    pub fn as_f64(self) -> f64 {
        self.axial as f64 + self.diagonal as f64 * std::f64::consts::SQRT_2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_accumulates_exactly() {
        let t = StepTally::default().step(false).step(true).step(true);
        assert_eq!(t, StepTally { axial: 1, diagonal: 2 });
        assert_eq!(t.as_f64(), 1.0 + 2.0 * std::f64::consts::SQRT_2);
    }

    #[test]
    fn failure_has_no_path() {
        let r = PlanResult::failure(FailureReason::Unreachable);
        assert!(!r.is_success());
        assert!(r.path.is_none());
        assert_eq!(r.g_cost, 0.0);
    }
}
