//! Inverse-distance obstacle proximity: a Chebyshev-ring kernel, the dense
//! safety field obtained by convolving it with the obstacle indicator, and the
//! worst-case shell-sum bound on any field value.
//!
//! The field is precomputed once per `(grid, r, epsilon)` so lookups during
//! search are constant time.

use crate::error::{Error, Result};
use crate::grid::{GridIndex, OccupancyGrid};

/// Weight table over offsets within Chebyshev radius `r`:
/// `1 / (||delta||_inf + epsilon)` on the rings `1..=r`, 0 at the center.
#[derive(Debug, Clone, PartialEq)]
pub struct SafetyKernel {
    radius: u32,
    epsilon: f64,
    /// (2r+1) x (2r+1), row-major, indexed by offset + r.
    weights: Vec<f64>,
}

impl SafetyKernel {
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Weight at offset `(dr, dc)`; both must be within `[-r, r]`.
    pub fn weight(&self, dr: i64, dc: i64) -> f64 {
        let r = self.radius as i64;
        debug_assert!(dr.abs() <= r && dc.abs() <= r);
        let side = 2 * r + 1;
        self.weights[((dr + r) * side + (dc + r)) as usize]
    }
}

/// Build the kernel for radius `r >= 1` and `epsilon > 0`.
pub fn build_kernel(r: u32, epsilon: f64) -> Result<SafetyKernel> {
    if r == 0 {
        return Err(Error::InvalidParameter("kernel radius must be >= 1".into()));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "kernel epsilon must be positive, got {epsilon}"
        )));
    }
    let side = (2 * r + 1) as usize;
    let mut weights = vec![0.0; side * side];
    let ri = r as i64;
    for dr in -ri..=ri {
        for dc in -ri..=ri {
            let ring = dr.abs().max(dc.abs());
            if ring >= 1 {
                weights[((dr + ri) * side as i64 + (dc + ri)) as usize] =
                    1.0 / (ring as f64 + epsilon);
            }
        }
    }
    Ok(SafetyKernel { radius: r, epsilon, weights })
}

/// Dense per-cell obstacle proximity score. Obstacle cells carry 0; free
/// cells carry the kernel-weighted count of obstacles within the radius.
#[derive(Debug, Clone, PartialEq)]
pub struct SafetyField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl SafetyField {
    pub fn get(&self, n: GridIndex) -> f64 {
        self.values[n.row * self.width + n.col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }
}

/// Convolve the obstacle indicator with the kernel. Offsets falling outside
/// the grid contribute nothing (zero padding), and obstacle cells are forced
/// to 0 afterward. Summation order is fixed (row-major over the kernel) so
/// results are reproducible bit for bit.
pub fn compute_safety_field(grid: &OccupancyGrid, kernel: &SafetyKernel) -> SafetyField {
    let (w, h) = (grid.width(), grid.height());
    let r = kernel.radius() as i64;
    let mut values = vec![0.0f64; w * h];
    for row in 0..h {
        for col in 0..w {
            let n = GridIndex::new(row, col);
            if grid.is_obstacle(n) {
                continue;
            }
            let mut sum = 0.0;
            for dr in -r..=r {
                let rr = row as i64 + dr;
                if rr < 0 || rr >= h as i64 {
                    continue;
                }
                for dc in -r..=r {
                    let cc = col as i64 + dc;
                    if cc < 0 || cc >= w as i64 {
                        continue;
                    }
                    if grid.is_obstacle(GridIndex::new(rr as usize, cc as usize)) {
                        sum += kernel.weight(dr, dc);
                    }
                }
            }
            values[row * w + col] = sum;
        }
    }
    SafetyField { width: w, height: h, values }
}

/// Worst-case field value in `dims` dimensions for radius `r`: every cell of
/// every Chebyshev shell `d = 1..=r` occupied, each contributing
/// `1/(d + epsilon)`. The shell at distance `d` holds
/// `(2d+1)^dims - (2d-1)^dims` cells. `r = 0` gives 0.
pub fn safety_upper_bound(dims: u32, r: u32, epsilon: f64) -> f64 {
    let mut total = 0.0;
    for d in 1..=r as i64 {
        let outer = (2 * d + 1).pow(dims);
        let inner = (2 * d - 1).pow(dims);
        total += (outer - inner) as f64 / (d as f64 + epsilon);
    }
    total
}
