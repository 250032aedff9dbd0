//! Seeded random map generation in two flavors: a few large rectangular
//! blocks (sparse) or many small scattered blobs (cluttered). Obstacles stay
//! out of a 2-cell border margin, and the realized obstacle count over the
//! interior hits the requested density exactly up to rounding.

use anyhow::{anyhow, bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use safegrid_core::{GridIndex, OccupancyGrid};
use serde::Serialize;

/// Border kept free of generated obstacles, in cells.
pub const FREE_MARGIN: usize = 2;

const MIN_SIDE: usize = 10;
const MAX_DENSITY: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapStyle {
    /// Few large rectangles.
    SparseBlocks,
    /// Many 1-3 cell blobs.
    ClutteredScatter,
}

impl MapStyle {
    pub fn name(&self) -> &'static str {
        match self {
            MapStyle::SparseBlocks => "sparse",
            MapStyle::ClutteredScatter => "cluttered",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sparse" | "sparse-blocks" => Ok(MapStyle::SparseBlocks),
            "cluttered" | "cluttered-scatter" => Ok(MapStyle::ClutteredScatter),
            other => bail!("unknown map style {other:?}, expected sparse or cluttered"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MapSpec {
    pub width: usize,
    pub height: usize,
    pub cell_size: f64,
    pub density: f64,
    pub style: MapStyle,
    pub seed: u64,
}

impl MapSpec {
    /// Parse the compact CLI form `style:WxH:density:seed`, for example
    /// `cluttered:128x128:0.30:42`.
    pub fn parse(text: &str, cell_size: f64) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [style, dims, density, seed] = parts[..] else {
            bail!("map spec {text:?} must be style:WxH:density:seed");
        };
        let (w, h) = dims
            .split_once('x')
            .ok_or_else(|| anyhow!("map dimensions {dims:?} must be WxH"))?;
        Ok(MapSpec {
            width: w.parse()?,
            height: h.parse()?,
            cell_size,
            density: density.parse()?,
            style: MapStyle::parse(style)?,
            seed: seed.parse()?,
        })
    }

    pub fn id(&self, index: usize) -> String {
        format!("m{index:02}-{}-{}x{}-d{:.2}-s{}", self.style.name(), self.width, self.height, self.density, self.seed)
    }
}

/// Generate the grid for a spec. Deterministic in the spec, including the
/// seed: equal specs give bit-identical grids.
pub fn generate_map(spec: &MapSpec) -> Result<OccupancyGrid> {
    if spec.width < MIN_SIDE || spec.height < MIN_SIDE {
        bail!("generated maps must be at least {MIN_SIDE}x{MIN_SIDE}, got {}x{}", spec.width, spec.height);
    }
    if !(0.0..MAX_DENSITY).contains(&spec.density) {
        bail!("density must lie in [0, {MAX_DENSITY}), got {}", spec.density);
    }
    let mut grid = OccupancyGrid::open(spec.width, spec.height, spec.cell_size)?;

    let rows = FREE_MARGIN..spec.height - FREE_MARGIN;
    let cols = FREE_MARGIN..spec.width - FREE_MARGIN;
    let interior = rows.len() * cols.len();
    let target = (spec.density * interior as f64).round() as usize;
    if target == 0 {
        return Ok(grid);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut placed = 0usize;
    match spec.style {
        MapStyle::ClutteredScatter => {
            // blobs agglomerate into solid patches so the lanes between the
            // clutter stay open instead of the whole map degrading into a
            // uniform 1-cell-gap maze; keep seeding patches until the budget
            // is spent, so a stalled patch never shorts the total
            let patch_count = (target / 150).max(3);
            let per_patch = (target / patch_count).max(1);
            let mut rounds = 0;
            while placed < target && rounds < patch_count * 20 {
                rounds += 1;
                let budget = per_patch.min(target - placed);
                placed += grow_patch(&mut grid, &mut rng, &rows, &cols, budget);
            }
        }
        MapStyle::SparseBlocks => {
            let mut attempts = 0usize;
            while placed < target && attempts < 40_000 {
                attempts += 1;
                let remaining = target - placed;
                let block = sample_rect(&mut rng, &rows, &cols, remaining);
                let fresh: Vec<GridIndex> =
                    block.into_iter().filter(|&n| grid.is_free(n)).collect();
                if fresh.is_empty() || fresh.len() > remaining {
                    continue;
                }
                for n in fresh.iter() {
                    grid.set(*n, true);
                }
                placed += fresh.len();
            }
        }
    }
    // deterministic top-up for the unlikely case the samplers fall short
    if placed < target {
        for row in rows.clone() {
            for col in cols.clone() {
                if placed == target {
                    break;
                }
                let n = GridIndex::new(row, col);
                if grid.is_free(n) {
                    grid.set(n, true);
                    placed += 1;
                }
            }
        }
    }
    debug_assert_eq!(placed, target);
    Ok(grid)
}

const BLOB_OFFSETS: [(i64, i64); 4] = [(0, 1), (1, 0), (0, -1), (-1, 0)];

/// Grow one solid clutter patch by attaching 1-3 cell blobs to its boundary
/// until `budget` cells are occupied (or growth gets stuck). Returns the
/// number of cells actually placed.
fn grow_patch(
    grid: &mut OccupancyGrid,
    rng: &mut ChaCha8Rng,
    rows: &std::ops::Range<usize>,
    cols: &std::ops::Range<usize>,
    budget: usize,
) -> usize {
    let in_interior = |r: i64, c: i64| {
        r >= rows.start as i64 && (r as usize) < rows.end && c >= cols.start as i64 && (c as usize) < cols.end
    };
    if budget == 0 {
        return 0;
    }
    let mut anchor = GridIndex::new(rng.gen_range(rows.clone()), rng.gen_range(cols.clone()));
    let mut anchor_tries = 0;
    while !grid.is_free(anchor) && anchor_tries < 64 {
        anchor_tries += 1;
        anchor = GridIndex::new(rng.gen_range(rows.clone()), rng.gen_range(cols.clone()));
    }
    if !grid.is_free(anchor) {
        return 0;
    }
    let mut patch = vec![anchor];
    grid.set(anchor, true);
    let mut placed = 1usize;
    let mut tries = 0usize;
    while placed < budget && tries < budget * 40 {
        tries += 1;
        // a blob seed adjacent to the current patch keeps it connected
        let base = patch[rng.gen_range(0..patch.len())];
        let (dr, dc) = BLOB_OFFSETS[rng.gen_range(0..4)];
        let (sr, sc) = (base.row as i64 + dr, base.col as i64 + dc);
        if !in_interior(sr, sc) {
            continue;
        }
        let seed = GridIndex::new(sr as usize, sc as usize);
        if grid.is_obstacle(seed) {
            continue;
        }
        let k = rng.gen_range(1..=3usize).min(budget - placed);
        let mut blob = vec![seed];
        let mut blob_tries = 0;
        while blob.len() < k && blob_tries < 8 {
            blob_tries += 1;
            let b = blob[rng.gen_range(0..blob.len())];
            let (dr, dc) = BLOB_OFFSETS[rng.gen_range(0..4)];
            let (r, c) = (b.row as i64 + dr, b.col as i64 + dc);
            if in_interior(r, c) {
                let n = GridIndex::new(r as usize, c as usize);
                if grid.is_free(n) && !blob.contains(&n) {
                    blob.push(n);
                }
            }
        }
        for &n in &blob {
            grid.set(n, true);
            patch.push(n);
            placed += 1;
        }
    }
    placed
}

/// One rectangle for the sparse style, clipped to the interior, with area
/// capped so the obstacle budget is never overshot.
fn sample_rect(
    rng: &mut ChaCha8Rng,
    rows: &std::ops::Range<usize>,
    cols: &std::ops::Range<usize>,
    remaining: usize,
) -> Vec<GridIndex> {
    if remaining < 16 {
        return vec![GridIndex::new(rng.gen_range(rows.clone()), rng.gen_range(cols.clone()))];
    }
    let cap = (remaining as f64).sqrt() as usize;
    let max_h = rows.len().min(cap).clamp(3, 10);
    let max_w = cols.len().min(cap).clamp(3, 10);
    let bh = rng.gen_range(3..=max_h);
    let bw = rng.gen_range(3..=max_w);
    let top = rng.gen_range(rows.start..=rows.end.saturating_sub(bh).max(rows.start));
    let left = rng.gen_range(cols.start..=cols.end.saturating_sub(bw).max(cols.start));
    let mut block = Vec::with_capacity(bh * bw);
    for r in top..(top + bh).min(rows.end) {
        for c in left..(left + bw).min(cols.end) {
            block.push(GridIndex::new(r, c));
        }
    }
    block
}
