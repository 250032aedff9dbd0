//! Occupancy-grid world model: map parsing, the Euclidean distance transform,
//! free-space statistics, and 8-connected neighbor generation.
//!
//! Grids are immutable once built and freely shareable across threads. All
//! distances in this module are in cell units; conversion to meters happens in
//! the metrics layer.

use crate::error::{Error, Result};

pub const SQRT_2: f64 = std::f64::consts::SQRT_2;

/// A cell position, row-major with `(0, 0)` at the top-left.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIndex {
    pub row: usize,
    pub col: usize,
}

impl GridIndex {
    pub fn new(row: usize, col: usize) -> Self {
        GridIndex { row, col }
    }

    /// Manhattan distance to `other`, in cells.
    pub fn l1(self, other: GridIndex) -> f64 {
        (self.row.abs_diff(other.row) + self.col.abs_diff(other.col)) as f64
    }

    /// Chebyshev distance to `other`, in cells.
    pub fn linf(self, other: GridIndex) -> f64 {
        self.row.abs_diff(other.row).max(self.col.abs_diff(other.col)) as f64
    }

    /// Euclidean distance to `other`, in cells.
    pub fn l2(self, other: GridIndex) -> f64 {
        let dr = self.row.abs_diff(other.row) as f64;
        let dc = self.col.abs_diff(other.col) as f64;
        (dr * dr + dc * dc).sqrt()
    }
}

impl std::fmt::Display for GridIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Binary occupancy lattice with a physical cell size in meters per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    cell_size: f64,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    /// Build a grid from dense row-major occupancy (`true` = obstacle).
    pub fn new(width: usize, height: usize, cell_size: f64, cells: Vec<bool>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidParameter(format!(
                "grid dimensions must be positive, got {width}x{height}"
            )));
        }
        if !cell_size.is_finite() || cell_size <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "cell_size must be positive, got {cell_size}"
            )));
        }
        if cells.len() != width * height {
            return Err(Error::InvalidParameter(format!(
                "expected {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(OccupancyGrid { width, height, cell_size, cells })
    }

    /// All-free grid.
    pub fn open(width: usize, height: usize, cell_size: f64) -> Result<Self> {
        Self::new(width, height, cell_size, vec![false; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn in_bounds(&self, n: GridIndex) -> bool {
        n.row < self.height && n.col < self.width
    }

    pub fn is_obstacle(&self, n: GridIndex) -> bool {
        self.cells[n.row * self.width + n.col]
    }

    pub fn is_free(&self, n: GridIndex) -> bool {
        !self.is_obstacle(n)
    }

    /// Mark one cell. Intended for map construction; grids are treated as
    /// immutable once planning starts.
    pub fn set(&mut self, n: GridIndex, occupied: bool) {
        let w = self.width;
        self.cells[n.row * w + n.col] = occupied;
    }

    pub fn obstacle_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Row-major iterator over all cell indices.
    pub fn indices(&self) -> impl Iterator<Item = GridIndex> + '_ {
        let w = self.width;
        (0..self.cells.len()).map(move |i| GridIndex::new(i / w, i % w))
    }

    pub(crate) fn flat(&self, n: GridIndex) -> usize {
        n.row * self.width + n.col
    }

    pub(crate) fn unflat(&self, i: usize) -> GridIndex {
        GridIndex::new(i / self.width, i % self.width)
    }
}

/// Parse the ASCII map format: a `cell <size>` header line followed by one
/// line per row, `.` free and `#` obstacle. Rows must be equal length.
pub fn parse_map(text: &str) -> Result<OccupancyGrid> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::format("empty document"))?;
    let cell_size = parse_cell_header(header)?;

    let mut width = None;
    let mut cells = Vec::new();
    let mut height = 0usize;
    for (row, line) in lines.enumerate() {
        match width {
            None => width = Some(line.chars().count()),
            Some(w) => {
                if line.chars().count() != w {
                    return Err(Error::format(format!(
                        "ragged row {}: expected {} columns, got {}",
                        row + 1,
                        w,
                        line.chars().count()
                    )));
                }
            }
        }
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '.' => cells.push(false),
                '#' => cells.push(true),
                other => {
                    return Err(Error::format_at(
                        row + 2,
                        col + 1,
                        format!("unknown character {other:?}, expected '.' or '#'"),
                    ))
                }
            }
        }
        height += 1;
    }
    let width = width.filter(|&w| w > 0).ok_or_else(|| Error::format("document has no map rows"))?;
    OccupancyGrid::new(width, height, cell_size, cells)
}

fn parse_cell_header(header: &str) -> Result<f64> {
    let rest = header
        .strip_prefix("cell ")
        .ok_or_else(|| Error::format(format!("header must be `cell <size>`, got {header:?}")))?;
    let cell_size: f64 = rest
        .trim()
        .parse()
        .map_err(|_| Error::format(format!("bad cell size {rest:?}")))?;
    if !cell_size.is_finite() || cell_size <= 0.0 {
        return Err(Error::format(format!("cell size must be positive, got {cell_size}")));
    }
    Ok(cell_size)
}

/// Serialize back to the ASCII map format. `parse_map(&serialize_map(g)) == g`.
pub fn serialize_map(grid: &OccupancyGrid) -> String {
    let mut out = format!("cell {}\n", grid.cell_size());
    for row in 0..grid.height() {
        for col in 0..grid.width() {
            out.push(if grid.is_obstacle(GridIndex::new(row, col)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// Import a PGM (P2 ascii or P5 binary, maxval <= 255) occupancy image.
/// Pixels below 128 are obstacles, 128 and above are free. The physical cell
/// size is not part of the format and must be supplied by the caller.
pub fn parse_pgm(bytes: &[u8], cell_size: f64) -> Result<OccupancyGrid> {
    let mut cursor = 0usize;
    let magic = pgm_token(bytes, &mut cursor)?;
    let binary = match magic.as_str() {
        "P2" => false,
        "P5" => true,
        other => return Err(Error::format(format!("unsupported PGM magic {other:?}"))),
    };
    let width: usize = pgm_token(bytes, &mut cursor)?
        .parse()
        .map_err(|_| Error::format("bad PGM width"))?;
    let height: usize = pgm_token(bytes, &mut cursor)?
        .parse()
        .map_err(|_| Error::format("bad PGM height"))?;
    let maxval: u32 = pgm_token(bytes, &mut cursor)?
        .parse()
        .map_err(|_| Error::format("bad PGM maxval"))?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::format(format!("unsupported PGM maxval {maxval}")));
    }

    let mut cells = Vec::with_capacity(width * height);
    if binary {
        // P5: exactly one whitespace byte separates the header from raster data.
        let data = &bytes[cursor..];
        if data.len() < width * height {
            return Err(Error::format(format!(
                "P5 raster truncated: expected {} bytes, got {}",
                width * height,
                data.len()
            )));
        }
        cells.extend(data[..width * height].iter().map(|&b| b < 128));
    } else {
        for _ in 0..width * height {
            let v: u32 = pgm_token(bytes, &mut cursor)?
                .parse()
                .map_err(|_| Error::format("bad P2 pixel value"))?;
            cells.push(v < 128);
        }
    }
    OccupancyGrid::new(width, height, cell_size, cells)
}

/// Next whitespace-delimited token, skipping `#` comments to end of line.
fn pgm_token(bytes: &[u8], cursor: &mut usize) -> Result<String> {
    loop {
        while *cursor < bytes.len() && bytes[*cursor].is_ascii_whitespace() {
            *cursor += 1;
        }
        if *cursor < bytes.len() && bytes[*cursor] == b'#' {
            while *cursor < bytes.len() && bytes[*cursor] != b'\n' {
                *cursor += 1;
            }
            continue;
        }
        break;
    }
    let start = *cursor;
    while *cursor < bytes.len() && !bytes[*cursor].is_ascii_whitespace() {
        *cursor += 1;
    }
    if start == *cursor {
        return Err(Error::format("unexpected end of PGM header"));
    }
    let tok = std::str::from_utf8(&bytes[start..*cursor])
        .map_err(|_| Error::format("non-ascii PGM header"))?;
    let tok = tok.to_owned();
    // consume the single separator byte after the maxval for P5
    if *cursor < bytes.len() && bytes[*cursor].is_ascii_whitespace() {
        *cursor += 1;
    }
    Ok(tok)
}

/// Per-cell Euclidean distance to the nearest obstacle cell center, in cells.
///
/// Obstacle cells carry 0. A grid with no obstacles carries the sentinel
/// `sqrt(width^2 + height^2)` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceField {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl DistanceField {
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

    /// Sentinel used when the source grid has no obstacles: the grid diagonal.
    pub fn sentinel(width: usize, height: usize) -> f64 {
        ((width * width + height * height) as f64).sqrt()
    }
}

/// Exact Euclidean distance transform (Meijster's two-phase scan over squared
/// distances, integer arithmetic throughout). Matches the brute-force
/// nearest-obstacle scan bit for bit because both take `sqrt` of the same
/// minimal integer `dr^2 + dc^2`.
pub fn distance_transform(grid: &OccupancyGrid) -> DistanceField {
    let (w, h) = (grid.width(), grid.height());
    if grid.obstacle_count() == 0 {
        return DistanceField {
            width: w,
            height: h,
            values: vec![DistanceField::sentinel(w, h); w * h],
        };
    }

    // cap larger than any realizable vertical run; squares stay well inside i64
    let inf = (w + h) as i64;

    // phase 1: per-column vertical distance to the nearest obstacle
    let mut g = vec![0i64; w * h];
    for col in 0..w {
        g[col] = if grid.is_obstacle(GridIndex::new(0, col)) { 0 } else { inf };
        for row in 1..h {
            let i = row * w + col;
            g[i] = if grid.is_obstacle(GridIndex::new(row, col)) {
                0
            } else {
                (g[i - w] + 1).min(inf)
            };
        }
        for row in (0..h - 1).rev() {
            let i = row * w + col;
            if g[i + w] < g[i] {
                g[i] = (g[i + w] + 1).min(inf);
            }
        }
    }

    // phase 2: per-row lower envelope of the parabolas (c - c')^2 + g(c')^2
    let mut values = vec![0.0f64; w * h];
    let mut s = vec![0usize; w];
    let mut t = vec![0usize; w];
    for row in 0..h {
        let base = row * w;
        let gr = &g[base..base + w];
        let f = |x: usize, i: usize| -> i64 {
            let d = x as i64 - i as i64;
            d * d + gr[i] * gr[i]
        };
        let sep = |i: usize, u: usize| -> i64 {
            let (i, u) = (i as i64, u as i64);
            (u * u - i * i + gr[u as usize] * gr[u as usize] - gr[i as usize] * gr[i as usize])
                .div_euclid(2 * (u - i))
        };

        let mut q: isize = 0;
        s[0] = 0;
        t[0] = 0;
        for u in 1..w {
            while q >= 0 && f(t[q as usize], s[q as usize]) > f(t[q as usize], u) {
                q -= 1;
            }
            if q < 0 {
                q = 0;
                s[0] = u;
            } else {
                let wpos = 1 + sep(s[q as usize], u);
                if wpos < w as i64 {
                    q += 1;
                    s[q as usize] = u;
                    t[q as usize] = wpos as usize;
                }
            }
        }
        for u in (0..w).rev() {
            values[base + u] = (f(u, s[q as usize]) as f64).sqrt();
            if u == t[q as usize] {
                q -= 1;
            }
        }
    }

    DistanceField { width: w, height: h, values }
}

/// Summary statistics of the free-space distance field and the obstacle
/// density, the inputs to geometry-aware planner initialization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeSpaceStats {
    /// Mean distance-to-obstacle over free cells, in cells.
    pub mu: f64,
    /// Population standard deviation over free cells, in cells.
    pub sigma: f64,
    /// Fraction of occupied cells in the whole grid.
    pub rho: f64,
}

/// Population mean/std of the field over free cells plus obstacle density.
/// An all-obstacle grid yields `mu = sigma = 0, rho = 1`.
pub fn free_space_stats(grid: &OccupancyGrid, field: &DistanceField) -> FreeSpaceStats {
    let total = grid.len();
    let obstacles = grid.obstacle_count();
    let rho = obstacles as f64 / total as f64;
    let free = total - obstacles;
    if free == 0 {
        return FreeSpaceStats { mu: 0.0, sigma: 0.0, rho };
    }

    let mut sum = 0.0;
    for n in grid.indices() {
        if grid.is_free(n) {
            sum += field.get(n);
        }
    }
    let mu = sum / free as f64;

    let mut varsum = 0.0;
    for n in grid.indices() {
        if grid.is_free(n) {
            let d = field.get(n) - mu;
            varsum += d * d;
        }
    }
    let sigma = (varsum / free as f64).sqrt();
    FreeSpaceStats { mu, sigma, rho }
}

/// Offsets in a fixed order so that search tie-breaking is deterministic:
/// axis moves first, then diagonals.
const NEIGHBOR_OFFSETS: [(isize, isize); 8] = [
    (-1, 0),
    (1, 0),
    (0, -1),
    (0, 1),
    (-1, -1),
    (-1, 1),
    (1, -1),
    (1, 1),
];

/// 8-connected free in-bounds neighbors of `n` with geometric step costs:
/// 1 for axis moves, sqrt(2) for diagonals. A diagonal move is forbidden when
/// both adjacent axis cells are obstacles (no squeezing between a diagonal
/// obstacle pair). The relation is symmetric with equal costs both ways.
pub fn neighbors(grid: &OccupancyGrid, n: GridIndex) -> Vec<(GridIndex, f64)> {
    debug_assert!(grid.in_bounds(n) && grid.is_free(n), "neighbors() called on {n} which is not a free in-bounds cell");
    let mut out = Vec::with_capacity(8);
    for &(dr, dc) in &NEIGHBOR_OFFSETS {
        let row = n.row as isize + dr;
        let col = n.col as isize + dc;
        if row < 0 || col < 0 || row as usize >= grid.height() || col as usize >= grid.width() {
            continue;
        }
        let m = GridIndex::new(row as usize, col as usize);
        if grid.is_obstacle(m) {
            continue;
        }
        if dr != 0 && dc != 0 {
            let vertical = GridIndex::new(row as usize, n.col);
            let horizontal = GridIndex::new(n.row, col as usize);
            if grid.is_obstacle(vertical) && grid.is_obstacle(horizontal) {
                continue;
            }
            out.push((m, SQRT_2));
        } else {
            out.push((m, 1.0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    /// O(cells * obstacles) reference for the distance transform.
    pub(crate) fn brute_force_distance(grid: &OccupancyGrid) -> Vec<f64> {
        let sentinel = DistanceField::sentinel(grid.width(), grid.height());
        grid.indices()
            .map(|n| {
                if grid.is_obstacle(n) {
                    return 0.0;
                }
                let mut best: Option<i64> = None;
                for o in grid.indices() {
                    if grid.is_obstacle(o) {
                        let dr = n.row as i64 - o.row as i64;
                        let dc = n.col as i64 - o.col as i64;
                        let d2 = dr * dr + dc * dc;
                        best = Some(best.map_or(d2, |b: i64| b.min(d2)));
                    }
                }
                best.map_or(sentinel, |d2| (d2 as f64).sqrt())
            })
            .collect()
    }

    #[test]
    fn parse_two_by_two() {
        let g = parse_map("cell 0.05\n..\n.#").unwrap();
        assert_eq!(g.width(), 2);
        assert_eq!(g.height(), 2);
        assert!(close(g.cell_size(), 0.05));
        assert!(g.is_free(GridIndex::new(0, 0)));
        assert!(g.is_free(GridIndex::new(0, 1)));
        assert!(g.is_free(GridIndex::new(1, 0)));
        assert!(g.is_obstacle(GridIndex::new(1, 1)));
    }

    #[test]
    fn parse_single_free_cell() {
        let g = parse_map("cell 1.0\n.").unwrap();
        assert_eq!((g.width(), g.height()), (1, 1));
        assert!(g.is_free(GridIndex::new(0, 0)));
    }

    #[test]
    fn parse_accepts_crlf_line_endings() {
        let g = parse_map("cell 0.5\r\n.#\r\n..\r\n").unwrap();
        assert_eq!((g.width(), g.height()), (2, 2));
        assert!(g.is_obstacle(GridIndex::new(0, 1)));
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        let err = parse_map("cell 1.0\n..\n...").unwrap_err();
        assert!(matches!(err, Error::MapFormat { .. }), "{err}");
    }

    #[test]
    fn parse_rejects_empty_document() {
        assert!(parse_map("").is_err());
        assert!(parse_map("cell 1.0\n").is_err());
    }

    #[test]
    fn parse_reports_unknown_character_location() {
        let err = parse_map("cell 1.0\n..\n.x").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3") && msg.contains("column 2"), "{msg}");
    }

    #[test]
    fn parse_rejects_bad_header() {
        assert!(parse_map("size 1.0\n..").is_err());
        assert!(parse_map("cell -2\n..").is_err());
        assert!(parse_map("cell nan\n..").is_err());
    }

    #[test]
    fn serialize_round_trip() {
        let g = parse_map("cell 0.25\n.#.\n##.\n...").unwrap();
        let text = serialize_map(&g);
        assert_eq!(parse_map(&text).unwrap(), g);
    }

    #[test]
    fn distance_center_obstacle() {
        let mut g = OccupancyGrid::open(3, 3, 1.0).unwrap();
        g.set(GridIndex::new(1, 1), true);
        let d = distance_transform(&g);
        assert!(close(d.get(GridIndex::new(0, 0)), SQRT_2));
        assert!(close(d.get(GridIndex::new(2, 2)), SQRT_2));
        assert!(close(d.get(GridIndex::new(0, 1)), 1.0));
        assert_eq!(d.get(GridIndex::new(1, 1)), 0.0);
    }

    #[test]
    fn distance_obstacle_free_sentinel() {
        let g = OccupancyGrid::open(4, 4, 1.0).unwrap();
        let d = distance_transform(&g);
        let sentinel = (32.0f64).sqrt();
        assert!(d.values().iter().all(|&v| close(v, sentinel)));
    }

    #[test]
    fn distance_matches_brute_force_on_random_grids() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let w = rng.gen_range(1..=16);
            let h = rng.gen_range(1..=16);
            let cells: Vec<bool> = (0..w * h).map(|_| rng.gen_bool(0.3)).collect();
            let g = OccupancyGrid::new(w, h, 1.0, cells).unwrap();
            let fast = distance_transform(&g);
            let slow = brute_force_distance(&g);
            for (i, (&a, &b)) in fast.values().iter().zip(slow.iter()).enumerate() {
                assert!(close(a, b), "cell {i} on {w}x{h}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn distance_single_row_and_column() {
        let g = parse_map("cell 1.0\n#....").unwrap();
        let d = distance_transform(&g);
        assert_eq!(d.get(GridIndex::new(0, 4)), 4.0);
        let g = parse_map("cell 1.0\n.\n.\n#").unwrap();
        let d = distance_transform(&g);
        assert_eq!(d.get(GridIndex::new(0, 0)), 2.0);
    }

    #[test]
    fn stats_quarter_density() {
        let g = parse_map("cell 1.0\n.#\n..").unwrap();
        let d = distance_transform(&g);
        let s = free_space_stats(&g, &d);
        assert!(close(s.rho, 0.25));
    }

    #[test]
    fn stats_center_obstacle_hand_enumeration() {
        let mut g = OccupancyGrid::open(3, 3, 1.0).unwrap();
        g.set(GridIndex::new(1, 1), true);
        let d = distance_transform(&g);
        let s = free_space_stats(&g, &d);
        // four edge cells at 1, four corners at sqrt(2)
        let mu = (4.0 + 4.0 * SQRT_2) / 8.0;
        assert!(close(s.mu, mu), "{} vs {}", s.mu, mu);
        assert!(close(s.rho, 1.0 / 9.0));
    }

    #[test]
    fn stats_obstacle_free() {
        let g = OccupancyGrid::open(5, 4, 1.0).unwrap();
        let d = distance_transform(&g);
        let s = free_space_stats(&g, &d);
        assert_eq!(s.rho, 0.0);
        assert!(close(s.mu, DistanceField::sentinel(5, 4)));
        assert!(close(s.sigma, 0.0));
    }

    #[test]
    fn stats_all_obstacle() {
        let g = OccupancyGrid::new(2, 2, 1.0, vec![true; 4]).unwrap();
        let d = distance_transform(&g);
        let s = free_space_stats(&g, &d);
        assert_eq!((s.mu, s.sigma, s.rho), (0.0, 0.0, 1.0));
    }

    #[test]
    fn neighbors_interior_full() {
        let g = OccupancyGrid::open(5, 5, 1.0).unwrap();
        let ns = neighbors(&g, GridIndex::new(2, 2));
        assert_eq!(ns.len(), 8);
        assert_eq!(ns.iter().filter(|(_, c)| *c == 1.0).count(), 4);
        assert_eq!(ns.iter().filter(|(_, c)| *c == SQRT_2).count(), 4);
    }

    #[test]
    fn neighbors_corner_clipped() {
        let g = OccupancyGrid::open(4, 4, 1.0).unwrap();
        let ns = neighbors(&g, GridIndex::new(0, 0));
        assert_eq!(ns.len(), 3);
    }

    #[test]
    fn neighbors_no_corner_cutting() {
        // obstacles directly north and east of (1,1): NE diagonal excluded
        let g = parse_map("cell 1.0\n.#.\n..#\n...").unwrap();
        let ns = neighbors(&g, GridIndex::new(1, 1));
        let targets: Vec<GridIndex> = ns.iter().map(|(m, _)| *m).collect();
        assert!(!targets.contains(&GridIndex::new(0, 2)), "NE corner must be cut");
        // single blocked side still allows the diagonal past it
        assert!(targets.contains(&GridIndex::new(0, 0)));
        assert!(targets.contains(&GridIndex::new(2, 2)));
    }

    #[test]
    fn neighbors_symmetric_on_random_grid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let cells: Vec<bool> = (0..64).map(|_| rng.gen_bool(0.35)).collect();
        let g = OccupancyGrid::new(8, 8, 1.0, cells).unwrap();
        for n in g.indices().filter(|&n| g.is_free(n)) {
            for (m, c) in neighbors(&g, n) {
                let back = neighbors(&g, m);
                let found = back.iter().find(|(b, _)| *b == n);
                assert!(found.is_some(), "{m} -> {n} missing");
                assert_eq!(found.unwrap().1, c);
            }
        }
    }

    #[test]
    fn pgm_p2_parse() {
        let text = b"P2\n# comment\n3 2\n255\n255 0 255\n255 255 127\n";
        let g = parse_pgm(text, 0.1).unwrap();
        assert_eq!((g.width(), g.height()), (3, 2));
        assert!(g.is_obstacle(GridIndex::new(0, 1)));
        assert!(g.is_obstacle(GridIndex::new(1, 2)));
        assert!(g.is_free(GridIndex::new(0, 0)));
    }

    #[test]
    fn pgm_p5_parse() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[0, 255, 200, 10]);
        let g = parse_pgm(&bytes, 0.05).unwrap();
        assert!(g.is_obstacle(GridIndex::new(0, 0)));
        assert!(g.is_free(GridIndex::new(0, 1)));
        assert!(g.is_free(GridIndex::new(1, 0)));
        assert!(g.is_obstacle(GridIndex::new(1, 1)));
    }

    #[test]
    fn pgm_rejects_garbage() {
        assert!(parse_pgm(b"P6\n1 1\n255\n\xff", 1.0).is_err());
        assert!(parse_pgm(b"P5\n4 4\n255\nxx", 1.0).is_err());
    }
}
