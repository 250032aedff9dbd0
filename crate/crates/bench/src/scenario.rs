//! Random start/goal sampling with reachability and separation constraints.

use anyhow::{bail, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use safegrid_core::{bfs_reachable, GridIndex, OccupancyGrid};

/// One benchmark instance: a start/goal pair on a named map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub map_id: String,
    pub s: GridIndex,
    pub t: GridIndex,
    pub seed: u64,
}

const MAX_TRIES_PER_SCENARIO: usize = 2000;

/// Sample `count` scenarios. Endpoints are distinct free cells, mutually
/// reachable, and at least `max(width, height) / 4` apart in Chebyshev
/// distance so instances stay non-trivial. Deterministic in the seed.
pub fn sample_scenarios(
    grid: &OccupancyGrid,
    map_id: &str,
    count: usize,
    seed: u64,
) -> Result<Vec<Scenario>> {
    let free: Vec<GridIndex> = grid.indices().filter(|&n| grid.is_free(n)).collect();
    if free.len() < 2 {
        bail!("scenario sampling needs at least 2 free cells, map has {}", free.len());
    }
    let min_sep = grid.width().max(grid.height()) as f64 / 4.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut found = None;
        for _ in 0..MAX_TRIES_PER_SCENARIO {
            let s = free[rng.gen_range(0..free.len())];
            let t = free[rng.gen_range(0..free.len())];
            if s == t || s.linf(t) < min_sep {
                continue;
            }
            if !bfs_reachable(grid, s, t) {
                continue;
            }
            found = Some(Scenario {
                map_id: map_id.to_owned(),
                s,
                t,
                seed: seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
            });
            break;
        }
        match found {
            Some(sc) => out.push(sc),
            None => bail!(
                "could not sample scenario {i} on {map_id} after {MAX_TRIES_PER_SCENARIO} tries"
            ),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use safegrid_core::parse_map;

    #[test]
    fn sampling_is_deterministic() {
        let g = OccupancyGrid::open(32, 32, 1.0).unwrap();
        let a = sample_scenarios(&g, "m", 10, 99).unwrap();
        let b = sample_scenarios(&g, "m", 10, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_scenarios(&g, "m", 10, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn constraints_hold() {
        let g = crate::mapgen::generate_map(&crate::mapgen::MapSpec {
            width: 48,
            height: 48,
            cell_size: 0.05,
            density: 0.3,
            style: crate::mapgen::MapStyle::ClutteredScatter,
            seed: 5,
        })
        .unwrap();
        let scenarios = sample_scenarios(&g, "m", 20, 7).unwrap();
        assert_eq!(scenarios.len(), 20);
        for sc in scenarios {
            assert_ne!(sc.s, sc.t);
            assert!(g.is_free(sc.s) && g.is_free(sc.t));
            assert!(sc.s.linf(sc.t) >= 12.0);
            assert!(bfs_reachable(&g, sc.s, sc.t));
        }
    }

    #[test]
    fn single_free_cell_errors() {
        let g = parse_map("cell 1.0\n.#\n##").unwrap();
        assert!(sample_scenarios(&g, "m", 1, 1).is_err());
    }

    #[test]
    fn obstacle_free_count_one() {
        let g = OccupancyGrid::open(16, 16, 1.0).unwrap();
        let sc = sample_scenarios(&g, "m", 1, 3).unwrap();
        assert_eq!(sc.len(), 1);
        assert!(bfs_reachable(&g, sc[0].s, sc[0].t));
    }
}
