//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line with the measured numbers. Tolerances and scales are fixed
//! here, not tunable.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use safegrid_bench::{
    median, run_ablation, run_benchmark, strip_time_column, AblationMode, BenchOptions, MapSpec,
    MapStyle, PlannerKind,
};
use safegrid_core::{
    bfs_reachable, build_kernel, compute_safety_field, dijkstra_costs, distance_transform,
    maximin_clearance_path, neighbors, optisafe, safety_upper_bound, DistanceField, GridIndex,
    OccupancyGrid, UppConfig, UppPlanner,
};
use std::time::Instant;

fn verdict(number: u32, name: &str, ok: bool, detail: &str) {
    println!("acceptance {number} ({name}): {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number} ({name}) failed: {detail}");
}

fn random_grid(rng: &mut ChaCha8Rng, w: usize, h: usize, density: f64) -> OccupancyGrid {
    let cells = (0..w * h).map(|_| rng.gen_bool(density)).collect();
    OccupancyGrid::new(w, h, 1.0, cells).unwrap()
}

fn free_cells(grid: &OccupancyGrid) -> Vec<GridIndex> {
    grid.indices().filter(|&n| grid.is_free(n)).collect()
}

/// Criterion 1: the safety field matches the direct evaluation of the
/// inverse-distance sum on 200 random grids up to 16x16, r in {1,2,3},
/// within 1e-9, in under 10 seconds.
#[test]
fn criterion_01_safety_field_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut cells_checked = 0usize;
    let mut worst = 0.0f64;
    for case in 0..200 {
        let w = rng.gen_range(1..=16);
        let h = rng.gen_range(1..=16);
        let r = [1u32, 2, 3][case % 3];
        let density = rng.gen_range(0.05..0.5);
        let grid = random_grid(&mut rng, w, h, density);
        let kernel = build_kernel(r, 0.01).unwrap();
        let field = compute_safety_field(&grid, &kernel);
        for n in grid.indices() {
            let mut expected = 0.0;
            if grid.is_free(n) {
                let ri = r as i64;
                for dr in -ri..=ri {
                    for dc in -ri..=ri {
                        if dr == 0 && dc == 0 {
                            continue;
                        }
                        let rr = n.row as i64 + dr;
                        let cc = n.col as i64 + dc;
                        if rr < 0 || cc < 0 || rr >= h as i64 || cc >= w as i64 {
                            continue;
                        }
                        if grid.is_obstacle(GridIndex::new(rr as usize, cc as usize)) {
                            expected += 1.0 / (dr.abs().max(dc.abs()) as f64 + 0.01);
                        }
                    }
                }
            }
            worst = worst.max((field.get(n) - expected).abs());
            cells_checked += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        1,
        "safety field oracle equivalence",
        worst <= 1e-9 && elapsed < 10.0,
        &format!("200 grids, {cells_checked} cells, max |diff| {worst:.2e}, {elapsed:.2} s"),
    );
}

/// Criterion 2: the distance transform matches the brute-force
/// nearest-obstacle scan exactly on 200 random grids up to 16x16, in under
/// 10 seconds.
#[test]
fn criterion_02_distance_transform_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut cells_checked = 0usize;
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let w = rng.gen_range(1..=16);
        let h = rng.gen_range(1..=16);
        let density = rng.gen_range(0.0..0.5);
        let grid = random_grid(&mut rng, w, h, density);
        let field = distance_transform(&grid);
        let sentinel = DistanceField::sentinel(w, h);
        for n in grid.indices() {
            let expected = if grid.is_obstacle(n) {
                0.0
            } else {
                let mut best: Option<i64> = None;
                for o in grid.indices().filter(|&o| grid.is_obstacle(o)) {
                    let dr = n.row as i64 - o.row as i64;
                    let dc = n.col as i64 - o.col as i64;
                    let d2 = dr * dr + dc * dc;
                    best = Some(best.map_or(d2, |b| b.min(d2)));
                }
                best.map_or(sentinel, |d2| (d2 as f64).sqrt())
            };
            worst = worst.max((field.get(n) - expected).abs());
            cells_checked += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        2,
        "distance transform oracle equivalence",
        worst <= 1e-9 && elapsed < 10.0,
        &format!("200 grids, {cells_checked} cells, max |diff| {worst:.2e}, {elapsed:.2} s"),
    );
}

/// The shared instance set for criteria 3 and 4: 500 random 32x32 grids
/// cycling densities {0.1, 0.3, 0.5} with a random distinct free pair each.
fn completeness_instances() -> Vec<(OccupancyGrid, GridIndex, GridIndex)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut out = Vec::with_capacity(500);
    while out.len() < 500 {
        let density = [0.1, 0.3, 0.5][out.len() % 3];
        let grid = random_grid(&mut rng, 32, 32, density);
        let free = free_cells(&grid);
        if free.len() < 2 {
            continue;
        }
        let s = free[rng.gen_range(0..free.len())];
        let t = free[rng.gen_range(0..free.len())];
        if s == t {
            continue;
        }
        out.push((grid, s, t));
    }
    out
}

/// Criterion 3: plan outcome agrees with the breadth-first reachability
/// oracle on all 500 instances, in under 60 seconds.
#[test]
fn criterion_03_completeness() {
    let started = Instant::now();
    let mut disagreements = 0usize;
    for (grid, s, t) in completeness_instances() {
        let planner = UppPlanner::new(&grid, UppConfig::default()).unwrap();
        let planned = planner.plan(s, t).is_success();
        if planned != bfs_reachable(&grid, s, t) {
            disagreements += 1;
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        3,
        "completeness vs reachability oracle",
        disagreements == 0 && elapsed < 60.0,
        &format!("500 instances, {disagreements} disagreements, {elapsed:.2} s"),
    );
}

/// Criterion 4: on the same 500 instances, the planner's cost never exceeds
/// the optimal cost plus the safety budget `beta_max * S_max(2, r, eps)`,
/// and the median relative overhead is at most 5%.
#[test]
fn criterion_04_bounded_suboptimality() {
    let cfg = UppConfig::default();
    let mut violations = 0usize;
    let mut overheads = Vec::new();
    for (grid, s, t) in completeness_instances() {
        let planner = UppPlanner::new(&grid, cfg.clone()).unwrap();
        let result = planner.plan(s, t);
        if !result.is_success() {
            continue;
        }
        let optimal = dijkstra_costs(&grid, s).unwrap().get(t);
        assert!(optimal.is_finite(), "oracle disagrees with a successful plan");
        let budget =
            cfg.beta_max * safety_upper_bound(2, planner.initial_params().r, cfg.epsilon);
        if result.g_cost > optimal + budget + 1e-9 {
            violations += 1;
        }
        overheads.push((result.g_cost - optimal) / optimal);
    }
    let med = median(&overheads).expect("some instances are solvable");
    verdict(
        4,
        "bounded suboptimality",
        violations == 0 && med <= 0.05,
        &format!(
            "{} solvable instances, {violations} bound violations, median overhead {:.2}%",
            overheads.len(),
            med * 100.0
        ),
    );
}

/// Criterion 5: the trade-off index algebra over 10,000 random input tuples:
/// components in range, symmetry, exact equality cases, and the degenerate
/// branches; all in under 5 seconds.
#[test]
fn criterion_05_optisafe_algebra() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    for case in 0..10_000 {
        let l_opt = if case % 17 == 0 { 0.0 } else { rng.gen_range(0.0..100.0) };
        let d_safe = if case % 13 == 0 { 0.0 } else { rng.gen_range(0.0..5.0) };
        let l_p = rng.gen_range(0.0..150.0);
        let d_p = rng.gen_range(0.0..5.0);
        let r = optisafe(l_p, l_opt, d_p, d_safe);
        for v in [r.optimality, r.safety, r.balance, r.strength, r.osi] {
            assert!((0.0..=1.0).contains(&v), "component {v} out of [0,1]");
        }
        assert_eq!(r.balance == 1.0, r.optimality == r.safety);
        assert_eq!(r.strength == 1.0, r.optimality == 1.0 && r.safety == 1.0);
        assert_eq!(r.strength == 0.0, r.optimality == 0.0 && r.safety == 0.0);
        assert_eq!(r.osi, r.balance * r.strength);
        if l_opt <= 0.0 {
            assert_eq!(r.optimality, 0.0, "degenerate optimal length pins O to 0");
        }
        if d_safe <= 0.0 {
            assert_eq!(r.safety, 0.0, "degenerate safe clearance pins C to 0");
        }
        // symmetry: realize (O, C) and its swap through raw inputs
        let (x, y) = (rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0));
        let a = optisafe(10.0 * (2.0 - x), 10.0, y, 1.0);
        let b = optisafe(10.0 * (2.0 - y), 10.0, x, 1.0);
        assert!((a.osi - b.osi).abs() < 1e-12, "osi({x},{y}) != osi({y},{x})");
    }
    let perfect = optisafe(10.0, 10.0, 2.0, 2.0);
    assert_eq!(perfect.osi, 1.0);
    let lopsided = optisafe(10.0, 10.0, 0.0, 1.0);
    assert_eq!(lopsided.osi, 0.0);
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        5,
        "trade-off index algebra",
        elapsed < 5.0,
        &format!("10000 tuples plus boundary cases, {elapsed:.2} s"),
    );
}

/// Criterion 6: over 50 seeded cluttered 128x128 scenarios, the adaptive
/// planner strictly beats shortest-path A* on both median minimum clearance
/// and median trade-off score, in under 5 minutes.
#[test]
fn criterion_06_safety_trend() {
    let started = Instant::now();
    let map = MapSpec {
        width: 128,
        height: 128,
        cell_size: 0.05,
        density: 0.20,
        style: MapStyle::ClutteredScatter,
        seed: 42,
    };
    let report = run_benchmark(
        &[map],
        &[PlannerKind::Upp, PlannerKind::AStar],
        &BenchOptions { trials: 50, seed: 1, upp: UppConfig::default() },
    )
    .unwrap();
    let by = |planner: &str, f: fn(&safegrid_bench::BenchRow) -> Option<f64>| -> f64 {
        let vals: Vec<f64> =
            report.rows.iter().filter(|r| r.planner == planner).filter_map(f).collect();
        median(&vals).expect("successful rows")
    };
    let upp_clear = by("upp", |r| r.clearance_cm);
    let astar_clear = by("astar", |r| r.clearance_cm);
    let upp_osi = by("upp", |r| r.osi);
    let astar_osi = by("astar", |r| r.osi);
    let elapsed = started.elapsed().as_secs_f64();
    verdict(
        6,
        "cluttered safety trend",
        upp_clear > astar_clear && upp_osi > astar_osi && elapsed < 300.0,
        &format!(
            "median clearance {upp_clear:.2} vs {astar_clear:.2} cm, median OSI {upp_osi:.3} vs {astar_osi:.3}, {elapsed:.1} s"
        ),
    );
}

/// Criterion 7: ablation trends on a seeded cluttered map: full adaptivity
/// expands no more nodes than the fixed configuration (median), and adaptive
/// alpha turns no more than fixed alpha (median).
#[test]
fn criterion_07_ablation_trends() {
    let map = MapSpec {
        width: 128,
        height: 128,
        cell_size: 0.05,
        density: 0.30,
        style: MapStyle::ClutteredScatter,
        seed: 77,
    };
    let report = run_ablation(
        &map,
        &AblationMode::ALL,
        &[(0.5, 10.0)],
        25,
        3,
        &UppConfig::default(),
    )
    .unwrap();
    let section = |mode: &str| {
        report
            .sections
            .iter()
            .find(|s| s.mode == mode)
            .unwrap_or_else(|| panic!("missing section {mode}"))
    };
    let fixed = section("both-fixed");
    let adaptive = section("both-adaptive");
    let alpha_only = section("adaptive-alpha");
    let expanded_ok =
        adaptive.median_expanded.unwrap() <= fixed.median_expanded.unwrap();
    let turn_ok = alpha_only.median_turn_deg.unwrap() <= fixed.median_turn_deg.unwrap();
    verdict(
        7,
        "ablation trends",
        expanded_ok && turn_ok,
        &format!(
            "median expanded {:.0} (adaptive) vs {:.0} (fixed); median turn {:.1} (adaptive alpha) vs {:.1} (fixed) deg",
            adaptive.median_expanded.unwrap(),
            fixed.median_expanded.unwrap(),
            alpha_only.median_turn_deg.unwrap(),
            fixed.median_turn_deg.unwrap(),
        ),
    );
}

/// Criterion 8: with full adaptivity, planning one seeded scenario per map
/// under the initial weights (0.25, 2.5), (0.5, 10), (0.75, 40) moves the
/// resulting path's length and minimum clearance by at most 2%, on one
/// sparse and one cluttered seeded map.
#[test]
fn criterion_08_init_robustness() {
    let instances = [
        (
            MapSpec {
                width: 128,
                height: 128,
                cell_size: 0.05,
                density: 0.12,
                style: MapStyle::SparseBlocks,
                seed: 42,
            },
            7u64, // scenario seed
        ),
        (
            MapSpec {
                width: 128,
                height: 128,
                cell_size: 0.05,
                density: 0.20,
                style: MapStyle::ClutteredScatter,
                seed: 42,
            },
            21u64,
        ),
    ];
    let inits = [(0.25, 2.5), (0.5, 10.0), (0.75, 40.0)];
    let mut detail = String::new();
    let mut ok = true;
    for (map, scenario_seed) in &instances {
        let grid = safegrid_bench::generate_map(map).unwrap();
        let dfield = distance_transform(&grid);
        let scenario =
            safegrid_bench::sample_scenarios(&grid, "c8", 1, *scenario_seed).unwrap().remove(0);
        let mut lengths = Vec::new();
        let mut clearances = Vec::new();
        for &(alpha0, beta0) in &inits {
            let cfg = UppConfig { alpha_base: alpha0, beta_base: beta0, ..UppConfig::default() };
            let planner = UppPlanner::new(&grid, cfg).unwrap();
            let result = planner.plan(scenario.s, scenario.t);
            let path = result.path.expect("sampled scenarios are solvable");
            lengths.push(safegrid_core::path_length(&path, map.cell_size).unwrap());
            clearances
                .push(safegrid_core::min_clearance(&path, &dfield, map.cell_size).unwrap());
        }
        let spread = |vals: &[f64]| -> f64 {
            let max = vals.iter().cloned().fold(f64::MIN, f64::max);
            let min = vals.iter().cloned().fold(f64::MAX, f64::min);
            (max - min) / min
        };
        let ls = spread(&lengths);
        let cs = spread(&clearances);
        ok &= ls <= 0.02 && cs <= 0.02;
        detail.push_str(&format!(
            "[{} length spread {:.2}%, clearance spread {:.2}%] ",
            map.style.name(),
            ls * 100.0,
            cs * 100.0
        ));
    }
    verdict(8, "initialization robustness", ok, detail.trim());
}

/// Criterion 9: the maximum-clearance reference reports exactly the maximin
/// bottleneck found by exhaustive enumeration on 200 random grids up to 6x6
/// with up to 12 obstacles.
#[test]
fn criterion_09_maximin_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let mut checked = 0usize;
    let mut mismatches = 0usize;
    while checked < 200 {
        let w = rng.gen_range(2..=6);
        let h = rng.gen_range(2..=6);
        let mut grid = OccupancyGrid::open(w, h, 1.0).unwrap();
        for _ in 0..rng.gen_range(0..=12.min(w * h - 2)) {
            grid.set(GridIndex::new(rng.gen_range(0..h), rng.gen_range(0..w)), true);
        }
        let free = free_cells(&grid);
        if free.len() < 2 {
            continue;
        }
        let s = free[rng.gen_range(0..free.len())];
        let t = free[rng.gen_range(0..free.len())];
        let dfield = distance_transform(&grid);
        let expected = enumerate_maximin(&grid, &dfield, s, t);
        let got = maximin_clearance_path(&grid, &dfield, s, t);
        match (expected, got.path) {
            (Some(bottleneck), Some(path)) => {
                let actual =
                    path.iter().map(|&n| dfield.get(n)).fold(f64::INFINITY, f64::min);
                if actual != bottleneck {
                    mismatches += 1;
                }
            }
            (None, None) => {}
            _ => mismatches += 1,
        }
        checked += 1;
    }
    verdict(
        9,
        "maximin reference vs enumeration",
        mismatches == 0,
        &format!("200 instances, {mismatches} mismatches"),
    );
}

/// Exhaustive arrival enumeration with the sound cut "an arrival that does
/// not improve the best bottleneck recorded at its cell cannot improve any
/// continuation". Independent of the threshold search in the implementation.
fn enumerate_maximin(
    grid: &OccupancyGrid,
    dfield: &DistanceField,
    s: GridIndex,
    t: GridIndex,
) -> Option<f64> {
    let idx = |n: GridIndex| n.row * grid.width() + n.col;
    let mut best_at = vec![f64::NEG_INFINITY; grid.len()];
    let mut stack = vec![(s, f64::INFINITY)];
    while let Some((n, b)) = stack.pop() {
        let b = b.min(dfield.get(n));
        if b <= best_at[idx(n)] {
            continue;
        }
        best_at[idx(n)] = b;
        for (m, _) in neighbors(grid, n) {
            stack.push((m, b));
        }
    }
    best_at[idx(t)].is_finite().then_some(best_at[idx(t)])
}

/// Criterion 10: two CLI `bench` runs with identical seeds produce
/// byte-identical CSV after dropping the timing column.
#[test]
fn criterion_10_bench_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    for out in [&out_a, &out_b] {
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_safegrid"))
            .args([
                "bench",
                "--maps",
                "cluttered:48x48:0.25:9",
                "--planners",
                "upp,astar",
                "--trials",
                "6",
                "--seed",
                "33",
                "--out",
            ])
            .arg(out)
            .stdout(std::process::Stdio::null())
            .status()
            .expect("bench run");
        assert!(status.success(), "bench exited nonzero");
    }
    let csv_a = std::fs::read_to_string(out_a.join("report.csv")).unwrap();
    let csv_b = std::fs::read_to_string(out_b.join("report.csv")).unwrap();
    let identical = strip_time_column(&csv_a) == strip_time_column(&csv_b);
    verdict(
        10,
        "bench determinism",
        identical,
        &format!("{} rows compared after dropping time_ms", csv_a.lines().count() - 1),
    );
}
