//! Command-line front end: plan single scenarios, run benchmark and ablation
//! sweeps, and score externally produced paths.
//!
//! Exit codes: 0 on success, 1 when a requested plan reports failure, 2 on
//! usage, format, or I/O errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use safegrid_bench::{
    field_to_pgm, load_upp_config, parse_path_file, render_svg, run_ablation, run_benchmark,
    write_ablation_outputs, write_bench_outputs, AblationMode, BenchOptions, MapSpec, PlannerKind,
};
use safegrid_core::{
    astar_shortest, distance_transform, evaluate_planner, maximin_clearance_path, min_clearance,
    neighbors, parse_map, parse_pgm, path_length, turning_angle, GridIndex, OccupancyGrid,
    PlanResult, UppConfig, UppPlanner,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "safegrid", version, about = "Safety-aware grid path planning and benchmarking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a single start/goal scenario on a map file
    Plan {
        /// Map file: ASCII (`cell` header + `.`/`#` rows) or PGM (P2/P5)
        #[arg(long)]
        map: PathBuf,
        /// Start cell as `row,col`
        #[arg(long)]
        start: String,
        /// Goal cell as `row,col`
        #[arg(long)]
        goal: String,
        /// Planner: upp, astar, or maximin
        #[arg(long, default_value = "upp")]
        planner: String,
        /// Write an SVG of the map and planned path
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the adaptive-parameter trace as CSV (upp only)
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Planner config TOML overriding the defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cell size in meters (required for PGM maps)
        #[arg(long)]
        cell_size: Option<f64>,
        /// Dump the planner's safety field as a PGM image
        #[arg(long)]
        dump_safety: Option<PathBuf>,
    },
    /// Run a benchmark sweep over generated maps
    Bench {
        /// Map specs `style:WxH:density:seed`, comma separated
        #[arg(long, required = true, value_delimiter = ',')]
        maps: Vec<String>,
        /// Planners to compare, comma separated (upp, astar, maximin)
        #[arg(long, default_value = "upp,astar")]
        planners: String,
        /// Scenarios per map
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Master seed for map-independent scenario sampling
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory for report.csv, report.json, paths.json
        #[arg(long)]
        out: PathBuf,
        /// Planner config TOML overriding the defaults
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cell size in meters for generated maps
        #[arg(long, default_value_t = 0.05)]
        cell_size: f64,
    },
    /// Ablation sweep: disable adaptation branches and vary initial weights
    Ablate {
        /// Map spec `style:WxH:density:seed`
        #[arg(long)]
        map: String,
        /// Modes: both-fixed, adaptive-alpha, adaptive-beta, both-adaptive, or `all`
        #[arg(long, default_value = "all")]
        mode: String,
        /// Initial weights as `alpha:beta` pairs, comma separated
        #[arg(long, default_value = "0.25:2.5,0.5:10,0.75:40")]
        inits: String,
        /// Scenarios per section
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output directory for ablation.csv and ablation.json
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Cell size in meters for the generated map
        #[arg(long, default_value_t = 0.05)]
        cell_size: f64,
    },
    /// Score an externally produced path against the reference planners
    Eval {
        /// Map file (ASCII or PGM)
        #[arg(long)]
        map: PathBuf,
        /// Path file: one `row,col` per line
        #[arg(long)]
        path: PathBuf,
        /// Cell size in meters (required for PGM maps)
        #[arg(long)]
        cell_size: Option<f64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Plan { map, start, goal, planner, svg, trace, config, cell_size, dump_safety } => {
            cmd_plan(&map, &start, &goal, &planner, svg, trace, config, cell_size, dump_safety)
        }
        Command::Bench { maps, planners, trials, seed, out, config, cell_size } => {
            let specs: Vec<MapSpec> = maps
                .iter()
                .map(|m| MapSpec::parse(m, cell_size))
                .collect::<Result<_>>()?;
            let planners = PlannerKind::parse_list(&planners)?;
            let upp = upp_config(config.as_deref())?;
            let report = run_benchmark(&specs, &planners, &BenchOptions { trials, seed, upp })?;
            write_bench_outputs(&report, &out)?;
            print_bench_summary(&report);
            println!("report written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Ablate { map, mode, inits, trials, seed, out, config, cell_size } => {
            let spec = MapSpec::parse(&map, cell_size)?;
            let modes = AblationMode::parse_list(&mode)?;
            let inits = parse_inits(&inits)?;
            let base = upp_config(config.as_deref())?;
            let report = run_ablation(&spec, &modes, &inits, trials, seed, &base)?;
            write_ablation_outputs(&report, &out)?;
            for s in &report.sections {
                println!(
                    "{:<16} a0={:<5} b0={:<6} time {:>8.3} ms  length {:>8} m  clearance {:>8} cm  turn {:>9}  expanded {:>7}",
                    s.mode,
                    s.alpha0,
                    s.beta0,
                    s.median_time_ms.unwrap_or(0.0),
                    fmt_opt(s.median_length_m, 3),
                    fmt_opt(s.median_clearance_cm, 2),
                    fmt_opt(s.median_turn_deg, 1),
                    fmt_opt(s.median_expanded, 0),
                );
            }
            println!("report written to {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { map, path, cell_size } => cmd_eval(&map, &path, cell_size),
    }
}

fn fmt_opt(v: Option<f64>, precision: usize) -> String {
    v.map(|x| format!("{x:.precision$}")).unwrap_or_else(|| "-".into())
}

fn upp_config(path: Option<&Path>) -> Result<UppConfig> {
    match path {
        Some(p) => load_upp_config(p),
        None => Ok(UppConfig::default()),
    }
}

fn load_grid(path: &Path, cell_size: Option<f64>) -> Result<OccupancyGrid> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let is_pgm = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm"))
        || bytes.starts_with(b"P2")
        || bytes.starts_with(b"P5");
    if is_pgm {
        let cell = cell_size
            .ok_or_else(|| anyhow!("--cell-size is required for PGM maps (not stored in the format)"))?;
        Ok(parse_pgm(&bytes, cell)?)
    } else {
        let text = String::from_utf8(bytes)
            .map_err(|_| anyhow!("{} is not valid UTF-8", path.display()))?;
        Ok(parse_map(&text)?)
    }
}

fn parse_cell(text: &str) -> Result<GridIndex> {
    let (r, c) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("cell {text:?} must be `row,col`"))?;
    Ok(GridIndex::new(r.trim().parse()?, c.trim().parse()?))
}

fn parse_inits(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("init {pair:?} must be `alpha:beta`"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_plan(
    map: &Path,
    start: &str,
    goal: &str,
    planner: &str,
    svg: Option<PathBuf>,
    trace: Option<PathBuf>,
    config: Option<PathBuf>,
    cell_size: Option<f64>,
    dump_safety: Option<PathBuf>,
) -> Result<ExitCode> {
    let grid = load_grid(map, cell_size)?;
    let s = parse_cell(start)?;
    let t = parse_cell(goal)?;
    let kind = PlannerKind::parse(planner)?;
    let cfg = upp_config(config.as_deref())?;
    if trace.is_some() && kind != PlannerKind::Upp {
        bail!("--trace is only available for the upp planner");
    }

    let dfield = distance_transform(&grid);
    let result: PlanResult = match kind {
        PlannerKind::Upp => {
            let upp = UppPlanner::new(&grid, cfg)?;
            if let Some(out) = &dump_safety {
                std::fs::write(out, field_to_pgm(upp.safety_field()))
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            if trace.is_some() {
                upp.plan_traced(s, t)
            } else {
                upp.plan(s, t)
            }
        }
        PlannerKind::AStar => astar_shortest(&grid, s, t),
        PlannerKind::Maximin => maximin_clearance_path(&grid, &dfield, s, t),
    };

    if let (Some(out), Some(samples)) = (&trace, &result.param_trace) {
        let mut csv = String::from("expansion,alpha,beta\n");
        for p in samples {
            csv.push_str(&format!("{},{:.6},{:.6}\n", p.expansion, p.alpha, p.beta));
        }
        std::fs::write(out, csv).with_context(|| format!("writing {}", out.display()))?;
    }

    match &result.path {
        Some(path) => {
            let cell = grid.cell_size();
            println!("outcome:   success");
            println!("planner:   {}", kind.name());
            println!("expanded:  {}", result.expanded);
            println!("cost:      {:.4} cells", result.g_cost);
            println!("length:    {:.4} m", path_length(path, cell)?);
            println!("clearance: {:.4} m", min_clearance(path, &dfield, cell)?);
            println!("turn:      {:.2} deg", turning_angle(path));
            if let Some(out) = &svg {
                let doc = render_svg(&grid, &[(kind.name().to_owned(), path.clone())]);
                std::fs::write(out, doc).with_context(|| format!("writing {}", out.display()))?;
                println!("svg:       {}", out.display());
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            println!("outcome:   failure ({})", match result.outcome {
                safegrid_core::PlanOutcome::Failure(r) => r.to_string(),
                safegrid_core::PlanOutcome::Success => unreachable!("success carries a path"),
            });
            if let Some(out) = &svg {
                let doc = render_svg(&grid, &[]);
                std::fs::write(out, doc).with_context(|| format!("writing {}", out.display()))?;
            }
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_eval(map: &Path, path_file: &Path, cell_size: Option<f64>) -> Result<ExitCode> {
    let grid = load_grid(map, cell_size)?;
    let text = std::fs::read_to_string(path_file)
        .with_context(|| format!("reading {}", path_file.display()))?;
    let path = parse_path_file(&text)?;
    for &n in &path {
        if !grid.in_bounds(n) || grid.is_obstacle(n) {
            bail!("path cell {n} is not a free in-bounds cell");
        }
    }
    for pair in path.windows(2) {
        let legal = neighbors(&grid, pair[0]).iter().any(|(m, _)| *m == pair[1]);
        if !legal {
            bail!("path step {} -> {} is not a legal move", pair[0], pair[1]);
        }
    }

    let dfield = distance_transform(&grid);
    let result = PlanResult {
        outcome: safegrid_core::PlanOutcome::Success,
        path: Some(path),
        expanded: 0,
        g_cost: 0.0,
        param_trace: None,
    };
    let (metrics, score) = evaluate_planner(&grid, &dfield, &result, grid.cell_size())?;
    println!("length:    {:.4} m", metrics.length_m);
    println!("clearance: {:.4} m", metrics.min_clearance_m);
    println!("turn:      {:.2} deg", metrics.turn_total_deg);
    println!("O:         {:.4}", score.optimality);
    println!("C:         {:.4}", score.safety);
    println!("balance:   {:.4}", score.balance);
    println!("strength:  {:.4}", score.strength);
    println!("OSI:       {:.4}", score.osi);
    Ok(ExitCode::SUCCESS)
}

fn print_bench_summary(report: &safegrid_bench::BenchReport) {
    println!(
        "{:<8} {:>5} {:>8} {:>12} {:>12} {:>14} {:>12} {:>10}",
        "planner", "rows", "SR %", "med time ms", "med len m", "med clear cm", "med turn", "med OSI"
    );
    for a in &report.aggregates {
        println!(
            "{:<8} {:>5} {:>8.1} {:>12.3} {:>12} {:>14} {:>12} {:>10}",
            a.planner,
            a.rows,
            a.success_rate_pct,
            a.median_time_ms,
            fmt_opt(a.median_length_m, 3),
            fmt_opt(a.median_clearance_cm, 2),
            fmt_opt(a.median_turn_deg, 1),
            fmt_opt(a.median_osi, 3),
        );
    }
}
