//! Benchmark harness around the safegrid planners: seeded map generation,
//! scenario sampling, timed planner comparison and ablation runs, CSV/JSON
//! reports with a path sidecar, and SVG rendering. The `safegrid` binary in
//! this crate exposes all of it on the command line.

pub mod config;
pub mod mapgen;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod svg;

pub use config::{load_upp_config, UppOverrides};
pub use mapgen::{generate_map, MapSpec, MapStyle};
pub use report::{
    ablation_csv, bench_csv, field_to_pgm, parse_path_file, paths_sidecar, strip_time_column,
    write_ablation_outputs, write_bench_outputs,
};
pub use runner::{
    median, run_ablation, run_benchmark, AblationMode, AblationReport, AblationRow,
    AblationSection, BenchMeta, BenchOptions, BenchReport, BenchRow, MapSummary, PlannerAggregate,
    PlannerKind,
};
pub use scenario::{sample_scenarios, Scenario};
pub use svg::render_svg;
