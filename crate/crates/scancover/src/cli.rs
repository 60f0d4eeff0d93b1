//! The `scancover` command line.
//!
//! Exit codes: 0 success or valid schedule, 1 invalid schedule, 2 algorithm
//! not applicable to the instance, 3 input error (unreadable or malformed
//! file, schedule made for another instance).
//!
//! `solve --algo auto` picks by structure alone:
//!
//! | instance                  | algorithm        |
//! |---------------------------|------------------|
//! | no edges                  | trivial (all 0)  |
//! | 1D                        | bits-1d          |
//! | 2D bipartite              | sector           |
//! | 2D complete               | complete-split   |
//! | other 2D                  | kcolor (greedy)  |
//! | 3D or abstract tree       | tree             |
//! | other 3D or abstract      | arboricity       |

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use scancover_core::bounds::{self, BoundReport};
use scancover_core::formula::Formula;
use scancover_core::generators::{self, RandomKind};
use scancover_core::line::{self, BitSchedule};
use scancover_core::oracle;
use scancover_core::schedule::{validate_schedule, validate_trajectory, Violation, TrajectoryFault};
use scancover_core::{graph, plane, tree, Dimension, Instance, ScanSchedule, Trajectory, VertexId};

use crate::format::{self, ScheduleFile};
use crate::{svg, Error};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_INAPPLICABLE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

pub const ORACLE_LIMIT_VAR: &str = "SCANCOVER_ORACLE_LIMIT";

#[derive(Debug, Parser)]
#[command(name = "scancover", version, about = "Minimum scan cover schedules for graphs with angular transition costs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a schedule and write it next to the instance.
    Solve(SolveArgs),
    /// Check a schedule file against its instance.
    Validate(ValidateArgs),
    /// Print every lower bound that applies.
    Bound(BoundArgs),
    /// Write a generated instance.
    Generate(GenerateArgs),
    /// Draw an instance and schedule as SVG.
    ExportSvg(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Auto,
    BipRotation,
    Sector,
    Kcolor,
    CompleteSplit,
    #[value(name = "bits-1d")]
    Bits1d,
    Tree,
    Arboricity,
    Oracle,
    OracleDiscrete,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    pub algo: Algo,
    /// Schedule file to write; defaults to `<instance>.schedule.json`.
    #[arg(short, long)]
    pub out: Option<PathBuf>,
    /// Root vertex id for `tree`.
    #[arg(long)]
    pub root: Option<String>,
    /// Time step for `oracle-discrete`; defaults to the smallest positive cost.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = 16)]
    pub max_steps: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    pub instance: PathBuf,
    pub schedule: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub kind: GenerateKind,
    /// Output file; standard output when omitted.
    #[arg(short, long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenerateKind {
    /// Abstract gadget of an NAE-3-SAT formula such as "(x1,x2,!x3)(!x1,!x2,x3)".
    NaeGadget {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 30.0)]
        phi: f64,
    },
    /// Balanced complete multipartite graph on the line.
    #[command(name = "turan-1d")]
    Turan1d {
        #[arg(long)]
        ell: usize,
    },
    /// Star to the vertices of a subdivided icosahedron.
    GeodesicStar {
        #[arg(long, default_value_t = 0)]
        sub: usize,
    },
    /// Star with leaves on distinct axes; `d` defaults to `n`.
    OrthantStar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Seeded random instance.
    Random {
        /// One of bipartite1d, complete1d, bipartite2d, complete2d, sparse2d, tree3d.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Line instance that needs three steps.
    LineThreeStep,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub instance: PathBuf,
    pub schedule: PathBuf,
    #[arg(short, long)]
    pub out: PathBuf,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match &err {
            Error::Core(e) if inapplicable(e) => EXIT_INAPPLICABLE,
            _ => EXIT_INPUT,
        };
        Failure { code, message: err.to_string() }
    }
}

fn inapplicable(err: &scancover_core::Error) -> bool {
    use scancover_core::Error as E;
    matches!(
        err,
        E::WrongDimension { .. }
            | E::NotMetric
            | E::NotBipartite
            | E::NotBipartitePartition
            | E::NotComplete
            | E::NotATree
            | E::NotAStar
            | E::TooLarge { .. }
            | E::CostsNotDiscrete
            | E::NoSolutionWithin(_)
    )
}

fn input(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

/// Caps for the exact searches.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub edges: usize,
    pub chromatic_vertices: usize,
}

impl Limits {
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(ORACLE_LIMIT_VAR) {
            Err(_) => Ok(Limits { edges: oracle::DEFAULT_EDGE_LIMIT, chromatic_vertices: oracle::DEFAULT_VERTEX_LIMIT_CHROMATIC }),
            Ok(text) => {
                let n = text.trim().parse().map_err(|_| format!("{ORACLE_LIMIT_VAR} must be a non-negative integer, got {text:?}"))?;
                Ok(Limits { edges: n, chromatic_vertices: n })
            }
        }
    }
}

/// Key-value summary, printed as `key: value` lines or one JSON object.
#[derive(Debug, Default)]
struct Report(Vec<(&'static str, Value)>);

impl Report {
    fn put(&mut self, key: &'static str, value: impl Into<Value>) {
        self.0.push((key, value.into()));
    }

    fn emit(self, out: &mut dyn Write, as_json: bool) {
        if as_json {
            let map: serde_json::Map<String, Value> = self.0.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes"));
            return;
        }
        for (k, v) in self.0 {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                Value::Array(items) => {
                    for item in items {
                        let text = item.as_str().map(str::to_string).unwrap_or_else(|| item.to_string());
                        let _ = writeln!(out, "{k}: {text}");
                    }
                }
                Value::Null => {
                    let _ = writeln!(out, "{k}: n/a");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
    }
}

/// Run one command and return its exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args, out),
        Command::Validate(args) => cmd_validate(&args, out),
        Command::Bound(args) => cmd_bound(&args, out),
        Command::Generate(args) => cmd_generate(&args, out),
        Command::ExportSvg(args) => cmd_export_svg(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Everything one algorithm run produces.
#[derive(Debug, Clone)]
pub struct Solved {
    pub schedule: ScanSchedule,
    pub bits: Option<BitSchedule>,
    pub trajectory: Option<Trajectory>,
    /// Width of the sector plan when `sector` used one.
    pub sector_width: Option<f64>,
}

impl Solved {
    fn plain(schedule: ScanSchedule) -> Self {
        Solved { schedule, bits: None, trajectory: None, sector_width: None }
    }

    fn from_solution(sol: plane::Solution) -> Self {
        Solved { schedule: sol.schedule, bits: None, trajectory: sol.trajectory, sector_width: None }
    }
}

/// The algorithm `auto` runs on this instance.
pub fn auto_algo(inst: &Instance) -> Algo {
    match inst.dimension() {
        Dimension::One => Algo::Bits1d,
        Dimension::Two if graph::bipartition(inst).is_some() => Algo::Sector,
        Dimension::Two if graph::is_complete(inst) => Algo::CompleteSplit,
        Dimension::Two => Algo::Kcolor,
        Dimension::Three | Dimension::Abstract if graph::is_tree(inst) => Algo::Tree,
        Dimension::Three | Dimension::Abstract => Algo::Arboricity,
    }
}

/// Options of `solve` that only some algorithms read.
#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    pub root: Option<VertexId>,
    pub step: Option<f64>,
    pub max_steps: usize,
}

fn smallest_positive_cost(inst: &Instance) -> Option<f64> {
    inst.incident_pairs().into_iter().map(|(_, _, c)| c).filter(|&c| c > scancover_core::TOLERANCE).reduce(f64::min)
}

/// Run `algo`; `auto` is resolved first, and on an edgeless instance it
/// returns the empty schedule.
pub fn solve(inst: &Instance, algo: Algo, opts: &SolveOptions, limits: Limits) -> Result<Solved, Error> {
    if algo == Algo::Auto {
        if inst.edge_count() == 0 {
            return Ok(Solved::plain(ScanSchedule::new(Vec::new(), "trivial")));
        }
        return solve(inst, auto_algo(inst), opts, limits);
    }
    let bipartition = || graph::bipartition(inst).ok_or(scancover_core::Error::NotBipartite);
    let solved = match algo {
        Algo::Auto => unreachable!("resolved above"),
        Algo::BipRotation => Solved::from_solution(plane::bipartite_rotation(inst, &bipartition()?)?),
        Algo::Sector => {
            let mut s = Solved::from_solution(plane::sector_approx(inst, &bipartition()?)?);
            s.sector_width = plane::SectorPlan::for_lambda(plane::lambda_cone(inst)?).map(|p| p.width);
            if let Some(w) = s.sector_width {
                assert!(s.schedule.makespan() <= 3.0 * w + scancover_core::TOLERANCE, "sector schedule exceeds three sector widths");
            }
            s
        }
        Algo::Kcolor => Solved::plain(plane::kcolor_decompose(inst, &bounds::greedy_coloring(inst))?),
        Algo::CompleteSplit => Solved::from_solution(plane::complete_recursive_split(inst)?),
        Algo::Bits1d => {
            if inst.dimension() != Dimension::One {
                return Err(scancover_core::Error::WrongDimension { expected: "1D" }.into());
            }
            let bs = if graph::bipartition(inst).is_some() {
                line::solve_bipartite_1d(inst)?
            } else if inst.vertex_count() >= 2 && graph::is_complete(inst) {
                line::solve_complete_1d(inst)?
            } else {
                line::vectors_from_coloring(inst, &bounds::greedy_coloring(inst))?
            };
            let schedule = line::bitschedule_to_schedule(&bs, inst)?;
            Solved { schedule, bits: Some(bs), trajectory: None, sector_width: None }
        }
        Algo::Tree => Solved::plain(tree::tree_approx(inst, opts.root.unwrap_or(VertexId(0)))?),
        Algo::Arboricity => Solved::plain(tree::arboricity_approx(inst)?),
        Algo::Oracle => Solved::plain(oracle::exact_order_search(inst, limits.edges)?),
        Algo::OracleDiscrete => {
            let step = opts.step.or_else(|| smallest_positive_cost(inst)).unwrap_or(90.0);
            Solved::plain(oracle::discrete_step_oracle(inst, step, opts.max_steps)?.schedule)
        }
    };
    Ok(solved)
}

/// Bounds for an instance, with the exact chromatic number when it is
/// small enough to compute.
pub fn bounds_for(inst: &Instance, limits: Limits) -> BoundReport {
    let chi = if inst.vertex_count() <= limits.chromatic_vertices {
        oracle::exact_chromatic(inst, limits.chromatic_vertices).ok()
    } else {
        None
    };
    bounds::bound_report(inst, chi)
}

fn put_bounds(report: &mut Report, b: &BoundReport) {
    report.put("lambda", b.lambda.value);
    report.put("chromatic_bound", b.chromatic_bound.value);
    report.put("chromatic_source", b.chromatic_bound.source);
    report.put("star_bound", b.star_bound.value);
    report.put("chi_lower", b.chi_lower);
    report.put("chi_upper", b.chi_upper);
    report.put("chi_exact", b.chi_exact);
    let best = b.best();
    report.put("best_bound", best.value);
    report.put("best_source", best.source);
}

fn default_schedule_path(instance: &Path) -> PathBuf {
    let stem = instance.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into());
    instance.with_file_name(format!("{stem}.schedule.json"))
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let limits = Limits::from_env().map_err(input)?;
    let inst = format::load_instance(&args.instance)?;
    let root = match &args.root {
        None => None,
        Some(id) => Some(inst.vertex_by_label(id).ok_or_else(|| input(format!("unknown root vertex \"{id}\"")))?),
    };
    let opts = SolveOptions { root, step: args.step, max_steps: args.max_steps };
    let solved = solve(&inst, args.algo, &opts, limits)?;

    // Never write a schedule that does not check out.
    let verdict = validate_schedule(&inst, &solved.schedule);
    if !verdict.is_valid() {
        return Err(Failure { code: EXIT_INVALID, message: format!("{} produced an invalid schedule", solved.schedule.tag) });
    }

    let path = args.out.clone().unwrap_or_else(|| default_schedule_path(&args.instance));
    let file = ScheduleFile::new(&inst, &solved.schedule, solved.bits.as_ref(), solved.trajectory.as_ref());
    format::write_text(&path, &format::schedule_to_json(&file))?;

    let b = bounds_for(&inst, limits);
    let makespan = solved.schedule.makespan();
    let mut report = Report::default();
    report.put("algorithm", solved.schedule.tag.clone());
    report.put("makespan", makespan);
    report.put("edges", inst.edge_count());
    if let Some(bs) = &solved.bits {
        report.put("steps", bs.steps());
    }
    if let Some(w) = solved.sector_width {
        report.put("sector_width", w);
        report.put("sector_bound", 3.0 * w);
    }
    put_bounds(&mut report, &b);
    let best = b.best().value;
    let ratio = if best > 0.0 {
        Value::from(makespan / best)
    } else if makespan <= scancover_core::TOLERANCE {
        Value::from(1.0)
    } else {
        Value::Null
    };
    report.put("ratio", ratio);
    report.put("schedule", path.display().to_string());
    report.emit(out, args.json);
    Ok(EXIT_OK)
}

/// Degrees rounded to six places, trailing zeros dropped.
fn deg(x: f64) -> String {
    let text = format!("{x:.6}");
    let text = text.trim_end_matches('0').trim_end_matches('.');
    if text == "-0" { "0".into() } else { text.into() }
}

fn describe_violation(inst: &Instance, v: &Violation) -> String {
    match v {
        Violation::Separation { vertex, first, second, gap, required } => format!(
            "{} and {} at {}: gap {} < {}",
            format::edge_name(inst, *first),
            format::edge_name(inst, *second),
            format::vertex_name(inst, *vertex),
            deg(*gap),
            deg(*required)
        ),
        Violation::BadTime { edge, time } => format!("{}: bad time {}", format::edge_name(inst, *edge), deg(*time)),
        Violation::Length { expected, found } => format!("{found} times for {expected} edges"),
    }
}

fn describe_fault(inst: &Instance, f: &TrajectoryFault) -> String {
    match f {
        TrajectoryFault::NotFacing { edge, vertex, deviation } => format!(
            "{} not facing along {} (off by {})",
            format::vertex_name(inst, *vertex),
            format::edge_name(inst, *edge),
            deg(*deviation)
        ),
        TrajectoryFault::TooFast { vertex, index, turn, gap } => {
            format!("{} turns {} in {} before waypoint {index}", format::vertex_name(inst, *vertex), deg(*turn), deg(*gap))
        }
        TrajectoryFault::Malformed { vertex, index } => format!("{} waypoint {index} malformed", format::vertex_name(inst, *vertex)),
        TrajectoryFault::Missing { vertex } => format!("{} has no waypoints", format::vertex_name(inst, *vertex)),
    }
}

fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let inst = format::load_instance(&args.instance)?;
    let loaded = format::load_schedule(&args.schedule)?.resolve(&inst)?;
    let verdict = validate_schedule(&inst, &loaded.schedule);
    let mut problems: Vec<String> = verdict.violations.iter().map(|v| describe_violation(&inst, v)).collect();
    if let Some(traj) = &loaded.trajectory {
        let tv = validate_trajectory(&inst, &loaded.schedule, traj);
        problems.extend(tv.faults.iter().map(|f| describe_fault(&inst, f)));
    }
    if let Some(bs) = &loaded.bits {
        problems.extend(bs.cover_violations(&inst).into_iter().map(|e| format!("bits leave {} uncovered", format::edge_name(&inst, e))));
    }
    let mut report = Report::default();
    report.put("valid", problems.is_empty());
    report.put("algorithm", loaded.schedule.tag.clone());
    report.put("makespan", verdict.makespan);
    report.put("trajectory", loaded.trajectory.is_some());
    report.put("violation_count", problems.len());
    let valid = problems.is_empty();
    report.put("violation", problems);
    report.emit(out, args.json);
    Ok(if valid { EXIT_OK } else { EXIT_INVALID })
}

fn cmd_bound(args: &BoundArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let limits = Limits::from_env().map_err(input)?;
    let inst = format::load_instance(&args.instance)?;
    let mut report = Report::default();
    report.put("vertices", inst.vertex_count());
    report.put("edges", inst.edge_count());
    put_bounds(&mut report, &bounds_for(&inst, limits));
    report.emit(out, args.json);
    Ok(EXIT_OK)
}

/// Build the instance a `generate` command describes.
pub fn generate(kind: &GenerateKind) -> Result<Instance, Error> {
    let inst = match kind {
        GenerateKind::NaeGadget { formula, phi } => {
            let f = Formula::parse(formula)?;
            generators::gen_nae_gadget(&f, *phi)?.instance
        }
        GenerateKind::Turan1d { ell } => generators::gen_turan_1d(*ell)?,
        GenerateKind::GeodesicStar { sub } => generators::gen_geodesic_star(*sub)?,
        GenerateKind::OrthantStar { n, d } => generators::gen_orthant_star(*n, d.unwrap_or(*n))?,
        GenerateKind::Random { kind, n, seed } => generators::gen_random(kind.parse::<RandomKind>()?, *n, *seed)?.instance,
        GenerateKind::LineThreeStep => generators::line_three_step_instance(),
    };
    Ok(inst)
}

fn cmd_generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    // Bad generator parameters are input errors, whatever the core calls them.
    let inst = generate(&args.kind).map_err(|e| input(e.to_string()))?;
    let text = format::instance_to_json(&inst);
    match &args.out {
        Some(path) => format::write_text(path, &(text + "\n"))?,
        None => {
            let _ = writeln!(out, "{text}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_export_svg(args: &ExportArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let inst = format::load_instance(&args.instance)?;
    let loaded = format::load_schedule(&args.schedule)?.resolve(&inst)?;
    let drawing = svg::render(&inst, &loaded.schedule, loaded.trajectory.as_ref());
    format::write_text(&args.out, &drawing)?;
    let _ = writeln!(out, "svg: {}", args.out.display());
    Ok(EXIT_OK)
}
