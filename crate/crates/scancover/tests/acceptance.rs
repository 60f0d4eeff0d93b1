//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Everything is seeded, so reruns print the same numbers
//! apart from timings.

use std::collections::BTreeSet;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scancover::cli::{self, Algo, Limits, SolveOptions};
use scancover::format;
use scancover_core::bounds::{bound_report, cut_cover_extract, greedy_coloring, star_sequential_bound};
use scancover_core::formula::{Formula, Literal};
use scancover_core::generators::{gen_geodesic_star, gen_nae_gadget, gen_orthant_star, gen_random, line_three_step_instance, RandomKind};
use scancover_core::graph::{self, Bipartition};
use scancover_core::line::{self, incomparable};
use scancover_core::oracle::{discrete_step_oracle, exact_1d, exact_chromatic, exact_order_search, nae3sat_check};
use scancover_core::plane::{self, detect_separating_line, SectorPlan};
use scancover_core::schedule::{validate_schedule, validate_trajectory};
use scancover_core::{tree, Dimension, Error, Instance, ScanSchedule, VertexId};

type Check = Result<String, String>;

const PHI: f64 = 30.0;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

// ---------------------------------------------------------------------------
// Corpus

fn random_class(kind: RandomKind, count: u64, sizes: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    let span = (sizes.end() - sizes.start() + 1) as u64;
    (0..count)
        .map(|seed| gen_random(kind, sizes.start() + (seed % span) as usize, seed).unwrap().instance)
        .collect()
}

/// Two point clouds `gap` apart along x with random edges across; small
/// gaps give wide cones, large gaps narrow ones.
fn clustered_bipartite(seed: u64, gap: f64, edges: usize) -> (Instance, Bipartition) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
    let mut coords = Vec::new();
    for i in 0..n1 + n2 {
        let x = if i < n1 { 0.0 } else { gap };
        coords.push(vec![x + rng.gen_range(-0.5..0.5), rng.gen_range(-1.0..1.0)]);
    }
    let mut set = BTreeSet::new();
    for _ in 0..edges {
        set.insert((rng.gen_range(0..n1), n1 + rng.gen_range(0..n2)));
    }
    let labels = (0..n1 + n2).map(|i| format!("v{i}")).collect();
    let inst = Instance::geometric(Dimension::Two, labels, coords, set.into_iter().collect()).unwrap();
    let part = Bipartition::new((0..n1 + n2).map(|i| i >= n1).collect());
    (inst, part)
}

fn clustered_corpus(count: u64) -> Vec<(Instance, Bipartition)> {
    (0..count).map(|seed| clustered_bipartite(seed, [0.4, 1.5, 3.0, 8.0][(seed % 4) as usize], 1 + (seed % 9) as usize)).collect()
}

fn random_formula(rng: &mut ChaCha8Rng) -> Formula {
    let vars = rng.gen_range(1..=3);
    let clauses = rng.gen_range(1..=3);
    let clauses = (0..clauses)
        .map(|_| std::array::from_fn(|_| Literal { var: rng.gen_range(0..vars), negated: rng.gen() }))
        .collect();
    Formula::new((1..=vars).map(|i| format!("x{i}")).collect(), clauses).unwrap()
}

fn gadget_corpus(count: u64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..count).map(|_| gen_nae_gadget(&random_formula(&mut rng), PHI).unwrap().instance).collect()
}

fn separation(inst: &Instance, part: &Bipartition) -> bool {
    let (mut p1, mut p2) = (Vec::new(), Vec::new());
    for v in inst.vertices() {
        let p = inst.point(v);
        if part.in_second(v) { p2.push([p[0], p[1]]) } else { p1.push([p[0], p[1]]) }
    }
    detect_separating_line(&p1, &p2).is_some()
}

// ---------------------------------------------------------------------------
// Criteria

fn applicable(inst: &Instance, algo: Algo) -> bool {
    let planar = matches!(inst.dimension(), Dimension::One | Dimension::Two);
    let metric = inst.is_geometric() || inst.check_metric().is_empty();
    let m = inst.edge_count();
    match algo {
        Algo::Auto => true,
        Algo::BipRotation | Algo::Sector => planar && graph::bipartition(inst).is_some(),
        Algo::Kcolor => planar,
        Algo::CompleteSplit => planar && m > 0 && graph::is_complete(inst),
        Algo::Bits1d => inst.dimension() == Dimension::One,
        Algo::Tree => metric && graph::is_tree(inst),
        Algo::Arboricity => metric,
        Algo::Oracle => m <= 7,
        Algo::OracleDiscrete => !inst.is_geometric() || inst.dimension() == Dimension::One,
    }
}

const ALGOS: [Algo; 10] = [
    Algo::Auto,
    Algo::BipRotation,
    Algo::Sector,
    Algo::Kcolor,
    Algo::CompleteSplit,
    Algo::Bits1d,
    Algo::Tree,
    Algo::Arboricity,
    Algo::Oracle,
    Algo::OracleDiscrete,
];

fn c1_validity() -> Check {
    let mut classes: Vec<(&str, Vec<Instance>)> = vec![
        ("bipartite1d", random_class(RandomKind::Bipartite1d, 200, 2..=11)),
        ("complete1d", random_class(RandomKind::Complete1d, 200, 2..=11)),
        ("bipartite2d", random_class(RandomKind::Bipartite2d, 200, 2..=11)),
        ("complete2d", random_class(RandomKind::Complete2d, 200, 2..=11)),
        ("sparse2d", random_class(RandomKind::Sparse2d, 200, 2..=11)),
        ("tree3d", random_class(RandomKind::Tree3d, 200, 2..=11)),
        ("gadget", gadget_corpus(200)),
    ];
    classes.push(("clustered2d", clustered_corpus(200).into_iter().map(|(i, _)| i).collect()));
    let limits = Limits { edges: 7, chromatic_vertices: 0 };
    let mut runs = 0;
    let mut trajectories = 0;
    for (class, instances) in &classes {
        for (k, inst) in instances.iter().enumerate() {
            // 1D costs are 0 or 180, gadget costs multiples of PHI.
            let step = if inst.is_geometric() { 180.0 } else { PHI };
            let opts = SolveOptions { root: None, step: Some(step), max_steps: 8 };
            for algo in ALGOS.into_iter().filter(|&a| applicable(inst, a)) {
                let solved = cli::solve(inst, algo, &opts, limits).map_err(|e| format!("{class}#{k} {algo:?}: {e}"))?;
                let verdict = validate_schedule(inst, &solved.schedule);
                if !verdict.is_valid() {
                    return fail(format!("{class}#{k} {algo:?}: {:?}", verdict.violations[0]));
                }
                if let Some(traj) = &solved.trajectory {
                    let tv = validate_trajectory(inst, &solved.schedule, traj);
                    if !tv.is_valid() {
                        return fail(format!("{class}#{k} {algo:?}: trajectory {:?}", tv.faults[0]));
                    }
                    trajectories += 1;
                }
                if let Some(bs) = &solved.bits {
                    if !bs.cover_violations(inst).is_empty() {
                        return fail(format!("{class}#{k} {algo:?}: bits leave edges uncovered"));
                    }
                }
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} schedules over {} classes, {trajectories} trajectories", classes.len()))
}

fn c2_line_optimality() -> Check {
    let mut compared = 0;
    for n in 1..=10 {
        for seed in 0..12 {
            let inst = gen_random(RandomKind::Bipartite1d, n, seed).unwrap().instance;
            let (ours, exact) = (line::solve_bipartite_1d(&inst).unwrap().steps(), exact_1d(&inst, 10).unwrap().steps());
            if ours != exact {
                return fail(format!("bipartite n={n} seed={seed}: {ours} steps, optimum {exact}"));
            }
            compared += 1;
        }
        if n >= 2 {
            let inst = gen_random(RandomKind::Complete1d, n, n as u64).unwrap().instance;
            let (ours, exact) = (line::solve_complete_1d(&inst).unwrap().steps(), exact_1d(&inst, 10).unwrap().steps());
            if ours != exact {
                return fail(format!("K{n}: {ours} steps, optimum {exact}"));
            }
            compared += 1;
        }
    }
    let three = line_three_step_instance();
    if exact_1d(&three, 10).unwrap().steps() != 3 {
        return fail("three-step line instance is not 3 steps");
    }
    let k8 = gen_random(RandomKind::Complete1d, 8, 0).unwrap().instance;
    let bs = line::solve_complete_1d(&k8).unwrap();
    if bs.steps() != 3 || bs.scan_time() != 360.0 {
        return fail(format!("K8 gave N={} ({})", bs.steps(), bs.scan_time()));
    }
    Ok(format!("{compared} instances match exact_1d, K8 N=3 at 360"))
}

fn c3_coloring_ceiling() -> Check {
    let mut worst = 0;
    for c in 2..=64usize {
        let k = gen_random(RandomKind::Complete1d, c, c as u64).unwrap().instance;
        let coloring = greedy_coloring(&k);
        let bs = line::vectors_from_coloring(&k, &coloring).map_err(|e| format!("C={c}: {e}"))?;
        let lc = (c as f64).log2();
        let ceiling = (lc + 0.5 * lc.log2() + 1.0).ceil() as usize;
        if bs.steps() > ceiling {
            return fail(format!("C={c}: N={} above {ceiling}", bs.steps()));
        }
        if c == 2 && bs.steps() != 2 {
            return fail(format!("C=2: N={}", bs.steps()));
        }
        for a in k.vertices() {
            for b in k.vertices().filter(|b| coloring[b.0] != coloring[a.0]) {
                if !incomparable(bs.vector(a), bs.vector(b)) {
                    return fail(format!("C={c}: vectors of {a} and {b} comparable"));
                }
            }
        }
        if !bs.cover_violations(&k).is_empty() {
            return fail(format!("C={c}: cover property fails"));
        }
        worst = worst.max(ceiling - bs.steps());
    }
    Ok(format!("C=2..64 within the ceiling (slack up to {worst} steps)"))
}

fn bipartite_corpus() -> Vec<(Instance, Bipartition)> {
    let mut all: Vec<(Instance, Bipartition)> = (0..200)
        .map(|seed| gen_random(RandomKind::Bipartite2d, 2 + (seed % 12) as usize, seed).unwrap())
        .chain((0..100).map(|seed| gen_random(RandomKind::Bipartite1d, 2 + (seed % 10) as usize, seed).unwrap()))
        .map(|g| (g.instance, g.partition.unwrap()))
        .collect();
    all.extend(clustered_corpus(200));
    all
}

fn c4_rotation() -> Check {
    let mut separated = 0;
    let mut worst: f64 = 0.0;
    let corpus = bipartite_corpus();
    for (k, (inst, part)) in corpus.iter().enumerate() {
        let s = plane::bipartite_rotation(inst, part).map_err(|e| format!("#{k}: {e}"))?.schedule;
        let t = s.makespan();
        worst = worst.max(t);
        if t > 360.0 + 1e-6 {
            return fail(format!("#{k}: makespan {t}"));
        }
        if separation(inst, part) {
            separated += 1;
            if t > 180.0 + 1e-6 {
                return fail(format!("#{k}: separated but makespan {t}"));
            }
        }
    }
    if separated == 0 {
        return fail("no separated instance in the corpus");
    }
    Ok(format!("{} instances, max {worst:.3}; {separated} separated, all within 180", corpus.len()))
}

fn c5_sector() -> Check {
    let mut compared = 0;
    let mut below_90 = 0;
    let mut worst: f64 = 0.0;
    for (k, (inst, part)) in bipartite_corpus().iter().enumerate() {
        let sol = plane::sector_approx(inst, part).map_err(|e| format!("#{k}: {e}"))?;
        let t = sol.schedule.makespan();
        let lambda = plane::lambda_cone(inst).unwrap();
        match SectorPlan::for_lambda(lambda) {
            Some(plan) => {
                below_90 += 1;
                if t > 3.0 * plan.width + 1e-9 {
                    return fail(format!("#{k}: {t} above 3 x {}", plan.width));
                }
            }
            None if t > 4.0 * lambda.max(90.0) + 1e-9 => return fail(format!("#{k}: {t} above 4 x {lambda}")),
            None => {}
        }
        if (1..=9).contains(&inst.edge_count()) {
            let opt = exact_order_search(inst, 9).unwrap().makespan();
            if t > 4.5 * opt + 1e-6 {
                return fail(format!("#{k}: {t} above 4.5 x {opt}"));
            }
            if opt > 0.0 {
                worst = worst.max(t / opt);
            }
            compared += 1;
        }
    }
    if compared < 100 {
        return fail(format!("only {compared} instances with at most 9 edges"));
    }
    Ok(format!("{compared} compared with the optimum, max ratio {worst:.3}; {below_90} with cone below 90"))
}

fn c6_bounds() -> Check {
    let mut instances: Vec<Instance> = Vec::new();
    for kind in RandomKind::ALL {
        instances.extend(random_class(kind, 40, 2..=6).into_iter().filter(|i| i.edge_count() <= 9));
    }
    instances.extend(clustered_corpus(60).into_iter().map(|(i, _)| i).filter(|i| i.edge_count() <= 9));
    instances.extend(gadget_corpus(60).into_iter().filter(|i| i.edge_count() <= 9));
    for n in 1..=6 {
        instances.push(gen_orthant_star(n, n).unwrap());
        if n <= 3 {
            instances.push(gen_orthant_star(n, 3).unwrap());
        }
    }
    instances.push(line_three_step_instance());
    let mut tight = 0;
    for (k, inst) in instances.iter().enumerate() {
        let opt = exact_order_search(inst, 9).unwrap().makespan();
        let chi = exact_chromatic(inst, 14).unwrap();
        let report = bound_report(inst, Some(chi));
        for b in [report.lambda, report.chromatic_bound, report.star_bound] {
            if b.value > opt + 1e-9 {
                return fail(format!("#{k}: {} bound {} above optimum {opt}", b.source, b.value));
            }
        }
        if (report.best().value - opt).abs() < 1e-9 {
            tight += 1;
        }
    }
    Ok(format!("{} instances, best bound tight on {tight}", instances.len()))
}

fn c7_cut_cover() -> Check {
    let mut checked = 0;
    let mut solutions = Vec::new();
    for (inst, part) in bipartite_corpus().into_iter().filter(|(i, _)| i.dimension() == Dimension::Two) {
        solutions.push((plane::bipartite_rotation(&inst, &part).unwrap(), inst.clone()));
        solutions.push((plane::sector_approx(&inst, &part).unwrap(), inst));
    }
    for n in 2..=16 {
        let inst = gen_random(RandomKind::Complete2d, n, n as u64).unwrap().instance;
        solutions.push((plane::complete_recursive_split(&inst).unwrap(), inst));
    }
    for (k, (sol, inst)) in solutions.iter().enumerate() {
        let traj = sol.trajectory.as_ref().unwrap();
        if !validate_schedule(inst, &sol.schedule).is_valid() || !validate_trajectory(inst, &sol.schedule, traj).is_valid() {
            continue;
        }
        let cover = cut_cover_extract(inst, &sol.schedule, traj).map_err(|e| format!("#{k}: {e}"))?;
        if let Some(e) = cover.violations(inst).first() {
            return fail(format!("#{k} ({}): edge {e} joins one quadrant", sol.schedule.tag));
        }
        checked += 1;
    }
    Ok(format!("{checked} validated trajectories, no same-quadrant scan"))
}

/// All formulas on at most three variables with one or two clauses, one per
/// class under variable renaming and reordering of literals and clauses.
fn small_formulas() -> Vec<Formula> {
    let literals: Vec<Literal> = (0..3).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
    let code = |l: &Literal| 2 * l.var + l.negated as usize;
    let mut clauses: Vec<[Literal; 3]> = Vec::new();
    for a in 0..6 {
        for b in a..6 {
            for c in b..6 {
                clauses.push([literals[a], literals[b], literals[c]]);
            }
        }
    }
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let canonical = |f: &[[Literal; 3]]| -> Vec<[usize; 3]> {
        perms
            .iter()
            .map(|p| {
                let mut cs: Vec<[usize; 3]> = f
                    .iter()
                    .map(|c| {
                        let mut k = c.map(|l| code(&Literal { var: p[l.var], negated: l.negated }));
                        k.sort();
                        k
                    })
                    .collect();
                cs.sort();
                cs
            })
            .min()
            .unwrap()
    };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut consider = |f: Vec<[Literal; 3]>| {
        if seen.insert(canonical(&f)) {
            // Compact the used variables to x1..xk.
            let used: BTreeSet<usize> = f.iter().flatten().map(|l| l.var).collect();
            let index: Vec<usize> = (0..3).map(|v| used.iter().filter(|&&u| u < v).count()).collect();
            let clauses = f.iter().map(|c| c.map(|l| Literal { var: index[l.var], negated: l.negated })).collect();
            out.push(Formula::new((1..=used.len()).map(|i| format!("x{i}")).collect(), clauses).unwrap());
        }
    };
    for (i, a) in clauses.iter().enumerate() {
        consider(vec![*a]);
        for b in &clauses[i..] {
            consider(vec![*a, *b]);
        }
    }
    out
}

fn c8_nae_dichotomy() -> Check {
    let formulas = small_formulas();
    let mut sat = 0;
    for f in &formulas {
        let witness = nae3sat_check(f).unwrap();
        let g = gen_nae_gadget(f, PHI).unwrap();
        match (witness, discrete_step_oracle(&g.instance, PHI, 3)) {
            (Some(a), Ok(sol)) if sol.steps == 3 => {
                let s: ScanSchedule = g.witness_schedule(a).ok_or_else(|| format!("{f}: no witness schedule"))?;
                if !validate_schedule(&g.instance, &s).is_valid() {
                    return fail(format!("{f}: witness schedule invalid"));
                }
                sat += 1;
            }
            (None, Err(Error::NoSolutionWithin(3))) => {}
            (w, r) => return fail(format!("{f}: satisfiable={} but oracle gave {:?}", w.is_some(), r.map(|s| s.steps))),
        }
    }
    Ok(format!("{} formulas up to renaming, {sat} satisfiable with 3 steps, the rest need 4 or more", formulas.len()))
}

fn c9_trees() -> Check {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut seed = 0;
    while count < 50 {
        let inst = gen_random(RandomKind::Tree3d, 2 + (seed % 9) as usize, seed).unwrap().instance;
        seed += 1;
        let max_degree = inst.vertices().map(|v| inst.degree(v)).max().unwrap_or(0);
        if inst.edge_count() > 9 || max_degree > 12 {
            continue;
        }
        let opt = exact_order_search(&inst, 9).unwrap().makespan();
        let t = tree::tree_approx(&inst, VertexId(0)).unwrap().makespan();
        if t > 2.5 * opt + 1e-9 {
            return fail(format!("seed {}: {t} above 2.5 x {opt}", seed - 1));
        }
        if opt > 0.0 {
            worst = worst.max(t / opt);
        } else if t > 1e-9 {
            return fail(format!("seed {}: optimum 0 but {t}", seed - 1));
        }
        count += 1;
    }
    if worst > 2.0 + 1e-9 {
        return fail(format!("measured ratio {worst:.4} above 2"));
    }
    Ok(format!("{count} trees, max ratio {worst:.3}"))
}

fn c10_complete_split() -> Check {
    for n in 2..=64usize {
        let inst = gen_random(RandomKind::Complete2d, n, n as u64).unwrap().instance;
        let sol = plane::complete_recursive_split(&inst).map_err(|e| format!("n={n}: {e}"))?;
        let levels = (n as f64).log2().ceil();
        let bound = levels * 180.0 + (levels - 1.0) * 90.0;
        if sol.schedule.makespan() > bound + 1e-9 {
            return fail(format!("n={n}: {} above {bound}", sol.schedule.makespan()));
        }
        if !validate_schedule(&inst, &sol.schedule).is_valid() {
            return fail(format!("n={n}: invalid schedule"));
        }
    }
    Ok("n=2..64 within the level bound".into())
}

fn c11_geodesic() -> Check {
    let values: Vec<f64> = (0..=2).map(|s| star_sequential_bound(&gen_geodesic_star(s).unwrap()).unwrap()).collect();
    if values.windows(2).all(|w| w[1] > w[0]) {
        Ok(format!("star bounds {:.3}, {:.3}, {:.3}", values[0], values[1], values[2]))
    } else {
        fail(format!("not increasing: {values:?}"))
    }
}

fn c12_determinism(dir: &Path) -> Check {
    let bin = env!("CARGO_BIN_EXE_scancover");
    let mut instances: Vec<(String, Instance)> = Vec::new();
    for kind in RandomKind::ALL {
        for seed in 0..3 {
            instances.push((format!("{}-{seed}", kind.name()), gen_random(kind, 7, seed).unwrap().instance));
        }
    }
    instances.push(("gadget".into(), gen_nae_gadget(&Formula::parse("(x1,x2,!x3)").unwrap(), PHI).unwrap().instance));
    instances.push(("orthant".into(), gen_orthant_star(4, 4).unwrap()));
    let names = ["auto", "bip-rotation", "sector", "kcolor", "complete-split", "bits-1d", "tree", "arboricity", "oracle", "oracle-discrete"];
    let mut compared = 0;
    for (name, inst) in &instances {
        let path = dir.join(format!("{name}.json"));
        format::write_text(&path, &format::instance_to_json(inst)).map_err(|e| e.to_string())?;
        for (algo, label) in ALGOS.iter().zip(names) {
            if !applicable(inst, *algo) {
                continue;
            }
            let outputs: Vec<Vec<u8>> = (0..2)
                .map(|k| {
                    let out = dir.join(format!("{name}.{label}.{k}.json"));
                    let status = Command::new(bin).args(["solve", path.to_str().unwrap(), "--algo", label, "-o", out.to_str().unwrap()]).output();
                    match status {
                        Ok(o) if o.status.success() => fs::read(&out).map_err(|e| e.to_string()),
                        Ok(o) => Err(format!("{name} {label}: {}", String::from_utf8_lossy(&o.stderr).trim())),
                        Err(e) => Err(e.to_string()),
                    }
                })
                .collect::<Result<_, _>>()?;
            if outputs[0] != outputs[1] {
                return fail(format!("{name} {label}: schedule files differ"));
            }
            compared += 1;
        }
    }
    Ok(format!("{compared} solve runs reproduced byte for byte"))
}

// ---------------------------------------------------------------------------

fn run(id: usize, name: &str, budget: Option<Duration>, check: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
        let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
        Err(format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = start.elapsed();
    let result = match (result, budget) {
        (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.1?}, budget {b:?}")),
        (r, _) => r,
    };
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("{tag} {id:>2} {name}: {detail} [{:.1}s]", elapsed.as_secs_f64());
    result.is_ok()
}

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let dir = tempfile::tempdir().expect("temporary directory");
    let minute = Duration::from_secs(60);
    let results = [
        run(1, "validity suite", Some(minute), c1_validity),
        run(2, "1D optimality", None, c2_line_optimality),
        run(3, "coloring step ceiling", None, c3_coloring_ceiling),
        run(4, "rotation absolute bounds", None, c4_rotation),
        run(5, "sector 4.5-approximation", Some(5 * minute), c5_sector),
        run(6, "lower-bound soundness", None, c6_bounds),
        run(7, "cut-cover extraction", None, c7_cut_cover),
        run(8, "NAE gadget dichotomy", Some(10 * minute), c8_nae_dichotomy),
        run(9, "tree approximation", None, c9_trees),
        run(10, "complete-graph split", None, c10_complete_split),
        run(11, "geodesic trend", None, c11_geodesic),
        run(12, "determinism", None, || c12_determinism(dir.path())),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
