//! Strategies for point sets in the plane.
//!
//! Headings are measured counterclockwise from the positive x-axis;
//! "clockwise" means decreasing heading. The rotation strategies rely on
//! alternate angles: if `u` starts at heading `h` and `v` at `h + 180` and
//! both turn in the same sense at the same speed, they face each other at
//! the moment `u` looks along `uv`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{self, Vec3};
use crate::graph::{self, Bipartition};
use crate::model::{Dimension, EdgeId, Instance, VertexId};
use crate::schedule::{trajectory_from_schedule, PhaseAssembler, ScanSchedule, Trajectory, Waypoint};
use crate::{line, Error, Result, TOLERANCE};

/// A schedule together with the motion that realizes it.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub schedule: ScanSchedule,
    pub trajectory: Option<Trajectory>,
}

/// The line `{p : normal . p = offset}`. `P1` lies strictly on the negative
/// side, `P2` strictly on the positive side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatingLine {
    pub normal: [f64; 2],
    pub offset: f64,
}

impl SeparatingLine {
    pub fn signed_distance(&self, p: [f64; 2]) -> f64 {
        self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset
    }

    /// Heading of the normal, in `[0, 360)`.
    pub fn normal_heading(&self) -> f64 {
        geom::heading_deg([self.normal[0], self.normal[1], 0.0])
    }
}

fn require_planar(inst: &Instance) -> Result<()> {
    match inst.dimension() {
        Dimension::One | Dimension::Two => Ok(()),
        _ => Err(Error::WrongDimension { expected: "2D" }),
    }
}

/// Smallest circular arc containing all `angles`: `(start, width)`.
fn enclosing_arc(angles: &mut [f64]) -> Option<(f64, f64)> {
    if angles.is_empty() {
        return None;
    }
    angles.sort_by(f64::total_cmp);
    let n = angles.len();
    let mut best_gap = angles[0] + 360.0 - angles[n - 1];
    let mut start = angles[0];
    for i in 1..n {
        let gap = angles[i] - angles[i - 1];
        if gap > best_gap {
            best_gap = gap;
            start = angles[i];
        }
    }
    Some((start, 360.0 - best_gap))
}

/// A line strictly separating the two point sets, if one exists.
///
/// The open set of separating normals is nonempty exactly when all
/// difference vectors `q - p` (`p` in `P1`, `q` in `P2`) fit into an open
/// half-plane; the bisector of their enclosing arc is then a normal.
pub fn detect_separating_line(p1: &[[f64; 2]], p2: &[[f64; 2]]) -> Option<SeparatingLine> {
    if p1.is_empty() || p2.is_empty() {
        return None;
    }
    let mut angles = Vec::with_capacity(p1.len() * p2.len());
    for p in p1 {
        for q in p2 {
            let d = [q[0] - p[0], q[1] - p[1], 0.0];
            if geom::norm(d) == 0.0 {
                return None;
            }
            angles.push(geom::heading_deg(d));
        }
    }
    let (start, width) = enclosing_arc(&mut angles)?;
    if width >= 180.0 - TOLERANCE {
        return None;
    }
    let n = geom::heading_vec(start + width / 2.0);
    let normal = [n[0], n[1]];
    let proj = |p: &[f64; 2]| normal[0] * p[0] + normal[1] * p[1];
    let hi1 = p1.iter().map(proj).fold(f64::NEG_INFINITY, f64::max);
    let lo2 = p2.iter().map(proj).fold(f64::INFINITY, f64::min);
    if lo2 - hi1 <= 1e-12 * (1.0 + hi1.abs().max(lo2.abs())) {
        return None;
    }
    Some(SeparatingLine { normal, offset: (hi1 + lo2) / 2.0 })
}

/// Width of the smallest cone at `v` containing all its edge directions.
pub fn vertex_cone(inst: &Instance, v: VertexId) -> f64 {
    let mut angles: Vec<f64> = inst.incident(v).iter().map(|&e| inst.heading(v, e)).collect();
    enclosing_arc(&mut angles).map_or(0.0, |(_, w)| w)
}

/// `Λ`: the largest per-vertex cone width. A lower bound on every schedule.
pub fn lambda_cone(inst: &Instance) -> Result<f64> {
    require_planar(inst)?;
    Ok(inst.vertices().map(|v| vertex_cone(inst, v)).fold(0.0, f64::max))
}

fn check_partition(inst: &Instance, part: &Bipartition) -> Result<()> {
    if part.is_proper_for(inst) {
        Ok(())
    } else {
        Err(Error::NotBipartitePartition)
    }
}

fn planar(p: Vec3) -> [f64; 2] {
    [p[0], p[1]]
}

/// Waypoints of a vertex turning clockwise from `start` at unit speed,
/// sampled at the given scan times and every 90 degrees up to `end`.
fn clockwise_path(start: f64, end: f64, scans: &[f64]) -> Vec<Waypoint> {
    let mut times: Vec<f64> = scans.to_vec();
    times.push(0.0);
    times.push(end);
    let mut k = 1.0;
    while 90.0 * k < end {
        times.push(90.0 * k);
        k += 1.0;
    }
    times.sort_by(f64::total_cmp);
    times.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    times.into_iter().map(|t| Waypoint { time: t, heading: geom::heading_vec(start - t) }).collect()
}

/// Every vertex turns clockwise at unit speed; `P1` starts heading north and
/// `P2` south. Each edge is scanned within one full turn. If the two sides
/// are separated by a line, headings start parallel to that line and half a
/// turn suffices.
pub fn bipartite_rotation(inst: &Instance, part: &Bipartition) -> Result<Solution> {
    require_planar(inst)?;
    check_partition(inst, part)?;
    let active = |second: bool| -> Vec<[f64; 2]> {
        inst.vertices()
            .filter(|&v| inst.degree(v) > 0 && part.in_second(v) == second)
            .map(|v| planar(inst.point(v)))
            .collect()
    };
    let separator = detect_separating_line(&active(false), &active(true));

    let mut times = Vec::with_capacity(inst.edge_count());
    for e in inst.edge_ids() {
        let edge = inst.edge(e);
        let p1 = if part.in_second(edge.u) { edge.v } else { edge.u };
        let theta = inst.heading(p1, e);
        let t = match separator {
            // Start at normal + 90; every direction lies within 90 of the normal.
            Some(line) => (90.0 - geom::signed_deg(theta - line.normal_heading())).clamp(0.0, 180.0),
            None => geom::wrap_deg(90.0 - theta),
        };
        times.push(t);
    }
    let p1_start = match separator {
        Some(line) => line.normal_heading() + 90.0,
        None => 90.0,
    };

    let mut paths = Vec::with_capacity(inst.vertex_count());
    for v in inst.vertices() {
        let start = if part.in_second(v) { p1_start + 180.0 } else { p1_start };
        let scans: Vec<f64> = inst.incident(v).iter().map(|e| times[e.0]).collect();
        let end = scans.iter().copied().fold(0.0, f64::max);
        paths.push(clockwise_path(start, end, &scans));
    }
    let tag = if separator.is_some() { "bip-rotation/separated" } else { "bip-rotation" };
    Ok(Solution { schedule: ScanSchedule::new(times, tag), trajectory: Some(Trajectory::new(paths)) })
}

/// Sector layout for a given `Λ < 90`: `s` is maximal with
/// `Λ' = 360 / (2s) >= Λ`, which keeps `Λ' < 1.5 Λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorPlan {
    pub lambda: f64,
    pub s: usize,
    pub width: f64,
}

impl SectorPlan {
    pub fn for_lambda(lambda: f64) -> Option<SectorPlan> {
        if !(lambda > TOLERANCE && lambda < 90.0) {
            return None;
        }
        let mut s = libm::floor(180.0 / lambda) as usize;
        while s > 2 && 180.0 / (s as f64) < lambda {
            s -= 1;
        }
        Some(SectorPlan { lambda, s, width: 180.0 / s as f64 })
    }
}

/// Bipartite 2D schedule within `3 Λ'`, at most `4.5` times the optimum.
///
/// For `Λ >= 90` this is [`bipartite_rotation`]. Otherwise headings are cut
/// into `2s` sectors of width `Λ'`; each vertex's edges fall into at most two
/// adjacent sectors. Phase one sweeps the even sectors (and their opposites
/// on the `P2` side) clockwise during `[0, Λ']`; phase two sweeps the odd
/// ones counterclockwise during `[2Λ', 3Λ']`. The middle third is for
/// turning from one sector to the other.
pub fn sector_approx(inst: &Instance, part: &Bipartition) -> Result<Solution> {
    require_planar(inst)?;
    check_partition(inst, part)?;
    let m = inst.edge_count();
    // One canonical direction per edge, seen from its P1 endpoint.
    let p1_end = |e: EdgeId| {
        let edge = inst.edge(e);
        if part.in_second(edge.u) {
            edge.v
        } else {
            edge.u
        }
    };
    let theta: Vec<f64> = inst.edge_ids().map(|e| inst.heading(p1_end(e), e)).collect();
    let own_heading = |v: VertexId, e: EdgeId| {
        if part.in_second(v) {
            geom::wrap_deg(theta[e.0] + 180.0)
        } else {
            theta[e.0]
        }
    };
    let lambda = inst
        .vertices()
        .map(|v| {
            let mut a: Vec<f64> = inst.incident(v).iter().map(|&e| own_heading(v, e)).collect();
            enclosing_arc(&mut a).map_or(0.0, |(_, w)| w)
        })
        .fold(0.0, f64::max);

    if lambda >= 90.0 {
        let mut sol = bipartite_rotation(inst, part)?;
        sol.schedule.tag = alloc::format!("sector/{}", sol.schedule.tag);
        return Ok(sol);
    }
    if m == 0 || lambda <= TOLERANCE {
        // All edges at a vertex point the same way: scan everything at once.
        let schedule = ScanSchedule::new(vec![0.0; m], "sector/parallel");
        let trajectory = trajectory_from_schedule(inst, &schedule)?;
        return Ok(Solution { schedule, trajectory: Some(trajectory) });
    }

    let plan = SectorPlan::for_lambda(lambda).expect("0 < lambda < 90");
    let (s, w) = (plan.s, plan.width);
    let sectors = 2 * s;
    let index: Vec<usize> = theta.iter().map(|&t| (libm::floor(t / w) as usize).min(sectors - 1)).collect();
    let own_index = |v: VertexId, e: EdgeId| {
        if part.in_second(v) {
            (index[e.0] + s) % sectors
        } else {
            index[e.0]
        }
    };

    let times: Vec<f64> = inst
        .edge_ids()
        .map(|e| {
            let (r, t) = (index[e.0] as f64, theta[e.0]);
            if index[e.0].is_multiple_of(2) {
                ((r + 1.0) * w - t).clamp(0.0, w)
            } else {
                2.0 * w + (t - r * w).clamp(0.0, w)
            }
        })
        .collect();

    let mut paths = Vec::with_capacity(inst.vertex_count());
    for v in inst.vertices() {
        let own: BTreeSet<usize> = inst.incident(v).iter().map(|&e| own_index(v, e)).collect();
        assert!(own.len() <= 2, "vertex {v} spans {} sectors", own.len());
        if own.len() == 2 {
            let (a, b) = (*own.first().unwrap(), *own.last().unwrap());
            assert!(b - a == 1 || (a == 0 && b == sectors - 1), "vertex {v} sectors {a},{b} not adjacent");
        }
        let mut path: Vec<Waypoint> = Vec::new();
        let mut even = None;
        let mut odd = None;
        for &e in inst.incident(v) {
            if index[e.0].is_multiple_of(2) {
                even = Some(own_index(v, e));
            } else {
                odd = Some(own_index(v, e));
            }
        }
        if let Some(j) = even {
            let top = (j + 1) as f64 * w;
            path.push(Waypoint { time: 0.0, heading: geom::heading_vec(top) });
            path.push(Waypoint { time: w, heading: geom::heading_vec(top - w) });
        }
        if let Some(j) = odd {
            let bottom = j as f64 * w;
            path.push(Waypoint { time: 2.0 * w, heading: geom::heading_vec(bottom) });
            path.push(Waypoint { time: 3.0 * w, heading: geom::heading_vec(bottom + w) });
        }
        for &e in inst.incident(v) {
            let t = times[e.0];
            let heading = if index[e.0].is_multiple_of(2) {
                ((even.unwrap() + 1) as f64 * w) - t
            } else {
                odd.unwrap() as f64 * w + (t - 2.0 * w)
            };
            path.push(Waypoint { time: t, heading: geom::heading_vec(heading) });
        }
        path.sort_by(|a, b| a.time.total_cmp(&b.time));
        path.dedup_by(|a, b| (a.time - b.time).abs() <= 1e-12);
        paths.push(path);
    }
    let schedule = ScanSchedule::new(times, "sector");
    assert!(schedule.makespan() <= 3.0 * w + TOLERANCE, "sector makespan above 3 sector widths");
    Ok(Solution { schedule, trajectory: Some(Trajectory::new(paths)) })
}

/// Map arbitrary color labels to `0..k` in increasing label order.
fn compact_colors(coloring: &[usize]) -> (Vec<usize>, usize) {
    let labels: BTreeSet<usize> = coloring.iter().copied().collect();
    let rank: alloc::collections::BTreeMap<usize, usize> = labels.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    (coloring.iter().map(|c| rank[c]).collect(), labels.len())
}

fn check_coloring(inst: &Instance, coloring: &[usize]) -> Result<()> {
    if coloring.len() != inst.vertex_count() {
        return Err(Error::ColoringLength { expected: inst.vertex_count(), found: coloring.len() });
    }
    match inst.edge_ids().find(|&e| coloring[inst.edge(e).u.0] == coloring[inst.edge(e).v.0]) {
        Some(e) => Err(Error::ImproperColoring(e)),
        None => Ok(()),
    }
}

/// Split a `k`-colored graph into `ceil(log2 k)` bipartite graphs by the
/// lowest bit in which the endpoint colors differ, schedule each with
/// [`sector_approx`], and concatenate the phases with minimal offsets.
pub fn kcolor_decompose(inst: &Instance, coloring: &[usize]) -> Result<ScanSchedule> {
    require_planar(inst)?;
    check_coloring(inst, coloring)?;
    let (colors, k) = compact_colors(coloring);
    let phases = line::ceil_log2(k);
    let mut asm = PhaseAssembler::new(inst);
    for bit in 0..phases {
        let edges: Vec<EdgeId> = inst
            .edge_ids()
            .filter(|&e| {
                let edge = inst.edge(e);
                (colors[edge.u.0] ^ colors[edge.v.0]).trailing_zeros() as usize == bit
            })
            .collect();
        if edges.is_empty() {
            continue;
        }
        let sub = inst.restrict(&edges);
        let part = Bipartition::new(colors.iter().map(|c| c >> bit & 1 == 1).collect());
        let sol = sector_approx(&sub, &part)?;
        let phase: Vec<(EdgeId, f64)> = edges.iter().zip(&sol.schedule.times).map(|(&e, &t)| (e, t)).collect();
        asm.push(&phase);
    }
    Ok(asm.finish("kcolor"))
}

/// Upper bound `L * 180 + (L - 1) * 90` with `L = ceil(log2 n)`.
pub fn complete_split_bound(n: usize) -> f64 {
    let levels = line::ceil_log2(n) as f64;
    if levels == 0.0 {
        return 0.0;
    }
    levels * 180.0 + (levels - 1.0) * 90.0
}

/// Complete graphs in the plane: split the points at the median, alternating
/// vertical and horizontal lines, for `ceil(log2 n)` levels. The cross edges
/// of a level form separated bipartite graphs scanned within 180 by turning
/// from a heading parallel to the split line; all blocks of a level run at
/// once. Levels are concatenated with minimal offsets, never more than 90
/// of turning apart.
///
/// Points tied on the split coordinate are ordered by vertex id.
pub fn complete_recursive_split(inst: &Instance) -> Result<Solution> {
    require_planar(inst)?;
    let n = inst.vertex_count();
    if n < 2 || !graph::is_complete(inst) {
        return Err(Error::NotComplete);
    }
    let levels = line::ceil_log2(n);
    let mut blocks: Vec<Vec<VertexId>> = vec![inst.vertices().collect()];
    let mut asm = PhaseAssembler::new(inst);
    for level in 0..levels {
        let axis = level % 2;
        // The normal points towards the upper half; P1 (lower half) starts at normal + 90.
        let normal_heading = if axis == 0 { 0.0 } else { 90.0 };
        let mut phase = Vec::new();
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for mut block in blocks {
            if block.len() < 2 {
                continue;
            }
            block.sort_by(|&a, &b| inst.point(a)[axis].total_cmp(&inst.point(b)[axis]).then(a.cmp(&b)));
            let upper = block.split_off(block.len().div_ceil(2));
            for &a in &block {
                for &b in &upper {
                    let e = inst.edge_between(a, b).expect("complete graph");
                    let theta = inst.heading(a, e);
                    let t = (90.0 - geom::signed_deg(theta - normal_heading)).clamp(0.0, 180.0);
                    phase.push((e, t));
                }
            }
            next.push(block);
            next.push(upper);
        }
        asm.push(&phase);
        blocks = next;
    }
    let schedule = asm.finish("complete-split");
    assert!(
        schedule.makespan() <= complete_split_bound(n) + TOLERANCE,
        "complete split makespan above the level bound"
    );
    let trajectory = trajectory_from_schedule(inst, &schedule)?;
    Ok(Solution { schedule, trajectory: Some(trajectory) })
}
