//! Schedules, trajectories and their validators.
//!
//! A [`ScanSchedule`] assigns a time to every edge. It is feasible when any
//! two incident edges are at least their transition cost apart. A
//! [`Trajectory`] is the continuous witness: per vertex a list of timed
//! headings, joined by shortest rotations at no more than unit speed.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::geom::{self, Vec3};
use crate::model::{EdgeId, Instance, VertexId};
use crate::{Error, Result, TOLERANCE};

#[derive(Debug, Clone, PartialEq)]
pub struct ScanSchedule {
    /// Scan time of each edge, indexed by [`EdgeId`].
    pub times: Vec<f64>,
    /// Which algorithm produced the schedule.
    pub tag: String,
}

impl ScanSchedule {
    pub fn new(times: Vec<f64>, tag: impl Into<String>) -> Self {
        ScanSchedule { times, tag: tag.into() }
    }

    pub fn time(&self, e: EdgeId) -> f64 {
        self.times[e.0]
    }

    pub fn makespan(&self) -> f64 {
        self.times.iter().copied().fold(0.0, f64::max)
    }

    /// Edges sorted by scan time, ties broken by edge id.
    pub fn order(&self) -> Vec<EdgeId> {
        let mut order: Vec<EdgeId> = (0..self.times.len()).map(EdgeId).collect();
        order.sort_by(|&a, &b| self.times[a.0].total_cmp(&self.times[b.0]).then(a.cmp(&b)));
        order
    }
}

/// The pointwise-smallest schedule that scans the edges in `order`.
pub fn schedule_from_order(inst: &Instance, order: &[EdgeId]) -> Result<ScanSchedule> {
    let m = inst.edge_count();
    if order.len() != m {
        return Err(Error::IncompleteOrder);
    }
    let mut times: Vec<Option<f64>> = vec![None; m];
    for &e in order {
        if e.0 >= m || times[e.0].is_some() {
            return Err(Error::IncompleteOrder);
        }
        let edge = inst.edge(e);
        let mut t: f64 = 0.0;
        for v in [edge.u, edge.v] {
            for &f in inst.incident(v) {
                if let Some(tf) = times[f.0] {
                    t = t.max(tf + inst.cost(e, f));
                }
            }
        }
        times[e.0] = Some(t);
    }
    Ok(ScanSchedule::new(times.into_iter().map(|t| t.unwrap()).collect(), "order"))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Two edges around `vertex` are closer in time than their cost.
    Separation { vertex: VertexId, first: EdgeId, second: EdgeId, gap: f64, required: f64 },
    /// A time is negative or not finite.
    BadTime { edge: EdgeId, time: f64 },
    /// The schedule does not have one time per edge.
    Length { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleVerdict {
    pub makespan: f64,
    pub violations: Vec<Violation>,
}

impl ScheduleVerdict {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every incident pair against its separation requirement.
pub fn validate_schedule(inst: &Instance, schedule: &ScanSchedule) -> ScheduleVerdict {
    let m = inst.edge_count();
    if schedule.times.len() != m {
        return ScheduleVerdict {
            makespan: schedule.makespan(),
            violations: vec![Violation::Length { expected: m, found: schedule.times.len() }],
        };
    }
    let mut violations = Vec::new();
    for (i, &t) in schedule.times.iter().enumerate() {
        if !t.is_finite() || t < -TOLERANCE {
            violations.push(Violation::BadTime { edge: EdgeId(i), time: t });
        }
    }
    for v in inst.vertices() {
        let inc = inst.incident(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                let gap = (schedule.times[a.0] - schedule.times[b.0]).abs();
                let required = inst.cost(a, b);
                if gap + TOLERANCE < required {
                    violations.push(Violation::Separation { vertex: v, first: a.min(b), second: a.max(b), gap, required });
                }
            }
        }
    }
    ScheduleVerdict { makespan: schedule.makespan(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waypoint {
    pub time: f64,
    /// Unit heading; planar instances keep `z = 0`.
    pub heading: Vec3,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory {
    /// Waypoints per vertex, strictly increasing in time.
    pub paths: Vec<Vec<Waypoint>>,
}

impl Trajectory {
    pub fn new(paths: Vec<Vec<Waypoint>>) -> Self {
        Trajectory { paths }
    }

    /// Heading of `v` at time `t`: constant before the first and after the
    /// last waypoint, uniform shortest rotation in between. At a waypoint
    /// time the waypoint heading is returned.
    pub fn heading_at(&self, v: VertexId, t: f64) -> Option<Vec3> {
        let path = self.paths.get(v.0)?;
        let first = path.first()?;
        if t <= first.time {
            return Some(first.heading);
        }
        // First waypoint strictly after t.
        let k = path.partition_point(|w| w.time <= t);
        if k == path.len() {
            return Some(path[k - 1].heading);
        }
        let (a, b) = (path[k - 1], path[k]);
        let fraction = (t - a.time) / (b.time - a.time);
        Some(geom::slerp(a.heading, b.heading, fraction))
    }
}

/// Realize a feasible schedule: every vertex faces its partner at each scan
/// time and turns along the shorter arc in between.
pub fn trajectory_from_schedule(inst: &Instance, schedule: &ScanSchedule) -> Result<Trajectory> {
    if !inst.is_geometric() {
        return Err(Error::WrongDimension { expected: "geometric" });
    }
    if schedule.times.len() != inst.edge_count() {
        return Err(Error::ScheduleLength { expected: inst.edge_count(), found: schedule.times.len() });
    }
    let mut paths = Vec::with_capacity(inst.vertex_count());
    for v in inst.vertices() {
        let mut inc: Vec<EdgeId> = inst.incident(v).to_vec();
        inc.sort_by(|&a, &b| schedule.times[a.0].total_cmp(&schedule.times[b.0]).then(a.cmp(&b)));
        let mut path: Vec<Waypoint> = Vec::with_capacity(inc.len());
        let mut last_edge: Option<EdgeId> = None;
        for e in inc {
            let time = schedule.times[e.0];
            let heading = inst.direction(v, e);
            if let (Some(prev), Some(pe)) = (path.last(), last_edge) {
                let turn = geom::angle_between(prev.heading, heading);
                let gap = time - prev.time;
                if turn > gap + TOLERANCE {
                    return Err(Error::InfeasibleSchedule { vertex: v, first: pe, second: e });
                }
                if gap <= TOLERANCE {
                    // Simultaneous scans need the same heading; keep one waypoint.
                    continue;
                }
            }
            path.push(Waypoint { time, heading });
            last_edge = Some(e);
        }
        paths.push(path);
    }
    Ok(Trajectory::new(paths))
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryFault {
    /// At the scan time of `edge`, `vertex` looks `deviation` degrees away from its partner.
    NotFacing { edge: EdgeId, vertex: VertexId, deviation: f64 },
    /// Between waypoints `index - 1` and `index` the vertex turns faster than unit speed.
    TooFast { vertex: VertexId, index: usize, turn: f64, gap: f64 },
    /// Waypoint times are not strictly increasing, or a heading is not a unit vector.
    Malformed { vertex: VertexId, index: usize },
    /// Vertex has scans but no waypoints, or the path count is wrong.
    Missing { vertex: VertexId },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrajectoryVerdict {
    pub faults: Vec<TrajectoryFault>,
}

impl TrajectoryVerdict {
    pub fn is_valid(&self) -> bool {
        self.faults.is_empty()
    }
}

/// Check that `traj` moves at most at unit speed and that both endpoints
/// of every edge face each other at its scan time.
pub fn validate_trajectory(inst: &Instance, schedule: &ScanSchedule, traj: &Trajectory) -> TrajectoryVerdict {
    let mut faults = Vec::new();
    if !inst.is_geometric() || schedule.times.len() != inst.edge_count() {
        faults.push(TrajectoryFault::Missing { vertex: VertexId(0) });
        return TrajectoryVerdict { faults };
    }
    for v in inst.vertices() {
        let Some(path) = traj.paths.get(v.0) else {
            if inst.degree(v) > 0 {
                faults.push(TrajectoryFault::Missing { vertex: v });
            }
            continue;
        };
        if path.is_empty() && inst.degree(v) > 0 {
            faults.push(TrajectoryFault::Missing { vertex: v });
        }
        for (i, w) in path.iter().enumerate() {
            if !w.time.is_finite() || (geom::norm(w.heading) - 1.0).abs() > 1e-6 {
                faults.push(TrajectoryFault::Malformed { vertex: v, index: i });
            }
            if i > 0 {
                let prev = path[i - 1];
                let gap = w.time - prev.time;
                if gap <= 0.0 {
                    faults.push(TrajectoryFault::Malformed { vertex: v, index: i });
                    continue;
                }
                let turn = geom::angle_between(prev.heading, w.heading);
                if turn > gap + TOLERANCE {
                    faults.push(TrajectoryFault::TooFast { vertex: v, index: i, turn, gap });
                }
            }
        }
    }
    if !faults.is_empty() {
        return TrajectoryVerdict { faults };
    }
    for e in inst.edge_ids() {
        let t = schedule.times[e.0];
        let edge = inst.edge(e);
        for v in [edge.u, edge.v] {
            let Some(h) = traj.heading_at(v, t) else {
                faults.push(TrajectoryFault::Missing { vertex: v });
                continue;
            };
            let deviation = geom::angle_between(h, inst.direction(v, e));
            if deviation > TOLERANCE {
                faults.push(TrajectoryFault::NotFacing { edge: e, vertex: v, deviation });
            }
        }
    }
    TrajectoryVerdict { faults }
}

/// Concatenates partial schedules ("phases") into one, shifting each new
/// phase by the smallest nonnegative offset that keeps every incident pair
/// across phases feasible.
#[derive(Debug, Clone)]
pub(crate) struct PhaseAssembler<'a> {
    inst: &'a Instance,
    times: Vec<Option<f64>>,
}

impl<'a> PhaseAssembler<'a> {
    pub(crate) fn new(inst: &'a Instance) -> Self {
        PhaseAssembler { inst, times: vec![None; inst.edge_count()] }
    }

    /// Smallest `delta >= 0` such that `phase` shifted by `delta` respects
    /// every cost against the edges placed so far.
    pub(crate) fn minimal_offset(&self, phase: &[(EdgeId, f64)]) -> f64 {
        // Each incident pair forbids the open interval (t_e - a - t_f, t_e + a - t_f).
        let mut forbidden: Vec<(f64, f64)> = Vec::new();
        for &(f, tf) in phase {
            let edge = self.inst.edge(f);
            for v in [edge.u, edge.v] {
                for &e in self.inst.incident(v) {
                    if let Some(te) = self.times[e.0] {
                        let a = self.inst.cost(e, f);
                        if a > TOLERANCE {
                            forbidden.push((te - a - tf, te + a - tf));
                        }
                    }
                }
            }
        }
        forbidden.sort_by(|x, y| x.0.total_cmp(&y.0));
        let inside = |d: f64, &(lo, hi): &(f64, f64)| lo + TOLERANCE < d && d < hi - TOLERANCE;
        let mut delta: f64 = 0.0;
        for iv in &forbidden {
            if inside(delta, iv) {
                delta = iv.1;
            }
        }
        // The sweep is exact for intervals sorted by their left end; the loop
        // below only guards against rounding at coinciding endpoints.
        while let Some(iv) = forbidden.iter().find(|iv| inside(delta, iv)) {
            delta = iv.1;
        }
        delta
    }

    /// Place `phase` at its minimal offset; returns the offset used.
    pub(crate) fn push(&mut self, phase: &[(EdgeId, f64)]) -> f64 {
        let delta = self.minimal_offset(phase);
        for &(e, t) in phase {
            debug_assert!(self.times[e.0].is_none(), "edge scheduled twice");
            self.times[e.0] = Some(t + delta);
        }
        delta
    }

    pub(crate) fn finish(self, tag: impl Into<String>) -> ScanSchedule {
        let times = self.times.into_iter().map(|t| t.expect("every edge belongs to some phase")).collect();
        ScanSchedule::new(times, tag)
    }
}
