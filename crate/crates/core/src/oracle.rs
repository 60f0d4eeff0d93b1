//! Exact solvers for small instances, used as ground truth.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds;
use crate::formula::Formula;
use crate::line::{BitSchedule, MAX_STEPS};
use crate::model::{Dimension, EdgeId, Instance, VertexId};
use crate::schedule::{schedule_from_order, ScanSchedule};
use crate::{Error, Result, TOLERANCE};

pub const DEFAULT_EDGE_LIMIT: usize = 9;
pub const DEFAULT_VERTEX_LIMIT_1D: usize = 10;
pub const DEFAULT_VERTEX_LIMIT_CHROMATIC: usize = 14;
pub const MAX_NAE_VARIABLES: usize = 20;

struct OrderSearch<'a> {
    inst: &'a Instance,
    /// Smallest transition cost among the pairs at each vertex.
    min_pair: Vec<f64>,
    times: Vec<Option<f64>>,
    order: Vec<EdgeId>,
    best: f64,
    best_order: Vec<EdgeId>,
    floor: f64,
}

impl OrderSearch<'_> {
    fn earliest(&self, e: EdgeId) -> f64 {
        let edge = self.inst.edge(e);
        let mut t: f64 = 0.0;
        for v in [edge.u, edge.v] {
            for &f in self.inst.incident(v) {
                if let Some(tf) = self.times[f.0] {
                    t = t.max(tf + self.inst.cost(e, f));
                }
            }
        }
        t
    }

    /// Lower bound on the makespan of any completion after placing an edge at `now`.
    fn completion_bound(&self, now: f64) -> f64 {
        let mut lb = now;
        for v in self.inst.vertices() {
            let left = self.inst.incident(v).iter().filter(|f| self.times[f.0].is_none()).count();
            if left > 0 {
                lb = lb.max(now + (left - 1) as f64 * self.min_pair[v.0]);
            }
        }
        for e in self.inst.edge_ids() {
            if self.times[e.0].is_none() {
                lb = lb.max(self.earliest(e));
            }
        }
        lb
    }

    fn done(&self) -> bool {
        self.best <= self.floor + TOLERANCE
    }

    /// Only orders whose times increase along the order (ties by edge id)
    /// are explored; some optimal schedule always has this form.
    fn search(&mut self, last: Option<(f64, EdgeId)>) {
        if self.done() {
            return;
        }
        if self.order.len() == self.inst.edge_count() {
            let makespan = self.order.iter().map(|e| self.times[e.0].unwrap()).fold(0.0, f64::max);
            if makespan < self.best - TOLERANCE {
                self.best = makespan;
                self.best_order = self.order.clone();
            }
            return;
        }
        for e in self.inst.edge_ids() {
            if self.times[e.0].is_some() {
                continue;
            }
            let t = self.earliest(e);
            if let Some((lt, le)) = last {
                if t < lt - TOLERANCE || (t <= lt + TOLERANCE && e < le) {
                    continue;
                }
            }
            if t >= self.best - TOLERANCE {
                continue;
            }
            self.times[e.0] = Some(t);
            if self.completion_bound(t) < self.best - TOLERANCE {
                self.order.push(e);
                self.search(Some((t, e)));
                self.order.pop();
            }
            self.times[e.0] = None;
            if self.done() {
                return;
            }
        }
    }
}

/// An optimal schedule by branch and bound over edge orders.
pub fn exact_order_search(inst: &Instance, edge_limit: usize) -> Result<ScanSchedule> {
    let m = inst.edge_count();
    if m > edge_limit {
        return Err(Error::TooLarge { size: m, limit: edge_limit });
    }
    let ids: Vec<EdgeId> = inst.edge_ids().collect();
    let start = schedule_from_order(inst, &ids)?;
    let min_pair = inst
        .vertices()
        .map(|v| {
            let inc = inst.incident(v);
            let mut min = f64::INFINITY;
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    min = min.min(inst.cost(a, b));
                }
            }
            if min.is_finite() {
                min
            } else {
                0.0
            }
        })
        .collect();
    let floor = bounds::bound_report(inst, None).best().value;
    let mut search = OrderSearch {
        inst,
        min_pair,
        times: vec![None; m],
        order: Vec::with_capacity(m),
        best: start.makespan(),
        best_order: ids,
        floor,
    };
    // Let the search rediscover the first order if nothing beats it.
    search.best += 2.0 * TOLERANCE;
    search.search(None);
    let mut schedule = schedule_from_order(inst, &search.best_order)?;
    schedule.tag = "oracle".into();
    Ok(schedule)
}

/// Result of [`discrete_step_oracle`].
#[derive(Debug, Clone, PartialEq)]
pub struct StepSolution {
    pub steps: usize,
    pub schedule: ScanSchedule,
}

struct StepCsp {
    /// Required step gap to each incident edge.
    neighbors: Vec<Vec<(usize, u32)>>,
}

impl StepCsp {
    fn gap_mask(k: usize, value: u32, gap: u32) -> u64 {
        // Values x with |x - value| >= gap.
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        if gap == 0 {
            return full;
        }
        let lo = value.saturating_sub(gap - 1) as usize;
        let hi = (value as usize + gap as usize - 1).min(k.saturating_sub(1));
        let width = hi + 1 - lo;
        let band = if width >= 64 { u64::MAX } else { ((1u64 << width) - 1) << lo };
        full & !band
    }

    fn solve(&self, k: usize, domains: &mut Vec<u64>, assigned: &mut Vec<Option<u32>>) -> bool {
        let pick = (0..domains.len())
            .filter(|&e| assigned[e].is_none())
            .min_by_key(|&e| (domains[e].count_ones(), core::cmp::Reverse(self.neighbors[e].len()), e));
        let Some(e) = pick else {
            return true;
        };
        let mut dom = domains[e];
        while dom != 0 {
            let value = dom.trailing_zeros();
            dom &= dom - 1;
            let saved = domains.clone();
            assigned[e] = Some(value);
            let mut ok = true;
            for &(f, gap) in &self.neighbors[e] {
                if assigned[f].is_none() {
                    domains[f] &= Self::gap_mask(k, value, gap);
                    if domains[f] == 0 {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && self.solve(k, domains, assigned) {
                return true;
            }
            *domains = saved;
            assigned[e] = None;
        }
        false
    }
}

/// The fewest time steps `0, step, 2 step, ...` that admit a schedule, when
/// every transition cost is a multiple of `step`.
pub fn discrete_step_oracle(inst: &Instance, step: f64, max_steps: usize) -> Result<StepSolution> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("step must be positive, got {step}")));
    }
    let m = inst.edge_count();
    let mut neighbors: Vec<Vec<(usize, u32)>> = vec![Vec::new(); m];
    for (a, b, c) in inst.incident_pairs() {
        let k = libm::round(c / step);
        if (c - k * step).abs() > TOLERANCE || k > MAX_STEPS as f64 {
            return Err(Error::CostsNotDiscrete);
        }
        if k > 0.0 {
            neighbors[a.0].push((b.0, k as u32));
            neighbors[b.0].push((a.0, k as u32));
        }
    }
    let csp = StepCsp { neighbors };
    for steps in 1..=max_steps.min(MAX_STEPS) {
        let full = if steps == 64 { u64::MAX } else { (1u64 << steps) - 1 };
        let mut domains = vec![full; m];
        // Reversing time maps solutions to solutions.
        if let Some(first) = (0..m).max_by_key(|&e| (csp.neighbors[e].len(), core::cmp::Reverse(e))) {
            let half = (steps - 1) / 2;
            domains[first] &= if half + 1 >= 64 { u64::MAX } else { (1u64 << (half + 1)) - 1 };
        }
        let mut assigned = vec![None; m];
        if csp.solve(steps, &mut domains, &mut assigned) {
            let times = assigned.iter().map(|v| v.unwrap() as f64 * step).collect();
            return Ok(StepSolution { steps, schedule: ScanSchedule::new(times, "oracle-discrete") });
        }
    }
    Err(Error::NoSolutionWithin(max_steps))
}

struct LineSearch<'a> {
    inst: &'a Instance,
    order: Vec<VertexId>,
    steps: usize,
    vectors: Vec<u64>,
}

impl LineSearch<'_> {
    /// `u` left of `v` needs a step with `u` facing right (0) and `v` left (1).
    fn covers(left: u64, right: u64) -> bool {
        !left & right != 0
    }

    fn fits(&self, v: VertexId, x: u64, placed: &[bool]) -> bool {
        self.inst.neighbors(v).filter(|w| placed[w.0]).all(|w| {
            let xw = self.vectors[w.0];
            if self.inst.line_rank(w) < self.inst.line_rank(v) {
                Self::covers(xw, x)
            } else {
                Self::covers(x, xw)
            }
        })
    }

    /// `tied` has bit `i` set while columns `i` and `i + 1` agree on every
    /// vertex placed so far; such columns stay sorted (1 before 0).
    fn search(&mut self, depth: usize, tied: u64, placed: &mut Vec<bool>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        for x in 0..(1u64 << self.steps) {
            // A tied pair may not read 0 then 1.
            let rises = !x & (x >> 1) & tied;
            if rises != 0 || !self.fits(v, x, placed) {
                continue;
            }
            self.vectors[v.0] = x;
            placed[v.0] = true;
            let same = !(x ^ (x >> 1));
            if self.search(depth + 1, tied & same, placed) {
                return true;
            }
            placed[v.0] = false;
        }
        false
    }
}

/// The fewest 180 degree steps of any 1D scan cover, with the heading bits.
pub fn exact_1d(inst: &Instance, vertex_limit: usize) -> Result<BitSchedule> {
    if inst.dimension() != Dimension::One {
        return Err(Error::WrongDimension { expected: "1D" });
    }
    let n = inst.vertex_count();
    if n > vertex_limit {
        return Err(Error::TooLarge { size: n, limit: vertex_limit });
    }
    for steps in 1..=MAX_STEPS.min(n.max(1) + 1) {
        let tied = if steps == 1 { 0 } else { (1u64 << (steps - 1)) - 1 };
        let mut search = LineSearch { inst, order: inst.line_order(), steps, vectors: vec![0; n] };
        let mut placed = vec![false; n];
        if search.search(0, tied, &mut placed) {
            return BitSchedule::new(steps, search.vectors);
        }
    }
    Err(Error::NoSolutionWithin(MAX_STEPS.min(n.max(1) + 1)))
}

/// Brute-force NAE-3-SAT. The witness has variable `i` in bit `i`; the
/// numerically smallest satisfying assignment is returned.
pub fn nae3sat_check(formula: &Formula) -> Result<Option<u64>> {
    let vars = formula.variable_count();
    if vars > MAX_NAE_VARIABLES {
        return Err(Error::TooManyVariables(vars));
    }
    Ok((0..1u64 << vars).find(|&a| formula.nae_satisfied(a)))
}

fn colorable(inst: &Instance, order: &[VertexId], k: usize, color: &mut Vec<usize>, depth: usize, used: usize) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    // A fresh color is interchangeable with every other fresh color.
    for c in 0..k.min(used + 1) {
        if inst.neighbors(v).all(|w| color[w.0] != c) {
            color[v.0] = c;
            if colorable(inst, order, k, color, depth + 1, used.max(c + 1)) {
                return true;
            }
            color[v.0] = usize::MAX;
        }
    }
    false
}

/// The chromatic number by backtracking over color counts.
pub fn exact_chromatic(inst: &Instance, vertex_limit: usize) -> Result<usize> {
    let n = inst.vertex_count();
    if n > vertex_limit {
        return Err(Error::TooLarge { size: n, limit: vertex_limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let upper = bounds::color_count(&bounds::greedy_coloring(inst));
    let lower = bounds::clique_lower_bound(inst).max(1);
    let mut order: Vec<VertexId> = inst.vertices().collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(inst.degree(v)), v));
    for k in lower..upper {
        let mut color = vec![usize::MAX; n];
        if colorable(inst, &order, k, &mut color, 0, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}
