//! Discrete scan covers on a line.
//!
//! On a line every vertex faces left or right, and scans can be restricted
//! to multiples of 180. A cover with `N` steps gives each vertex a 0/1
//! vector of length `N` (0 = facing right, 1 = facing left); edge `uv` with
//! `u` left of `v` is scanned in some step `i` with `s_i(u) = 0` and
//! `s_i(v) = 1`. Its value is `180 * (N - 1)`.
//!
//! Assigning every color class of a proper coloring a distinct vector with
//! exactly `floor(N/2)` ones gives pairwise incomparable vectors, so each
//! edge is covered whichever way it is oriented. The same construction
//! bounds the directed cut cover number of any directed graph.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph;
use crate::model::{Dimension, EdgeId, Instance, VertexId};
use crate::schedule::ScanSchedule;
use crate::{Error, Result};

/// Largest supported number of steps.
pub const MAX_STEPS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSchedule {
    steps: usize,
    /// Bit `i` of `vectors[v]` is the heading of `v` in step `i + 1`.
    vectors: Vec<u64>,
}

impl BitSchedule {
    pub fn new(steps: usize, vectors: Vec<u64>) -> Result<Self> {
        if steps == 0 || steps > MAX_STEPS {
            return Err(Error::InvalidParameter(alloc::format!("step count {steps}")));
        }
        let mask = step_mask(steps);
        if vectors.iter().any(|&x| x & !mask != 0) {
            return Err(Error::InvalidParameter(String::from("vector longer than the step count")));
        }
        Ok(BitSchedule { steps, vectors })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn vector(&self, v: VertexId) -> u64 {
        self.vectors[v.0]
    }

    pub fn vectors(&self) -> &[u64] {
        &self.vectors
    }

    /// Heading bit of `v` in step `step` (1-based).
    pub fn bit(&self, v: VertexId, step: usize) -> bool {
        self.vectors[v.0] >> (step - 1) & 1 == 1
    }

    /// `s_1 s_2 ... s_N` as a string of `0`/`1`.
    pub fn bits_string(&self, v: VertexId) -> String {
        (1..=self.steps).map(|i| if self.bit(v, i) { '1' } else { '0' }).collect()
    }

    /// Parse `s_1 s_2 ... s_N`.
    pub fn parse_bits(bits: &str) -> Option<u64> {
        if bits.is_empty() || bits.len() > MAX_STEPS {
            return None;
        }
        bits.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
            '0' => Some(acc),
            '1' => Some(acc | 1 << i),
            _ => None,
        })
    }

    pub fn scan_time(&self) -> f64 {
        180.0 * (self.steps - 1) as f64
    }

    /// Edges with no step where the left endpoint faces right and the right
    /// endpoint faces left.
    pub fn cover_violations(&self, inst: &Instance) -> Vec<EdgeId> {
        inst.edge_ids().filter(|&e| first_step(self, inst, e).is_none()).collect()
    }
}

fn step_mask(steps: usize) -> u64 {
    if steps >= 64 {
        u64::MAX
    } else {
        (1u64 << steps) - 1
    }
}

fn require_line(inst: &Instance) -> Result<()> {
    if inst.dimension() != Dimension::One {
        return Err(Error::WrongDimension { expected: "1D" });
    }
    Ok(())
}

/// Left and right endpoint of `e` along the line.
fn oriented(inst: &Instance, e: EdgeId) -> (VertexId, VertexId) {
    let edge = inst.edge(e);
    if inst.line_rank(edge.u) < inst.line_rank(edge.v) {
        (edge.u, edge.v)
    } else {
        (edge.v, edge.u)
    }
}

/// First step (1-based) in which `e` can be scanned.
fn first_step(bs: &BitSchedule, inst: &Instance, e: EdgeId) -> Option<usize> {
    let (left, right) = oriented(inst, e);
    let usable = !bs.vectors[left.0] & bs.vectors[right.0] & step_mask(bs.steps);
    (usable != 0).then(|| usable.trailing_zeros() as usize + 1)
}

/// Optimal cover of a bipartite graph on a line: one step if every vertex
/// sees all its neighbors on one side, two steps otherwise.
pub fn solve_bipartite_1d(inst: &Instance) -> Result<BitSchedule> {
    require_line(inst)?;
    let part = graph::bipartition(inst).ok_or(Error::NotBipartite)?;
    let one_sided = inst.vertices().all(|v| {
        let rv = inst.line_rank(v);
        let mut right = inst.neighbors(v).map(|w| inst.line_rank(w) > rv);
        match right.next() {
            None => true,
            Some(first) => right.all(|r| r == first),
        }
    });
    if one_sided {
        // Face the side where the neighbors are.
        let vectors = inst
            .vertices()
            .map(|v| {
                let rv = inst.line_rank(v);
                u64::from(inst.neighbors(v).any(|w| inst.line_rank(w) < rv))
            })
            .collect();
        return BitSchedule::new(1, vectors);
    }
    let coloring: Vec<usize> = part.second.iter().map(|&s| usize::from(s)).collect();
    vectors_from_coloring(inst, &coloring)
}

/// Optimal cover of a complete graph on a line with `ceil(log2 n)` steps:
/// split the vertices into halves along the line, scan the crossing edges,
/// and recurse into both halves in parallel.
pub fn solve_complete_1d(inst: &Instance) -> Result<BitSchedule> {
    require_line(inst)?;
    let n = inst.vertex_count();
    if n < 2 || !graph::is_complete(inst) {
        return Err(Error::NotComplete);
    }
    let steps = ceil_log2(n);
    let order = inst.line_order();
    let mut vectors = vec![0u64; n];
    // Blocks of consecutive positions `[lo, hi)`.
    let mut blocks = vec![(0usize, n)];
    for step in 0..steps {
        let mut next = Vec::with_capacity(blocks.len() * 2);
        for (lo, hi) in blocks {
            if hi - lo < 2 {
                continue;
            }
            let mid = lo + (hi - lo).div_ceil(2);
            for &v in &order[mid..hi] {
                // Right half faces left.
                vectors[v.0] |= 1 << step;
            }
            next.push((lo, mid));
            next.push((mid, hi));
        }
        blocks = next;
    }
    BitSchedule::new(steps, vectors)
}

pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// `binom(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(x) => x / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `ceil(log2 C + 1/2 log2 log2 C + 1)`, the guaranteed number of steps
/// for a graph colored with `C >= 2` colors.
pub fn step_ceiling(colors: usize) -> usize {
    let c = colors.max(2) as f64;
    let l = libm::log2(c);
    libm::ceil(l + 0.5 * libm::log2(l) + 1.0) as usize
}

/// Steps used for `C` color classes: [`step_ceiling`], lowered while
/// `C <= binom(N - 1, floor((N - 1) / 2))` still holds.
pub fn steps_for_colors(colors: usize) -> usize {
    let c = colors.max(2) as u128;
    let mut n = step_ceiling(colors);
    while binomial(n, n / 2) < c {
        // Only reachable through rounding in the closed form.
        n += 1;
    }
    while n > 1 && binomial(n - 1, (n - 1) / 2) >= c {
        n -= 1;
    }
    n
}

/// All `steps`-bit vectors with exactly `ones` ones, in lexicographic order
/// of `s_1 s_2 ... s_N`.
pub fn balanced_vectors(steps: usize, ones: usize, limit: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(steps);
    fn rec(steps: usize, ones: usize, limit: usize, current: &mut Vec<bool>, out: &mut Vec<u64>) {
        if out.len() >= limit {
            return;
        }
        let placed = current.iter().filter(|&&b| b).count();
        if current.len() == steps {
            if placed == ones {
                out.push(current.iter().enumerate().fold(0u64, |acc, (i, &b)| acc | (u64::from(b) << i)));
            }
            return;
        }
        let remaining = steps - current.len();
        // '0' before '1' gives lexicographic order.
        if ones - placed < remaining {
            current.push(false);
            rec(steps, ones, limit, current, out);
            current.pop();
        }
        if placed < ones {
            current.push(true);
            rec(steps, ones, limit, current, out);
            current.pop();
        }
    }
    rec(steps, ones, limit, &mut current, &mut out);
    out
}

/// Assign each color class its own balanced vector. Colors are taken in
/// increasing order and receive vectors in lexicographic order.
pub fn vectors_from_coloring(inst: &Instance, coloring: &[usize]) -> Result<BitSchedule> {
    require_line(inst)?;
    if coloring.len() != inst.vertex_count() {
        return Err(Error::ColoringLength { expected: inst.vertex_count(), found: coloring.len() });
    }
    if let Some(e) = inst.edge_ids().find(|&e| {
        let edge = inst.edge(e);
        coloring[edge.u.0] == coloring[edge.v.0]
    }) {
        return Err(Error::ImproperColoring(e));
    }
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in coloring {
        classes.insert(c, 0);
    }
    let count = classes.len();
    let steps = steps_for_colors(count);
    let pool = balanced_vectors(steps, steps / 2, count);
    debug_assert!(pool.len() >= count);
    for (i, slot) in classes.values_mut().enumerate() {
        *slot = i;
    }
    let vectors = coloring.iter().map(|c| pool[classes[c]]).collect();
    BitSchedule::new(steps, vectors)
}

/// Scan each edge at `180 * (i - 1)` for the first usable step `i`.
pub fn bitschedule_to_schedule(bs: &BitSchedule, inst: &Instance) -> Result<ScanSchedule> {
    require_line(inst)?;
    if bs.vectors.len() != inst.vertex_count() {
        return Err(Error::ColoringLength { expected: inst.vertex_count(), found: bs.vectors.len() });
    }
    let times = inst
        .edge_ids()
        .map(|e| first_step(bs, inst, e).map(|i| 180.0 * (i - 1) as f64).ok_or(Error::CoverViolation(e)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ScanSchedule::new(times, "bits-1d"))
}

/// True when neither vector dominates the other.
pub fn incomparable(a: u64, b: u64) -> bool {
    a & !b != 0 && b & !a != 0
}
