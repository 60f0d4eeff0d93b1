//! Stars, trees and sparse graphs under arbitrary metric transition costs.
//!
//! Scanning the edges of a star is a Path-TSP over its edges. A tree is
//! handled by closing every vertex's path into a cycle and letting each
//! vertex run its cycle once, shifted to agree with its parent on the
//! shared edge.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph;
use crate::model::{EdgeId, Instance, VertexId};
use crate::schedule::{PhaseAssembler, ScanSchedule};
use crate::{Error, Result, TOLERANCE};

/// Stars with at most this many edges get an exact Path-TSP order.
pub const EXACT_THRESHOLD: usize = 12;

fn path_cost(inst: &Instance, order: &[EdgeId]) -> f64 {
    order.windows(2).map(|w| inst.cost(w[0], w[1])).sum()
}

/// Held-Karp over subsets; ties go to the lexicographically first path.
fn exact_path(inst: &Instance, edges: &[EdgeId]) -> Vec<EdgeId> {
    let k = edges.len();
    if k <= 1 {
        return edges.to_vec();
    }
    let full = (1usize << k) - 1;
    let mut best = vec![f64::INFINITY; (1 << k) * k];
    let mut prev = vec![usize::MAX; (1 << k) * k];
    for i in 0..k {
        best[(1 << i) * k + i] = 0.0;
    }
    for mask in 1..=full {
        for last in 0..k {
            let here = best[mask * k + last];
            if mask >> last & 1 == 0 || !here.is_finite() {
                continue;
            }
            for next in 0..k {
                if mask >> next & 1 == 1 {
                    continue;
                }
                let to = (mask | 1 << next) * k + next;
                let c = here + inst.cost(edges[last], edges[next]);
                if c < best[to] - TOLERANCE {
                    best[to] = c;
                    prev[to] = last;
                }
            }
        }
    }
    let mut last = (0..k).fold(0, |b, i| if best[full * k + i] < best[full * k + b] - TOLERANCE { i } else { b });
    let mut mask = full;
    let mut rev = Vec::with_capacity(k);
    loop {
        rev.push(edges[last]);
        let p = prev[mask * k + last];
        mask &= !(1 << last);
        if p == usize::MAX {
            break;
        }
        last = p;
    }
    rev.reverse();
    rev
}

/// Start with the cheapest pair, then repeatedly append the nearest edge.
fn greedy_path(inst: &Instance, edges: &[EdgeId]) -> Vec<EdgeId> {
    let k = edges.len();
    if k <= 1 {
        return edges.to_vec();
    }
    let mut pair = (0, 1);
    for i in 0..k {
        for j in i + 1..k {
            if inst.cost(edges[i], edges[j]) < inst.cost(edges[pair.0], edges[pair.1]) - TOLERANCE {
                pair = (i, j);
            }
        }
    }
    let mut used = vec![false; k];
    used[pair.0] = true;
    used[pair.1] = true;
    let mut order = vec![edges[pair.0], edges[pair.1]];
    let mut last = pair.1;
    for _ in 2..k {
        let next = (0..k)
            .filter(|&j| !used[j])
            .fold(None, |b: Option<usize>, j| match b {
                Some(b) if inst.cost(edges[last], edges[b]) <= inst.cost(edges[last], edges[j]) + TOLERANCE => Some(b),
                _ => Some(j),
            })
            .unwrap();
        used[next] = true;
        order.push(edges[next]);
        last = next;
    }
    order
}

/// A short Hamiltonian order of the given edges around one vertex: exact up
/// to [`EXACT_THRESHOLD`] edges, nearest neighbor above.
pub fn local_order(inst: &Instance, edges: &[EdgeId]) -> Vec<EdgeId> {
    if edges.len() <= EXACT_THRESHOLD {
        exact_path(inst, edges)
    } else {
        greedy_path(inst, edges)
    }
}

/// Order of a star's edges; scanning them in this order costs the Path-TSP
/// value of the order.
pub fn star_order(inst: &Instance, center: VertexId) -> Result<Vec<EdgeId>> {
    if center.0 >= inst.vertex_count() || inst.degree(center) != inst.edge_count() {
        return Err(Error::NotAStar);
    }
    Ok(local_order(inst, inst.incident(center)))
}

/// `x mod m` in `[0, m)`.
fn modulo(x: f64, m: f64) -> f64 {
    let r = libm::fmod(x, m);
    let r = if r < 0.0 { r + m } else { r };
    if r >= m {
        0.0
    } else {
        r
    }
}

/// A closed tour through a vertex's edges.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicOrder {
    pub vertex: VertexId,
    pub edges: Vec<EdgeId>,
    /// Time of each edge from the start of the cycle.
    pub offsets: Vec<f64>,
    /// Path cost plus the cost of returning from the last edge to the first.
    pub length: f64,
}

impl CyclicOrder {
    pub fn new(inst: &Instance, vertex: VertexId, edges: &[EdgeId]) -> Self {
        let edges = local_order(inst, edges);
        let mut offsets = Vec::with_capacity(edges.len());
        let mut acc = 0.0;
        for (i, &e) in edges.iter().enumerate() {
            if i > 0 {
                acc += inst.cost(edges[i - 1], e);
            }
            offsets.push(acc);
        }
        let length = if edges.len() >= 2 { acc + inst.cost(edges[edges.len() - 1], edges[0]) } else { 0.0 };
        CyclicOrder { vertex, edges, offsets, length }
    }

    pub fn path_cost(&self, inst: &Instance) -> f64 {
        path_cost(inst, &self.edges)
    }

    /// Times for one pass of the cycle that put `edge` at `time`. Uses the
    /// window `[0, length)` when `time < length` and `(time - length, time]`
    /// otherwise, so no time is negative and none exceeds
    /// `max(time, length)`.
    fn aligned(&self, edge: EdgeId, time: f64) -> Vec<(EdgeId, f64)> {
        let p = self.edges.iter().position(|&e| e == edge).expect("edge of this vertex");
        let len = self.length;
        self.edges
            .iter()
            .zip(&self.offsets)
            .map(|(&e, &o)| {
                if e == edge || len <= 0.0 {
                    return (e, time);
                }
                let rel = self.offsets[p];
                let t = if time < len {
                    modulo(time + o - rel, len)
                } else {
                    time - modulo(rel - o, len)
                };
                (e, t)
            })
            .collect()
    }
}

/// Schedule the forest formed by `edges`, one component at a time from its
/// smallest vertex (or `root` for the component containing it). All
/// components start at time 0.
fn forest_times(inst: &Instance, edges: &[EdgeId], root: Option<VertexId>) -> (Vec<(EdgeId, f64)>, f64) {
    let n = inst.vertex_count();
    let mut local: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
    for &e in edges {
        let edge = inst.edge(e);
        local[edge.u.0].push(e);
        local[edge.v.0].push(e);
    }
    let cycles: Vec<CyclicOrder> = (0..n).map(|v| CyclicOrder::new(inst, VertexId(v), &local[v])).collect();
    let bound = cycles.iter().map(|c| c.length).fold(0.0, f64::max);

    let mut time: Vec<Option<f64>> = vec![None; inst.edge_count()];
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(edges.len());
    let starts = root.into_iter().chain((0..n).map(VertexId));
    for start in starts {
        if seen[start.0] {
            continue;
        }
        seen[start.0] = true;
        let mut stack = Vec::new();
        for (i, &e) in cycles[start.0].edges.iter().enumerate() {
            time[e.0] = Some(cycles[start.0].offsets[i]);
            out.push((e, cycles[start.0].offsets[i]));
        }
        stack.push(start);
        while let Some(v) = stack.pop() {
            for &e in &cycles[v.0].edges {
                let child = inst.edge(e).other(v);
                if seen[child.0] {
                    continue;
                }
                seen[child.0] = true;
                let t = time[e.0].unwrap();
                for (f, tf) in cycles[child.0].aligned(e, t) {
                    if f != e {
                        time[f.0] = Some(tf);
                        out.push((f, tf));
                    }
                }
                stack.push(child);
            }
        }
    }
    (out, bound)
}

fn require_metric(inst: &Instance) -> Result<()> {
    if inst.is_geometric() || inst.check_metric().is_empty() {
        Ok(())
    } else {
        Err(Error::NotMetric)
    }
}

/// Schedule for a tree whose makespan is at most the longest vertex cycle,
/// hence at most twice the optimum when every cycle comes from an exact
/// path. The parent and the child agree on every shared edge by
/// construction.
pub fn tree_approx(inst: &Instance, root: VertexId) -> Result<ScanSchedule> {
    if !graph::is_tree(inst) || root.0 >= inst.vertex_count() {
        return Err(Error::NotATree);
    }
    require_metric(inst)?;
    let all: Vec<EdgeId> = inst.edge_ids().collect();
    let (placed, bound) = forest_times(inst, &all, Some(root));
    let mut times = vec![0.0; inst.edge_count()];
    for (e, t) in placed {
        times[e.0] = t;
    }
    let schedule = ScanSchedule::new(times, "tree");
    assert!(schedule.makespan() <= bound + TOLERANCE, "tree schedule exceeds the longest cycle");
    Ok(schedule)
}

/// The largest cycle length over all vertices, the guarantee of [`tree_approx`].
pub fn cycle_bound(inst: &Instance) -> f64 {
    inst.vertices().map(|v| CyclicOrder::new(inst, v, inst.incident(v)).length).fold(0.0, f64::max)
}

/// Partition the edges into forests. Edges are oriented along a degeneracy
/// order, so each vertex has at most `d` out-edges; the `i`-th out-edges of
/// all vertices form a forest. At most `d <= 2A - 1` forests.
pub fn forest_decompose(inst: &Instance) -> Vec<Vec<EdgeId>> {
    let (order, _) = graph::degeneracy_order(inst);
    let mut position = vec![0; inst.vertex_count()];
    for (i, v) in order.iter().enumerate() {
        position[v.0] = i;
    }
    let mut forests: Vec<Vec<EdgeId>> = Vec::new();
    for &v in &order {
        let mut label = 0;
        for &e in inst.incident(v) {
            if position[inst.edge(e).other(v).0] > position[v.0] {
                if forests.len() <= label {
                    forests.push(Vec::new());
                }
                forests[label].push(e);
                label += 1;
            }
        }
    }
    for f in &mut forests {
        f.sort();
    }
    forests
}

/// Each forest scheduled like a tree, forests placed one after another
/// with minimal offsets.
pub fn arboricity_approx(inst: &Instance) -> Result<ScanSchedule> {
    require_metric(inst)?;
    let mut asm = PhaseAssembler::new(inst);
    for forest in forest_decompose(inst) {
        let (placed, _) = forest_times(inst, &forest, None);
        asm.push(&placed);
    }
    Ok(asm.finish("arboricity"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dimension;
    use crate::schedule::{schedule_from_order, validate_schedule};
    use alloc::string::{String, ToString};

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn inst2(points: &[[f64; 2]], edges: &[(usize, usize)]) -> Instance {
        Instance::geometric(Dimension::Two, labels(points.len()), points.iter().map(|p| p.to_vec()).collect(), edges.to_vec())
            .unwrap()
    }

    #[test]
    fn star_order_fan() {
        let s = inst2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]], &[(0, 1), (0, 3), (0, 2)]);
        let order = star_order(&s, VertexId(0)).unwrap();
        assert!((path_cost(&s, &order) - 180.0).abs() < 1e-9);
        assert_eq!(order[1], EdgeId(2));
        let sched = schedule_from_order(&s, &order).unwrap();
        assert!((sched.makespan() - 180.0).abs() < 1e-9);
        assert_eq!(star_order(&s, VertexId(1)), Err(Error::NotAStar));
    }

    #[test]
    fn greedy_matches_exact_on_a_fan() {
        let pts: Vec<[f64; 2]> = core::iter::once([0.0, 0.0])
            .chain((0..14).map(|i| {
                let a = (i as f64 * 23.0).to_radians();
                [libm::cos(a), libm::sin(a)]
            }))
            .collect();
        let edges: Vec<(usize, usize)> = (1..15).map(|i| (0, i)).collect();
        let s = inst2(&pts, &edges);
        let order = star_order(&s, VertexId(0)).unwrap();
        assert_eq!(order.len(), 14);
        assert!((path_cost(&s, &order) - 13.0 * 23.0).abs() < 1e-6);
    }

    #[test]
    fn tree_examples() {
        let single = inst2(&[[0.0, 0.0], [1.0, 0.0]], &[(0, 1)]);
        assert_eq!(tree_approx(&single, VertexId(0)).unwrap().makespan(), 0.0);

        let path = Instance::geometric(Dimension::One, labels(3), vec![vec![0.0], vec![1.0], vec![2.0]], vec![(0, 1), (1, 2)])
            .unwrap();
        for r in 0..3 {
            let s = tree_approx(&path, VertexId(r)).unwrap();
            assert!(validate_schedule(&path, &s).is_valid());
            assert!((s.makespan() - 180.0).abs() < 1e-9);
        }

        let cycle = inst2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(tree_approx(&cycle, VertexId(0)), Err(Error::NotATree));
    }

    #[test]
    fn tree_synchronizes_children() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [-1.0, -0.5], [2.0, 1.0], [2.0, -1.0], [1.5, 0.2]];
        let t = inst2(&pts, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)]);
        for root in 0..pts.len() {
            let s = tree_approx(&t, VertexId(root)).unwrap();
            assert!(validate_schedule(&t, &s).is_valid());
            assert!(s.makespan() <= cycle_bound(&t) + 1e-9);
        }
    }

    #[test]
    fn forests() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.3], [0.4, 2.0]];
        let k4 = inst2(&pts[..4], &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let f = forest_decompose(&k4);
        assert_eq!(f.len(), 3);
        let c5 = inst2(&pts, &[(0, 1), (1, 3), (3, 4), (4, 2), (2, 0)]);
        assert_eq!(forest_decompose(&c5).len(), 2);
        let tree = inst2(&pts, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(forest_decompose(&tree).len(), 1);
        assert_eq!(
            arboricity_approx(&tree).unwrap().times,
            tree_approx(&tree, VertexId(0)).unwrap().times
        );
        let s = arboricity_approx(&k4).unwrap();
        assert!(validate_schedule(&k4, &s).is_valid());
    }

    #[test]
    fn disjoint_edges_in_parallel() {
        let inst = inst2(&[[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 2.0]], &[(0, 1), (2, 3)]);
        assert_eq!(arboricity_approx(&inst).unwrap().makespan(), 0.0);
    }

    #[test]
    fn non_metric_rejected() {
        let inst = Instance::with_costs(
            labels(4),
            vec![(0, 1), (0, 2), (0, 3)],
            [(EdgeId(0), EdgeId(1), 10.0), (EdgeId(0), EdgeId(2), 1.0), (EdgeId(1), EdgeId(2), 1.0)],
        )
        .unwrap();
        assert_eq!(tree_approx(&inst, VertexId(0)), Err(Error::NotMetric));
    }
}
