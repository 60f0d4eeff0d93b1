//! Structural queries on the underlying graph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{EdgeId, Instance, VertexId};

/// Two-sided vertex partition; `second[v]` is true when `v` is in `P2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub second: Vec<bool>,
}

impl Bipartition {
    pub fn new(second: Vec<bool>) -> Self {
        Bipartition { second }
    }

    pub fn in_second(&self, v: VertexId) -> bool {
        self.second[v.0]
    }

    /// True when every edge of `inst` joins the two sides.
    pub fn is_proper_for(&self, inst: &Instance) -> bool {
        self.second.len() == inst.vertex_count()
            && inst.edges().iter().all(|e| self.second[e.u.0] != self.second[e.v.0])
    }
}

/// A 2-coloring by BFS, or `None` if the graph has an odd cycle. Each
/// component's smallest vertex lands in `P1`.
pub fn bipartition(inst: &Instance) -> Option<Bipartition> {
    let n = inst.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        queue.push_back(VertexId(s));
        while let Some(v) = queue.pop_front() {
            let sv = side[v.0].unwrap();
            for w in inst.neighbors(v) {
                match side[w.0] {
                    None => {
                        side[w.0] = Some(!sv);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == sv => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(Bipartition::new(side.into_iter().map(|s| s.unwrap()).collect()))
}

pub fn is_complete(inst: &Instance) -> bool {
    let n = inst.vertex_count();
    inst.edge_count() == n * n.saturating_sub(1) / 2
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(inst: &Instance) -> Vec<Vec<VertexId>> {
    let n = inst.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![VertexId(s)];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in inst.neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

pub fn is_forest(inst: &Instance) -> bool {
    inst.edge_count() + components(inst).len() == inst.vertex_count()
}

/// Connected and acyclic, on at least one vertex.
pub fn is_tree(inst: &Instance) -> bool {
    inst.vertex_count() >= 1 && inst.edge_count() + 1 == inst.vertex_count() && components(inst).len() == 1
}

/// A vertex incident to every edge, if any. Prefers the vertex of highest
/// degree, then the smallest id.
pub fn star_center(inst: &Instance) -> Option<VertexId> {
    let m = inst.edge_count();
    if m == 0 {
        return None;
    }
    inst.vertices().filter(|&v| inst.degree(v) == m).min_by_key(|&v| (core::cmp::Reverse(inst.degree(v)), v))
}

/// Vertices in repeated min-degree removal order, plus the degeneracy (the
/// largest degree seen at removal time).
pub fn degeneracy_order(inst: &Instance) -> (Vec<VertexId>, usize) {
    let n = inst.vertex_count();
    let mut degree: Vec<usize> = inst.vertices().map(|v| inst.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !removed[v]).min_by_key(|&v| (degree[v], v)).unwrap();
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        order.push(VertexId(v));
        for w in inst.neighbors(VertexId(v)) {
            if !removed[w.0] {
                degree[w.0] -= 1;
            }
        }
    }
    (order, degeneracy)
}

/// Edges of `inst` whose endpoints both lie in `set`.
pub fn edges_within(inst: &Instance, set: &[bool]) -> Vec<EdgeId> {
    inst.edge_ids().filter(|&e| {
        let edge = inst.edge(e);
        set[edge.u.0] && set[edge.v.0]
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Dimension;
    use alloc::string::{String, ToString};

    fn abstract_graph(n: usize, edges: &[(usize, usize)]) -> Instance {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let coords = (0..n).map(|i| vec![libm::cos(i as f64), libm::sin(i as f64 * 1.7)]).collect();
        Instance::geometric(Dimension::Two, labels, coords, edges.to_vec()).unwrap()
    }

    #[test]
    fn odd_cycle_not_bipartite() {
        let c5 = abstract_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert!(bipartition(&c5).is_none());
        let c4 = abstract_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let p = bipartition(&c4).unwrap();
        assert!(p.is_proper_for(&c4));
        assert!(!p.in_second(VertexId(0)));
    }

    #[test]
    fn degeneracy_of_k4_and_tree() {
        let k4 = abstract_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(degeneracy_order(&k4).1, 3);
        assert!(is_complete(&k4));
        let tree = abstract_graph(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        assert_eq!(degeneracy_order(&tree).1, 1);
        assert!(is_tree(&tree));
        assert!(is_forest(&tree));
    }

    #[test]
    fn star_detection() {
        let star = abstract_graph(4, &[(2, 0), (2, 1), (2, 3)]);
        assert_eq!(star_center(&star), Some(VertexId(2)));
        let path = abstract_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(star_center(&path), None);
    }
}
