//! Instances: a simple graph plus either a point embedding or an abstract
//! table of transition costs between incident edges.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{self, Vec3};
use crate::{Error, Result, TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Unordered vertex pair, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: VertexId) -> VertexId {
        debug_assert!(self.contains(x));
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    /// The common endpoint of two distinct incident edges.
    pub fn shared(self, other: Edge) -> Option<VertexId> {
        if self == other {
            return None;
        }
        [self.u, self.v].into_iter().find(|&x| other.contains(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dimension {
    One,
    Two,
    Three,
    Abstract,
}

impl Dimension {
    /// Number of coordinates per vertex, `None` for abstract instances.
    pub fn axes(self) -> Option<usize> {
        match self {
            Dimension::One => Some(1),
            Dimension::Two => Some(2),
            Dimension::Three => Some(3),
            Dimension::Abstract => None,
        }
    }

    pub fn from_axes(axes: usize) -> Option<Self> {
        match axes {
            1 => Some(Dimension::One),
            2 => Some(Dimension::Two),
            3 => Some(Dimension::Three),
            _ => None,
        }
    }
}

/// A triple `first, middle, last` of edges around `vertex` with
/// `cost(first, last) > cost(first, middle) + cost(middle, last)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricViolation {
    pub vertex: VertexId,
    pub first: EdgeId,
    pub middle: EdgeId,
    pub last: EdgeId,
    pub excess: f64,
}

/// Problem input. Immutable once built.
#[derive(Debug, Clone)]
pub struct Instance {
    dimension: Dimension,
    labels: Vec<String>,
    /// Padded to three axes; empty for abstract instances.
    coords: Vec<Vec3>,
    edges: Vec<Edge>,
    incident: Vec<Vec<EdgeId>>,
    lookup: BTreeMap<Edge, EdgeId>,
    /// Abstract costs keyed by `(min, max)` edge id.
    costs: BTreeMap<(EdgeId, EdgeId), f64>,
    /// Unit direction of each edge from `u` to `v` (geometric only).
    directions: Vec<Vec3>,
    /// Position of each vertex in the line order (1D only).
    line_rank: Vec<usize>,
}

impl Instance {
    /// Build a geometric instance. `coords[i]` must have exactly as many
    /// entries as the dimension has axes.
    pub fn geometric(
        dimension: Dimension,
        labels: Vec<String>,
        coords: Vec<Vec<f64>>,
        edges: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let axes = dimension.axes().ok_or(Error::WrongDimension { expected: "geometric" })?;
        if coords.len() != labels.len() {
            return Err(Error::CoordinateArity {
                vertex: VertexId(coords.len().min(labels.len())),
                expected: axes,
                found: 0,
            });
        }
        let mut padded = Vec::with_capacity(coords.len());
        for (i, c) in coords.iter().enumerate() {
            if c.len() != axes {
                return Err(Error::CoordinateArity { vertex: VertexId(i), expected: axes, found: c.len() });
            }
            if c.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFiniteCoordinate(VertexId(i)));
            }
            let mut p = [0.0; 3];
            p[..axes].copy_from_slice(c);
            padded.push(p);
        }
        let mut inst = Self::skeleton(dimension, labels, edges)?;
        inst.coords = padded;
        inst.directions = Vec::with_capacity(inst.edges.len());
        for (i, e) in inst.edges.iter().enumerate() {
            let d = geom::sub(inst.coords[e.v.0], inst.coords[e.u.0]);
            let unit = geom::normalize(d).ok_or(Error::DegenerateEdge(EdgeId(i)))?;
            inst.directions.push(unit);
        }
        if dimension == Dimension::One {
            let mut order: Vec<usize> = (0..inst.labels.len()).collect();
            order.sort_by(|&a, &b| {
                inst.coords[a][0].total_cmp(&inst.coords[b][0]).then(a.cmp(&b))
            });
            inst.line_rank = alloc::vec![0; order.len()];
            for (rank, &v) in order.iter().enumerate() {
                inst.line_rank[v] = rank;
            }
        }
        Ok(inst)
    }

    /// Build an abstract instance from a cost table over incident edge pairs.
    ///
    /// Every incident pair needs a finite nonnegative cost; a pair may be
    /// listed in both orders only with equal values.
    pub fn with_costs(
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        costs: impl IntoIterator<Item = (EdgeId, EdgeId, f64)>,
    ) -> Result<Self> {
        let mut inst = Self::skeleton(Dimension::Abstract, labels, edges)?;
        let m = inst.edges.len();
        for (a, b, c) in costs {
            if a.0 >= m || b.0 >= m || a == b || inst.edges[a.0].shared(inst.edges[b.0]).is_none() {
                return Err(Error::NotIncident(a, b));
            }
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidCost { first: a, second: b, cost: c });
            }
            let key = (a.min(b), a.max(b));
            if let Some(&old) = inst.costs.get(&key) {
                if (old - c).abs() > TOLERANCE {
                    return Err(Error::AsymmetricCost(key.0, key.1));
                }
            }
            inst.costs.insert(key, c);
        }
        for v in 0..inst.labels.len() {
            let inc = &inst.incident[v];
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    if !inst.costs.contains_key(&(a.min(b), a.max(b))) {
                        return Err(Error::MissingCost(a.min(b), a.max(b)));
                    }
                }
            }
        }
        Ok(inst)
    }

    fn skeleton(dimension: Dimension, labels: Vec<String>, raw: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut seen = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.as_str(), i).is_some() {
                return Err(Error::DuplicateVertex(l.clone()));
            }
        }
        let mut edges = Vec::with_capacity(raw.len());
        let mut lookup = BTreeMap::new();
        let mut incident = alloc::vec![Vec::new(); n];
        for (a, b) in raw {
            if a >= n {
                return Err(Error::UnknownVertex(a));
            }
            if b >= n {
                return Err(Error::UnknownVertex(b));
            }
            if a == b {
                return Err(Error::SelfLoop(VertexId(a)));
            }
            let e = Edge::new(VertexId(a), VertexId(b));
            let id = EdgeId(edges.len());
            if lookup.insert(e, id).is_some() {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
            incident[e.u.0].push(id);
            incident[e.v.0].push(id);
            edges.push(e);
        }
        Ok(Instance {
            dimension,
            labels,
            coords: Vec::new(),
            edges,
            incident,
            lookup,
            costs: BTreeMap::new(),
            directions: Vec::new(),
            line_rank: Vec::new(),
        })
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn is_geometric(&self) -> bool {
        self.dimension != Dimension::Abstract
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.labels.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e.0]
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label).map(VertexId)
    }

    /// Coordinates of `v` (as many as the dimension has axes).
    pub fn coords(&self, v: VertexId) -> Option<&[f64]> {
        let axes = self.dimension.axes()?;
        Some(&self.coords[v.0][..axes])
    }

    /// Position padded to three axes. Geometric instances only.
    pub fn point(&self, v: VertexId) -> Vec3 {
        self.coords[v.0]
    }

    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v.0].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident[v.0].iter().map(move |&e| self.edges[e.0].other(v))
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.lookup.get(&Edge::new(a, b)).copied()
    }

    pub fn shared_vertex(&self, a: EdgeId, b: EdgeId) -> Option<VertexId> {
        self.edges[a.0].shared(self.edges[b.0])
    }

    /// Unit heading of `v` when it faces along edge `e`. Geometric only.
    pub fn direction(&self, v: VertexId, e: EdgeId) -> Vec3 {
        let edge = self.edges[e.0];
        let d = self.directions[e.0];
        if edge.u == v {
            d
        } else {
            geom::neg(d)
        }
    }

    /// Planar heading angle of `v` facing along `e`, in `[0, 360)`.
    pub fn heading(&self, v: VertexId, e: EdgeId) -> f64 {
        geom::heading_deg(self.direction(v, e))
    }

    /// Position of `v` in the order along the line (1D only).
    pub fn line_rank(&self, v: VertexId) -> usize {
        self.line_rank[v.0]
    }

    /// Vertices sorted along the line (1D only).
    pub fn line_order(&self) -> Vec<VertexId> {
        let mut order: Vec<VertexId> = self.vertices().collect();
        order.sort_by_key(|&v| self.line_rank[v.0]);
        order
    }

    /// Transition cost between two incident edges. Panics in debug builds if
    /// the edges are not incident; see [`Instance::angular_cost`] for the
    /// checked version.
    pub fn cost(&self, a: EdgeId, b: EdgeId) -> f64 {
        if a == b {
            return 0.0;
        }
        match self.dimension {
            Dimension::Abstract => self.costs[&(a.min(b), a.max(b))],
            Dimension::One => {
                let v = self.shared_vertex(a, b).expect("edges are not incident");
                let side_a = self.line_rank[self.edges[a.0].other(v).0] > self.line_rank[v.0];
                let side_b = self.line_rank[self.edges[b.0].other(v).0] > self.line_rank[v.0];
                if side_a == side_b {
                    0.0
                } else {
                    180.0
                }
            }
            Dimension::Two | Dimension::Three => {
                let v = self.shared_vertex(a, b).expect("edges are not incident");
                geom::angle_between(self.direction(v, a), self.direction(v, b))
            }
        }
    }

    /// The smaller angle at the shared vertex between two incident edges
    /// (or the table value for abstract instances).
    pub fn angular_cost(&self, a: EdgeId, b: EdgeId) -> Result<f64> {
        let m = self.edges.len();
        if a.0 >= m || b.0 >= m || self.shared_vertex(a, b).is_none() {
            return Err(Error::NotIncident(a, b));
        }
        Ok(self.cost(a, b))
    }

    /// All triples of edges around a common vertex that break the triangle
    /// inequality by more than the tolerance. Each violated pair is reported
    /// once per middle edge, with `first < last`.
    pub fn check_metric(&self) -> Vec<MetricViolation> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let inc = self.incident(v);
            for (i, &first) in inc.iter().enumerate() {
                for &last in &inc[i + 1..] {
                    let direct = self.cost(first, last);
                    for &middle in inc {
                        if middle == first || middle == last {
                            continue;
                        }
                        let detour = self.cost(first, middle) + self.cost(middle, last);
                        if direct > detour + TOLERANCE {
                            let (first, last) = (first.min(last), first.max(last));
                            out.push(MetricViolation { vertex: v, first, middle, last, excess: direct - detour });
                        }
                    }
                }
            }
        }
        out
    }

    /// Every incident pair with its cost, each pair once (`first < second`).
    pub fn incident_pairs(&self) -> Vec<(EdgeId, EdgeId, f64)> {
        let mut out = Vec::new();
        for v in self.vertices() {
            let inc = self.incident(v);
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    out.push((a.min(b), a.max(b), self.cost(a, b)));
                }
            }
        }
        out.sort_by_key(|x| (x.0, x.1));
        out
    }

    /// The abstract instance with the same graph and induced cost table.
    pub fn to_abstract(&self) -> Instance {
        let raw = self.edges.iter().map(|e| (e.u.0, e.v.0)).collect();
        Instance::with_costs(self.labels.clone(), raw, self.incident_pairs())
            .expect("induced cost table is complete")
    }

    /// Same vertices, only the given edges (renumbered in the given order).
    /// Returns the sub-instance; edge `i` of it is `edges[i]` here.
    pub fn restrict(&self, edges: &[EdgeId]) -> Instance {
        let raw: Vec<(usize, usize)> = edges.iter().map(|&e| (self.edges[e.0].u.0, self.edges[e.0].v.0)).collect();
        let mut sub = Self::skeleton(self.dimension, self.labels.clone(), raw).expect("subset of a simple graph");
        sub.coords = self.coords.clone();
        sub.line_rank = self.line_rank.clone();
        if self.is_geometric() {
            sub.directions = edges.iter().map(|&e| self.directions[e.0]).collect();
        } else {
            for (i, &a) in edges.iter().enumerate() {
                for (j, &b) in edges.iter().enumerate().skip(i + 1) {
                    if self.shared_vertex(a, b).is_some() {
                        sub.costs.insert((EdgeId(i), EdgeId(j)), self.cost(a, b));
                    }
                }
            }
        }
        sub
    }

    /// Abstract cost table entries, `(first, second, cost)` with `first < second`.
    pub fn abstract_costs(&self) -> impl Iterator<Item = (EdgeId, EdgeId, f64)> + '_ {
        self.costs.iter().map(|(&(a, b), &c)| (a, b, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn line_path_turns_around() {
        let inst = Instance::geometric(Dimension::One, labels(3), vec![vec![0.0], vec![1.0], vec![2.0]], vec![(0, 1), (1, 2)])
            .unwrap();
        assert_eq!(inst.angular_cost(EdgeId(0), EdgeId(1)).unwrap(), 180.0);
    }

    #[test]
    fn equilateral_triangle_sixty() {
        let h = libm::sqrt(3.0) / 2.0;
        let inst = Instance::geometric(
            Dimension::Two,
            labels(3),
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.5, h]],
            vec![(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let c = inst.angular_cost(EdgeId(a), EdgeId(b)).unwrap();
            assert!((c - 60.0).abs() < 1e-9, "{c}");
        }
    }

    #[test]
    fn construction_errors() {
        let two = vec![vec![0.0, 0.0], vec![1.0, 0.0]];
        assert!(matches!(
            Instance::geometric(Dimension::Two, labels(2), two.clone(), vec![(0, 0)]),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            Instance::geometric(Dimension::Two, labels(2), two.clone(), vec![(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(
            Instance::geometric(Dimension::Two, labels(2), vec![vec![0.0, 0.0], vec![0.0, 0.0]], vec![(0, 1)]),
            Err(Error::DegenerateEdge(EdgeId(0)))
        ));
        // Coincident points without an edge between them are fine.
        assert!(Instance::geometric(Dimension::Two, labels(3), vec![vec![0.0, 0.0], vec![0.0, 0.0], vec![1.0, 0.0]], vec![(0, 2), (1, 2)]).is_ok());
        assert!(matches!(
            Instance::geometric(Dimension::Three, labels(2), two, vec![]),
            Err(Error::CoordinateArity { .. })
        ));
        assert!(matches!(
            Instance::with_costs(labels(3), vec![(0, 1), (1, 2)], vec![]),
            Err(Error::MissingCost(..))
        ));
    }

    #[test]
    fn non_incident_and_missing() {
        let inst = Instance::geometric(
            Dimension::Two,
            labels(4),
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            vec![(0, 1), (2, 3)],
        )
        .unwrap();
        assert_eq!(inst.angular_cost(EdgeId(0), EdgeId(1)), Err(Error::NotIncident(EdgeId(0), EdgeId(1))));
    }

    #[test]
    fn metric_violation_reported_once() {
        let inst = Instance::with_costs(
            labels(4),
            vec![(0, 1), (0, 2), (0, 3)],
            vec![(EdgeId(0), EdgeId(1), 10.0), (EdgeId(1), EdgeId(2), 10.0), (EdgeId(0), EdgeId(2), 100.0)],
        )
        .unwrap();
        let v = inst.check_metric();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].first, v[0].middle, v[0].last), (EdgeId(0), EdgeId(1), EdgeId(2)));
    }

    #[test]
    fn restrict_keeps_costs() {
        let inst = Instance::with_costs(
            labels(4),
            vec![(0, 1), (0, 2), (0, 3)],
            vec![(EdgeId(0), EdgeId(1), 5.0), (EdgeId(1), EdgeId(2), 7.0), (EdgeId(0), EdgeId(2), 9.0)],
        )
        .unwrap();
        let sub = inst.restrict(&[EdgeId(2), EdgeId(1)]);
        assert_eq!(sub.cost(EdgeId(0), EdgeId(1)), 7.0);
    }
}
