//! Instance families: the NAE-3-SAT gadget, Turán graphs on a line, stars
//! that defeat the chromatic bound, and seeded random instances.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::Formula;
use crate::geom::{self, Vec3};
use crate::graph::Bipartition;
use crate::model::{Dimension, EdgeId, Instance};
use crate::schedule::ScanSchedule;
use crate::{Error, Result};

/// The abstract gadget of a formula plus the roles of its edges.
#[derive(Debug, Clone)]
pub struct NaeGadget {
    pub instance: Instance,
    pub phi: f64,
    /// Per clause, the edges from the clause vertex to its three entries.
    pub clause_edges: Vec<[EdgeId; 3]>,
    /// Per variable, the edges to its positive and negative literal vertex.
    pub variable_edges: Vec<[EdgeId; 2]>,
    /// Per clause, the edge from each entry to its literal vertex.
    pub incidence_edges: Vec<[EdgeId; 3]>,
    formula: Formula,
}

/// Per clause a clause vertex with three entry vertices, per variable a
/// variable vertex with two literal vertices, and one edge from every entry
/// to the literal it holds. Pairs with a clause edge cost `phi`, pairs with
/// a variable edge `2 phi`, all others 0.
pub fn gen_nae_gadget(formula: &Formula, phi: f64) -> Result<NaeGadget> {
    if !(phi.is_finite() && phi > 0.0) {
        return Err(Error::InvalidParameter(format!("phi must be positive, got {phi}")));
    }
    let mut labels: Vec<String> = Vec::new();
    let mut raw: Vec<(usize, usize)> = Vec::new();
    let add_vertex = |labels: &mut Vec<String>, name: String| {
        labels.push(name);
        labels.len() - 1
    };
    let mut literal_vertex = Vec::with_capacity(formula.variable_count());
    let mut variable_edges = Vec::new();
    for name in formula.names() {
        let x = add_vertex(&mut labels, format!("x:{name}"));
        let pos = add_vertex(&mut labels, format!("x:{name}+"));
        let neg = add_vertex(&mut labels, format!("x:{name}-"));
        literal_vertex.push([pos, neg]);
        raw.push((x, pos));
        raw.push((x, neg));
        variable_edges.push([EdgeId(raw.len() - 2), EdgeId(raw.len() - 1)]);
    }
    let mut clause_edges = Vec::new();
    let mut incidence_edges = Vec::new();
    for (i, clause) in formula.clauses().iter().enumerate() {
        let c = add_vertex(&mut labels, format!("c{i}"));
        let mut ce = [EdgeId(0); 3];
        let mut ie = [EdgeId(0); 3];
        for (j, lit) in clause.iter().enumerate() {
            let entry = add_vertex(&mut labels, format!("c{i}.{j}"));
            raw.push((c, entry));
            ce[j] = EdgeId(raw.len() - 1);
            raw.push((entry, literal_vertex[lit.var][lit.negated as usize]));
            ie[j] = EdgeId(raw.len() - 1);
        }
        clause_edges.push(ce);
        incidence_edges.push(ie);
    }

    let mut kind = vec![0u8; raw.len()];
    for e in clause_edges.iter().flatten() {
        kind[e.0] = 1;
    }
    for e in variable_edges.iter().flatten() {
        kind[e.0] = 2;
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); labels.len()];
    for (i, &(a, b)) in raw.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut costs = BTreeMap::new();
    for inc in &incident {
        for (x, &a) in inc.iter().enumerate() {
            for &b in &inc[x + 1..] {
                let cost = if kind[a] == 1 || kind[b] == 1 {
                    phi
                } else if kind[a] == 2 || kind[b] == 2 {
                    2.0 * phi
                } else {
                    0.0
                };
                costs.insert((EdgeId(a.min(b)), EdgeId(a.max(b))), cost);
            }
        }
    }
    let instance = Instance::with_costs(labels, raw, costs.into_iter().map(|((a, b), c)| (a, b, c)))?;
    Ok(NaeGadget { instance, phi, clause_edges, variable_edges, incidence_edges, formula: formula.clone() })
}

impl NaeGadget {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    /// The three-step schedule (times `0, phi, 2 phi`) of a not-all-equal
    /// assignment, or `None` if the assignment violates a clause.
    pub fn witness_schedule(&self, assignment: u64) -> Option<ScanSchedule> {
        if !self.formula.nae_satisfied(assignment) {
            return None;
        }
        let mut steps = vec![0u8; self.instance.edge_count()];
        for (var, [pos, neg]) in self.variable_edges.iter().enumerate() {
            let value = assignment >> var & 1 == 1;
            // The true literal's variable edge goes first, its incidences last.
            steps[pos.0] = if value { 0 } else { 2 };
            steps[neg.0] = if value { 2 } else { 0 };
        }
        for (clause, (ce, ie)) in self.formula.clauses().iter().zip(self.clause_edges.iter().zip(&self.incidence_edges)) {
            let truth: Vec<bool> = clause.iter().map(|l| l.eval(assignment)).collect();
            for j in 0..3 {
                steps[ie[j].0] = if truth[j] { 2 } else { 0 };
            }
            let first_true = truth.iter().position(|&t| t).unwrap();
            let first_false = truth.iter().position(|&t| !t).unwrap();
            for j in 0..3 {
                steps[ce[j].0] = if j == first_true {
                    0
                } else if j == first_false {
                    2
                } else {
                    1
                };
            }
        }
        Some(ScanSchedule::new(steps.iter().map(|&s| s as f64 * self.phi).collect(), "nae-witness"))
    }
}

/// Vertex cap of [`gen_turan_1d`].
pub const TURAN_VERTEX_CAP: usize = 100_000;

/// The complete `2^n`-partite graph with `n = 2^ell` vertices per class,
/// laid out as `n` consecutive intervals each holding one vertex of every
/// class in class order. Vertex `i * 2^n + c` is the vertex of class `c` in
/// interval `i`.
pub fn gen_turan_1d(ell: usize) -> Result<Instance> {
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be at least 1".to_string()));
    }
    if ell > 4 {
        return Err(Error::TooLarge { size: usize::MAX, limit: TURAN_VERTEX_CAP });
    }
    let n = 1usize << ell;
    let classes = 1usize << n;
    let total = n.saturating_mul(classes);
    if total > TURAN_VERTEX_CAP {
        return Err(Error::TooLarge { size: total, limit: TURAN_VERTEX_CAP });
    }
    let labels = (0..total).map(|v| format!("i{}c{}", v / classes, v % classes)).collect();
    let coords = (0..total).map(|v| vec![v as f64]).collect();
    let mut edges = Vec::new();
    for a in 0..total {
        for b in a + 1..total {
            if a % classes != b % classes {
                edges.push((a, b));
            }
        }
    }
    Instance::geometric(Dimension::One, labels, coords, edges)
}

/// Class of each vertex of [`gen_turan_1d`].
pub fn turan_classes(inst: &Instance, ell: usize) -> Vec<usize> {
    let classes = 1usize << (1usize << ell);
    inst.vertices().map(|v| v.0 % classes).collect()
}

fn icosahedron() -> (Vec<Vec3>, Vec<[usize; 3]>) {
    let p = (1.0 + libm::sqrt(5.0)) / 2.0;
    let raw = [
        [-1.0, p, 0.0],
        [1.0, p, 0.0],
        [-1.0, -p, 0.0],
        [1.0, -p, 0.0],
        [0.0, -1.0, p],
        [0.0, 1.0, p],
        [0.0, -1.0, -p],
        [0.0, 1.0, -p],
        [p, 0.0, -1.0],
        [p, 0.0, 1.0],
        [-p, 0.0, -1.0],
        [-p, 0.0, 1.0],
    ];
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    (raw.iter().map(|&v| geom::normalize(v).unwrap()).collect(), faces)
}

/// Largest accepted subdivision count of [`gen_geodesic_star`].
pub const MAX_SUBDIVISIONS: usize = 7;

/// A star centered at the origin whose leaves are the vertices of a
/// subdivided icosahedron on the unit sphere.
pub fn gen_geodesic_star(subdivisions: usize) -> Result<Instance> {
    if subdivisions > MAX_SUBDIVISIONS {
        return Err(Error::TooLarge { size: subdivisions, limit: MAX_SUBDIVISIONS });
    }
    let (mut points, mut faces) = icosahedron();
    for _ in 0..subdivisions {
        let mut midpoint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let mut mid = |x: usize, y: usize| {
                *midpoint.entry((x.min(y), x.max(y))).or_insert_with(|| {
                    points.push(geom::normalize(geom::add(points[x], points[y])).unwrap());
                    points.len() - 1
                })
            };
            let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    let mut labels = vec!["center".to_string()];
    labels.extend((0..points.len()).map(|i| format!("leaf{i}")));
    let mut coords = vec![vec![0.0; 3]];
    coords.extend(points.iter().map(|p| p.to_vec()));
    let edges = (1..=points.len()).map(|i| (0, i)).collect();
    Instance::geometric(Dimension::Three, labels, coords, edges)
}

/// A star with `n` leaves on distinct coordinate axes of `R^d`. For `d > 3`
/// the result is abstract with every transition cost 90.
pub fn gen_orthant_star(n: usize, d: usize) -> Result<Instance> {
    if d == 0 || n > d {
        return Err(Error::DimensionMismatch(format!("{n} leaves need at least {n} axes, got {d}")));
    }
    let mut labels = vec!["center".to_string()];
    labels.extend((0..n).map(|i| format!("axis{i}")));
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    if d <= 3 {
        let dim = Dimension::from_axes(d).expect("1 to 3 axes");
        let mut coords = vec![vec![0.0; d]];
        for i in 0..n {
            let mut p = vec![0.0; d];
            p[i] = 1.0;
            coords.push(p);
        }
        Instance::geometric(dim, labels, coords, edges)
    } else {
        let mut costs = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                costs.push((EdgeId(a), EdgeId(b), 90.0));
            }
        }
        Instance::with_costs(labels, edges, costs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomKind {
    Bipartite1d,
    Complete1d,
    Bipartite2d,
    Complete2d,
    Sparse2d,
    Tree3d,
}

impl RandomKind {
    pub const ALL: [RandomKind; 6] = [
        RandomKind::Bipartite1d,
        RandomKind::Complete1d,
        RandomKind::Bipartite2d,
        RandomKind::Complete2d,
        RandomKind::Sparse2d,
        RandomKind::Tree3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RandomKind::Bipartite1d => "bipartite1d",
            RandomKind::Complete1d => "complete1d",
            RandomKind::Bipartite2d => "bipartite2d",
            RandomKind::Complete2d => "complete2d",
            RandomKind::Sparse2d => "sparse2d",
            RandomKind::Tree3d => "tree3d",
        }
    }

    fn dimension(self) -> Dimension {
        match self {
            RandomKind::Bipartite1d | RandomKind::Complete1d => Dimension::One,
            RandomKind::Tree3d => Dimension::Three,
            _ => Dimension::Two,
        }
    }
}

impl FromStr for RandomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RandomKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown random kind `{s}`")))
    }
}

/// A random instance; bipartite kinds carry the sides they were drawn with.
#[derive(Debug, Clone)]
pub struct Generated {
    pub instance: Instance,
    pub partition: Option<Bipartition>,
}

/// Points uniform in the unit box. The same `(kind, n, seed)` always gives
/// the same instance.
pub fn gen_random(kind: RandomKind, n: usize, seed: u64) -> Result<Generated> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = kind.dimension();
    let axes = dim.axes().unwrap();
    let coords: Vec<Vec<f64>> = (0..n).map(|_| (0..axes).map(|_| rng.gen::<f64>()).collect()).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut partition = None;
    match kind {
        RandomKind::Bipartite1d | RandomKind::Bipartite2d => {
            let mut second: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            if n >= 2 && second.iter().all(|&s| s == second[0]) {
                second[n - 1] = !second[0];
            }
            for a in 0..n {
                for b in a + 1..n {
                    if second[a] != second[b] && rng.gen_bool(0.5) {
                        edges.push((a, b));
                    }
                }
            }
            partition = Some(Bipartition::new(second));
        }
        RandomKind::Complete1d | RandomKind::Complete2d => {
            for a in 0..n {
                for b in a + 1..n {
                    edges.push((a, b));
                }
            }
        }
        RandomKind::Sparse2d => {
            let p = if n > 1 { (3.0 / (n - 1) as f64).min(1.0) } else { 0.0 };
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((a, b));
                    }
                }
            }
        }
        RandomKind::Tree3d => {
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
        }
    }
    let instance = Instance::geometric(dim, labels, coords, edges)?;
    Ok(Generated { instance, partition })
}

/// Five vertices on a line joined by a monotone path, plus the chord from
/// the second to the fourth. Two steps would force the path to alternate,
/// which leaves the chord uncovered; three steps suffice.
pub fn line_three_step_instance() -> Instance {
    let labels = (0..5).map(|i| format!("p{i}")).collect();
    let coords = (0..5).map(|i| vec![i as f64]).collect();
    Instance::geometric(Dimension::One, labels, coords, vec![(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
        .expect("valid line instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::schedule::validate_schedule;

    #[test]
    fn gadget_sizes() {
        let f = Formula::parse("(x1,x2,x3)").unwrap();
        let g = gen_nae_gadget(&f, 1.0).unwrap();
        assert_eq!((g.instance.vertex_count(), g.instance.edge_count()), (13, 12));
        let f = Formula::parse("(x1,x2,!x3)(!x1,!x2,x3)(!x1,!x2,!x3)").unwrap();
        let g = gen_nae_gadget(&f, 1.0).unwrap();
        assert_eq!((g.instance.vertex_count(), g.instance.edge_count()), (21, 24));
        let f = Formula::parse("(x,x,x)").unwrap();
        let g = gen_nae_gadget(&f, 30.0).unwrap();
        assert_eq!((g.instance.vertex_count(), g.instance.edge_count()), (7, 8));
        assert!(g.instance.check_metric().is_empty());
        assert!(graph::bipartition(&g.instance).is_some());
        assert!(gen_nae_gadget(&f, 0.0).is_err());
    }

    #[test]
    fn gadget_witness() {
        let f = Formula::parse("(x1,x2,!x3)(!x1,!x2,x3)(!x1,!x2,!x3)").unwrap();
        let g = gen_nae_gadget(&f, 10.0).unwrap();
        for a in 0..8u64 {
            match g.witness_schedule(a) {
                Some(s) => {
                    assert!(validate_schedule(&g.instance, &s).is_valid());
                    assert_eq!(s.makespan(), 20.0);
                }
                None => assert!(!f.nae_satisfied(a)),
            }
        }
        assert!(g.witness_schedule(0b101).is_some());
    }

    #[test]
    fn turan_sizes() {
        let t = gen_turan_1d(1).unwrap();
        assert_eq!(t.vertex_count(), 8);
        assert_eq!(t.edge_count(), 8 * 6 / 2);
        assert_eq!(gen_turan_1d(2).unwrap().vertex_count(), 64);
        assert!(gen_turan_1d(0).is_err());
        assert!(matches!(gen_turan_1d(4), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn geodesic_counts() {
        assert_eq!(gen_geodesic_star(0).unwrap().edge_count(), 12);
        assert_eq!(gen_geodesic_star(1).unwrap().edge_count(), 42);
        assert_eq!(gen_geodesic_star(2).unwrap().edge_count(), 162);
    }

    #[test]
    fn orthant_stars() {
        let s = gen_orthant_star(3, 3).unwrap();
        assert_eq!(s.dimension(), Dimension::Three);
        assert!((s.cost(EdgeId(0), EdgeId(2)) - 90.0).abs() < 1e-9);
        let s = gen_orthant_star(2, 2).unwrap();
        assert_eq!(s.dimension(), Dimension::Two);
        let s = gen_orthant_star(5, 5).unwrap();
        assert_eq!(s.dimension(), Dimension::Abstract);
        assert_eq!(s.cost(EdgeId(1), EdgeId(4)), 90.0);
        assert!(matches!(gen_orthant_star(4, 3), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn random_is_deterministic() {
        for kind in RandomKind::ALL {
            let a = gen_random(kind, 7, 42).unwrap();
            let b = gen_random(kind, 7, 42).unwrap();
            assert_eq!(a.instance.edges(), b.instance.edges());
            for v in a.instance.vertices() {
                assert_eq!(a.instance.coords(v), b.instance.coords(v));
            }
            assert_eq!(a.partition, b.partition);
            assert_eq!(kind.name().parse::<RandomKind>().unwrap(), kind);
        }
        let k4 = gen_random(RandomKind::Complete2d, 4, 1).unwrap();
        assert_eq!(k4.instance.edge_count(), 6);
        let t = gen_random(RandomKind::Tree3d, 6, 1).unwrap();
        assert!(graph::is_tree(&t.instance));
        let b = gen_random(RandomKind::Bipartite2d, 8, 3).unwrap();
        assert!(b.partition.unwrap().is_proper_for(&b.instance));
    }
}
