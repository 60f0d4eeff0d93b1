//! Lower bounds on the optimal makespan, cut covers and colorings.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{self, Vec3};
use crate::graph;
use crate::line::ceil_log2;
use crate::model::{Dimension, EdgeId, Instance, VertexId};
use crate::plane;
use crate::schedule::{validate_trajectory, ScanSchedule, Trajectory};
use crate::{Error, Result};

/// A bound value and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bound {
    pub value: f64,
    pub source: &'static str,
}

impl Bound {
    fn none() -> Self {
        Bound { value: 0.0, source: "n/a" }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lambda: Bound,
    pub chromatic_bound: Bound,
    pub star_bound: Bound,
    pub chi_lower: usize,
    pub chi_upper: usize,
    /// True when `chi_lower` is the exact chromatic number.
    pub chi_exact: bool,
}

impl BoundReport {
    /// The largest certified bound.
    pub fn best(&self) -> Bound {
        [self.lambda, self.chromatic_bound, self.star_bound]
            .into_iter()
            .fold(Bound::none(), |a, b| if b.value > a.value { b } else { a })
    }
}

/// `max(0, (ceil(log2 chi) - d) / d * 90)`.
pub fn chromatic_lower_bound(chi: usize, d: usize) -> f64 {
    let d = d.max(1) as f64;
    let c = ceil_log2(chi) as f64;
    ((c - d) / d * 90.0).max(0.0)
}

/// `(n - 1)` times the smallest transition cost at the center of a star.
pub fn star_sequential_bound(inst: &Instance) -> Result<f64> {
    let center = graph::star_center(inst).ok_or(Error::NotAStar)?;
    let inc = inst.incident(center);
    if inc.len() < 2 {
        return Ok(0.0);
    }
    let mut min = f64::INFINITY;
    for (i, &a) in inc.iter().enumerate() {
        for &b in &inc[i + 1..] {
            min = min.min(inst.cost(a, b));
        }
    }
    Ok((inc.len() - 1) as f64 * min)
}

/// Proper coloring along the reverse of a degeneracy order (smallest last);
/// uses at most degeneracy + 1 colors.
pub fn greedy_coloring(inst: &Instance) -> Vec<usize> {
    let (order, _) = graph::degeneracy_order(inst);
    let mut color = vec![usize::MAX; inst.vertex_count()];
    for &v in order.iter().rev() {
        let mut used: Vec<usize> = inst.neighbors(v).map(|w| color[w.0]).filter(|&c| c != usize::MAX).collect();
        used.sort_unstable();
        used.dedup();
        color[v.0] = used.iter().enumerate().find(|(i, &c)| *i != c).map_or(used.len(), |(i, _)| i);
    }
    color
}

pub fn color_count(coloring: &[usize]) -> usize {
    let mut c = coloring.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Size of a clique found greedily from the highest-degree vertices.
pub fn clique_lower_bound(inst: &Instance) -> usize {
    if inst.vertex_count() == 0 {
        return 0;
    }
    if inst.edge_count() == 0 {
        return 1;
    }
    let mut by_degree: Vec<VertexId> = inst.vertices().collect();
    by_degree.sort_by_key(|&v| (core::cmp::Reverse(inst.degree(v)), v));
    let mut best = 1;
    for &start in by_degree.iter().take(64) {
        if inst.degree(start) < best {
            break;
        }
        let mut clique = vec![start];
        let mut candidates: Vec<VertexId> = inst.neighbors(start).collect();
        candidates.sort_by_key(|&v| (core::cmp::Reverse(inst.degree(v)), v));
        while let Some(&next) = candidates.first() {
            clique.push(next);
            candidates.retain(|&w| w != next && inst.edge_between(w, next).is_some());
        }
        best = best.max(clique.len());
    }
    best
}

/// Dimension parameter of the chromatic bound, if it applies.
fn chromatic_dimension(inst: &Instance) -> Option<usize> {
    match inst.dimension() {
        Dimension::Two => Some(2),
        Dimension::Three => Some(3),
        _ => None,
    }
}

/// All bounds that apply to the instance. `exact_chi` replaces the clique
/// estimate when known.
pub fn bound_report(inst: &Instance, exact_chi: Option<usize>) -> BoundReport {
    let lambda = match inst.dimension() {
        Dimension::One | Dimension::Two => {
            Bound { value: plane::lambda_cone(inst).unwrap_or(0.0), source: "cone" }
        }
        _ => Bound::none(),
    };
    let coloring = greedy_coloring(inst);
    let chi_upper = color_count(&coloring);
    let (chi_lower, chi_exact) = match exact_chi {
        Some(c) => (c, true),
        None => (clique_lower_bound(inst), false),
    };
    let chromatic_bound = if inst.dimension() == Dimension::One {
        // Each 180 degree step scans a directed cut, and ceil(log2 chi) cuts are needed.
        let steps = ceil_log2(chi_lower);
        Bound { value: steps.saturating_sub(1) as f64 * 180.0, source: if chi_exact { "line-cut/exact" } else { "line-cut/clique" } }
    } else if let Some(d) = chromatic_dimension(inst) {
        Bound {
            value: chromatic_lower_bound(chi_lower, d),
            source: if chi_exact { "chromatic/exact" } else { "chromatic/clique" },
        }
    } else {
        Bound::none()
    };
    let star_bound = match star_sequential_bound(inst) {
        Ok(v) => Bound { value: v, source: "star" },
        Err(_) => Bound::none(),
    };
    BoundReport { lambda, chromatic_bound, star_bound, chi_lower, chi_upper, chi_exact }
}

/// Per-interval vertex classes read off a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct CutCover {
    /// Number of vertex classes per interval: 4 quadrants or 8 orthants.
    pub parts: usize,
    /// `classes[i][v]` is the class of `v` in interval `i`.
    pub classes: Vec<Vec<usize>>,
    /// The interval in which each edge is scanned.
    pub edge_interval: Vec<usize>,
}

impl CutCover {
    pub fn intervals(&self) -> usize {
        self.classes.len()
    }

    /// Edges whose endpoints share a class in the edge's interval.
    pub fn violations(&self, inst: &Instance) -> Vec<EdgeId> {
        inst.edge_ids()
            .filter(|&e| {
                let edge = inst.edge(e);
                let row = &self.classes[self.edge_interval[e.0]];
                row[edge.u.0] == row[edge.v.0]
            })
            .collect()
    }

    /// Vertex colors formed by the tuple of classes over all intervals.
    /// Proper whenever [`CutCover::violations`] is empty.
    pub fn coloring(&self) -> Vec<usize> {
        let n = self.classes.first().map_or(0, Vec::len);
        let mut keys: Vec<Vec<usize>> = (0..n).map(|v| self.classes.iter().map(|row| row[v]).collect()).collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        keys.iter_mut().map(|k| distinct.binary_search(k).unwrap()).collect()
    }
}

fn quadrant(h: Vec3) -> usize {
    ((geom::heading_deg(h) / 90.0) as usize).min(3)
}

fn orthant(h: Vec3) -> usize {
    (h[0] < 0.0) as usize | ((h[1] < 0.0) as usize) << 1 | ((h[2] < 0.0) as usize) << 2
}

/// Random rotation from a uniform unit quaternion, as a row-major matrix.
fn random_rotation(rng: &mut ChaCha8Rng) -> [Vec3; 3] {
    let q = loop {
        let q: [f64; 4] = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        let n = libm::sqrt(q.iter().map(|x| x * x).sum::<f64>());
        if n > 0.1 && n <= 1.0 {
            break q.map(|x| x / n);
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

fn apply(m: &[Vec3; 3], v: Vec3) -> Vec3 {
    [geom::dot(m[0], v), geom::dot(m[1], v), geom::dot(m[2], v)]
}

/// Split `[0, T]` into `ceil(T / 90)` intervals and class every vertex by
/// where it heads at each interval's midpoint. A vertex turns at most 45
/// degrees away from its midpoint heading inside the interval, so the two
/// endpoints of an edge scanned there (facing exactly opposite ways) cannot
/// share a quadrant. In 3D, orthants of a generic basis play the role of
/// quadrants.
pub fn cut_cover_extract(inst: &Instance, schedule: &ScanSchedule, traj: &Trajectory) -> Result<CutCover> {
    if inst.dimension() == Dimension::Abstract {
        return Err(Error::WrongDimension { expected: "geometric" });
    }
    if !validate_trajectory(inst, schedule, traj).is_valid() {
        return Err(Error::InvalidTrajectory);
    }
    let intervals = (libm::ceil(schedule.makespan() / 90.0) as usize).max(1);
    let n = inst.vertex_count();
    let edge_interval: Vec<usize> =
        schedule.times.iter().map(|&t| ((t / 90.0).max(0.0) as usize).min(intervals - 1)).collect();
    let headings: Vec<Vec<Option<Vec3>>> = (0..intervals)
        .map(|i| {
            let mid = 90.0 * i as f64 + 45.0;
            (0..n).map(|v| traj.heading_at(VertexId(v), mid)).collect()
        })
        .collect();

    let three_d = inst.dimension() == Dimension::Three;
    let classes = if !three_d {
        headings.iter().map(|row| row.iter().map(|h| h.map_or(0, quadrant)).collect()).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut basis = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for _ in 0..64 {
            let generic = headings.iter().flatten().flatten().all(|&h| apply(&basis, h).iter().all(|c| c.abs() > 1e-6));
            if generic {
                break;
            }
            basis = random_rotation(&mut rng);
        }
        headings.iter().map(|row| row.iter().map(|h| h.map_or(0, |h| orthant(apply(&basis, h)))).collect()).collect()
    };
    Ok(CutCover { parts: if three_d { 8 } else { 4 }, classes, edge_interval })
}
