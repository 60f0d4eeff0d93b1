//! JSON documents for instances and schedules.
//!
//! An instance file lists vertices by string id; edges and abstract costs
//! refer to those ids. A schedule file names its instance by the SHA-256 of
//! the instance's canonical serialization, so reformatting an instance file
//! does not invalidate its schedules.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use scancover_core::line::BitSchedule;
use scancover_core::{Dimension, EdgeId, Instance, ScanSchedule, Trajectory, VertexId, Waypoint};

use crate::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimensionField {
    Axes(u8),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coords: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostEntry {
    pub e1: [String; 2],
    pub e2: [String; 2],
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub dimension: DimensionField,
    pub vertices: Vec<VertexEntry>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub costs: Vec<CostEntry>,
}

fn dimension_of(field: &DimensionField) -> Result<Dimension, Error> {
    match field {
        DimensionField::Axes(a) => Dimension::from_axes(*a as usize)
            .filter(|d| *d != Dimension::Abstract)
            .ok_or_else(|| Error::Format(format!("dimension must be 1, 2, 3 or \"abstract\", got {a}"))),
        DimensionField::Named(s) if s == "abstract" => Ok(Dimension::Abstract),
        DimensionField::Named(s) => Err(Error::Format(format!("unknown dimension \"{s}\""))),
    }
}

fn edge_key(inst: &Instance, e: EdgeId) -> [String; 2] {
    let edge = inst.edge(e);
    [inst.label(edge.u).to_string(), inst.label(edge.v).to_string()]
}

fn find_edge(inst: &Instance, pair: &[String; 2]) -> Result<EdgeId, Error> {
    let lookup = |id: &str| inst.vertex_by_label(id).ok_or_else(|| Error::Format(format!("unknown vertex \"{id}\"")));
    let (a, b) = (lookup(&pair[0])?, lookup(&pair[1])?);
    inst.edge_between(a, b).ok_or_else(|| Error::Format(format!("no edge {}-{}", pair[0], pair[1])))
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        let dimension = match inst.dimension() {
            Dimension::Abstract => DimensionField::Named("abstract".into()),
            d => DimensionField::Axes(d.axes().unwrap() as u8),
        };
        let vertices = inst
            .vertices()
            .map(|v| VertexEntry { id: inst.label(v).to_string(), coords: inst.coords(v).map(<[f64]>::to_vec).unwrap_or_default() })
            .collect();
        let edges = inst.edge_ids().map(|e| edge_key(inst, e)).collect();
        let costs = inst
            .abstract_costs()
            .map(|(a, b, cost)| CostEntry { e1: edge_key(inst, a), e2: edge_key(inst, b), cost })
            .collect();
        InstanceFile { version: FORMAT_VERSION, dimension, vertices, edges, costs }
    }

    pub fn to_instance(&self) -> Result<Instance, Error> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {}", self.version)));
        }
        let dimension = dimension_of(&self.dimension)?;
        let labels: Vec<String> = self.vertices.iter().map(|v| v.id.clone()).collect();
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_str(), i).is_some() {
                return Err(scancover_core::Error::DuplicateVertex(l.clone()).into());
            }
        }
        let vertex = |id: &str| index.get(id).copied().ok_or_else(|| Error::Format(format!("unknown vertex \"{id}\"")));
        let edges = self.edges.iter().map(|[a, b]| Ok((vertex(a)?, vertex(b)?))).collect::<Result<Vec<_>, Error>>()?;
        if dimension == Dimension::Abstract {
            if self.vertices.iter().any(|v| !v.coords.is_empty()) {
                return Err(Error::Format("abstract instances take no coordinates".into()));
            }
            // Resolve cost entries against the edge list before building.
            let mut edge_ids = BTreeMap::new();
            for (i, &(a, b)) in edges.iter().enumerate() {
                edge_ids.insert((a.min(b), a.max(b)), EdgeId(i));
            }
            let resolve = |pair: &[String; 2]| -> Result<EdgeId, Error> {
                let (a, b) = (vertex(&pair[0])?, vertex(&pair[1])?);
                edge_ids.get(&(a.min(b), a.max(b))).copied().ok_or_else(|| Error::Format(format!("no edge {}-{}", pair[0], pair[1])))
            };
            let costs = self.costs.iter().map(|c| Ok((resolve(&c.e1)?, resolve(&c.e2)?, c.cost))).collect::<Result<Vec<_>, Error>>()?;
            Ok(Instance::with_costs(labels, edges, costs)?)
        } else {
            if !self.costs.is_empty() {
                return Err(Error::Format("geometric instances take no cost table".into()));
            }
            let coords = self.vertices.iter().map(|v| v.coords.clone()).collect();
            Ok(Instance::geometric(dimension, labels, coords, edges)?)
        }
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.to_instance()
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

/// SHA-256 of the compact canonical serialization, hex encoded.
pub fn instance_hash(inst: &Instance) -> String {
    let canonical = serde_json::to_vec(&InstanceFile::from_instance(inst)).expect("instance serializes");
    hex::encode(Sha256::digest(&canonical))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeEntry {
    pub edge: [String; 2],
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitsEntry {
    pub steps: usize,
    pub vectors: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaypointEntry {
    pub t: f64,
    pub heading: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub instance_hash: String,
    pub algorithm_tag: String,
    pub times: Vec<TimeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<BitsEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trajectory: Option<BTreeMap<String, Vec<WaypointEntry>>>,
}

/// A schedule file resolved against its instance.
#[derive(Debug, Clone)]
pub struct LoadedSchedule {
    pub schedule: ScanSchedule,
    pub bits: Option<BitSchedule>,
    pub trajectory: Option<Trajectory>,
}

impl ScheduleFile {
    pub fn new(inst: &Instance, schedule: &ScanSchedule, bits: Option<&BitSchedule>, traj: Option<&Trajectory>) -> Self {
        let times = inst.edge_ids().map(|e| TimeEntry { edge: edge_key(inst, e), t: schedule.time(e) }).collect();
        let bits = bits.map(|bs| BitsEntry {
            steps: bs.steps(),
            vectors: inst.vertices().map(|v| (inst.label(v).to_string(), bs.bits_string(v))).collect(),
        });
        let trajectory = traj.map(|tr| {
            inst.vertices()
                .map(|v| {
                    let path = tr.paths.get(v.0).map(|p| p.iter().map(|w| WaypointEntry { t: w.time, heading: w.heading }).collect());
                    (inst.label(v).to_string(), path.unwrap_or_default())
                })
                .collect()
        });
        ScheduleFile { instance_hash: instance_hash(inst), algorithm_tag: schedule.tag.clone(), times, bits, trajectory }
    }

    /// Resolve edge and vertex ids. Fails on a hash mismatch, on unknown
    /// ids, and unless every edge gets exactly one time.
    pub fn resolve(&self, inst: &Instance) -> Result<LoadedSchedule, Error> {
        let expected = instance_hash(inst);
        if self.instance_hash != expected {
            return Err(Error::HashMismatch { expected, found: self.instance_hash.clone() });
        }
        let mut times: Vec<Option<f64>> = vec![None; inst.edge_count()];
        for entry in &self.times {
            let e = find_edge(inst, &entry.edge)?;
            if !entry.t.is_finite() {
                return Err(Error::Format(format!("non-finite time for edge {}-{}", entry.edge[0], entry.edge[1])));
            }
            if times[e.0].replace(entry.t).is_some() {
                return Err(Error::Format(format!("edge {}-{} listed twice", entry.edge[0], entry.edge[1])));
            }
        }
        if let Some(e) = times.iter().position(Option::is_none) {
            let [a, b] = edge_key(inst, EdgeId(e));
            return Err(Error::Format(format!("edge {a}-{b} has no time")));
        }
        let schedule = ScanSchedule::new(times.into_iter().map(Option::unwrap).collect(), self.algorithm_tag.clone());

        let bits = match &self.bits {
            None => None,
            Some(b) => {
                let mut vectors = vec![0u64; inst.vertex_count()];
                for (id, text) in &b.vectors {
                    let v = inst.vertex_by_label(id).ok_or_else(|| Error::Format(format!("unknown vertex \"{id}\"")))?;
                    if text.len() != b.steps {
                        return Err(Error::Format(format!("vector of \"{id}\" has {} bits, expected {}", text.len(), b.steps)));
                    }
                    vectors[v.0] = BitSchedule::parse_bits(text).ok_or_else(|| Error::Format(format!("bad bit string \"{text}\"")))?;
                }
                Some(BitSchedule::new(b.steps, vectors)?)
            }
        };

        let trajectory = match &self.trajectory {
            None => None,
            Some(map) => {
                let mut paths: Vec<Vec<Waypoint>> = vec![Vec::new(); inst.vertex_count()];
                for (id, path) in map {
                    let v = inst.vertex_by_label(id).ok_or_else(|| Error::Format(format!("unknown vertex \"{id}\"")))?;
                    paths[v.0] = path.iter().map(|w| Waypoint { time: w.t, heading: w.heading }).collect();
                }
                Some(Trajectory::new(paths))
            }
        };
        Ok(LoadedSchedule { schedule, bits, trajectory })
    }
}

pub fn schedule_to_json(file: &ScheduleFile) -> String {
    serde_json::to_string_pretty(file).expect("schedule serializes")
}

pub fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

pub fn load_instance(path: &Path) -> Result<Instance, Error> {
    parse_instance(&read_text(path)?)
}

pub fn load_schedule(path: &Path) -> Result<ScheduleFile, Error> {
    Ok(serde_json::from_str(&read_text(path)?)?)
}

/// Id of a vertex in messages.
pub fn vertex_name(inst: &Instance, v: VertexId) -> &str {
    inst.label(v)
}

/// `a-b` name of an edge in messages.
pub fn edge_name(inst: &Instance, e: EdgeId) -> String {
    let [a, b] = edge_key(inst, e);
    format!("{a}-{b}")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = r#"{
        "version": 1,
        "dimension": 2,
        "vertices": [{"id": "a", "coords": [0, 0]}, {"id": "b", "coords": [1, 0]}, {"id": "c", "coords": [0.5, 0.8660254037844386]}],
        "edges": [["a", "b"], ["b", "c"], ["a", "c"]]
    }"#;

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(TRIANGLE).unwrap();
        assert_eq!(inst.edge_count(), 3);
        let again = parse_instance(&instance_to_json(&inst)).unwrap();
        assert_eq!(instance_hash(&inst), instance_hash(&again));
    }

    #[test]
    fn abstract_round_trip() {
        let text = r#"{"version":1,"dimension":"abstract","vertices":[{"id":"c"},{"id":"x"},{"id":"y"}],
            "edges":[["c","x"],["c","y"]],"costs":[{"e1":["c","x"],"e2":["y","c"],"cost":45}]}"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.cost(EdgeId(0), EdgeId(1)), 45.0);
        let again = parse_instance(&instance_to_json(&inst)).unwrap();
        assert_eq!(again.cost(EdgeId(0), EdgeId(1)), 45.0);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(parse_instance(r#"{"version":1,"dimension":2,"vertices":[],"edges":[],"extra":1}"#).is_err());
        assert!(parse_instance(r#"{"version":2,"dimension":2,"vertices":[],"edges":[]}"#).is_err());
        assert!(parse_instance(r#"{"version":1,"dimension":4,"vertices":[],"edges":[]}"#).is_err());
        assert!(parse_instance(r#"{"version":1,"dimension":"planar","vertices":[],"edges":[]}"#).is_err());
        assert!(parse_instance(r#"{"version":1,"dimension":1,"vertices":[{"id":"a","coords":[0]}],"edges":[["a","z"]]}"#).is_err());
        let missing = r#"{"version":1,"dimension":"abstract","vertices":[{"id":"c"},{"id":"x"},{"id":"y"}],"edges":[["c","x"],["c","y"]]}"#;
        assert!(parse_instance(missing).is_err());
    }

    #[test]
    fn schedule_round_trip_and_hash() {
        let inst = parse_instance(TRIANGLE).unwrap();
        let s = ScanSchedule::new(vec![0.0, 60.0, 120.0], "hand");
        let file = ScheduleFile::new(&inst, &s, None, None);
        let back: ScheduleFile = serde_json::from_str(&schedule_to_json(&file)).unwrap();
        let loaded = back.resolve(&inst).unwrap();
        assert_eq!(loaded.schedule, s);
        let other = parse_instance(&TRIANGLE.replace("0.5", "0.4")).unwrap();
        assert!(matches!(back.resolve(&other), Err(Error::HashMismatch { .. })));
    }
}
