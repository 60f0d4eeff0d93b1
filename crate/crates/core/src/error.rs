use alloc::string::String;

use crate::model::{EdgeId, VertexId};

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    // Instance construction.
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    CoordinateArity { vertex: VertexId, expected: usize, found: usize },
    #[error("non-finite coordinate at vertex {0}")]
    NonFiniteCoordinate(VertexId),
    #[error("edge {0} joins two vertices at identical coordinates")]
    DegenerateEdge(EdgeId),
    #[error("edges {0} and {1} are not incident")]
    NotIncident(EdgeId, EdgeId),
    #[error("no transition cost given for incident edges {0} and {1}")]
    MissingCost(EdgeId, EdgeId),
    #[error("conflicting costs for edges {0} and {1}")]
    AsymmetricCost(EdgeId, EdgeId),
    #[error("invalid cost {cost} for edges {first} and {second}")]
    InvalidCost { first: EdgeId, second: EdgeId, cost: f64 },
    #[error("operation needs a {expected} instance")]
    WrongDimension { expected: &'static str },
    #[error("transition costs violate the triangle inequality")]
    NotMetric,

    // Schedules.
    #[error("edge order is not a permutation of all edges")]
    IncompleteOrder,
    #[error("schedule has {found} times for {expected} edges")]
    ScheduleLength { expected: usize, found: usize },
    #[error("schedule cannot be realized: vertex {vertex} has to turn between edges {first} and {second} too fast")]
    InfeasibleSchedule { vertex: VertexId, first: EdgeId, second: EdgeId },
    #[error("trajectory does not witness the schedule")]
    InvalidTrajectory,

    // Graph structure.
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("partition is not a proper 2-coloring of the graph")]
    NotBipartitePartition,
    #[error("graph is not complete")]
    NotComplete,
    #[error("coloring is not proper at edge {0}")]
    ImproperColoring(EdgeId),
    #[error("coloring has {found} entries for {expected} vertices")]
    ColoringLength { expected: usize, found: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not a star centered at the given vertex")]
    NotAStar,
    #[error("bit schedule does not cover edge {0}")]
    CoverViolation(EdgeId),

    // Oracles and generators.
    #[error("instance too large for exact search ({size} > {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("transition costs are not multiples of the step")]
    CostsNotDiscrete,
    #[error("no schedule with at most {0} steps")]
    NoSolutionWithin(usize),
    #[error("too many variables ({0}) for brute force")]
    TooManyVariables(usize),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
