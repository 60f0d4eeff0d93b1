#![no_std]

//! Minimum scan cover with angular costs.
//!
//! A graph is embedded in 1D, 2D or 3D (or comes with an abstract metric
//! table of transition costs). Every edge must be *scanned* at some time, and
//! two edges sharing a vertex must be scanned at least their transition cost
//! apart, because the shared vertex has to turn from one partner to the other
//! at unit angular speed. This crate computes such schedules, checks them,
//! and certifies lower bounds on the optimal makespan.
//!
//! Time is measured in degrees: one unit of time is one degree of turning.
//!
//! Module map:
//! - [`model`]: instances and transition costs.
//! - [`schedule`]: edge orders, schedules, trajectories and their validators.
//! - [`line`]: discrete 1D scan covers via 0/1 heading vectors.
//! - [`plane`]: 2D strategies (global rotation, sectors, colorings, recursive splits).
//! - [`bounds`]: lower bounds, cut-cover extraction and colorings.
//! - [`tree`]: stars as Path-TSP, trees and arboricity-based decomposition.
//! - [`oracle`]: exact reference solvers for small instances.
//! - [`generators`]: special instance families and random instances.

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod formula;
pub mod geom;
pub mod graph;
pub mod model;
pub mod schedule;

pub mod bounds;
pub mod generators;
pub mod line;
pub mod oracle;
pub mod plane;
pub mod tree;

pub use crate::error::{Error, Result};
pub use crate::model::{Dimension, Edge, EdgeId, Instance, VertexId};
pub use crate::schedule::{ScanSchedule, Trajectory, Waypoint};

/// Absolute tolerance for every comparison of angles and times, in degrees.
pub const TOLERANCE: f64 = 1e-9;
