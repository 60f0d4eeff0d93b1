//! Files and command line for `scancover-core`.
//!
//! Instances and schedules travel as JSON (see [`format`]); [`svg`] draws a
//! solved instance; [`cli`] implements the `scancover` binary.

pub mod cli;
mod error;
pub mod format;
pub mod svg;

pub use error::{Error, Result};
