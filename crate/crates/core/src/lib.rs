//! Execution of weighted graphs: alternating paths and circuits, the
//! logarithmic measurement of circuits, projects and their cut, a
//! symmetric monoidal category of graphs, and an interpretation of
//! multiplicative linear logic proofs.

pub mod category;
pub mod cli;
pub mod error;
pub mod graph;
pub mod logic;
pub mod matrix;
pub mod measure;
pub mod project;
pub mod truth;
pub mod verify;

pub use error::{Error, Result};
