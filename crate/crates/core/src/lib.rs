//! Adjacency spectra of edge-subdivided graph families.

pub mod eigen;
pub mod exec;
pub mod experiments;
pub mod graph;
pub mod lemmas;
pub mod limits;
pub mod tolerances;
