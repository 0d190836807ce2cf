//! Robinson's aperiodic tile set: catalog, patches, exact search and the
//! hierarchical construction.

pub mod grid;
pub mod hierarchy;
pub mod render;
pub mod solver;
pub mod tiles;
pub mod verify;
