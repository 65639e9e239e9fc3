//! Feedback vertex and arc set problems on bounded-degree and planar graphs:
//! graph storage, planarity, gadget reductions with solution maps, and exact
//! solvers used to check them.

pub mod classify;
pub mod generators;
pub mod graph;
pub mod io;
pub mod planar;
pub mod reductions;
pub mod solvers;
pub mod suite;
