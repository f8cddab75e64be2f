//! Reeb graphs of piecewise-linear scalar fields and the distances used to
//! compare them: bottleneck distances of extended persistence diagrams,
//! interleaving (plain and truncated), functional distortion brackets, and
//! edit distances with explicit certificates.

#![no_std]

extern crate alloc;

pub mod fdd;
pub mod field;
pub mod fixtures;
pub mod graph;
pub mod interleaving;
pub mod iso;
pub mod landscape;
pub mod levels;
pub mod metrics;
pub mod persistence;
pub mod random;
pub mod smoothing;
pub mod uf;
pub mod edit;
pub mod value;

pub use field::{build_reeb, linf_distance, BuildOptions, ScalarField};
pub use graph::{Graph, Point, ReebGraph};
pub use iso::{is_isomorphic, IsoWitness};
pub use levels::{path_height_distance, LeveledGraph, LeveledMap};
pub use persistence::{extended_diagram, extended_diagram_oracle, ExtendedDiagram, PersistencePoint, PointClass};
pub use value::{Bracket, DVal, Ext, Value};
