//! Exact measures of how far a loop-free multigraph is from being class 1:
//! chromatic index, resistance, vertex-deletion measures and oddness, with
//! certificates that can be checked independently of the solvers.

pub mod bounds;
pub mod cert;
pub mod coloring;
pub mod error;
pub mod factor;
pub mod generators;
pub mod graph;
pub mod io;
pub mod kempe;
pub mod report;
pub mod search;
pub mod solver;
pub mod vertex;

pub use cert::{verify_certificate, CertCheck, Certificate};
pub use coloring::{parity_signature, verify, PartialEdgeColoring};
pub use error::{Error, Result};
pub use factor::{oddness, Oddness, OddnessValue, TwoFactor, TwoFactorization};
pub use graph::{EdgeId, EdgeSet, MultiGraph, Vertex, VertexSet};
pub use search::Budget;
pub use solver::{chromatic_index, max_colorable_subgraph, resistance, ChromaticIndex, Resistance};
pub use vertex::{r_v, r_v_prime, rebuild, reinsert_vertex, DeletionMode, VertexMeasure};
