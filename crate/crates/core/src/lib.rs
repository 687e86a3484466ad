//! Rigidity, vertex-redundant rigidity and global rigidity of periodic
//! bar-joint and body-bar frameworks on a fixed lattice, decided from their
//! quotient gain graphs with exact rational arithmetic.
//!
//! Generic behaviour is estimated by evaluating exact ranks at seeded
//! random integer placements; every verdict records its trial count and
//! seed.

pub mod body_bar;
pub mod document;
pub mod error;
pub mod framework;
pub mod gain_graph;
pub mod linalg;
pub mod motion;
pub mod rigidity;

pub use body_bar::{
    build_body_bar_gain_graph, count_rank, decide_body_bar_global, is_bar_redundantly_rigid,
    BodyBarGainGraph, BodyBarGlobalVerdict, CountReport,
};
pub use document::{parse_document, InputDocument, Parsed};
pub use error::{Error, Result};
pub use framework::{
    are_congruent, are_equivalent, generic_rank, random_generic_framework, Framework, Lattice,
    PinSpec, Placement, Point,
};
pub use gain_graph::{CoveringWindow, GainGraph, GainVector, Mode, Violation};
pub use linalg::{integer_rank, rank, RationalMatrix};
pub use motion::{
    build_flex_path, sample_path, small_graph_global_check, verify_path, FlexPath, Monotonicity,
    PathCertificate, Trajectory,
};
pub use rigidity::{
    decide_global_rigidity, is_rigid, is_vertex_redundantly_rigid, GlobalReason, GlobalStatus,
    GlobalVerdict, RedundancyVerdict, RigidityMethod, RigidityVerdict, Settings,
};
