//! Normal surface machinery for recognising exteriors of prime alternating
//! knots from a pair of spanning surfaces.

// Matrix and per-tetrahedron code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod decider;
pub mod diagram;
pub mod dtcode;
pub mod enumeration;
pub mod error;
pub mod linalg;
pub mod normal;
pub mod perm;
pub mod triangulation;

pub use decider::{decide_alternating, DeciderOptions, Decision, VerdictTag};
pub use dtcode::{DtCode, DtOutcome};
pub use enumeration::{EnumOptions, SurfaceKind, SurfaceSet};
pub use error::{Error, Result};
pub use normal::{Layout, NormalCoordinates, SpanningSurfaceRecord};
pub use perm::Perm4;
pub use triangulation::{
    BoundaryTriangulation, MeridianMarking, Slope, Triangulation, ValidationReport,
};
