use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),

    #[error("invalid meridian marking: {0}")]
    InvalidMarking(String),

    #[error("edge class {0} does not lie on the boundary")]
    NotBoundaryEdge(usize),

    #[error("incompatible quadrilateral types in tetrahedron {tet}")]
    IncompatibleQuads { tet: usize },

    #[error("coordinate vector has length {got}, expected {expected}")]
    CoordinateLength { got: usize, expected: usize },

    #[error("resource limit exhausted: {0}")]
    ResourceExhausted(String),

    #[error("meridian check failed: Dehn filling along the marked curve has first homology {0}")]
    MeridianCheckFailed(String),

    #[error("intersection realization failed: {0}")]
    Realization(String),

    #[error("double arc joins labels {0} and {1} of equal parity")]
    ParallelArc(usize, usize),

    #[error("surface cache: {0}")]
    Cache(String),

    #[error("diagram: {0}")]
    Diagram(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn overflow(context: &str) -> Error {
        Error::ResourceExhausted(format!("integer overflow in {context}"))
    }
}
