use crate::complex::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("asymmetric adjacency: {0} lists {1} but not conversely")]
    Asymmetric(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("vertices {0:?} do not span a simplex")]
    NotASimplex(Vec<VertexId>),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("automorphism is not injective: {0} and {1} both map to {2}")]
    NotInjective(VertexId, VertexId, VertexId),
    #[error("automorphism undefined at {0}")]
    Undefined(VertexId),
    #[error("translation length is 0; the isometry is elliptic")]
    ZeroTranslation,
    #[error("vertex {0} is not in the minimal displacement set")]
    NotInMinSet(VertexId),
    #[error("path is not a geodesic from {from} to {to}: {reason}")]
    NotGeodesic {
        from: VertexId,
        to: VertexId,
        reason: String,
    },
    #[error("subcomplex mismatch: {0}")]
    SubcomplexMismatch(String),
    #[error("no trusted vertices in scope")]
    EmptyScope,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
