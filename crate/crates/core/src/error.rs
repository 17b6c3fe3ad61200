use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the supported maximum of 32")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("({0}, {1}) is not an edge")]
    MissingEdge(usize, usize),
    #[error("({0}, {1}) is already an edge")]
    EdgePresent(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not bicyclic")]
    NotBicyclic,
    #[error("coefficient comparison needs equal orders, got {0} and {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid family: {0}")]
    Family(String),
    #[error("enumeration limit: {0}")]
    EnumLimit(String),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("quadrature did not converge within the evaluation budget")]
    QuadratureBudget,
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("unknown identity id {0:?}")]
    UnknownIdentity(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
