use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the 64-vertex limit")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("coloring matrix, row {row}, column {col}: {msg}")]
    Matrix { row: usize, col: usize, msg: String },

    #[error("graph6 input, byte {offset}: {msg}")]
    Graph6 { offset: usize, msg: String },

    #[error("DIMACS input, line {line}: {msg}")]
    Dimacs { line: usize, msg: String },

    #[error("unknown target `{0}`")]
    UnknownTarget(String),

    #[error("invalid target: {0}")]
    InvalidTarget(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
