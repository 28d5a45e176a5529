use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pin {pin} out of range in hyperedge {edge} (vertex count {num_vertices})")]
    PinOutOfRange {
        edge: usize,
        pin: usize,
        num_vertices: usize,
    },
    #[error("expected {expected} {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("total weight exceeds the supported maximum of {max}")]
    WeightOverflow { max: u64 },
    #[error("partition must consist of two non-empty blocks")]
    OneSidedPartition,
    #[error("no cut exists: fewer than two vertices")]
    NoCut,
    #[error("hypergraph is disconnected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("terminals must be distinct")]
    SameTerminals,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("unweighted only: {0}")]
    WeightedInput(String),
    #[error("oracle limited to {max_n} vertices, got {n}")]
    OracleLimit { n: usize, max_n: usize },
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
