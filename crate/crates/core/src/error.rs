use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range 1..={p}")]
    VertexOutOfRange { vertex: usize, p: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex pair {a}, {b} is declared more than once")]
    DuplicateEdge { a: usize, b: usize },

    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("graph is not a DAG")]
    NotADag,

    #[error("invalid vertex ordering: {0}")]
    InvalidOrdering(String),

    #[error("chain component of vertex {0} is not chordal")]
    NonChordal(usize),

    #[error("vertex {0} is intervened in every target of the family")]
    NotCovering(usize),

    #[error("{a} -> {b} is not an arrow of the graph")]
    NotAnArrow { a: usize, b: usize },

    #[error("invalid essential graph: {0}")]
    InvalidEssentialGraph(String),

    #[error("DAG is not a member of the equivalence class")]
    NotInClass,

    #[error("enumeration is limited to p <= {bound}, got p = {p}")]
    EnumerationBound { p: usize, bound: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty input")]
    EmptyInput,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
