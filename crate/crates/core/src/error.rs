use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bit string: {0}")]
    InvalidBits(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid function table: {0}")]
    InvalidTable(String),

    #[error("qubit index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("register of {qubits} qubits exceeds the desk-scale cap of {cap}")]
    TooManyQubits { qubits: usize, cap: usize },

    #[error("function is not affine over GF(2); residual characteristic {residual}")]
    Unrealizable { residual: String },

    #[error("period underdetermined after {rounds} rounds")]
    Underdetermined { rounds: usize },

    #[error("missing vertex {0}")]
    MissingVertex(usize),

    #[error("rewrite precondition violated: {0}")]
    Precondition(String),

    #[error("tensor contraction too large: {width} open indices exceeds cap {cap}")]
    ContractionTooLarge { width: usize, cap: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("simplification stuck at stage `{stage}`: {reason}")]
    PipelineStuck { stage: String, reason: String },

    #[error("diagram is not graph-like: {0}")]
    NotGraphLike(String),

    #[error("pattern has unbound adaptive parameters")]
    Unbound,
}

pub type Result<T> = std::result::Result<T, Error>;
