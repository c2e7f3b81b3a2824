use thiserror::Error;

/// Errors raised while reading presentations, diagrams and family parameters.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` has no edge assignment")]
    MissingEdge(String),
    #[error("edge label must be at least 1, found {0}")]
    BadLabel(i64),
    #[error("edge index {index} out of range (graph has {edges} edges)")]
    EdgeOutOfRange { index: usize, edges: usize },
    #[error("power must be positive, found {0}")]
    NonPositivePower(i64),
    #[error("arc {0} is dangling")]
    DanglingArc(usize),
    #[error("arc {0} does not exist")]
    UnknownArc(usize),
    #[error("crossing {crossing}: under-arcs {under_in} and {under_out} lie on different edges")]
    UnderArcsSplit {
        crossing: usize,
        under_in: usize,
        under_out: usize,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} expects {expected} labels, got {got}")]
    LabelCount {
        family: String,
        expected: usize,
        got: usize,
    },
    #[error("invalid family parameter: {0}")]
    BadParameter(String),
    #[error("data file `{name}` failed its checksum")]
    Checksum { name: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
