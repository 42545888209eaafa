use thiserror::Error;

/// Source location inside an input file (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different atom structures")]
    StructureMismatch,

    #[error("unknown atom `{name}`{}", loc_suffix(.location))]
    UnknownAtom {
        name: String,
        location: Option<Location>,
    },

    #[error("unknown node `{name}`{}", loc_suffix(.location))]
    UnknownNode {
        name: String,
        location: Option<Location>,
    },

    #[error("malformed atom structure: {0}")]
    MalformedStructure(String),

    #[error("malformed network: {0}")]
    MalformedNetwork(String),

    #[error("malformed representation: {0}")]
    MalformedRepresentation(String),

    #[error("representation does not satisfy the qualitative conditions: {0}")]
    NotQualitative(String),

    #[error("network is inconsistent: {0}")]
    InconsistentNetwork(String),

    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogKey(String),

    #[error("{message}{}", loc_suffix(.location))]
    Format {
        message: String,
        location: Option<Location>,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("representation does not have the shape of a reduction output: {0}")]
    NotReductionShape(String),

    #[error("unsupported Monk algebra parameter n = {0} (supply an explicit k)")]
    UnsupportedMonk(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn loc_suffix(loc: &Option<Location>) -> String {
    match loc {
        Some(l) => format!(" at {l}"),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
