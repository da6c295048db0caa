use std::fmt;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("function is not bent{}", context_suffix(.0))]
    NotBent(Option<String>),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(ResourceLimit),

    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

fn context_suffix(ctx: &Option<String>) -> String {
    match ctx {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

/// Details carried by [`Error::ResourceLimit`].
#[derive(Debug, Clone)]
pub struct ResourceLimit {
    /// The node budget that was exhausted.
    pub budget: u64,
    /// Number of non-singleton cells left in the deepest partition reached.
    pub open_cells: usize,
    /// Depth of the search tree when the budget ran out.
    pub depth: usize,
}

impl fmt::Display for ResourceLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "search node budget {} exhausted at depth {} ({} non-singleton cells open)",
            self.budget, self.depth, self.open_cells
        )
    }
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// Process exit code used by the CLI for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Json(_) => 2,
            Error::InvalidInput(_) | Error::NotBent(_) | Error::NotFound(_) | Error::Io(_) => 3,
            Error::ResourceLimit(_) => 4,
            Error::Inconsistency(_) => 5,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
