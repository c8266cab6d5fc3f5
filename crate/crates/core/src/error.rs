use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    Index { index: usize, n: usize },

    #[error("unsupported context: {0}")]
    UnsupportedContext(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph does not reach qubits {unreachable:?} from root {root}")]
    Coverage {
        root: usize,
        unreachable: Vec<usize>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported input: {0}")]
    UnsupportedInput(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("generator list is dependent (rank {rank} < {count})")]
    Rank { rank: usize, count: usize },

    #[error("empty shot list")]
    EmptyShots,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

pub(crate) fn check_index(index: usize, n: usize) -> Result<()> {
    if index < n {
        Ok(())
    } else {
        Err(Error::Index { index, n })
    }
}
