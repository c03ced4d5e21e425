use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected 2 <= h <= 2^40")]
    InvalidModulus(u64),

    #[error("prime index {index} out of range for {count} prime factors")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("residue {value} out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not invertible over Z_{0}")]
    NotInvertible(u64),

    #[error("rows are not linearly independent; not a subspace representation")]
    NotASubspace,

    #[error("{what} exceeds cap: needs {needed}, cap is {cap}")]
    CapExceeded { what: &'static str, needed: String, cap: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, needed: impl ToString, cap: u64) -> Self {
        Error::CapExceeded { what, needed: needed.to_string(), cap }
    }
}
