use thiserror::Error;

/// Errors raised by the numeric and combinatorial layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular Möbius map")]
    Singular,
    #[error("coincident points")]
    Coincident,
    #[error("degenerate factor `{0}` vanishes")]
    Degenerate(String),
    #[error("parabolic or central element: {0}")]
    Parabolic(String),
    #[error("reducible restriction at vertex {0}")]
    Reducible(usize),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
}

impl Error {
    /// Process exit status used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) => 2,
            Error::Domain(_) | Error::InvalidMove(_) | Error::Reducible(_) | Error::Parabolic(_) => 3,
            Error::Singular | Error::Coincident | Error::Degenerate(_) => 4,
        }
    }

    /// Short machine-readable category.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Singular => "singular",
            Error::Coincident => "coincident",
            Error::Degenerate(_) => "degenerate",
            Error::Parabolic(_) => "parabolic",
            Error::Reducible(_) => "reducible",
            Error::Domain(_) => "domain",
            Error::Schema(_) => "schema",
            Error::InvalidMove(_) => "invalid_move",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
