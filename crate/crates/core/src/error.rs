use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{name}` takes {expected} argument(s), found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("unsupported fragment: {0}")]
    Unsupported(String),
    #[error("`{0}` has no such end point")]
    NoEndpoint(String),
    #[error("invalid point code: {0}")]
    InvalidCode(String),
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("embedding verification failed: {0}")]
    VerificationFailed(String),
}
