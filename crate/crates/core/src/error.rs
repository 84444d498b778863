use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed ring spec: {0}")]
    Schema(String),
    #[error("presentation violates ring laws: {0}")]
    Algebra(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("operation needs a finite ring: {0}")]
    InfiniteRing(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("post-hoc verification failed: {0}")]
    Verification(String),
    #[error("class is not idempotent modulo the nilradical")]
    NotIdempotentClass,
    #[error("no separator found: {0}")]
    SeparatorNotFound(String),
    #[error("base ring is not p.p.")]
    BaseNotPP,
    #[error("ring is not reduced")]
    NotReduced,
    #[error("ring is not an mp-ring")]
    NotMpRing,
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
