use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad user-facing input: non-coprime weights, zero components, etc.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("join is not smooth: gcd(l2, l1*w1*w2) = {gcd} (l1 = {l1}, l2 = {l2})")]
    SmoothnessViolation { l1: u64, l2: u64, gcd: u64 },

    #[error("weight vector ({w1},{w2}) is not supported here: {reason}")]
    UnsupportedWeight { w1: u64, w2: u64, reason: &'static str },

    #[error("ray v = ({v1},{v2}) is parallel to w = ({w1},{w2}) (w1*v2 = w2*v1)")]
    DegenerateRay { w1: u64, w2: u64, v1: u64, v2: u64 },

    #[error("k must be a rational number > 1, got {0}")]
    InvalidK(String),

    #[error("invalid (p,q) or (a,b) pair: {0}")]
    InvalidPQ(String),

    #[error("w1*w2 = {0} is even; the congruence test needs an odd product")]
    ParityError(u64),

    #[error("no sign change of the soliton function within |a| <= {limit}")]
    BracketNotFound { limit: u64 },

    #[error("extremal linear system is singular")]
    SingularSystem,

    #[error("{value} exceeds the factorization cap 2^63 - 1")]
    FactorizationCap { value: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

impl Error {
    /// Validation errors are the caller's fault; the rest are failures of a
    /// computation on valid input.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::BracketNotFound { .. } | Error::SingularSystem | Error::Overflow(_)
        )
    }
}
