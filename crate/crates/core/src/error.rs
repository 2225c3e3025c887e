use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpmError {
    #[error("ground set size {0} exceeds the supported maximum of 64")]
    GroundTooLarge(usize),

    #[error("ground set sizes differ: {left} vs {right}")]
    GroundMismatch { left: usize, right: usize },

    #[error("subset sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("element {element} is outside the ground set [1, {n}]")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("element {0} appears more than once")]
    DuplicateElement(usize),

    #[error("element {element} is not a member of {set}")]
    NotMember { element: usize, set: String },

    #[error("upper path {upper} is not Gale-below lower path {lower}")]
    GaleViolation { upper: String, lower: String },

    #[error("{0} is not a basis")]
    NotABasis(String),

    #[error("element {0} already belongs to the basis")]
    ElementInBasis(usize),

    #[error("({lower},{upper}) is not a good pair")]
    BadPair { lower: usize, upper: usize },

    #[error("paths of {sub} are not contained in the paths of {sup}")]
    NotContained { sub: String, sup: String },

    #[error("{sub} is not a quotient of {sup}")]
    NotQuotient { sub: String, sup: String },

    #[error("rank {rank} is out of range (maximum {max})")]
    RankOutOfRange { rank: usize, max: usize },

    #[error("empty Bruhat interval: {lower} is not below {upper}")]
    EmptyInterval { lower: String, upper: String },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("{0} has loops or coloops")]
    LoopsOrColoops(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("invalid Dyck path: {0}")]
    InvalidDyck(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, LpmError>;
