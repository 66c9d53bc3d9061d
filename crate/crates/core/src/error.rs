use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("insufficient series order: need {needed}, have {have}")]
    InsufficientOrder { needed: i64, have: i64 },
    #[error("constant term must be 1, got {0}")]
    NonUnitConstantTerm(String),
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("unsupported algebra type {0}")]
    UnsupportedType(String),
    #[error("leg {leg} out of range for a {legs}-leg tensor")]
    BadLeg { leg: usize, legs: usize },
    #[error("automorphism extension failed: {0}")]
    ExtensionFailure(String),
    #[error("depth exceeded: {0}")]
    DepthExceeded(String),
    #[error("obstruction: {0}")]
    ObstructionNonzero(String),
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("singular Gram matrix: {0}")]
    SingularGram(String),
    #[error("cobracket not polynomial: {0}")]
    NotPolynomial(String),
    #[error("pattern mismatch: {0}")]
    MismatchWitness(String),
    #[error("rank {0} too large for brute-force enumeration")]
    RankTooLarge(usize),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("bad constant term: {0}")]
    BadConstantTerm(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}
