use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of size {p}^{k} exceeds the limit of {limit} elements")]
    SizeLimitExceeded { p: u64, k: u32, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("base degree {base} does not divide field degree {degree}")]
    InvalidBaseDegree { base: u32, degree: u32 },
    #[error("no embedding of F_{{{p}^{sub}}} into F_{{{p2}^{sup}}}")]
    NoEmbedding { p: u32, sub: u32, p2: u32, sup: u32 },
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("both polynomials are zero")]
    BothZero,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("hypersurface contains the whole open cell")]
    CellContained,
    #[error("ambient space has {points} points, limit is {limit}")]
    SpaceTooLarge { points: u128, limit: u128 },
    #[error("field too small: need more than {needed} elements, have {have}")]
    FieldTooSmall { needed: u64, have: u64 },
    #[error("projection center lies on the curve")]
    CenterOnCurve,
    #[error("curve and divisor share a component")]
    CommonComponent,
    #[error("curve is not squarefree on any of the {tried} canonical test lines")]
    NotSquarefree { tried: usize },
    #[error("divisor form is divisible by the curve equation")]
    DivisorContainsCurve,
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("invalid rank {0}")]
    InvalidRank(i64),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
