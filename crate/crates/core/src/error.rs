use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("scale must be positive here, got {0}")]
    InvalidScale(i64),

    #[error("index range {i}..={j} out of bounds for a point of length {len}")]
    IndexOutOfRange { i: usize, j: usize, len: usize },

    #[error("inequality has a zero normal vector")]
    ZeroNormal,

    #[error("integer overflow while evaluating an inequality")]
    Overflow,

    #[error("enumeration needs {required} membership tests, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("no finite coordinate box can be derived for coordinate {0}")]
    UnboundedBox(usize),

    #[error("operation only supports the A*/C* constructors, got {0}")]
    UnsupportedPolytope(String),

    #[error("point {point} is not in {scale}{polytope}")]
    NotInPolytope {
        point: String,
        scale: i64,
        polytope: String,
    },

    #[error("point {point} is not on the boundary of {scale}{polytope}")]
    NotOnBoundary {
        point: String,
        scale: i64,
        polytope: String,
    },

    #[error("tagged element {0} violates its tag invariant")]
    TagInvariant(String),

    #[error("interpolation needs {expected} nodes, got {got}")]
    NodeCount { expected: usize, got: usize },

    #[error("duplicate interpolation node k = {0}")]
    DuplicateNode(i64),

    #[error("polynomial of degree {degree} exceeds the numeric degree guard {limit}")]
    DegreeGuard { degree: usize, limit: usize },

    #[error("polynomial has degree 0; no roots to find")]
    ConstantPolynomial,

    #[error("coefficient is not representable as a finite f64")]
    NonFiniteCoefficient,

    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("empty root set")]
    EmptyRoots,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}
