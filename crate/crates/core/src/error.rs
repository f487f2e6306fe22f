use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field too large: p^e = {p}^{e} exceeds bound {bound}")]
    FieldTooLarge { p: u64, e: u32, bound: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("enumeration too large: {count} subspaces exceed bound {bound}")]
    EnumerationTooLarge { count: String, bound: u64 },
    #[error("graph too large: {count} vertices exceed bound {bound}")]
    GraphTooLarge { count: u64, bound: u64 },
    #[error("brute-force bound exceeded: {count} vertices exceed bound {bound}")]
    BruteBoundExceeded { count: usize, bound: usize },
    #[error("search budget of {budget} nodes exhausted during {what}")]
    SearchBudgetExhausted { what: &'static str, budget: u64 },
    #[error("lower subspace is not contained in upper subspace")]
    NotContained,
    #[error("center has dimension {got}, expected {expected}")]
    WrongCenterDimension { expected: usize, got: usize },
    #[error("duality requires n = 2m")]
    DualityRequiresHalf,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not an endomorphism: edge ({0}, {1}) is not preserved")]
    NotAnEndomorphism(usize, usize),
    #[error("improper colouring: adjacent vertices {0} and {1} share a colour")]
    ImproperColouring(usize, usize),
    #[error("not a clique: {0}")]
    NotAClique(String),
    #[error("fixture: {0}")]
    Fixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(String),
    #[error("internal invariant failure: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by configured resource bounds.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::FieldTooLarge { .. }
                | Error::EnumerationTooLarge { .. }
                | Error::GraphTooLarge { .. }
                | Error::BruteBoundExceeded { .. }
                | Error::SearchBudgetExhausted { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
