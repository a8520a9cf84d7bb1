use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not square or has out-of-range entry at ({0}, {1})")]
    BadTable(usize, usize),
    #[error("index 0 is not a two-sided identity (fails at element {0})")]
    NoIdentity(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("order {order} exceeds bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element {0} of gamma does not act by an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not a homomorphism at ({0}, {1})")]
    NotAnAction(usize, usize),
    #[error("subgroup is not an ideal")]
    NotAnIdeal,
    #[error("cocycle law violated at ({0}, {1})")]
    CocycleLawViolated(usize, usize),
    #[error("expected {expected} values, got {got}")]
    BadLength { expected: usize, got: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("subgroup does not contain the kernel")]
    NotAboveKernel,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("image is not an ideal")]
    ImageNotIdeal,
    #[error("cocycle is not generating")]
    NotGenerating,
    #[error("cocycle is not surjective")]
    NotSurjective,
    #[error("triple is not Kneser")]
    NotKneser,
    #[error("self-action is not adequate")]
    NotAdequate,
    #[error("ring is not local")]
    NotLocal,
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("bad shape: {0}")]
    BadShape(String),
    #[error("model unavailable: {0}")]
    ModelUnavailable(String),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::OrderBoundExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
