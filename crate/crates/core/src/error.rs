use thiserror::Error;

/// Errors reported by the numerical routines.
///
/// Variants fall into three families that the CLI maps onto exit codes:
/// precondition violations, certificate failures and numerical
/// non-convergence.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("factorial of {entry} overflows 128-bit integers (entries up to {max} supported)")]
    FactorialOverflow { entry: u32, max: u32 },

    #[error("multi-index split mismatch: beta + gamma != alpha")]
    SplitMismatch,

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("seminorm axiom violated: {0}")]
    SeminormAxiom(String),

    #[error("index {index:?} outside the band |alpha_j| <= {band}")]
    OutsideBand { index: Vec<i64>, band: i64 },

    #[error("point outside the closed unit polydisk")]
    OutsidePolydisk,

    #[error("point is not in the open unit polydisk")]
    NotInterior,

    #[error("grids do not match")]
    GridMismatch,

    #[error("too few samples: need more than {needed}, have {have}")]
    TooFewSamples { needed: usize, have: usize },

    #[error("sampling inadequate: |xi| * h = {product} exceeds pi/4")]
    SamplingInadequate { product: f64 },

    #[error("argument outside the admissible half-plane region: {0}")]
    OutsideAdmissibleRegion(String),

    #[error("translation {0} is not a multiple of the grid spacing")]
    OffGridTranslation(f64),

    #[error("complex modulation is only defined for compactly supported samples")]
    NonCompactModulation,

    #[error("parameter must be positive: {0}")]
    NonPositiveParameter(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("no power a^k with k <= {max_power} has norm below 1")]
    NeumannPrecondition { max_power: usize },

    #[error("{what} did not converge within {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("certificate failed self-verification: {0}")]
    CertificateFailure(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Broad classification used for process exit codes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::CertificateFailure(_) => ErrorKind::Certificate,
            Error::NonConvergence { .. } => ErrorKind::NonConvergence,
            _ => ErrorKind::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Precondition,
    Certificate,
    NonConvergence,
}
