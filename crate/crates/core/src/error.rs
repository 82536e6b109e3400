use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("degree {0} is out of range")]
    DegreeOutOfRange(i32),

    #[error("search budget of {budget} candidates exceeded; distance is at least {lower_bound}")]
    SearchBudgetExceeded { lower_bound: usize, budget: u64 },

    #[error("exhaustive expansion search over {cols} columns exceeds the limit of {limit}")]
    CheegerBudgetExceeded { cols: usize, limit: usize },

    #[error("the all-ones vector is not in the kernel")]
    KernelViolation,

    #[error("vector is not a codeword of the target code")]
    NotACodeword,

    #[error("the codeword must be nonzero")]
    EmptyCodeword,

    #[error("the measured vector must be nonzero")]
    ZeroVector,

    #[error("chain map squares do not commute at degree {0}")]
    InvalidChainMap(i32),

    #[error("gadget targets a different classical factor than the requested orientation")]
    OrientationMismatch,

    #[error("codewords of the surgery sequence are linearly dependent")]
    DependentCodewords,

    #[error("blocks do not share the same second factor")]
    MismatchedD,

    #[error("unexpected structure: {0}")]
    WrongShape(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable module-qualified code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "gf2.dimension-mismatch",
            Error::Shape(_) => "complex.shape",
            Error::DegreeOutOfRange(_) => "chainmap-cone.degree-out-of-range",
            Error::SearchBudgetExceeded { .. } => "complex.search-budget-exceeded",
            Error::CheegerBudgetExceeded { .. } => "gadget-synth.budget-exceeded",
            Error::KernelViolation => "gadget-synth.kernel-violation",
            Error::NotACodeword => "gadget-synth.not-a-codeword",
            Error::EmptyCodeword => "gadget-synth.empty-codeword",
            Error::ZeroVector => "toric-study.zero-vector",
            Error::InvalidChainMap(_) => "chainmap-cone.invalid-map",
            Error::OrientationMismatch => "fast-surgery.orientation-mismatch",
            Error::DependentCodewords => "fast-surgery.dependent-codewords",
            Error::MismatchedD => "fast-surgery.mismatched-d",
            Error::WrongShape(_) => "toric-study.wrong-shape",
            Error::Parse { .. } => "cli-io.parse",
            Error::Config(_) => "cli-io.config",
            Error::Io(_) => "cli-io.io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
