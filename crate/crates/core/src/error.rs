use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("characteristic {0} is not a prime below 2^31")]
    NonPrimeCharacteristic(u32),
    #[error("division by zero in the coefficient field")]
    DivisionByZero,
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("relation `{0}` is not homogeneous in the chosen grading")]
    NonHomogeneousRelation(String),
    #[error("fine multigrading requires monomial relations; `{0}` is not a monomial")]
    FineGradingNeedsMonomialRelations(String),
    #[error("weights must be strictly positive and one per variable")]
    BadWeights,
    #[error("column {column} of the presentation is not homogeneous: {detail}")]
    InhomogeneousColumn { column: usize, detail: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree has the wrong grading mode for this ring")]
    GradingModeMismatch,
    #[error("element lives in a free module of rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("modules live over different rings")]
    RingMismatch,
    #[error("resolution too short: Ext/Tor index {index} needs length {needed}, cap is {cap}")]
    ResolutionTooShort { index: usize, needed: usize, cap: usize },
    #[error("operation needs a finely graded ring")]
    NotFineGraded,
    #[error("ideal is not generated by monomials")]
    NotMonomialIdeal,
    #[error("unsupported support ideal: only monomial ideals and the maximal graded ideal are handled")]
    UnsupportedIdeal,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("module is not annihilated by the relations of the target ring")]
    NotAnnihilated,
    #[error("parse error at {line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error("{0}")]
    Other(String),
}
