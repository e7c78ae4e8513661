use thiserror::Error;

/// One positioned problem found while validating an instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for ParseIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("value {num}/{den} lies outside [0, 1]")]
    ValueOutOfRange { num: i64, den: i64 },
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as an exact rational")]
    BadRational(String),
    #[error("ground size {0} exceeds the bitmask cap of {1}")]
    GroundSizeExceeded(usize, usize),
    #[error("ground size must be at least 1")]
    EmptyGround,
    #[error("grid denominator must be at least 1")]
    ZeroGrid,
    #[error("expected {expected} ground points, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("operation requires a nonempty family")]
    EmptyFamily,
    #[error("affine slope must be positive, got {0}")]
    NonPositiveSlope(crate::value::Rat),
    #[error("subspace carrier must be nonempty")]
    EmptySubspace,
    #[error("carrier of size {0} exceeds the construction cap of {1}")]
    CapExceeded(usize, usize),
    #[error("family is not a topology: {0}")]
    NotATopology(String),
    #[error("member set is not a fuzzy topology: {0}")]
    NotAFuzzyTopology(String),
    #[error("grid mismatch: expected q={expected}, got q={actual}")]
    GridMismatch { expected: u32, actual: u32 },
    #[error("value {0} does not lie on the working grid")]
    OffGrid(String),
    #[error("point {point} is not in the target set")]
    PointNotInSet { point: usize },
    #[error("the set is not open in the generated topology")]
    NotOpen,
    #[error("function is not lower semicontinuous for the given topology")]
    NotLsc,
    #[error("level set at {level} is not compact under the oracle")]
    NotCompact { level: String },
    #[error("cover premise violated: the family supremum does not dominate the target")]
    CoverPremise,
    #[error("epsilon must be positive")]
    ZeroEpsilon,
    #[error("grid denominator must be even for this construction")]
    OddGrid,
    #[error("intervals must be nontrivial and pairwise non-overlapping")]
    OverlappingIntervals,
    #[error("interval assignment is malformed: {0}")]
    MalformedAssignment(String),
    #[error("designated compact family is not hereditary for closed subsets")]
    NotHereditary,
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("equivalence violation in the census: {0}")]
    CensusViolation(String),
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("unknown gallery entry {0:?}; expected one of A, B, C, D, E")]
    UnknownGallery(String),
    #[error("instance document is missing required field {0:?}")]
    MissingField(&'static str),
    #[error("instance document is invalid")]
    Instance(Vec<ParseIssue>),
}

impl Error {
    /// Render positioned document issues, one per line.
    pub fn detail_lines(&self) -> Vec<String> {
        match self {
            Error::Instance(issues) => issues.iter().map(|i| i.to_string()).collect(),
            other => vec![other.to_string()],
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
