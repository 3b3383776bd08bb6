use thiserror::Error;

/// Failures constructing or validating set descriptions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("residue {residue} is outside [0, {modulus})")]
    ResidueOutOfRange { residue: i64, modulus: usize },
    #[error("Y0 element {0} is not negative")]
    Y0NotNegative(i64),
    #[error("Y0 element {element} has residue {residue} outside X")]
    Y0ResidueOutsideX { element: i64, residue: usize },
    #[error("Y1 element {element} has residue {residue} inside X")]
    Y1ResidueInsideX { element: i64, residue: usize },
    #[error("duplicate element {0}")]
    DuplicateElement(i64),
    #[error("extra element {element} is not below the threshold {threshold}")]
    ExtraNotBelowThreshold { element: i64, threshold: i64 },
    #[error("Y0 must be empty when X is empty")]
    Y0WithoutPeriodicPart,
    #[error("the set is empty")]
    EmptySet,
    #[error("expected a {expected}-bounded description")]
    WrongOrientation { expected: &'static str },
    #[error("period {period} exceeds the maximum {max}")]
    PeriodOverflow { period: u128, max: usize },
    #[error("the periodic part X is empty")]
    EmptyPeriodicPart,
}

/// Failures of the condition predicates and certificate searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CriteriaError {
    #[error("subset has modulus {found}, context has modulus {expected}")]
    ModulusMismatch { expected: usize, found: usize },
    #[error("X and Y1 residues intersect at {0}")]
    OverlappingContext(usize),
    #[error("heuristic search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("Y1 occupies {0} residue classes, expected exactly one")]
    NotSingleton(usize),
    #[error("reference search is capped at T = {cap}, got T = {t}")]
    CapExceeded { t: usize, cap: usize },
    #[error(transparent)]
    Set(#[from] SetError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("certificate does not satisfy the sufficient conditions: {0}")]
    CertificateInvalid(String),
    #[error("window [{lo}, {hi}] is shorter than the required {required}")]
    WindowTooSmall { lo: i64, hi: i64, required: i64 },
    #[error("element {0} lies outside the certificate's residue classes")]
    StructuralPremiseViolated(i64),
    #[error("d-window does not extend {required} past the inner window")]
    MarginTooSmall { required: i64 },
    #[error("malformed witness: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Thm4Error {
    #[error(
        "step {step}: excluded point {point} collides with the existing prefix (max {prefix_max})"
    )]
    ExclusionCollision {
        step: usize,
        point: i64,
        prefix_max: i64,
    },
    #[error("window end {window_hi} is not below the authoritative bound {bound}")]
    PrefixTooShort { window_hi: i64, bound: i64 },
    #[error("slack must be at least 1, got {0}")]
    InvalidSlack(i64),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("arithmetic overflow at step {0}")]
    Overflow(usize),
}

/// Problems reading a set-description file. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown field `{field}`")]
    UnknownField { line: usize, field: String },
    #[error("line {line}: field `{field}` given twice")]
    DuplicateField { line: usize, field: String },
    #[error("line {line}, field `{field}`: {message}")]
    BadValue {
        line: usize,
        field: String,
        message: String,
    },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("raw fields (period, residues, ...) and canonical fields (m, x, ...) cannot be mixed")]
    MixedKinds,
    #[error("no fields found")]
    Empty,
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Set(#[from] SetError),
}
