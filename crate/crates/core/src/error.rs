//! Error type shared across the crate.

use std::fmt;

/// Every failure mode of the library. Each variant carries a stable
/// machine-readable code (see [`Error::code`]) that surfaces in CLI
/// reports and exit statuses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Vectors of different lengths were mixed.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation that needs at least one generator got none.
    EmptyInput,
    /// Semigroup generators must have nonnegative coordinates.
    NegativeCoordinate,
    /// Generator degrees must be positive integers.
    BadDegree,
    /// No linear functional matches the requested degrees.
    InconsistentGrading(String),
    /// A nontrivial nonnegative combination of the generators is zero.
    NotPointed,
    /// The number of extremal rays does not match the rank.
    NotSimplicial { rays: usize, rank: usize },
    /// A ray handed to the coset system is not in the group lattice.
    RayNotInGroup,
    /// Staircase enumeration horizon was too small to certify.
    HorizonTooSmall { horizon: i64 },
    /// Staircase construction requires degree-1 extremal generators.
    RaysNotDegreeOne,
    /// Query on a staircase that failed certification.
    NotCertified,
    /// Operation is only defined for a specific dimension.
    UnsupportedDimension { dim: usize },
    /// Canonical module computation requires Cohen-Macaulayness.
    NotCohenMacaulay,
    /// Canonical search box missed generators (Hilbert cross-check failed).
    BoxTooSmall,
    /// Hilbert series numerator did not stabilize to a polynomial.
    NonpolynomialNumerator { partial: Vec<i64> },
    /// Check does not apply to the given input (precondition unmet).
    NotApplicable(&'static str),
    /// Queried vector is not in the group lattice of the semigroup.
    NotInGroup,
    /// Queried vector is not in the semigroup.
    NotInSemigroup,
    /// A validator that needs a non-principal ideal got a principal one.
    PrincipalIdeal,
    /// Ideal generators must form a nonempty antichain inside the group.
    InvalidIdeal(String),
    /// Family parameters out of range.
    BadParams(String),
    /// Unknown theorem identifier passed to the check runner.
    UnknownTheorem(String),
    /// Input document could not be parsed.
    Parse(String),
}

impl Error {
    /// Stable machine-readable code for reports and scripts.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::EmptyInput => "EMPTY_INPUT",
            Error::NegativeCoordinate => "NEGATIVE_COORDINATE",
            Error::BadDegree => "BAD_DEGREE",
            Error::InconsistentGrading(_) => "INCONSISTENT_GRADING",
            Error::NotPointed => "NOT_POINTED",
            Error::NotSimplicial { .. } => "NOT_SIMPLICIAL",
            Error::RayNotInGroup => "RAY_NOT_IN_GROUP",
            Error::HorizonTooSmall { .. } => "HORIZON_TOO_SMALL",
            Error::RaysNotDegreeOne => "RAYS_NOT_DEGREE_ONE",
            Error::NotCertified => "NOT_CERTIFIED",
            Error::UnsupportedDimension { .. } => "UNSUPPORTED_DIMENSION",
            Error::NotCohenMacaulay => "NOT_CM",
            Error::BoxTooSmall => "BOX_TOO_SMALL",
            Error::NonpolynomialNumerator { .. } => "NONPOLYNOMIAL_NUMERATOR",
            Error::NotApplicable(_) => "NOT_APPLICABLE",
            Error::NotInGroup => "NOT_IN_GROUP",
            Error::NotInSemigroup => "NOT_IN_SEMIGROUP",
            Error::PrincipalIdeal => "PRINCIPAL_IDEAL",
            Error::InvalidIdeal(_) => "INVALID_IDEAL",
            Error::BadParams(_) => "BAD_PARAMS",
            Error::UnknownTheorem(_) => "UNKNOWN_THEOREM",
            Error::Parse(_) => "PARSE_ERROR",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInput => write!(f, "empty generator list"),
            Error::NegativeCoordinate => {
                write!(f, "generators must have nonnegative coordinates")
            }
            Error::BadDegree => write!(f, "generator degrees must be positive"),
            Error::InconsistentGrading(why) => write!(f, "inconsistent grading: {why}"),
            Error::NotPointed => write!(f, "cone is not pointed"),
            Error::NotSimplicial { rays, rank } => {
                write!(f, "not simplicial: {rays} extremal rays, rank {rank}")
            }
            Error::RayNotInGroup => write!(f, "ray is not in the group lattice"),
            Error::HorizonTooSmall { horizon } => {
                write!(f, "staircase certification failed at horizon {horizon}")
            }
            Error::RaysNotDegreeOne => {
                write!(f, "extremal generators must all have degree 1")
            }
            Error::NotCertified => write!(f, "staircase is not certified"),
            Error::UnsupportedDimension { dim } => {
                write!(f, "operation not supported in dimension {dim}")
            }
            Error::NotCohenMacaulay => write!(f, "ring is not Cohen-Macaulay"),
            Error::BoxTooSmall => {
                write!(
                    f,
                    "canonical search box too small (Hilbert cross-check failed)"
                )
            }
            Error::NonpolynomialNumerator { partial } => {
                write!(
                    f,
                    "Hilbert numerator did not stabilize; partial = {partial:?}"
                )
            }
            Error::NotApplicable(why) => write!(f, "not applicable: {why}"),
            Error::NotInGroup => write!(f, "vector is not in the group lattice"),
            Error::NotInSemigroup => write!(f, "vector is not in the semigroup"),
            Error::PrincipalIdeal => write!(f, "ideal is principal"),
            Error::InvalidIdeal(why) => write!(f, "invalid monomial ideal: {why}"),
            Error::BadParams(why) => write!(f, "bad parameters: {why}"),
            Error::UnknownTheorem(id) => write!(f, "unknown theorem id: {id}"),
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
