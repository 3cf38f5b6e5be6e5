use alloc::string::String;
use core::fmt;

use crate::atom::Modality;

/// Location of a syntax problem inside a single line of constraint text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number (1 for single-atom input).
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    EmptyAttributeName,
    DuplicateAttribute(String),
    TooManyAttributes { count: usize, max: usize },
    UnknownAttribute(String),
    AttributeOutOfRange(usize),
    DomainTooSmall { attribute: String, size: usize },
    DuplicateDomainValue { attribute: String, value: String },
    ValueNotInDomain { attribute: String, value: String },
    ArityMismatch { expected: usize, found: usize },
    ZeroMultiplicity,
    Parse(ParseError),
    OracleInfeasible { groundings: u128, bound: u64 },
    ModalityMismatch { expected: Modality, found: Modality },
    NotUnary,
    OverlappingSides,
    NotDisjoint,
    NotPiaStar,
    UnsupportedFragment(&'static str),
    UniverseTooLarge { size: usize, limit: usize },
    InvalidNetwork(&'static str),
    InvalidParameter(String),
    InvalidCnf(String),
    SearchBudgetExceeded { candidates: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyAttributeName => f.write_str("attribute names must be non-empty"),
            Error::DuplicateAttribute(a) => write!(f, "duplicate attribute `{a}`"),
            Error::TooManyAttributes { count, max } => {
                write!(f, "{count} attributes exceed the supported maximum of {max}")
            }
            Error::UnknownAttribute(a) => write!(f, "unknown attribute `{a}`"),
            Error::AttributeOutOfRange(i) => write!(f, "attribute index {i} is outside the schema"),
            Error::DomainTooSmall { attribute, size } => write!(
                f,
                "domain of `{attribute}` has {size} non-null values; at least 2 are required"
            ),
            Error::DuplicateDomainValue { attribute, value } => {
                write!(f, "value `{value}` listed twice in the domain of `{attribute}`")
            }
            Error::ValueNotInDomain { attribute, value } => {
                write!(f, "value `{value}` is not in the domain of `{attribute}`")
            }
            Error::ArityMismatch { expected, found } => {
                write!(f, "tuple has {found} cells, schema has {expected} attributes")
            }
            Error::ZeroMultiplicity => f.write_str("multiplicities must be positive"),
            Error::Parse(e) => write!(f, "parse error at {e}"),
            Error::OracleInfeasible { groundings, bound } => write!(
                f,
                "oracle infeasible: {groundings} groundings exceed the bound of {bound}"
            ),
            Error::ModalityMismatch { expected, found } => {
                write!(f, "expected a {expected} atom, found a {found} atom")
            }
            Error::NotUnary => f.write_str("both sides must be single attributes"),
            Error::OverlappingSides => f.write_str("the two attribute sets must be disjoint"),
            Error::NotDisjoint => f.write_str("every atom must be disjoint"),
            Error::NotPiaStar => f.write_str(
                "conclusion is outside the fragment with a complete axiomatisation \
                 (needs a singleton side or side sizes differing by at most one); \
                 use derivability instead",
            ),
            Error::UnsupportedFragment(why) => write!(f, "unsupported query: {why}"),
            Error::UniverseTooLarge { size, limit } => {
                write!(f, "attribute universe of size {size} exceeds the limit of {limit}")
            }
            Error::InvalidNetwork(why) => write!(f, "invalid flow network: {why}"),
            Error::InvalidParameter(why) => write!(f, "invalid parameter: {why}"),
            Error::InvalidCnf(why) => write!(f, "invalid CNF formula: {why}"),
            Error::SearchBudgetExceeded { candidates } => {
                write!(f, "search budget exhausted after {candidates} candidates")
            }
        }
    }
}

impl core::error::Error for Error {}

impl core::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
