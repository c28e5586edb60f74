use thiserror::Error;

use crate::model::{EgoismViolation, StrongEgoismViolation};
use crate::wp::MonotoneViolation;

/// Everything that can go wrong while building or analysing an election game.
///
/// Party, candidate and variable positions carried by the variants are
/// zero-based; the `Display` output renders them one-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("an election game needs at least two parties, got {0}")]
    TooFewParties(usize),

    #[error("party {} has no candidates", .party + 1)]
    EmptyParty { party: usize },

    #[error("candidate {} of party {} carries {found} utilities, expected one per party ({expected})", .candidate + 1, .party + 1)]
    UtilityArity {
        party: usize,
        candidate: usize,
        found: usize,
        expected: usize,
    },

    #[error("utility u_{}(x_{},{}) = {value} is negative or not finite", .supporter + 1, .party + 1, .candidate + 1)]
    NegativeUtility {
        party: usize,
        candidate: usize,
        supporter: usize,
        value: f64,
    },

    #[error("social utility {social} of candidate {} of party {} exceeds beta = {beta}", .candidate + 1, .party + 1)]
    SocialUtilityExceedsBeta {
        party: usize,
        candidate: usize,
        social: f64,
        beta: f64,
    },

    #[error("candidates of party {} are not sorted by own-party utility (candidate {} beats its predecessor)", .party + 1, .candidate + 1)]
    UnsortedCandidates { party: usize, candidate: usize },

    #[error("beta must be a finite real >= 1, got {0}")]
    InvalidBeta(f64),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("profile space holds {size} profiles, above the cap of {cap}")]
    ProfileSpaceTooLarge { size: u128, cap: u64 },

    #[error("instance is not egoistic: {0}")]
    NotEgoistic(EgoismViolation),

    #[error("instance is not strongly egoistic: {0}")]
    NotStronglyEgoistic(StrongEgoismViolation),

    #[error("winning-probability rule is not monotone: {0}")]
    NonMonotoneWp(MonotoneViolation),

    #[error("coalition {} has {size} coalition candidates, above the cap of {cap}", .coalition + 1)]
    CoalitionSpaceTooLarge {
        coalition: usize,
        size: u128,
        cap: u64,
    },

    #[error("party {} is not a member of a coalition with at least two parties", .party + 1)]
    MemberIsSingleton { party: usize },

    #[error("invalid coalition structure: {0}")]
    InvalidCoalitions(String),

    #[error("the reduction needs a formula over at least two variables, got {0}")]
    TooFewVariables(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("infeasible generator configuration: {0}")]
    InfeasibleConfig(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("DIMACS error at line {line}: {message}")]
    Dimacs { line: usize, message: String },

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TooFewParties(_) => "TooFewParties",
            Error::EmptyParty { .. } => "EmptyParty",
            Error::UtilityArity { .. } => "UtilityArity",
            Error::NegativeUtility { .. } => "NegativeUtility",
            Error::SocialUtilityExceedsBeta { .. } => "SocialUtilityExceedsBeta",
            Error::UnsortedCandidates { .. } => "UnsortedCandidates",
            Error::InvalidBeta(_) => "InvalidBeta",
            Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Error::ProfileSpaceTooLarge { .. } => "ProfileSpaceTooLarge",
            Error::NotEgoistic(_) => "NotEgoistic",
            Error::NotStronglyEgoistic(_) => "NotStronglyEgoistic",
            Error::NonMonotoneWp(_) => "NonMonotoneWp",
            Error::CoalitionSpaceTooLarge { .. } => "CoalitionSpaceTooLarge",
            Error::MemberIsSingleton { .. } => "MemberIsSingleton",
            Error::InvalidCoalitions(_) => "InvalidCoalitions",
            Error::TooFewVariables(_) => "TooFewVariables",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::InfeasibleConfig(_) => "InfeasibleConfig",
            Error::Parse { .. } => "ParseError",
            Error::Dimacs { .. } => "DimacsError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
