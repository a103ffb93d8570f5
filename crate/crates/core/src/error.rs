use thiserror::Error;

/// Every failure the workbench can report.
///
/// Variant names are stable: [`Error::name`] is what the command line prints,
/// so scripts can match on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator contains point `{point}` outside the universe")]
    InvalidGenerator { point: String },

    #[error("not a Boolean homomorphism: {reason}")]
    NotAHomomorphism { reason: String },

    #[error("cannot compose: {reason}")]
    CompositionMismatch { reason: String },

    #[error("map is not measure preserving at `{atom}`: expected {expected}, pushforward gives {actual}")]
    NotMeasurePreserving {
        atom: String,
        expected: String,
        actual: String,
    },

    #[error("generator {index} is not a bijection of the space")]
    NotAnAutomorphism { index: usize },

    #[error("entry at `{atom}` is not real")]
    RealValuedRequired { atom: String },

    #[error("not a state: {reason}")]
    NotAState { reason: String },

    #[error("not a concrete model: {reason}")]
    NotAModel { reason: String },

    #[error("morphisms have different targets")]
    TargetMismatch,

    #[error("inconsistent family: projecting {larger:?} onto {smaller:?} disagrees at {atom} ({projected} vs {stated})")]
    InconsistentFamily {
        smaller: Vec<u64>,
        larger: Vec<u64>,
        atom: String,
        projected: String,
        stated: String,
    },

    #[error("index {index} is outside the index universe")]
    UnknownIndex { index: u64 },

    #[error("transition matrix is not stochastic: {reason}")]
    NotStochastic { reason: String },

    #[error("not a probability measure: {reason}")]
    NotADistribution { reason: String },

    #[error("identifier `{id}` is invalid: {reason}")]
    InvalidIdentifier { id: String, reason: String },

    #[error("unknown atom `{atom}`")]
    UnknownAtom { atom: String },

    #[error("unsupported exponent p = {p}; only 1, 2 and inf are computed exactly")]
    UnsupportedExponent { p: String },

    #[error("the degenerate algebra cannot be a factor here")]
    DegenerateFactor,

    #[error("delete-space map does not pull null points back to null points at `{point}`")]
    NullsNotPreserved { point: String },

    #[error("malformed kernel: {reason}")]
    MalformedKernel { reason: String },
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGenerator { .. } => "InvalidGenerator",
            Error::NotAHomomorphism { .. } => "NotAHomomorphism",
            Error::CompositionMismatch { .. } => "CompositionMismatch",
            Error::NotMeasurePreserving { .. } => "NotMeasurePreserving",
            Error::NotAnAutomorphism { .. } => "NotAnAutomorphism",
            Error::RealValuedRequired { .. } => "RealValuedRequired",
            Error::NotAState { .. } => "NotAState",
            Error::NotAModel { .. } => "NotAModel",
            Error::TargetMismatch => "TargetMismatch",
            Error::InconsistentFamily { .. } => "InconsistentFamily",
            Error::UnknownIndex { .. } => "UnknownIndex",
            Error::NotStochastic { .. } => "NotStochastic",
            Error::NotADistribution { .. } => "NotADistribution",
            Error::InvalidIdentifier { .. } => "InvalidIdentifier",
            Error::UnknownAtom { .. } => "UnknownAtom",
            Error::UnsupportedExponent { .. } => "UnsupportedExponent",
            Error::DegenerateFactor => "DegenerateFactor",
            Error::NullsNotPreserved { .. } => "NullsNotPreserved",
            Error::MalformedKernel { .. } => "MalformedKernel",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
