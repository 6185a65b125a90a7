use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("not a complex: d∘d ≠ 0 on {0}")]
    NotAComplex(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("empty sequence")]
    EmptySequence,
    #[error("relation failure: {0}")]
    RelationFailure(String),
    #[error("morphism is not closed: {0}")]
    NotClosed(String),
    #[error("morphism is not of degree zero: {0}")]
    NotDegreeZero(String),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("multiplicative system invalid: {0}")]
    SystemInvalid(String),
    #[error("cofinal prefix not reached: {0}")]
    NonCofinalPrefix(String),
    #[error("not stabilized: {0}")]
    NotStabilized(String),
    #[error("hypothesis failed for {0}")]
    HypothesisFailed(String),
    #[error("representative not closed: {0}")]
    NotClosedRepresentative(String),
    #[error("validation required: {0}")]
    ValidationRequired(String),
    #[error("no section for {0}")]
    NoSection(String),
    #[error("certificate missing: {0}")]
    CertificateMissing(String),
    #[error("alpha map missing: {0}")]
    AlphaMissing(String),
    #[error("decoration inconsistent: {0}")]
    DecorationInconsistent(String),
    #[error("oracle incomplete: missing datum for {0}")]
    OracleIncomplete(String),
    #[error("oracle refused query {0}")]
    OracleRefused(String),
    #[error("not totally ordered: {0}")]
    NotTotallyOrdered(String),
    #[error("not cofinal: {0}")]
    NotCofinal(String),
    #[error("not sufficiently wrapped: {0}")]
    NotSufficientlyWrapped(String),
    #[error("not an inclusion: {0}")]
    NotAnInclusion(String),
    #[error("restriction mismatch: {0}")]
    RestrictionMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable name of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Schema(_) => "SchemaError",
            Error::Parse(_) => "ParseError",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NotAComplex(_) => "NotAComplex",
            Error::NotChainMap(_) => "NotChainMap",
            Error::EmptySequence => "EmptySequence",
            Error::RelationFailure(_) => "RelationFailure",
            Error::NotClosed(_) => "NotClosed",
            Error::NotDegreeZero(_) => "NotDegreeZero",
            Error::InvalidFunctor(_) => "InvalidFunctor",
            Error::SystemInvalid(_) => "SystemInvalid",
            Error::NonCofinalPrefix(_) => "NonCofinalPrefix",
            Error::NotStabilized(_) => "NotStabilized",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::NotClosedRepresentative(_) => "NotClosedRepresentative",
            Error::ValidationRequired(_) => "ValidationRequired",
            Error::NoSection(_) => "NoSection",
            Error::CertificateMissing(_) => "CertificateMissing",
            Error::AlphaMissing(_) => "AlphaMissing",
            Error::DecorationInconsistent(_) => "DecorationInconsistent",
            Error::OracleIncomplete(_) => "OracleIncomplete",
            Error::OracleRefused(_) => "OracleRefused",
            Error::NotTotallyOrdered(_) => "NotTotallyOrdered",
            Error::NotCofinal(_) => "NotCofinal",
            Error::NotSufficientlyWrapped(_) => "NotSufficientlyWrapped",
            Error::NotAnInclusion(_) => "NotAnInclusion",
            Error::RestrictionMismatch(_) => "RestrictionMismatch",
            Error::Unsupported(_) => "Unsupported",
        }
    }

    /// Whether the error is a problem with the input file rather than a
    /// failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Schema(_) | Error::Parse(_) | Error::OracleIncomplete(_) | Error::NotClosedRepresentative(_) | Error::DecorationInconsistent(_)
        )
    }
}
