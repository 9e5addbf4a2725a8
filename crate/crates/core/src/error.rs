use thiserror::Error;

/// Errors raised by the computational kernels.
///
/// Variant names are part of the command-line contract: the CLI prints them
/// verbatim when a command fails.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("FieldMismatch: {0}")]
    FieldMismatch(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("StructureError: {0}")]
    StructureError(String),
    #[error("NotAPoset: {0}")]
    NotAPoset(String),
    #[error("NotAGroup: {0}")]
    NotAGroup(String),
    #[error("WindowError: {0}")]
    WindowError(String),
    #[error("NotUnital: {0}")]
    NotUnital(String),
    #[error("InputNotIdempotentModJ: {0}")]
    InputNotIdempotentModJ(String),
    #[error("NonSplitSemisimpleQuotient: {0}")]
    NonSplitSemisimpleQuotient(String),
    #[error("TriangularityViolation: {0}")]
    TriangularityViolation(String),
    #[error("IdempotentError: {0}")]
    IdempotentError(String),
    #[error("InfiniteSupport: {0}")]
    InfiniteSupport(String),
    #[error("LiftFailure: {0}")]
    LiftFailure(String),
    #[error("OracleTooLarge: {0}")]
    OracleTooLarge(String),
    #[error("NotEquivariant: {0}")]
    NotEquivariant(String),
    #[error("NotIdempotentOnInterior: {0}")]
    NotIdempotentOnInterior(String),
    #[error("SearchSpaceTooLarge: {0}")]
    SearchSpaceTooLarge(String),
    #[error("ParseError: {0}")]
    ParseError(String),
}

impl Error {
    /// The bare variant name, e.g. `"NonSplitSemisimpleQuotient"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::StructureError(_) => "StructureError",
            Error::NotAPoset(_) => "NotAPoset",
            Error::NotAGroup(_) => "NotAGroup",
            Error::WindowError(_) => "WindowError",
            Error::NotUnital(_) => "NotUnital",
            Error::InputNotIdempotentModJ(_) => "InputNotIdempotentModJ",
            Error::NonSplitSemisimpleQuotient(_) => "NonSplitSemisimpleQuotient",
            Error::TriangularityViolation(_) => "TriangularityViolation",
            Error::IdempotentError(_) => "IdempotentError",
            Error::InfiniteSupport(_) => "InfiniteSupport",
            Error::LiftFailure(_) => "LiftFailure",
            Error::OracleTooLarge(_) => "OracleTooLarge",
            Error::NotEquivariant(_) => "NotEquivariant",
            Error::NotIdempotentOnInterior(_) => "NotIdempotentOnInterior",
            Error::SearchSpaceTooLarge(_) => "SearchSpaceTooLarge",
            Error::ParseError(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
