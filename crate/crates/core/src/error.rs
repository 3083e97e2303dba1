use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by constructors, searches and the document layer.
///
/// Law violations are not errors: validators return a [`ValidationReport`].
/// Variants here cover malformed input (names that do not resolve, tables
/// that are not total) and searches that ran out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DuplicateName: {kind} `{name}` declared twice")]
    DuplicateName { kind: &'static str, name: String },

    #[error("DanglingReference: {context} mentions unknown {kind} `{name}`")]
    DanglingReference {
        kind: &'static str,
        name: String,
        context: String,
    },

    #[error("MissingIdentity: object `{0}` has no identity morphism")]
    MissingIdentity(String),

    #[error("BudgetExceeded: search stopped after {nodes} nodes (limit {limit})")]
    BudgetExceeded { nodes: u64, limit: u64 },

    #[error("NotAGroupoid: morphism `{0}` has no two-sided inverse")]
    NotAGroupoid(String),

    #[error("ClosureBudgetExceeded: group closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),

    #[error("InvalidPerm: {0}")]
    InvalidPerm(String),

    #[error("IncompleteTable: {0}")]
    IncompleteTable(String),

    #[error("DomainMismatch: {0}")]
    DomainMismatch(String),

    #[error("NonFunctorialAction: {law} fails at {witness}")]
    NonFunctorialAction { law: String, witness: String },

    #[error("VariantMismatch: {0}")]
    VariantMismatch(String),

    #[error("BlockSizeMismatch: {0}")]
    BlockSizeMismatch(String),

    #[error("FiberMismatch: {0}")]
    FiberMismatch(String),

    #[error("NotASubgroup: {0}")]
    NotASubgroup(String),

    #[error("NotWideSubgroupoid: {0}")]
    NotWideSubgroupoid(String),

    #[error("SyntaxError at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("SchemaError at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("ValidationError: {0}")]
    Validation(ValidationReport),
}

impl Error {
    /// The bare variant name, as surfaced by the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateName { .. } => "DuplicateName",
            Error::DanglingReference { .. } => "DanglingReference",
            Error::MissingIdentity(_) => "MissingIdentity",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotAGroupoid(_) => "NotAGroupoid",
            Error::ClosureBudgetExceeded(_) => "ClosureBudgetExceeded",
            Error::InvalidPerm(_) => "InvalidPerm",
            Error::IncompleteTable(_) => "IncompleteTable",
            Error::DomainMismatch(_) => "DomainMismatch",
            Error::NonFunctorialAction { .. } => "NonFunctorialAction",
            Error::VariantMismatch(_) => "VariantMismatch",
            Error::BlockSizeMismatch(_) => "BlockSizeMismatch",
            Error::FiberMismatch(_) => "FiberMismatch",
            Error::NotASubgroup(_) => "NotASubgroup",
            Error::NotWideSubgroupoid(_) => "NotWideSubgroupoid",
            Error::Syntax { .. } => "SyntaxError",
            Error::Schema { .. } => "SchemaError",
            Error::Validation(_) => "ValidationError",
        }
    }

    pub(crate) fn dangling(kind: &'static str, name: &str, context: impl Into<String>) -> Self {
        Error::DanglingReference {
            kind,
            name: name.to_string(),
            context: context.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
