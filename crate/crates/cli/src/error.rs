use thiserror::Error;

/// Scenario-level failures; all of them map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid scenario at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{context}: {source}")]
    Math { context: String, source: msk_core::Error },
    #[error("unknown name `{name}` in {context}")]
    UnknownName { name: String, context: String },
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("{context}: `{name}` is a {found}, expected a {expected}")]
    WrongKind { context: String, name: String, expected: &'static str, found: &'static str },
    #[error("check {index}: unknown operation `{op}`")]
    UnknownOp { index: usize, op: String },
    #[error("check {index} ({op}): {message}")]
    BadCheck { index: usize, op: String, message: String },
    #[error("unknown catalog name `{0}`")]
    UnknownCatalogName(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

impl CliError {
    pub fn math(context: impl Into<String>) -> impl FnOnce(msk_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Math { context, source }
    }
}
