//! Error type for the fixture runner and command line interface.

use thiserror::Error;

/// Anything that can go wrong between reading a configuration document and
/// emitting a report.
#[derive(Debug, Error)]
pub enum AtlasError {
    /// A fixture id (or alias) that the store does not know.
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    /// A matrix expression that does not follow the `diag(…)` / `[[…]]`
    /// grammar.
    #[error("cannot parse matrix `{input}`: {message}")]
    MatrixSyntax { input: String, message: String },

    /// A configuration document violating the schema (unknown keys, missing
    /// keys, wrong shapes).
    #[error("configuration error: {0}")]
    Config(String),

    /// TOML syntax errors, with the position context the parser provides.
    #[error("configuration syntax: {0}")]
    Toml(#[from] toml::de::Error),

    /// Errors from the underlying pipeline, tagged with the fixture that
    /// triggered them.
    #[error("pipeline error{}: {source}", context_suffix(.context))]
    Pipeline {
        context: String,
        #[source]
        source: siegel_core::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" in fixture {context}")
    }
}

impl From<siegel_core::Error> for AtlasError {
    fn from(source: siegel_core::Error) -> Self {
        AtlasError::Pipeline {
            context: String::new(),
            source,
        }
    }
}

impl AtlasError {
    /// Attach a fixture id to a propagated pipeline error.
    pub fn with_context(self, id: &str) -> Self {
        match self {
            AtlasError::Pipeline { source, .. } => AtlasError::Pipeline {
                context: id.to_string(),
                source,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, AtlasError>;
