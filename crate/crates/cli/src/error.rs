use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{message}")]
    Parse {
        message: String,
        field: Option<String>,
        line: usize,
        column: usize,
    },
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Domain(#[from] torus_link_core::Error),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    error: ErrorBody<'a>,
}

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Validation { .. } => "ValidationError",
            CliError::Usage(_) => "UsageError",
            CliError::Io { .. } => "IoError",
            CliError::Domain(e) => e.kind(),
        }
    }

    /// Every error class exits with 1; 2 is reserved for a failed verification.
    pub fn exit_code(&self) -> u8 {
        1
    }

    pub fn to_json(&self) -> String {
        let (field, line, column) = match self {
            CliError::Parse { field, line, column, .. } => (field.as_deref(), Some(*line), Some(*column)),
            CliError::Validation { field, .. } => (Some(field.as_str()), None, None),
            _ => (None, None, None),
        };
        let message = match self {
            CliError::Validation { message, .. } => message.clone(),
            other => other.to_string(),
        };
        let envelope = ErrorEnvelope {
            error: ErrorBody {
                kind: self.kind(),
                message,
                field,
                line,
                column,
            },
        };
        serde_json::to_string(&envelope).expect("error envelope serializes")
    }
}
