use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: invalid JSON at line {line}, column {column} (byte offset {offset}): {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        offset: usize,
        message: String,
    },
    #[error("{}: {}", .0.display(), .1)]
    Io(PathBuf, #[source] std::io::Error),
    #[error("write failed: {0}")]
    Output(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] bergman_core::Error),
    #[error("{count} propert{} violated", if *count == 1 { "y" } else { "ies" })]
    Violations { count: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Violations { .. } => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }

    /// Wrap a serde_json error with the byte offset of its line/column.
    pub fn json(path: PathBuf, text: &str, err: serde_json::Error) -> Self {
        let (line, column) = (err.line(), err.column());
        let offset = text
            .split_inclusive('\n')
            .take(line.saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + column.saturating_sub(1);
        let message = err.to_string();
        let message = message.split(" at line ").next().unwrap_or(&message).to_string();
        Self::Json {
            path,
            line,
            column,
            offset,
            message,
        }
    }
}
