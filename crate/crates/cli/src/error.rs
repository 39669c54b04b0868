use std::fmt;

/// A failed run, carrying the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: a check came out negative or the run could not finish.
    Failed(String),
    /// Exit 2: naive enumeration refused by the cap.
    Cap(String),
    /// Exit 3: malformed arguments or input.
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Cap(_) => 2,
            CliError::Invalid(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Cap(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

impl From<llab_core::Error> for CliError {
    fn from(e: llab_core::Error) -> Self {
        use llab_core::Error as E;
        match e {
            E::CapExceeded { n, cap } => CliError::Cap(format!(
                "N={n} exceeds the naive enumeration cap {cap}; use --allow-large or --method structured"
            )),
            E::NonTermination { .. } | E::Overflow(_) => CliError::Failed(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failed(format!("i/o error: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Failed(format!("json error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Failed(format!("csv error: {e}"))
    }
}

impl From<csv::IntoInnerError<csv::Writer<Vec<u8>>>> for CliError {
    fn from(e: csv::IntoInnerError<csv::Writer<Vec<u8>>>) -> Self {
        CliError::Failed(format!("csv error: {e}"))
    }
}
