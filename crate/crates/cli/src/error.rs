//! CLI error with a stable exit code: 0 success, 2 config error,
//! 3 training divergence, 4 missing artifact, 1 anything else.

use std::fmt;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: String) -> Self {
        Self { code: 2, message }
    }

    pub fn io(message: String) -> Self {
        Self { code: 1, message }
    }

    pub fn missing_artifact(message: String) -> Self {
        Self { code: 4, message }
    }

    pub fn divergence(message: String) -> Self {
        Self { code: 3, message }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<invase_core::Error> for CliError {
    fn from(err: invase_core::Error) -> Self {
        use invase_core::Error;
        let code = match &err {
            Error::Config(_) | Error::Data { .. } | Error::Usage(_) => 2,
            Error::Diverged { .. } => 3,
            _ => 1,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}
