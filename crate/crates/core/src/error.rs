use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    /// Malformed or inconsistent input: shapes, dimensions, preconditions.
    #[error("input error: {0}")]
    Input(String),
    /// Some invariant factor has a factor of degree >= 2 with no rational root.
    #[error("irrational spectrum: residual factor {0} has no rational root")]
    IrrationalSpectrum(String),
    /// A constructive step was asked for on data that does not satisfy its hypotheses.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl LabError {
    pub fn input(msg: impl Into<String>) -> Self {
        LabError::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
