use selberg_core::asymptotics::AsymptoticsError;
use selberg_core::lfunction::LError;
use selberg_core::nevanlinna::NevanlinnaError;
use selberg_core::targets::TargetError;
use selberg_core::zeros::ZeroError;

/// Failures that stop a subcommand. Assertion failures are not errors;
/// they are reported through [`crate::output::Outcome::pass`].
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl LabError {
    pub fn config(msg: impl Into<String>) -> Self {
        LabError::Config(msg.into())
    }

    /// The process exit code: 2 for configuration, 3 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Config(_) | LabError::Io(_) => 2,
            LabError::Numerical(_) => 3,
        }
    }
}

impl From<LError> for LabError {
    fn from(e: LError) -> Self {
        match e {
            LError::Invalid(_) | LError::MissingFunctionalEquation => LabError::Config(e.to_string()),
            _ => LabError::Numerical(e.to_string()),
        }
    }
}

impl From<ZeroError> for LabError {
    fn from(e: ZeroError) -> Self {
        match e {
            ZeroError::InvalidContour => LabError::Config(e.to_string()),
            _ => LabError::Numerical(e.to_string()),
        }
    }
}

impl From<NevanlinnaError> for LabError {
    fn from(e: NevanlinnaError) -> Self {
        match e {
            NevanlinnaError::Zeros(z) => z.into(),
            NevanlinnaError::L(l) => l.into(),
            NevanlinnaError::Overflow { .. } | NevanlinnaError::InsufficientData { .. } | NevanlinnaError::InsufficientSpan { .. } => {
                LabError::Numerical(e.to_string())
            }
            _ => LabError::Config(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for LabError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::L(l) => l.into(),
            _ => LabError::Config(e.to_string()),
        }
    }
}

impl From<TargetError> for LabError {
    fn from(e: TargetError) -> Self {
        match e {
            TargetError::Overflow { .. } => LabError::Numerical(e.to_string()),
            _ => LabError::Config(e.to_string()),
        }
    }
}
