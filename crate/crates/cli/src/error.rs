use hsign_core::dirichlet::DirichletError;
use hsign_core::forms::FormsError;
use hsign_core::oracle::OracleError;
use hsign_core::quadfield::QuadError;
use hsign_core::satotate::SatoTateError;
use hsign_core::zeta::ZetaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// A hypothesis of the underlying statement fails for the given data.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    SatoTate(#[from] SatoTateError),
    #[error(transparent)]
    Dirichlet(#[from] DirichletError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("output: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Hypothesis(_) | CliError::SatoTate(SatoTateError::RamanujanViolation(_)) => 3,
            CliError::Validation(_) => 4,
            CliError::Io(_) | CliError::Csv(_) => 5,
            _ => 2,
        }
    }
}
