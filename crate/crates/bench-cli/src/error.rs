use std::fmt;

/// Failure classified by exit code: bad configuration or inputs exit with
/// 2, failures while executing a valid request exit with 1. Success is 0.
#[derive(Debug)]
pub enum Failure {
    /// The config file, CLI arguments, or input files violate the contract.
    Input(anyhow::Error),
    /// A valid request failed while running (algorithm error, I/O, ...).
    Run(anyhow::Error),
}

impl Failure {
    pub fn input<E: Into<anyhow::Error>>(err: E) -> Self {
        Failure::Input(err.into())
    }

    pub fn run<E: Into<anyhow::Error>>(err: E) -> Self {
        Failure::Run(err.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Run(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "{e:#}"),
            Failure::Run(e) => write!(f, "{e:#}"),
        }
    }
}

impl std::error::Error for Failure {}

pub type Outcome<T> = Result<T, Failure>;
