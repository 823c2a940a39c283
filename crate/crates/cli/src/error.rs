use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invariant breach: {0}")]
    Breach(String),
    #[error(transparent)]
    Core(#[from] opgyro::Error),
}

impl CliError {
    /// 2 for anything the user can fix in the input, 3 for a failed check.
    pub fn exit_code(&self) -> i32 {
        use opgyro::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Breach(_) => 3,
            CliError::Core(e) => match e {
                E::InvalidSpin(_)
                | E::ParseHalfInt(_)
                | E::InvalidProjection { .. }
                | E::DimensionCap { .. }
                | E::InvalidCollectiveSpin { .. }
                | E::DimensionMismatch { .. }
                | E::NotJzEigenstate { .. }
                | E::ZeroState
                | E::InvalidGrid(_)
                | E::InvalidPulse(_)
                | E::UnsupportedSystem(_) => 2,
                _ => 3,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub(crate) fn config<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Config(msg.into()))
}
