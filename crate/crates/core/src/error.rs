use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("strategy index {index} out of range for player {player} ({count} strategies)")]
    InvalidIndex {
        player: u8,
        index: usize,
        count: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid game JSON at {path}: {message}")]
    GameFormat { path: String, message: String },

    #[error("payoffs are not symmetric at ({row}, {col}) for player {player}")]
    NotSetTheoretic { player: u8, row: usize, col: usize },

    #[error("game too large: {0}")]
    TooLarge(String),

    #[error("not a strictly mixed equilibrium: {0}")]
    NotStrictlyMixed(String),

    #[error("internal verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
