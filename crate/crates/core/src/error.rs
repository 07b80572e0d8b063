use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible word sizes: {left} bits vs {right} bits")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid bit string {0:?}: expected a non-empty string of '0' and '1'")]
    InvalidBitString(String),

    #[error("invalid rational {0:?}")]
    InvalidRational(String),

    #[error("threshold z0 = {0} is outside [0, 1)")]
    ThresholdOutOfRange(String),

    #[error("flip probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("message {0} is not in the code's message space")]
    UnknownMessage(String),

    #[error("word {0} is not a codeword")]
    NotACodeword(String),

    #[error("witness {0} is not a codeword")]
    WitnessNotInCode(String),

    #[error("generator rows are linearly dependent (rank {rank} < {rows})")]
    RankDeficient { rank: usize, rows: usize },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("a code needs at least two codewords, got {0}")]
    TooFewCodewords(usize),

    #[error("unknown code {0:?}")]
    UnknownCode(String),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
