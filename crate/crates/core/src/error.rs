use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("invalid length {requested}: string has {available} bits")]
    InvalidLength { requested: usize, available: usize },

    #[error("shift {shift} out of range for a {len}-bit string")]
    InvalidShift { shift: usize, len: usize },

    #[error("ensemble size {requested} outside 1..={max}")]
    InvalidEnsembleSize { requested: usize, max: usize },

    #[error("pair extension of {lcm} bits exceeds the cap of {cap} bits")]
    PairTooLarge { lcm: u128, cap: usize },

    #[error("invalid bit character {0:?}: expected '0' or '1'")]
    InvalidBitChar(char),

    #[error("set-bit probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("degenerate model: {0}")]
    DegenerateModel(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
