use thiserror::Error;

use crate::arrangements::{ArrangementError, FixedPoint, StabilityClass, WeightVector};
use crate::residues::ResidueError;

/// Failure of a volume computation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VolumeError {
    #[error("this computation needs n = {expected}, got n = {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("need at least {min} weights, got {m}")]
    TooFewWeights { m: usize, min: usize },
    #[error("weights are {0}, volume formulas need log Fano (sum d_i < n+1)")]
    NotLogFano(StabilityClass),
    #[error("weights lie on a wall: {} fixed point(s) have a vanishing chamber coordinate", points.len())]
    NonGeneric { points: Vec<FixedPoint> },
    #[error("closed form {closed} disagrees with residue oracle {oracle}")]
    Inconsistent { closed: String, oracle: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Shared preconditions of every arrangement volume: rank, `m >= 4`, log Fano.
pub(crate) fn require_log_fano(w: &WeightVector, n: usize) -> Result<(), VolumeError> {
    if w.n() != n {
        return Err(VolumeError::WrongRank {
            expected: n,
            got: w.n(),
        });
    }
    if w.m() < 4 {
        return Err(VolumeError::TooFewWeights { m: w.m(), min: 4 });
    }
    match w.stability_class() {
        StabilityClass::LogFano => Ok(()),
        other => Err(VolumeError::NotLogFano(other)),
    }
}
