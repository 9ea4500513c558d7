use alloc::boxed::Box;
use alloc::string::String;

use crate::rational::Q;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("simple reflection index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("critical level k = -h^vee = {h_check_neg}")]
    CriticalLevel { h_check_neg: Q },
    #[error("critical specialization k0 = {0} requires an explicit opt-in")]
    CriticalSpecialization(Q),
    #[error("pole of a Q(k) scalar at k = {0}")]
    Pole(Q),
    #[error("integral root window n_max = {n_max} too small: found {found} of {expected} simple roots")]
    WindowTooSmall { n_max: i64, found: usize, expected: usize },
    #[error("weight is not a non-degenerate regular dominant weight: {0}")]
    NotAdmissible(String),
    #[error("character truncation cannot be certified: {0}")]
    TruncationUnsound(String),
    #[error("hatted-current bracket mixes the two sectors")]
    SectorViolation,
    #[error("mode {mode} leaves the truncation window")]
    StraighteningOverflow { mode: i64 },
    #[error("weight is not dominant integral")]
    NotDominantIntegral,
    #[error("Verma truncations disagree: dim {low} at trunc {trunc}, dim {high} at trunc {next}", next = trunc + 1)]
    Unstabilized { trunc: usize, low: usize, high: usize },
    #[error("q-series exponents {} and {} do not differ by an integer", .0.0, .0.1)]
    IncompatibleSeries(Box<(Q, Q)>),
    #[error("parse error: {0}")]
    Parse(String),
}
