use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-nilpotent exponent: series has a nonzero constant term")]
    NonNilpotent,
    #[error("cannot invert: constant term is not 1")]
    NonUnitInversion,
    #[error("operation undefined on a series with a log slot")]
    LogSlotPresent,
    #[error("not a pure inverse-power tail in {0}")]
    NotPureTail(String),
    #[error("odd number of half-edges ({0})")]
    OddHalfEdges(usize),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("nothing to contract: vertex 1 has no half-edges")]
    NothingToContract,
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("zero valence is only allowed for the single-vertex correlator (0)")]
    ZeroValenceInside,
    #[error("W_(0,1) is a base case and is not produced by the recursion")]
    BaseCase,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cache io error at {path}: {source}")]
    CacheIo {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache file {path} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },
    #[error("cache file {path} has version {found}, expected {expected}")]
    CacheVersion {
        path: PathBuf,
        found: u64,
        expected: u64,
    },
    #[error("cache file {0} is locked by another process")]
    CacheLocked(PathBuf),
}

pub type Result<T> = std::result::Result<T, Error>;
