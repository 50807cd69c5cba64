use thiserror::Error;

use crate::exactq::RatPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not a polynomial: remainder {remainder}")]
    NotAPolynomial { remainder: RatPoly },
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("not a hook of the symbol: {0}")]
    NotAHook(String),
    #[error("restriction by {by} exceeds rank {rank}")]
    RestrictionTooLarge { by: u32, rank: u32 },
    #[error("r = {r} exceeds Witt index {witt_index}")]
    ExceedsWittIndex { r: u32, witt_index: u32 },
    #[error("invalid form space: {0}")]
    InvalidFormSpace(String),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("brute-force guard exceeded: {0} (pass the override flag to force)")]
    GuardExceeded(String),
    #[error("general θ_max requires lattice enumeration, out of scope (θ_max = {0})")]
    ThetaMaxUnsupported(u32),
    #[error("row eigenvalue labels overlap; refusing to assemble the abutment: {0}")]
    RowOverlap(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
