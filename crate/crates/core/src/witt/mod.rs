//! Truncated Witt vectors `W(F_q)/p^N` and σ-linear algebra over them.

mod matrix;
mod ring;
mod slopes;

pub use matrix::{sigma_conjugate, FrobeniusMatrix, MatrixFile};
pub use ring::{least_irreducible, GaloisRing, GaloisRingElement};
pub use slopes::{kappa_of_matrix, newton_slopes, polygon_slopes};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WittError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("element or matrix is not invertible")]
    NotInvertible,
    #[error("matrices live over different rings")]
    RingMismatch,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
    #[error("precision N = {precision} cannot certify the result; try N = {suggested}")]
    Precision { precision: u32, suggested: u32 },
    #[error("malformed matrix file: {0}")]
    Parse(String),
}
