//! Exact linear algebra over the rationals and small prime fields.
//!
//! Everything here is exact: rationals are arbitrary-precision reduced
//! fractions, prime-field residues live in `[0, p)` for `p < 2^31`, and
//! elimination never pivots for magnitude, only for determinism (leftmost
//! column, topmost row).

mod matrix;
mod scalar;

pub use matrix::{rank_one_update, Matrix};
pub use scalar::{Field, Scalar, MAX_PRIME};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("prime {0} exceeds the 2^31 bound")]
    PrimeTooLarge(u32),
    #[error("cannot parse {text:?} as a scalar over {field}")]
    BadScalar { text: String, field: Field },
}
