//! Exact arithmetic over ℚ and ℚ(i).

mod gauss;
mod rat;
mod scalar;

pub use gauss::GaussRat;
pub use rat::Rat;
pub use scalar::{RefComplex, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse exact number from {0:?}")]
    Parse(String),
}
