//! Exact construction and verification of the 56-dimensional Brown algebra,
//! its fine ℤ4³-grading, and the induced gradings on its derivation,
//! structure and Kantor Lie algebras.

pub mod algebra;
pub mod brown;
pub mod composition;
pub mod exactnum;
pub mod grading_groups;
pub mod gradings;
pub mod jordan;
pub mod liealg;
pub mod linalg;
pub mod sample;
pub mod structurable;

pub use exactnum::{GaussRat, NumError, Rat, RefComplex, Scalar};

/// The production scalar field ℚ(i).
pub type Field = GaussRat;
