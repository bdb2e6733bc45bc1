//! The Brown algebra in two models with their fine `ℤ4³`-gradings, and the
//! isomorphism between them.

pub mod mat4;
pub mod model_a;
pub mod model_b;
pub mod iso;
pub mod recognition;
