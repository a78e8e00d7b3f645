//! Partition functions of vertex models on cubic cyclic graphs.
//!
//! The crate evaluates `f_c(G)` exactly, implements the algebra of formal
//! graph sums with the k-join, decides positive semidefiniteness of join
//! Gram matrices exactly, certifies Lie-algebra weight systems, and carries
//! the perfect-matching machinery behind the integrality of `f(○)`.

pub mod algebra;
pub mod brauer;
pub mod fixtures;
pub mod format;
pub mod positivity;
pub mod rational;
pub mod ribbon;
pub mod vmodel;
pub mod weights;

pub use algebra::FormalSum;
pub use rational::Rational;
pub use ribbon::{CanonicalCode, RibbonGraph};
pub use vmodel::VertexModel;
