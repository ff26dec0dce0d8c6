//! Spectral zeta functions of the Laplacian on spheres and real/complex
//! projective spaces.
//!
//! The continuation follows a Hermite-type representation: each zeta function
//! splits into a boundary term, an elementary tail integral carrying all the
//! poles, and exponentially convergent Plana correction integrals. On top of
//! that the crate provides exact pole/residue tables, exact zeta(0) values,
//! the derivative at the origin (hence the regularized determinant
//! exp(-zeta'(0))), and the constant-potential perturbation on the 2-sphere.

pub mod error;
pub mod eval;
pub mod hermite;
pub mod manifold;
pub mod poly;
pub mod potential;
pub mod quad;
pub mod rational;
pub mod special;

pub use error::{Result, SpectralError};
pub use eval::EvalResult;
pub use hermite::{Pole, TermKind, TermParams, ZetaDecomposition};
pub use manifold::{Family, ManifoldSpec};
pub use rational::Rational;
