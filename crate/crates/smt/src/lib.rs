//! Spherical mean transform with centers on the unit sphere, in odd
//! dimensions: the forward transform, its backprojection, the D = (1/t) d/dt
//! operator calculus, executable range and null-space characterizations, and
//! the construction that separates the backprojection null space from the
//! transform range.
//!
//! The crate is organized as:
//!
//! - [`radial`]: exact jet arithmetic, bumps, moments, D-antiderivatives;
//! - [`special`]: Gegenbauer polynomials, Funk-Hecke reduction, the kernels
//!   A and B, the boundary operators L_kappa, spherical harmonics (n = 3);
//! - [`transform`]: forward means, backprojection (direct and reduced forms),
//!   the closed-form boundary evaluation of filtered backprojections, the
//!   inversion formula, and the Riesz potential on radial functions;
//! - [`analysis`]: range/kernel residual tests, the kernel decomposition,
//!   and the counterexample pipeline;
//! - [`suite`]: the end-to-end verification checklist used by the CLI and
//!   the acceptance tests.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so everything is safe to share across threads.

pub mod analysis;
pub mod error;
pub mod quad;
pub mod radial;
pub mod special;
pub mod suite;
pub mod transform;

pub use error::{Error, Result};
