//! Exact differentiation calculus for D = (1/t) d/dt on smooth 1D functions,
//! bump construction, moments, and D-antiderivatives.
//!
//! Everything here is derivative-exact by construction (truncated Taylor
//! arithmetic), never finite differences: the transform pipelines stack up to
//! five D applications for dimension 7, which finite differences cannot
//! survive.

mod antiderivative;
mod ops;
mod profile;
mod smooth;
pub(crate) mod taylor;

pub use antiderivative::d_antiderivative;
pub use ops::{d_apply, d_apply_profile, d_from_ordinary, ibp_residual, moment, moment_with_nodes};
pub use profile::{bump, bump_fn, RadialProfile, SUPPORT_MARGIN};
pub use smooth::{jet_eval, Jet, SmoothFn, DEFAULT_MAX_ORDER};
