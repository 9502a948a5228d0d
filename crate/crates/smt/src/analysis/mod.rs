//! Executable forms of the range characterization, the null-space
//! characterization and its graded family, the counterexample construction,
//! and the Riesz-potential proportionality check.

mod counterexample;
mod harmonic;
mod kernel;
mod range;
mod report;
mod riesz_prop;

pub use counterexample::{
    build_counterexample, verify_counterexample, CounterexampleBundle, INVERSION_NULL_TOL,
    SEPARATION_FACTOR,
};
pub use harmonic::{range_check_harmonic, SphereTimeFunction, SYMMETRY_MARGIN};
pub use kernel::{generalized_kernel_check, kernel_decompose, kernel_residual};
pub(crate) use kernel::window_integrals;
pub use range::range_residual_radial;
pub use report::{Metric, RadialGrid, RangeReport, Thresholds, Verdict};
pub use riesz_prop::{riesz_proportionality_check, RIESZ_RATIO_TOL};
