//! The construction separating the two range conditions: starting from a
//! true spherical mean `g~ = Mf`, the function
//!
//! ```text
//! g(t) = (n-2) g~(t) / t^2 + g~'(t) / t
//! ```
//!
//! satisfies `t^(n-2) g = D(t^(n-2) g~)`, so its (n-3)-filtered
//! backprojection vanishes, yet g itself is not a spherical mean: its
//! (n-2)-filtered backprojection does not vanish, and the inversion formula
//! annihilates it.

use super::range::range_residual_radial;
use super::report::{Metric, RadialGrid, RangeReport, Thresholds, Verdict};
use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::radial::{d_apply_profile, RadialProfile, SmoothFn};
use crate::special::Dimension;
use crate::transform::{
    backproject_radial_reduced, calibrate_inversion, forward_sinogram, RadialInverter,
    RadialPhantom, SinogramRadial,
};

/// Inversion output on a null-filtered counterexample must stay below this
/// fraction of the source scale.
pub const INVERSION_NULL_TOL: f64 = 1e-6;

/// Required ratio between the failing range residual and the null residual.
pub const SEPARATION_FACTOR: f64 = 1e4;

#[derive(Debug, Clone)]
pub struct CounterexampleBundle {
    /// The seed spherical mean (a true range element).
    pub g_tilde: RadialProfile,
    /// The constructed function outside the range.
    pub g: RadialProfile,
    /// sup |f| of the seed source, the reference scale for the inversion
    /// check.
    pub phantom_scale: f64,
}

pub fn build_counterexample(
    f: &RadialPhantom,
    dim: &Dimension,
    quad: &QuadratureSpec,
) -> Result<CounterexampleBundle> {
    let phantom_scale = f.sup_value(301);
    if phantom_scale == 0.0 {
        return Err(Error::DegenerateInput);
    }
    let sino = forward_sinogram(f, dim, quad)?;
    let g_tilde = sino.profile().clone();
    let n = dim.n() as f64;
    let tilde_fn = g_tilde.function().clone();
    let deriv = SmoothFn::new(tilde_fn.max_order().saturating_sub(1), {
        let f = tilde_fn.clone();
        move |t, order| Ok(f.taylor(t, order + 1)?.deriv())
    });
    let g_fn = SmoothFn::linear_combination(vec![
        (n - 2.0, tilde_fn.mul_t_pow(-2)),
        (1.0, deriv.mul_t_pow(-1)),
    ]);
    let (a, b) = g_tilde.support();
    let g = RadialProfile::new(g_fn, a, b)?;
    Ok(CounterexampleBundle {
        g_tilde,
        g,
        phantom_scale,
    })
}

/// Confirm the three defining facts numerically: the (n-3)-filtered
/// backprojection vanishes, the range residual does not, and the inversion
/// formula sends g to (numerical) zero. The verdict is `NotInRange` when the
/// counterexample is confirmed, `Inconclusive` otherwise.
pub fn verify_counterexample(
    bundle: &CounterexampleBundle,
    dim: &Dimension,
    grid: &RadialGrid,
    quad: &QuadratureSpec,
    thresholds: &Thresholds,
) -> Result<RangeReport> {
    let g_scale = bundle.g.sup_value(301);
    if g_scale == 0.0 {
        let mut report = RangeReport::from_residuals(&[], thresholds.tol_fail, grid.describe());
        report.verdict = Verdict::Inconclusive;
        return Ok(report);
    }

    // (i) null residual of the (n-3)-filtered backprojection
    let filtered = d_apply_profile(
        &bundle.g.mul_t_pow(dim.n() as i32 - 2),
        dim.n() as usize - 3,
    )?;
    let filter_scale = filtered.sup_value(201).max(f64::MIN_POSITIVE);
    let mut null_sup = 0.0f64;
    for r in grid.iter() {
        null_sup =
            null_sup.max(backproject_radial_reduced(&filtered, r, dim, quad)?.abs() / filter_scale);
    }

    // (ii) range residual of g itself
    let range_report = range_residual_radial(&bundle.g, dim, grid, thresholds.tol_null)?;
    let range_sup = range_report.residual_sup;

    // (iii) the inversion formula annihilates g
    let calib = calibrate_inversion(dim, quad)?;
    let inverter = RadialInverter::new(
        &SinogramRadial::from_profile(bundle.g.clone()),
        dim,
        &calib,
        quad,
    )?;
    // fixed 81-point reconstruction window: the difference stencil needs a
    // step near FD_STEP independent of the residual grid's resolution
    let recon = inverter.eval_uniform(crate::transform::R_MIN, crate::transform::R_MAX, 81)?;
    let inv_sup = recon
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs() / bundle.phantom_scale));

    let metrics = vec![
        Metric::below("null_backprojection_residual", null_sup, thresholds.tol_null),
        Metric::above("range_failure_residual", range_sup, thresholds.tol_fail),
        Metric::above(
            "separation_ratio",
            range_sup / null_sup.max(f64::MIN_POSITIVE),
            SEPARATION_FACTOR,
        ),
        Metric::below("inversion_output_scale", inv_sup, INVERSION_NULL_TOL),
        Metric::above("counterexample_scale", g_scale, 0.0),
    ];
    let confirmed = metrics.iter().all(|m| m.pass);
    Ok(RangeReport {
        residual_sup: range_sup,
        residual_l2: range_report.residual_l2,
        threshold: thresholds.tol_fail,
        grid: grid.describe(),
        verdict: if confirmed {
            Verdict::NotInRange
        } else {
            Verdict::Inconclusive
        },
        details: metrics,
    })
}
