//! Proportionality of the filtered backprojection to the Riesz potential on
//! radial sources: `P(D^(n-3) t^(n-2) Mf)` and `I^2 f` agree up to one
//! dimensional constant, pointwise on the evaluation window.

use super::report::{Metric, RadialGrid, RangeReport, Verdict};
use crate::error::Result;
use crate::quad::QuadratureSpec;
use crate::special::Dimension;
use crate::transform::{
    backproject_radial_reduced, filtered_profile, forward_sinogram, riesz_radial, RadialPhantom,
};

/// Maximum relative deviation of the pointwise ratio from its median.
pub const RIESZ_RATIO_TOL: f64 = 1e-3;

/// Returns the report and the fitted constant (the median ratio).
pub fn riesz_proportionality_check(
    f: &RadialPhantom,
    dim: &Dimension,
    grid: &RadialGrid,
    quad: &QuadratureSpec,
) -> Result<(RangeReport, f64)> {
    let inconclusive = |reason: &str| {
        let mut report = RangeReport::from_residuals(&[], RIESZ_RATIO_TOL, grid.describe());
        report.verdict = Verdict::Inconclusive;
        report.details.push(Metric {
            name: reason.to_string(),
            value: f64::NAN,
            threshold: RIESZ_RATIO_TOL,
            pass: false,
        });
        (report, f64::NAN)
    };
    if f.sup_value(301) == 0.0 {
        return Ok(inconclusive("zero_source"));
    }
    let sino = forward_sinogram(f, dim, quad)?;
    let filtered = filtered_profile(&sino, dim)?;

    let mut ratios = Vec::with_capacity(grid.points);
    let mut denom_sup = 0.0f64;
    let mut pairs = Vec::with_capacity(grid.points);
    for r in grid.iter() {
        let num = backproject_radial_reduced(&filtered, r, dim, quad)?;
        let den = riesz_radial(f, r, dim)?;
        denom_sup = denom_sup.max(den.abs());
        pairs.push((num, den));
    }
    if denom_sup == 0.0 {
        return Ok(inconclusive("potential_vanishes_on_grid"));
    }
    for (num, den) in pairs {
        if den.abs() > 1e-9 * denom_sup {
            ratios.push(num / den);
        }
    }
    if ratios.len() < 2 {
        return Ok(inconclusive("potential_vanishes_on_grid"));
    }
    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let kappa = sorted[sorted.len() / 2];
    let deviation = ratios
        .iter()
        .map(|rho| (rho - kappa).abs() / kappa.abs())
        .fold(0.0f64, f64::max);

    let mut report = RangeReport::from_residuals(&[deviation], RIESZ_RATIO_TOL, grid.describe());
    report
        .details
        .push(Metric::below("ratio_deviation_from_median", deviation, RIESZ_RATIO_TOL));
    report.verdict = if deviation < RIESZ_RATIO_TOL {
        Verdict::InRange
    } else {
        Verdict::NotInRange
    };
    Ok((report, kappa))
}
