//! Filtered-backprojection inversion for radial sources:
//!
//! ```text
//! f(x) = c(n) Laplacian_x [ P(D^(n-3) t^(n-2) g) ](x),   g = Mf,
//! ```
//!
//! with the radial Laplacian `G'' + (n-1) G'/rho` applied by
//! Richardson-extrapolated central differences. The scalar `c(n)` is
//! calibrated once per dimension against a reference source rather than
//! transcribed: only the inversion *shape* is at stake here, and calibration
//! cross-checks it to three digits or better.

use super::backproject::backproject_radial_reduced;
use super::forward::{forward_sinogram, SinogramRadial};
use super::phantom::RadialPhantom;
use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::radial::{d_apply_profile, RadialProfile};
use crate::special::Dimension;

/// Radial window on which inversion output is defined.
pub const R_MIN: f64 = 0.05;
pub const R_MAX: f64 = 0.95;

/// Base step of the finite-difference Laplacian stencil.
pub const FD_STEP: f64 = 1e-2;

/// Relative residual the calibration fit must reach.
pub const CALIBRATION_TOL: f64 = 1e-3;

/// Fitted inversion constant for one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionCalibration {
    pub n: u32,
    pub c_hat: f64,
}

/// Reusable inversion pipeline for one sinogram: the filtered profile
/// `D^(n-3) t^(n-2) g` is built once, then each radius costs five reduced
/// backprojections (the Laplacian stencil).
pub struct RadialInverter {
    filtered: RadialProfile,
    dim: Dimension,
    quad: QuadratureSpec,
    c_hat: f64,
}

impl RadialInverter {
    pub fn new(
        g: &SinogramRadial,
        dim: &Dimension,
        calib: &InversionCalibration,
        quad: &QuadratureSpec,
    ) -> Result<Self> {
        if calib.n != dim.n() {
            return Err(Error::Precondition(format!(
                "calibration is for n = {}, inverting with n = {}",
                calib.n,
                dim.n()
            )));
        }
        Ok(RadialInverter {
            filtered: filtered_profile(g, dim)?,
            dim: dim.clone(),
            quad: quad.clone(),
            c_hat: calib.c_hat,
        })
    }

    fn backprojection(&self, rho: f64) -> Result<f64> {
        backproject_radial_reduced(&self.filtered, rho, &self.dim, &self.quad)
    }

    /// Reconstructed value at radius `r`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(R_MIN..=R_MAX).contains(&r) {
            return Err(Error::DomainPoint(r));
        }
        let h = FD_STEP;
        let g0 = self.backprojection(r)?;
        let laplacian_at = |step: f64| -> Result<f64> {
            let gp = self.backprojection(r + step)?;
            let gm = self.backprojection(r - step)?;
            let d2 = (gp - 2.0 * g0 + gm) / (step * step);
            let d1 = (gp - gm) / (2.0 * step);
            Ok(d2 + (self.dim.n() as f64 - 1.0) * d1 / r)
        };
        let coarse = laplacian_at(h)?;
        let fine = laplacian_at(h / 2.0)?;
        Ok(self.c_hat * (4.0 * fine - coarse) / 3.0)
    }

    /// Reconstruct on a uniform grid, sharing backprojection samples between
    /// neighboring stencils (steps h and 2h instead of h and h/2). The grid
    /// step should stay near [`FD_STEP`] for the extrapolation to hold; 81
    /// points over the default window does.
    pub fn eval_uniform(&self, r_min: f64, r_max: f64, points: usize) -> Result<Vec<f64>> {
        if points < 2 || !(R_MIN..=R_MAX).contains(&r_min) || !(R_MIN..=R_MAX).contains(&r_max) {
            return Err(Error::Precondition(format!(
                "uniform reconstruction window [{r_min}, {r_max}] x {points} is invalid"
            )));
        }
        let h = (r_max - r_min) / (points - 1) as f64;
        if r_min - 2.0 * h < super::backproject::R_EVAL_MIN
            || r_max + 2.0 * h > super::backproject::R_EVAL_MAX
        {
            return Err(Error::Precondition(format!(
                "grid step {h:.3e} pushes the difference stencil outside the evaluation domain"
            )));
        }
        let mut samples = Vec::with_capacity(points + 4);
        for i in -2i64..=(points as i64 + 1) {
            samples.push(self.backprojection(r_min + h * i as f64)?);
        }
        let nf = self.dim.n() as f64;
        let mut out = Vec::with_capacity(points);
        for i in 0..points {
            let j = i + 2;
            let r = r_min + h * i as f64;
            let d2_1 = (samples[j + 1] - 2.0 * samples[j] + samples[j - 1]) / (h * h);
            let d2_2 = (samples[j + 2] - 2.0 * samples[j] + samples[j - 2]) / (4.0 * h * h);
            let d1_1 = (samples[j + 1] - samples[j - 1]) / (2.0 * h);
            let d1_2 = (samples[j + 2] - samples[j - 2]) / (4.0 * h);
            let d2 = (4.0 * d2_1 - d2_2) / 3.0;
            let d1 = (4.0 * d1_1 - d1_2) / 3.0;
            out.push(self.c_hat * (d2 + (nf - 1.0) * d1 / r));
        }
        Ok(out)
    }
}

/// `D^(n-3) t^(n-2) g` as a profile.
pub fn filtered_profile(g: &SinogramRadial, dim: &Dimension) -> Result<RadialProfile> {
    let n = dim.n() as i32;
    d_apply_profile(&g.profile().mul_t_pow(n - 2), (n - 3) as usize)
}

/// Invert a sinogram at a single radius.
pub fn fpr_invert_radial(
    g: &SinogramRadial,
    r: f64,
    dim: &Dimension,
    calib: &InversionCalibration,
    quad: &QuadratureSpec,
) -> Result<f64> {
    RadialInverter::new(g, dim, calib, quad)?.eval(r)
}

/// Fit `c_hat` by least squares over a reference round trip; the fitted
/// residual guards against upstream inconsistencies.
pub fn calibrate_inversion(dim: &Dimension, quad: &QuadratureSpec) -> Result<InversionCalibration> {
    let reference = RadialPhantom::annulus_exp(0.45, 0.25, 1.0)?;
    calibrate_inversion_with(dim, quad, &reference)
}

/// Calibration against a caller-supplied source (used for cross-source
/// consistency checks).
pub fn calibrate_inversion_with(
    dim: &Dimension,
    quad: &QuadratureSpec,
    reference: &RadialPhantom,
) -> Result<InversionCalibration> {
    let sino = forward_sinogram(reference, dim, quad)?;
    let raw = RadialInverter::new(
        &sino,
        dim,
        &InversionCalibration {
            n: dim.n(),
            c_hat: 1.0,
        },
        quad,
    )?;
    let points = 81;
    let raw_values = raw.eval_uniform(R_MIN, R_MAX, points)?;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut samples = Vec::with_capacity(points);
    for (i, &raw_v) in raw_values.iter().enumerate() {
        let r = R_MIN + (R_MAX - R_MIN) * i as f64 / (points - 1) as f64;
        let f_v = reference.value(r)?;
        num += raw_v * f_v;
        den += raw_v * raw_v;
        samples.push((raw_v, f_v));
    }
    if den == 0.0 {
        return Err(Error::DegenerateInput);
    }
    let c_hat = num / den;
    let mut err2 = 0.0;
    let mut ref2 = 0.0;
    for (raw_v, f_v) in samples {
        err2 += (c_hat * raw_v - f_v).powi(2);
        ref2 += f_v * f_v;
    }
    let residual = (err2 / ref2).sqrt();
    if residual > CALIBRATION_TOL {
        return Err(Error::Calibration {
            residual,
            tol: CALIBRATION_TOL,
        });
    }
    Ok(InversionCalibration {
        n: dim.n(),
        c_hat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn round_trip_recovers_the_source_n3() {
        let dim = Dimension::new(3).unwrap();
        let quad = QuadratureSpec::default();
        let f = RadialPhantom::annulus_exp(0.5, 0.3, 1.0).unwrap();
        let calib = calibrate_inversion(&dim, &quad).unwrap();
        let sino = forward_sinogram(&f, &dim, &quad).unwrap();
        let inv = RadialInverter::new(&sino, &dim, &calib, &quad).unwrap();
        let recon = inv.eval_uniform(R_MIN, R_MAX, 81).unwrap();
        let mut err2 = 0.0;
        let mut ref2 = 0.0;
        for (i, &fh) in recon.iter().enumerate() {
            let r = R_MIN + (R_MAX - R_MIN) * i as f64 / 80.0;
            let fr = f.value(r).unwrap();
            err2 += (fh - fr) * (fh - fr);
            ref2 += fr * fr;
        }
        assert!((err2 / ref2).sqrt() < 1e-3);
        // the single-point stencil route agrees with the batch route
        let mid = inv.eval(0.5).unwrap();
        assert_relative_eq!(mid, recon[40], max_relative = 1e-4);
    }

    #[test]
    fn zero_data_inverts_to_zero() {
        let dim = Dimension::new(3).unwrap();
        let quad = QuadratureSpec::default();
        let calib = InversionCalibration { n: 3, c_hat: 1.0 };
        let zero = RadialPhantom::ball_exp(0.3, 0.0).unwrap();
        let sino = forward_sinogram(&zero, &dim, &quad).unwrap();
        let v = fpr_invert_radial(&sino, 0.5, &dim, &calib, &quad).unwrap();
        assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn calibration_is_phantom_independent() {
        let dim = Dimension::new(3).unwrap();
        let quad = QuadratureSpec::default();
        let a = calibrate_inversion(&dim, &quad).unwrap();
        let other = RadialPhantom::annulus_exp(0.35, 0.2, 0.7).unwrap();
        let b = calibrate_inversion_with(&dim, &quad, &other).unwrap();
        assert_relative_eq!(a.c_hat, b.c_hat, max_relative = 1e-4);
    }

    #[test]
    fn calibration_ignores_scalar_factors() {
        let dim = Dimension::new(5).unwrap();
        let quad = QuadratureSpec::default();
        let f = RadialPhantom::annulus_exp(0.45, 0.25, 1.0).unwrap();
        let a = calibrate_inversion_with(&dim, &quad, &f).unwrap();
        let b = calibrate_inversion_with(&dim, &quad, &f.scaled(3.7)).unwrap();
        assert_relative_eq!(a.c_hat, b.c_hat, max_relative = 1e-12);
    }

    #[test]
    fn stencil_domain_is_guarded() {
        let dim = Dimension::new(3).unwrap();
        let quad = QuadratureSpec::default();
        let f = RadialPhantom::ball_exp(0.4, 1.0).unwrap();
        let sino = forward_sinogram(&f, &dim, &quad).unwrap();
        let calib = InversionCalibration { n: 3, c_hat: 1.0 };
        let inv = RadialInverter::new(&sino, &dim, &calib, &quad).unwrap();
        assert!(inv.eval(0.02).is_err());
        assert!(inv.eval(0.97).is_err());
    }
}
