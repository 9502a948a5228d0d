//! The forward spherical mean transform restricted to centers on the unit
//! sphere.
//!
//! For a radial source, the zonal reduction collapses the sphere average to
//! a 1D integral with fixed limits,
//!
//! ```text
//! Mf(t) = |S^(n-2)|/omega_n int_-1^1 f(sqrt(1 + t^2 + 2 t s)) (1-s^2)^k ds,
//! ```
//!
//! and the substitution u^2 = 1 + t^2 + 2ts gives the equivalent window form
//! `|S^(n-2)| / (omega_n (2t)^(2k) t) int_|1-t|^(1+t) u f(u) B(t,u)^k du`.
//! Expansions in t are computed node-by-node through the profile's jets, so
//! the sinogram is itself an exact jet provider.

use std::sync::Arc;

use super::phantom::{Phantom, RadialPhantom, SumPhantom};
use crate::error::{Error, Result};
use crate::quad::{GaussLegendre, QuadratureSpec, SphereRule};
use crate::radial::taylor::Taylor;
use crate::radial::{RadialProfile, SmoothFn};
use crate::special::Dimension;

/// Sinogram of a radial phantom: the transform value as a profile of the
/// radius alone, supported in `(1 - rho, 1 + rho)`.
#[derive(Debug, Clone)]
pub struct SinogramRadial {
    profile: RadialProfile,
}

impl SinogramRadial {
    pub fn profile(&self) -> &RadialProfile {
        &self.profile
    }

    /// Wrap an arbitrary profile as sinogram data (used when testing data
    /// that did not come from a phantom).
    pub fn from_profile(profile: RadialProfile) -> Self {
        SinogramRadial { profile }
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.profile.value(t)
    }
}

struct ForwardKernel {
    beta: SmoothFn,
    inner: f64,
    outer: f64,
    k: usize,
    constant: f64, // |S^(n-2)| / omega_n
    rule: GaussLegendre,
}

impl ForwardKernel {
    fn eval(&self, t: f64, order: usize) -> Result<Taylor> {
        if t <= 0.0 || t >= 2.0 {
            return Ok(Taylor::zero(order));
        }
        // restrict the cosine integral to the image of the support
        let u_lo = (1.0 - t).abs().max(self.inner);
        let u_hi = (1.0 + t).min(self.outer);
        if u_lo >= u_hi {
            return Ok(Taylor::zero(order));
        }
        let s_of = |u: f64| (u * u - 1.0 - t * t) / (2.0 * t);
        let s_lo = s_of(u_lo).max(-1.0);
        let s_hi = s_of(u_hi).min(1.0);
        if s_lo >= s_hi {
            return Ok(Taylor::zero(order));
        }
        let mut acc = Taylor::zero(order);
        for (s, w) in self.rule.mapped(s_lo, s_hi) {
            // v(t) = 1 + t^2 + 2 t s, exact quadratic series
            let mut v = Taylor::zero(order);
            v.c[0] = 1.0 + t * t + 2.0 * t * s;
            if order >= 1 {
                v.c[1] = 2.0 * (t + s);
            }
            if order >= 2 {
                v.c[2] = 1.0;
            }
            let outer_jet = self.beta.taylor(v.value(), order)?;
            let term = v.compose_into(&outer_jet);
            acc = acc.axpy(w * (1.0 - s * s).powi(self.k as i32), &term);
        }
        Ok(acc.scale(self.constant))
    }
}

/// Build the sinogram of a radial phantom as an exact jet provider.
pub fn forward_sinogram(
    f: &RadialPhantom,
    dim: &Dimension,
    quad: &QuadratureSpec,
) -> Result<SinogramRadial> {
    let kernel = Arc::new(ForwardKernel {
        beta: f.beta().clone(),
        inner: f.inner_radius(),
        outer: f.support_radius(),
        k: dim.k(),
        constant: dim.omega_sub() / dim.omega_n(),
        rule: GaussLegendre::new(quad.nodes),
    });
    let max_order = f.beta().max_order();
    let fn_ = SmoothFn::new(max_order, move |t, order| kernel.eval(t, order));
    let rho = f.support_radius();
    let profile = RadialProfile::new(fn_, 1.0 - rho, 1.0 + rho)?;
    Ok(SinogramRadial { profile })
}

/// Transform value `Mf(t)` of a radial phantom; independent of the center
/// by symmetry.
pub fn forward_radial(
    f: &RadialPhantom,
    t: f64,
    dim: &Dimension,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(0.0 < t && t < 2.0) {
        return Err(Error::DomainPoint(t));
    }
    forward_sinogram(f, dim, quad)?.value(t)
}

/// Direct sphere-quadrature transform for n = 3: mean of `f` over the sphere
/// of center `p` (|p| = 1) and radius `t`, Gauss-Legendre in the polar
/// cosine and trapezoid in azimuth.
pub fn forward_sphere3(
    f: &Phantom,
    p: &[f64; 3],
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if !(0.0 < t && t < 2.0) {
        return Err(Error::DomainPoint(t));
    }
    let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Precondition(format!(
            "center must lie on the unit sphere, |p| = {norm}"
        )));
    }
    let rule = SphereRule::from_spec(quad);
    let mut err = None;
    let total = rule.integrate(|theta| {
        let y = [
            p[0] + t * theta[0],
            p[1] + t * theta[1],
            p[2] + t * theta[2],
        ];
        match f.eval_point(&y) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total / (4.0 * std::f64::consts::PI)),
    }
}

/// Closed-form transform of a 3D sum phantom at center `p`, radius `t`:
/// each bump contributes `(R((d+t)^2) - R((d-t)^2)) / (2 d t)` with
/// `d = |p - c|`. Serves as an independent oracle for the quadrature route.
pub fn forward_sum3_closed(f: &SumPhantom, p: &[f64; 3], t: f64) -> Result<f64> {
    if !(0.0 < t && t < 2.0) {
        return Err(Error::DomainPoint(t));
    }
    let mut acc = 0.0;
    for b in f.bumps() {
        let dx = p[0] - b.center[0];
        let dy = p[1] - b.center[1];
        let dz = p[2] - b.center[2];
        let d = (dx * dx + dy * dy + dz * dz).sqrt();
        acc += b.sphere_mean_series(d, t, 0).value();
    }
    Ok(acc)
}
