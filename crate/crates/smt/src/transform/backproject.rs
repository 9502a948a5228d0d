//! Backprojection: the average of data over all centers on the unit sphere,
//! evaluated at the distance from each center.
//!
//! Three routes are provided so they can certify each other: a direct
//! product-quadrature route on S^2 for arbitrary data (n = 3), the zonal
//! cosine-integral route for data depending on the radius alone (any odd n),
//! and the fully reduced window form
//!
//! ```text
//! Pg(x) = |S^(n-2)| / (omega_n 2^(2k) r^(2k+1))
//!         int_(1-r)^(1+r) u g(u) (4r^2 - (1+r^2-u^2)^2)^k du,  r = |x|.
//! ```

use crate::error::{Error, Result};
use crate::quad::{GaussLegendre, QuadratureSpec, SphereRule};
use crate::radial::RadialProfile;
use crate::special::{kernel_b, Dimension};

/// Radii this close to 0 or 1 are rejected: the `r^-(2k+1)` prefactor and the
/// inversion stencils both need distance from the endpoints.
pub const R_EVAL_MIN: f64 = 0.01;
pub const R_EVAL_MAX: f64 = 0.99;

fn check_radius(r: f64) -> Result<()> {
    if !(R_EVAL_MIN..=R_EVAL_MAX).contains(&r) {
        return Err(Error::DomainPoint(r));
    }
    Ok(())
}

/// Reduced window form of the backprojection of radial data.
pub fn backproject_radial_reduced(
    g: &RadialProfile,
    r: f64,
    dim: &Dimension,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_radius(r)?;
    let (a, b) = g.support();
    let lo = (1.0 - r).max(a);
    let hi = (1.0 + r).min(b);
    if lo >= hi {
        return Ok(0.0);
    }
    let k = dim.k();
    let gl = GaussLegendre::new(quad.nodes);
    let mut err = None;
    let integral = gl.integrate(lo, hi, |u| match g.value(u) {
        Ok(v) => u * v * kernel_b(r, u).powi(k as i32),
        Err(e) => {
            err = Some(e);
            0.0
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let constant =
        dim.omega_sub() / (dim.omega_n() * 4f64.powi(k as i32) * r.powi(2 * k as i32 + 1));
    Ok(constant * integral)
}

/// Zonal route: for data `g` depending on the radius alone,
/// `Pg(x) = |S^(n-2)|/omega_n int_-1^1 g(sqrt(1 + r^2 - 2 r s)) (1-s^2)^k ds`.
pub fn backproject_zonal(
    g: &RadialProfile,
    r: f64,
    dim: &Dimension,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_radius(r)?;
    let (a, b) = g.support();
    let u_lo = (1.0 - r).max(a);
    let u_hi = (1.0 + r).min(b);
    if u_lo >= u_hi {
        return Ok(0.0);
    }
    // s(u) = (1 + r^2 - u^2) / (2r), decreasing in u
    let s_of = |u: f64| (1.0 + r * r - u * u) / (2.0 * r);
    let s_lo = s_of(u_hi).max(-1.0);
    let s_hi = s_of(u_lo).min(1.0);
    if s_lo >= s_hi {
        return Ok(0.0);
    }
    let k = dim.k() as i32;
    let gl = GaussLegendre::new(quad.nodes);
    let mut err = None;
    let integral = gl.integrate(s_lo, s_hi, |s| {
        let u = (1.0 + r * r - 2.0 * r * s).sqrt();
        match g.value(u) {
            Ok(v) => v * (1.0 - s * s).powi(k),
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(dim.omega_sub() / dim.omega_n() * integral)
}

/// Direct product-quadrature backprojection of arbitrary data on
/// S^2 x (0, 2), n = 3: `(1/(4 pi)) int F(theta, |x - theta|) dS(theta)`.
pub fn backproject_fn<F>(data: F, x: &[f64; 3], quad: &QuadratureSpec) -> Result<f64>
where
    F: Fn(&[f64; 3], f64) -> Result<f64>,
{
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    check_radius(r)?;
    let rule = SphereRule::from_spec(quad);
    let mut err = None;
    let total = rule.integrate(|theta| {
        let dx = x[0] - theta[0];
        let dy = x[1] - theta[1];
        let dz = x[2] - theta[2];
        let t = (dx * dx + dy * dy + dz * dz).sqrt();
        match data(theta, t) {
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
