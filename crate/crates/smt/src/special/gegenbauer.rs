//! Gegenbauer (ultraspherical) polynomials and the zonal reduction of
//! spherical integrals.

use super::dimension::Dimension;
use crate::error::Result;
use crate::quad::GaussLegendre;
use crate::radial::SmoothFn;

/// `C_m^alpha(t)` by the stable three-term recurrence.
pub fn gegenbauer_eval(m: usize, alpha: f64, t: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * alpha * t;
    for j in 2..=m {
        let jf = j as f64;
        let next = (2.0 * t * (jf + alpha - 1.0) * cur - (jf + 2.0 * alpha - 2.0) * prev) / jf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `C_m^alpha(1)`, the normalizer of the zonal reduction.
pub fn gegenbauer_at_one(m: usize, alpha: f64) -> f64 {
    gegenbauer_eval(m, alpha, 1.0)
}

/// Coefficient of the zonal reduction: for F integrable against
/// `(1-t^2)^((n-3)/2)`,
///
/// ```text
/// int_{S^(n-1)} F(<sigma, eta>) Y_ml(sigma) dS(sigma) = lambda_m Y_ml(eta),
/// lambda_m = |S^(n-2)| / C_m(1) * int_-1^1 F(t) C_m(t) (1-t^2)^((n-3)/2) dt
/// ```
///
/// with `C_m = C_m^((n-2)/2)`.
pub fn funk_hecke_coefficient(f: &SmoothFn, m: usize, dim: &Dimension) -> Result<f64> {
    let alpha = dim.gegenbauer_alpha();
    let k = dim.k() as i32;
    // F may be concentrated on a small part of [-1, 1]; 800 nodes keeps
    // narrow zonal kernels resolved without support metadata
    let gl = GaussLegendre::new(800);
    let mut err = None;
    let integral = gl.integrate(-1.0, 1.0, |t| match f.value(t) {
        Ok(v) => v * gegenbauer_eval(m, alpha, t) * (1.0 - t * t).powi(k),
        Err(e) => {
            err = Some(e);
            0.0
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(dim.omega_sub() / gegenbauer_at_one(m, alpha) * integral)
}
