//! Riesz potential of order 2 on radial sources.

use super::phantom::RadialPhantom;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;
use crate::special::{gamma_half, Dimension};

/// `(I^2 f)(x) = Gamma((n-2)/2) / (4 pi^(n/2)) int_B f(y) |x-y|^(2-n) dy`,
/// reduced over concentric shells by the mean-value identity of the kernel:
///
/// ```text
/// (I^2 f)(r) = const * omega_n
///              [ r^(2-n) int_0^r s^(n-1) f(s) ds + int_r^1 s f(s) ds ].
/// ```
pub fn riesz_radial(f: &RadialPhantom, r: f64, dim: &Dimension) -> Result<f64> {
    if !(0.0..1.0).contains(&r) {
        return Err(Error::DomainPoint(r));
    }
    let n = dim.n() as i32;
    let gl = GaussLegendre::new(200);
    let inner = f.inner_radius();
    let outer = f.support_radius();
    let mut err = None;
    let mut eval = |s: f64, pow: i32| match f.value(s) {
        Ok(v) => s.powi(pow) * v,
        Err(e) => {
            err = Some(e);
            0.0
        }
    };
    // shells below r see the kernel at radius r
    let near = if r > inner {
        gl.integrate(inner, r.min(outer), |s| eval(s, n - 1)) * r.powi(2 - n)
    } else {
        0.0
    };
    // shells above r contribute s^(n-1) * s^(2-n) = s
    let far = gl.integrate(r.max(inner), outer, |s| eval(s, 1));
    if let Some(e) = err {
        return Err(e);
    }
    let constant = gamma_half(dim.n() - 2) / (4.0 * std::f64::consts::PI.powf(dim.n() as f64 / 2.0));
    Ok(constant * dim.omega_n() * (near + far))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::SphereRule;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn shell_property_outside_a_concentrated_source() {
        // for r beyond the support, the potential is
        // const * omega_n * (int s^(n-1) f) * r^(2-n)
        let dim = Dimension::new(3).unwrap();
        let f = RadialPhantom::annulus_exp(0.3, 0.05, 1.0).unwrap();
        let gl = GaussLegendre::new(200);
        let mass = gl.integrate(0.25, 0.35, |s| s * s * f.value(s).unwrap());
        let c = gamma_half(1) / (4.0 * std::f64::consts::PI.powf(1.5));
        for &r in &[0.6, 0.8] {
            let expect = c * dim.omega_n() * mass / r;
            assert_relative_eq!(riesz_radial(&f, r, &dim).unwrap(), expect, max_relative = 1e-9);
        }
    }

    #[test]
    fn zero_source_gives_zero() {
        let dim = Dimension::new(5).unwrap();
        let f = RadialPhantom::ball_exp(0.3, 0.0).unwrap();
        assert_abs_diff_eq!(riesz_radial(&f, 0.5, &dim).unwrap(), 0.0);
    }

    #[test]
    fn matches_direct_3d_quadrature() {
        // independent oracle: spherical coordinates centered at the target
        // point, where the kernel 1/|x-y| becomes rho d(rho) d(sigma)
        let dim = Dimension::new(3).unwrap();
        let f = RadialPhantom::ball_exp(0.4, 1.0).unwrap();
        let r = 0.5;
        let x = [0.0, 0.0, r];
        let rule = SphereRule::new(96, 192);
        let gl = GaussLegendre::new(240);
        let direct = gl.integrate(0.0, r + 0.45, |rho| {
            rho * rule.integrate(|sigma| {
                let y = [
                    x[0] + rho * sigma[0],
                    x[1] + rho * sigma[1],
                    x[2] + rho * sigma[2],
                ];
                f.beta().value(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).unwrap()
            })
        }) / (4.0 * std::f64::consts::PI);
        let reduced = riesz_radial(&f, r, &dim).unwrap();
        assert_relative_eq!(reduced, direct, max_relative = 1e-7);
    }
}
