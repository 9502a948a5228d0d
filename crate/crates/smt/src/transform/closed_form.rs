//! Boundary-term evaluation of the filtered backprojection `P(D^(n-2) h)`.
//!
//! Transferring all D derivatives onto the kernel `B^k` by integration by
//! parts leaves nothing but boundary terms: with `k = (n-3)/2`,
//!
//! ```text
//! P(D^(n-2) h)(x) = (-2)^k k! |S^(n-2)| / omega_n
//!                   ([L_k h](1+r) - [L_k h](1-r)) / r^(2k+1),  r = |x|,
//! ```
//!
//! where `L_k` is the boundary operator of `special::LOperator`. The constant
//! chain is carried exactly: the only term of `D^(k+l) B^k` surviving at the
//! window endpoints is `k!(k+l)!/((k-l)! l! 2^l) (4A)^(k-l) (-8)^l` with
//! `A(r, 1 +- r) = -+ 2r`, and the remaining interior integral contributes
//! `(-1)^k 2^(2k) (2k)! [h]`, which is exactly the missing `l = k` term of
//! `L_k`.

use super::backproject::{R_EVAL_MAX, R_EVAL_MIN};
use crate::error::{Error, Result};
use crate::radial::RadialProfile;
use crate::special::{factorial, Dimension, LOperator};

/// The exact constant `(-2)^k k! |S^(n-2)| / omega_n`.
pub fn closed_form_constant(dim: &Dimension) -> f64 {
    let k = dim.k();
    (-2.0f64).powi(k as i32) * factorial(k) * dim.omega_sub() / dim.omega_n()
}

/// Evaluate `P(D^(n-2) h)(r)` from boundary terms only. `h` must provide
/// jets up to order `n - 2`.
pub fn closed_form_p_dn2(h: &RadialProfile, r: f64, dim: &Dimension) -> Result<f64> {
    if !(R_EVAL_MIN..=R_EVAL_MAX).contains(&r) {
        return Err(Error::DomainPoint(r));
    }
    let k = dim.k();
    let op = LOperator::new(k);
    let upper = op.apply(h.function(), 1.0 + r)?;
    let lower = op.apply(h.function(), 1.0 - r)?;
    Ok(closed_form_constant(dim) * (upper - lower) / r.powi(2 * k as i32 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadratureSpec;
    use crate::radial::{bump, d_apply_profile};
    use crate::transform::backproject_radial_reduced;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn n3_reduces_to_symmetric_difference() {
        // k = 0: (1/(2r)) (h(1+r) - h(1-r)); symmetric h about t = 1 gives 0
        let dim = Dimension::new(3).unwrap();
        let h = bump(1.0, 0.4, 1.0).unwrap();
        for &r in &[0.1, 0.25, 0.39] {
            assert_abs_diff_eq!(
                closed_form_p_dn2(&h, r, &dim).unwrap(),
                0.0,
                epsilon = 1e-14
            );
        }
        // and the constant is 1/2: value = (h(1+r) - h(1-r))/(2r)
        let g = bump(1.1, 0.3, 1.0).unwrap();
        let r = 0.2;
        let expect =
            (g.value(1.2).unwrap() - g.value(0.8).unwrap()) / (2.0 * r);
        assert_relative_eq!(
            closed_form_p_dn2(&g, r, &dim).unwrap(),
            expect,
            epsilon = 1e-13
        );
    }

    #[test]
    fn zero_profile_maps_to_zero() {
        let dim = Dimension::new(5).unwrap();
        let h = bump(1.0, 0.3, 0.0).unwrap();
        assert_abs_diff_eq!(closed_form_p_dn2(&h, 0.4, &dim).unwrap(), 0.0);
    }

    #[test]
    fn boundary_form_matches_quadrature_route_n5() {
        let dim = Dimension::new(5).unwrap();
        let quad = QuadratureSpec::default();
        // h = t^3 * bump(1, 0.5)
        let h = bump(1.0, 0.5, 1.0).unwrap().mul_t_pow(3);
        let filtered = d_apply_profile(&h, 3).unwrap();
        // floor the relative comparison: at radii where both boundary points
        // leave the support, the exact value is zero
        let floor = 1e-3
            * [0.2, 0.4, 0.7]
                .iter()
                .map(|&r| {
                    backproject_radial_reduced(&filtered, r, &dim, &quad)
                        .unwrap()
                        .abs()
                })
                .fold(0.0f64, f64::max);
        for &r in &[0.2, 0.4, 0.7] {
            let closed = closed_form_p_dn2(&h, r, &dim).unwrap();
            let quadr = backproject_radial_reduced(&filtered, r, &dim, &quad).unwrap();
            let rel = (closed - quadr).abs() / closed.abs().max(quadr.abs()).max(floor);
            assert!(rel < 1e-8, "r = {r}: rel {rel:.3e}");
        }
    }

    #[test]
    fn boundary_form_matches_quadrature_route_n7() {
        let dim = Dimension::new(7).unwrap();
        let quad = QuadratureSpec::default();
        let h = bump(0.9, 0.35, 2.0).unwrap();
        let filtered = d_apply_profile(&h, 5).unwrap();
        let radii = [0.2, 0.3, 0.42];
        let floor = 1e-3
            * radii
                .iter()
                .map(|&r| {
                    backproject_radial_reduced(&filtered, r, &dim, &quad)
                        .unwrap()
                        .abs()
                })
                .fold(0.0f64, f64::max);
        for &r in &radii {
            let closed = closed_form_p_dn2(&h, r, &dim).unwrap();
            let quadr = backproject_radial_reduced(&filtered, r, &dim, &quad).unwrap();
            let rel = (closed - quadr).abs() / closed.abs().max(quadr.abs()).max(floor);
            assert!(rel < 1e-8, "r = {r}: rel {rel:.3e}");
        }
    }
}
