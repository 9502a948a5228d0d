//! The operator D = (1/t) d/dt and related calculus.

use super::profile::RadialProfile;
use super::smooth::{Jet, SmoothFn};
use super::taylor::Taylor;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

/// Apply D once to a Taylor expansion at `t`: `(1/t) f'`. Drops one order.
pub(crate) fn d_once(series: &Taylor, t: f64) -> Taylor {
    let d = series.deriv();
    let var = Taylor::variable(t, d.order());
    d.div(&var)
}

/// `D^j f` as a new jet provider. `D^0` is the identity. The result's
/// derivative budget shrinks by `j`.
pub fn d_apply(fn_: &SmoothFn, j: usize) -> Result<SmoothFn> {
    if j > fn_.max_order() {
        return Err(Error::OrderExceeded {
            requested: j,
            max: fn_.max_order(),
        });
    }
    if j == 0 {
        return Ok(fn_.clone());
    }
    let f = fn_.clone();
    Ok(SmoothFn::new(fn_.max_order() - j, move |t, order| {
        if t == 0.0 {
            return Err(Error::DomainPoint(t));
        }
        let mut s = f.taylor(t, order + j)?;
        for _ in 0..j {
            s = d_once(&s, t);
        }
        Ok(s)
    }))
}

/// D applied to a profile; support is preserved.
pub fn d_apply_profile(p: &RadialProfile, j: usize) -> Result<RadialProfile> {
    let f = d_apply(p.function(), j)?;
    let (a, b) = p.support();
    RadialProfile::new(f, a, b)
}

/// `(D^j f)(t)` from the ordinary-derivative jet alone, using the triangular
/// conversion `D^j f = sum_i a_{j,i} t^(i-2j) f^(i)` with
/// `a_{j+1,i} = a_{j,i-1} + (i-2j) a_{j,i}`.
pub fn d_from_ordinary(jet: &Jet, j: usize) -> Result<f64> {
    if jet.order() < j {
        return Err(Error::OrderExceeded {
            requested: j,
            max: jet.order(),
        });
    }
    let t = jet.base_point;
    if j == 0 {
        return Ok(jet.value());
    }
    if t == 0.0 {
        return Err(Error::DomainPoint(t));
    }
    let mut a = vec![0.0; j + 1];
    a[0] = 1.0;
    for jj in 0..j {
        let mut next = vec![0.0; j + 1];
        for i in 0..=j {
            let mut v = (i as f64 - 2.0 * jj as f64) * a[i];
            if i > 0 {
                v += a[i - 1];
            }
            next[i] = v;
        }
        a = next;
    }
    let mut acc = 0.0;
    for (i, &aji) in a.iter().enumerate() {
        if aji != 0.0 {
            acc += aji * t.powi(i as i32 - 2 * j as i32) * jet.derivative(i);
        }
    }
    Ok(acc)
}

/// `integral_0^2 s^(2j+1) p(s) ds` by fixed-order Gauss-Legendre on the
/// support interval.
pub fn moment(p: &RadialProfile, j: usize) -> Result<f64> {
    moment_with_nodes(p, j, 200)
}

pub fn moment_with_nodes(p: &RadialProfile, j: usize, nodes: usize) -> Result<f64> {
    let (a, b) = p.support();
    let gl = GaussLegendre::new(nodes);
    let mut err = None;
    let val = gl.integrate(a, b, |s| match p.value(s) {
        Ok(v) => s.powi(2 * j as i32 + 1) * v,
        Err(e) => {
            err = Some(e);
            0.0
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(val),
    }
}

/// Residual of the integration-by-parts identity for D:
///
/// ```text
/// int_a^b d/dt(D^k F) G dt
///   = [ sum_{l=0}^{k-1} (-1)^l D^(k-l)F D^l G ]_a^b
///     + (-1)^k int_a^b d/dt(F) D^k G dt
/// ```
///
/// with the empty sum for k = 0. Both sides are evaluated by quadrature and
/// exact jets; the return value is |LHS - RHS|.
pub fn ibp_residual(f: &SmoothFn, g: &SmoothFn, a: f64, b: f64, k: usize) -> Result<f64> {
    if !(0.0 < a && a < b && b < 2.0) {
        return Err(Error::Precondition(format!(
            "require 0 < a < b < 2, got a = {a}, b = {b}"
        )));
    }
    // 1600 nodes: the integrands carry k+1 derivatives of the inputs, and
    // the residual should expose identity violations, not quadrature error
    let gl = GaussLegendre::new(1600);
    let dkf = d_apply(f, k)?;
    let dkg = d_apply(g, k)?;

    let mut err = None;
    let lhs = gl.integrate(a, b, |t| {
        match (|| -> Result<f64> {
            let s = dkf.taylor(t, 1)?;
            Ok(s.deriv().value() * g.value(t)?)
        })() {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    });
    let tail = gl.integrate(a, b, |t| {
        match (|| -> Result<f64> {
            let s = f.taylor(t, 1)?;
            Ok(s.deriv().value() * dkg.value(t)?)
        })() {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }

    let boundary = |t: f64| -> Result<f64> {
        let mut acc = 0.0;
        let mut sign = 1.0;
        for l in 0..k {
            let df = d_apply(f, k - l)?.value(t)?;
            let dg = d_apply(g, l)?.value(t)?;
            acc += sign * df * dg;
            sign = -sign;
        }
        Ok(acc)
    };
    let bterm = boundary(b)? - boundary(a)?;
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok((lhs - (bterm + sign_k * tail)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radial::profile::bump;
    use crate::radial::smooth::jet_eval;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn jet_eval_quartic() {
        let f = SmoothFn::monomial(4);
        let j = jet_eval(&f, 1.0, 2).unwrap();
        assert_relative_eq!(j.value(), 1.0);
        assert_relative_eq!(j.derivative(1), 4.0);
        assert_relative_eq!(j.derivative(2), 12.0);
    }

    #[test]
    fn jet_eval_exp_t2_at_zero() {
        let f = SmoothFn::exp_of(&SmoothFn::monomial(2));
        let j = jet_eval(&f, 0.0, 1).unwrap();
        assert_relative_eq!(j.value(), 1.0);
        assert_abs_diff_eq!(j.derivative(1), 0.0);
    }

    #[test]
    fn jet_eval_outside_bump_support() {
        let p = bump(1.0, 0.3, 1.0).unwrap();
        let j = jet_eval(p.function(), 1.31, 3).unwrap();
        assert!(j.is_zero());
    }

    #[test]
    fn jet_eval_order_capability() {
        let p = bump(1.0, 0.3, 1.0).unwrap();
        let err = jet_eval(p.function(), 1.0, 40).unwrap_err();
        assert!(matches!(err, Error::OrderExceeded { .. }));
    }

    #[test]
    fn d_squared_quartic_is_constant_eight() {
        // D t^4 = 4 t^2, D^2 t^4 = 8
        let f = d_apply(&SmoothFn::monomial(4), 2).unwrap();
        for &t in &[0.3, 0.9, 1.7] {
            assert_relative_eq!(f.value(t).unwrap(), 8.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn d_exp_t2_is_twice_itself() {
        let f = SmoothFn::exp_of(&SmoothFn::monomial(2));
        let df = d_apply(&f, 1).unwrap();
        for &t in &[0.2, 0.7, 1.3] {
            assert_relative_eq!(
                df.value(t).unwrap(),
                2.0 * (t * t).exp(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn d_apply_zero_is_identity() {
        let p = bump(1.0, 0.3, 1.0).unwrap();
        let same = d_apply(p.function(), 0).unwrap();
        assert_relative_eq!(
            same.value(0.95).unwrap(),
            p.value(0.95).unwrap(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn d_apply_at_origin_is_domain_error() {
        let f = d_apply(&SmoothFn::monomial(4), 1).unwrap();
        assert!(matches!(f.value(0.0), Err(Error::DomainPoint(_))));
    }

    #[test]
    fn d_apply_matches_nested_single_applications() {
        let p = bump(1.0, 0.3, 1.0).unwrap();
        let direct = d_apply(p.function(), 3).unwrap();
        let nested = d_apply(
            &d_apply(&d_apply(p.function(), 1).unwrap(), 1).unwrap(),
            1,
        )
        .unwrap();
        let t = 0.9;
        assert_relative_eq!(
            direct.value(t).unwrap(),
            nested.value(t).unwrap(),
            epsilon = 1e-11
        );
    }

    #[test]
    fn d_from_ordinary_quartic() {
        let j = jet_eval(&SmoothFn::monomial(4), 1.0, 2).unwrap();
        assert_relative_eq!(d_from_ordinary(&j, 2).unwrap(), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn d_from_ordinary_order_zero_is_value() {
        let j = jet_eval(&SmoothFn::monomial(3), 0.7, 2).unwrap();
        assert_relative_eq!(d_from_ordinary(&j, 0).unwrap(), 0.343, epsilon = 1e-14);
    }

    #[test]
    fn d_from_ordinary_agrees_with_d_apply() {
        let f = SmoothFn::exp_of(&SmoothFn::monomial(2));
        let j = jet_eval(&f, 0.7, 2).unwrap();
        let via_jet = d_from_ordinary(&j, 2).unwrap();
        let via_apply = d_apply(&f, 2).unwrap().value(0.7).unwrap();
        assert_relative_eq!(via_jet, via_apply, epsilon = 1e-11);
    }

    #[test]
    fn d_from_ordinary_rejects_base_point_zero() {
        let j = jet_eval(&SmoothFn::monomial(4), 0.0, 3).unwrap();
        assert!(matches!(
            d_from_ordinary(&j, 1),
            Err(Error::DomainPoint(_))
        ));
    }

    #[test]
    fn first_moment_of_d_image_vanishes() {
        // int s (D V)(s) ds = [V] = 0 for compactly supported V
        let v = bump(1.0, 0.3, 1.0).unwrap();
        let p = d_apply_profile(&v, 1).unwrap();
        assert_abs_diff_eq!(moment(&p, 0).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn moment_of_positive_bump_is_positive() {
        let p = bump(1.0, 0.3, 1.0).unwrap();
        assert!(moment(&p, 0).unwrap() > 1e-3);
    }

    #[test]
    fn ibp_residual_polynomials() {
        let f = SmoothFn::monomial(4);
        let g = SmoothFn::monomial(2);
        let r = ibp_residual(&f, &g, 0.5, 1.5, 1).unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ibp_residual_k0_trivial() {
        let f = SmoothFn::polynomial(vec![0.3, -1.0, 0.0, 2.0]);
        let g = SmoothFn::exp_of(&SmoothFn::monomial(2));
        let r = ibp_residual(&f, &g, 0.3, 1.2, 0).unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn ibp_residual_bump_times_exp() {
        let p = bump(1.0, 0.4, 1.0).unwrap();
        let g = SmoothFn::exp_of(&SmoothFn::monomial(2));
        let r = ibp_residual(p.function(), &g, 0.5, 1.5, 2).unwrap();
        assert_abs_diff_eq!(r, 0.0, epsilon = 1e-10);
    }
}
