//! Compactly supported smooth profiles on (0, 2).

use super::smooth::{SmoothFn, DEFAULT_MAX_ORDER};
use super::taylor::Taylor;
use crate::error::{Error, Result};

/// Profiles must keep this distance from the endpoints of (0, 2) so that the
/// singularity of D at t = 0 and the r -> 0 prefactors never enter an
/// integral.
pub const SUPPORT_MARGIN: f64 = 0.05;

/// A smooth function with compact support inside (0, 2). The function and
/// all derivatives up to its max order vanish outside `[a, b]`.
#[derive(Debug, Clone)]
pub struct RadialProfile {
    fn_: SmoothFn,
    support: (f64, f64),
}

impl RadialProfile {
    pub fn new(fn_: SmoothFn, a: f64, b: f64) -> Result<Self> {
        let (lo, hi) = (SUPPORT_MARGIN, 2.0 - SUPPORT_MARGIN);
        if !(a.is_finite() && b.is_finite()) || a > b || a < lo || b > hi {
            return Err(Error::SupportConstraint { a, b, lo, hi });
        }
        Ok(RadialProfile {
            fn_,
            support: (a, b),
        })
    }

    pub fn function(&self) -> &SmoothFn {
        &self.fn_
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    pub fn taylor(&self, t: f64, order: usize) -> Result<Taylor> {
        self.fn_.taylor(t, order)
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.fn_.value(t)
    }

    pub fn max_order(&self) -> usize {
        self.fn_.max_order()
    }

    /// sup |p| over a uniform sample of the support; used to normalize
    /// residuals.
    pub fn sup_value(&self, samples: usize) -> f64 {
        let (a, b) = self.support;
        let n = samples.max(2);
        (0..n)
            .map(|i| {
                let t = a + (b - a) * i as f64 / (n - 1) as f64;
                self.value(t).map(f64::abs).unwrap_or(0.0)
            })
            .fold(0.0, f64::max)
    }

    /// Map the underlying function, keeping the support hull.
    pub fn map_function(&self, f: impl FnOnce(&SmoothFn) -> SmoothFn) -> RadialProfile {
        RadialProfile {
            fn_: f(&self.fn_),
            support: self.support,
        }
    }

    /// Multiply by `t^p` (support unchanged; negative powers stay smooth on
    /// the support since it is bounded away from 0).
    pub fn mul_t_pow(&self, p: i32) -> RadialProfile {
        self.map_function(|f| f.mul_t_pow(p))
    }
}

/// The standard mollifier `amplitude * exp(-1/(1-x^2))` with
/// `x = (t - center)/half_width`, extended by zero outside `|x| < 1`.
/// Derivatives to all orders come from truncated Taylor arithmetic.
pub fn bump(center: f64, half_width: f64, amplitude: f64) -> Result<RadialProfile> {
    if half_width <= 0.0 {
        return Err(Error::Precondition(format!(
            "bump half-width must be positive, got {half_width}"
        )));
    }
    let a = center - half_width;
    let b = center + half_width;
    let fn_ = bump_fn(center, half_width, amplitude, DEFAULT_MAX_ORDER);
    RadialProfile::new(fn_, a, b)
}

/// The mollifier as a bare `SmoothFn` (used by phantoms, which live on a
/// different interval).
pub fn bump_fn(center: f64, half_width: f64, amplitude: f64, max_order: usize) -> SmoothFn {
    SmoothFn::new(max_order, move |t, order| {
        let x0 = (t - center) / half_width;
        // Beyond this point the value underflows to zero in f64 anyway.
        if 1.0 - x0 * x0 <= 1e-9 {
            return Ok(Taylor::zero(order));
        }
        let mut x = Taylor::variable(t, order);
        x.c[0] = x0;
        if order >= 1 {
            x.c[1] = 1.0 / half_width;
        }
        let one_minus_x2 = Taylor::constant(1.0, order).sub(&x.mul(&x));
        Ok(one_minus_x2.recip().scale(-1.0).exp().scale(amplitude))
    })
}
