//! Synthetic source functions supported strictly inside the unit ball.

use crate::error::{Error, Result};
use crate::radial::{bump_fn, SmoothFn, DEFAULT_MAX_ORDER};
use crate::radial::taylor::Taylor;

/// Upper bound on |center| + width, keeping every induced profile inside
/// [0.05, 1.95].
pub const BALL_MARGIN: f64 = 0.95;

/// Exponent of the piecewise-polynomial radial bumps used for 3D sums. The
/// profile `(1 - rho^2/w^2)^q` is C^(q-1) across its support edge and
/// polynomial inside, which keeps every spherical mean in closed form.
pub const POLY_BUMP_EXPONENT: usize = 8;

/// A radial function on the unit ball, stored through its even profile:
/// `f(s) = beta(s^2)`. Working in the variable `v = s^2` keeps all jets free
/// of square-root singularities at the origin.
#[derive(Debug, Clone)]
pub struct RadialPhantom {
    beta: SmoothFn,
    inner: f64,
    outer: f64,
}

impl RadialPhantom {
    pub fn from_beta(beta: SmoothFn, inner: f64, outer: f64) -> Result<Self> {
        if !(0.0 <= inner && inner <= outer && outer <= BALL_MARGIN) {
            return Err(Error::SupportConstraint {
                a: inner,
                b: outer,
                lo: 0.0,
                hi: BALL_MARGIN,
            });
        }
        Ok(RadialPhantom { beta, inner, outer })
    }

    /// Mollifier supported on the centered ball of the given radius:
    /// `amplitude * exp(-1/(1 - s^2/width^2))`.
    pub fn ball_exp(width: f64, amplitude: f64) -> Result<Self> {
        if width <= 0.0 {
            return Err(Error::Precondition("ball width must be positive".into()));
        }
        let w2 = width * width;
        let beta = SmoothFn::new(DEFAULT_MAX_ORDER, move |v, order| {
            let y0 = 1.0 - v / w2;
            if y0 <= 1e-9 {
                return Ok(Taylor::zero(order));
            }
            let mut y = Taylor::variable(v, order).scale(-1.0 / w2);
            y.c[0] = y0;
            Ok(y.recip().scale(-1.0).exp().scale(amplitude))
        });
        RadialPhantom::from_beta(beta, 0.0, width)
    }

    /// Mollifier on the annulus `center - width < s < center + width`
    /// (requires `center - width >= 0.05`).
    pub fn annulus_exp(center: f64, width: f64, amplitude: f64) -> Result<Self> {
        let inner = center - width;
        let outer = center + width;
        if inner < 0.05 {
            return Err(Error::SupportConstraint {
                a: inner,
                b: outer,
                lo: 0.05,
                hi: BALL_MARGIN,
            });
        }
        let profile = bump_fn(center, width, amplitude, DEFAULT_MAX_ORDER);
        let (va, vb) = (inner * inner, outer * outer);
        let beta = SmoothFn::new(DEFAULT_MAX_ORDER, move |v, order| {
            if v <= va || v >= vb {
                return Ok(Taylor::zero(order));
            }
            let s = Taylor::variable(v, order).sqrt();
            let outer_jet = profile.taylor(s.value(), order)?;
            Ok(s.compose_into(&outer_jet))
        });
        RadialPhantom::from_beta(beta, inner, outer)
    }

    /// Piecewise-polynomial ball profile `amplitude (1 - s^2/width^2)^q`.
    pub fn ball_poly(width: f64, amplitude: f64) -> Result<Self> {
        if width <= 0.0 {
            return Err(Error::Precondition("ball width must be positive".into()));
        }
        let w2 = width * width;
        let q = POLY_BUMP_EXPONENT;
        let beta = SmoothFn::new(DEFAULT_MAX_ORDER, move |v, order| {
            let y0 = 1.0 - v / w2;
            if y0 <= 0.0 {
                return Ok(Taylor::zero(order));
            }
            let mut y = Taylor::variable(v, order).scale(-1.0 / w2);
            y.c[0] = y0;
            Ok(y.powi(q).scale(amplitude))
        });
        RadialPhantom::from_beta(beta, 0.0, width)
    }

    /// Pointwise sum of radial phantoms.
    pub fn sum(parts: Vec<RadialPhantom>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition("empty phantom sum".into()));
        }
        let inner = parts.iter().map(|p| p.inner).fold(f64::INFINITY, f64::min);
        let outer = parts.iter().map(|p| p.outer).fold(0.0, f64::max);
        let beta = SmoothFn::linear_combination(
            parts.into_iter().map(|p| (1.0, p.beta)).collect(),
        );
        RadialPhantom::from_beta(beta, inner, outer)
    }

    pub fn scaled(&self, factor: f64) -> RadialPhantom {
        RadialPhantom {
            beta: self.beta.scale(factor),
            inner: self.inner,
            outer: self.outer,
        }
    }

    /// Profile in the variable `v = s^2`.
    pub fn beta(&self) -> &SmoothFn {
        &self.beta
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner
    }

    pub fn support_radius(&self) -> f64 {
        self.outer
    }

    /// `f(s)`.
    pub fn value(&self, s: f64) -> Result<f64> {
        self.beta.value(s * s)
    }

    /// sup |f| over a uniform radial sample.
    pub fn sup_value(&self, samples: usize) -> f64 {
        let n = samples.max(2);
        (0..n)
            .map(|i| {
                let s = self.outer * i as f64 / (n - 1) as f64;
                self.value(s).map(f64::abs).unwrap_or(0.0)
            })
            .fold(0.0, f64::max)
    }
}

/// One translated polynomial bump of a 3D sum phantom.
#[derive(Debug, Clone)]
pub struct BallBump {
    pub center: [f64; 3],
    pub width: f64,
    pub amplitude: f64,
}

impl BallBump {
    pub fn center_norm(&self) -> f64 {
        let c = &self.center;
        (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt()
    }

    /// Profile value at squared distance `v` from the bump center.
    pub fn beta_value(&self, v: f64) -> f64 {
        let y = 1.0 - v / (self.width * self.width);
        if y <= 0.0 {
            0.0
        } else {
            self.amplitude * y.powi(POLY_BUMP_EXPONENT as i32)
        }
    }

    /// Taylor series in t of `R(z(t))` where `R(z) = (1/2) int_0^z beta` and
    /// `z` is a quadratic series (a squared distance). Closed form:
    /// `R(z) = A w^2 / (2(q+1)) (1 - (1 - z/w^2)^(q+1))` clamped past the
    /// support edge.
    pub(crate) fn cumulative_series(&self, z: &Taylor) -> Taylor {
        let w2 = self.width * self.width;
        let q = POLY_BUMP_EXPONENT;
        let c = self.amplitude * w2 / (2.0 * (q as f64 + 1.0));
        let y0 = 1.0 - z.value() / w2;
        if y0 <= 0.0 {
            return Taylor::constant(c, z.order());
        }
        let mut y = z.scale(-1.0 / w2);
        y.c[0] = y0;
        let mut out = y.powi(q + 1).scale(-c);
        out.c[0] += c;
        out
    }

    /// Mean of the bump over a sphere of radius `t(series)` whose center is
    /// at distance `d` from the bump center:
    /// `(R((d+t)^2) - R((d-t)^2)) / (2 d t)`.
    pub(crate) fn sphere_mean_series(&self, d: f64, t: f64, order: usize) -> Taylor {
        let mut z_plus = Taylor::zero(order);
        z_plus.c[0] = (d + t) * (d + t);
        if order >= 1 {
            z_plus.c[1] = 2.0 * (d + t);
        }
        if order >= 2 {
            z_plus.c[2] = 1.0;
        }
        let mut z_minus = Taylor::zero(order);
        z_minus.c[0] = (d - t) * (d - t);
        if order >= 1 {
            z_minus.c[1] = -2.0 * (d - t);
        }
        if order >= 2 {
            z_minus.c[2] = 1.0;
        }
        let num = self
            .cumulative_series(&z_plus)
            .sub(&self.cumulative_series(&z_minus));
        let denom = Taylor::variable(t, order).scale(2.0 * d);
        num.div(&denom)
    }
}

/// A finite sum of translated radial bumps inside the unit ball (n = 3).
#[derive(Debug, Clone)]
pub struct SumPhantom {
    bumps: Vec<BallBump>,
}

impl SumPhantom {
    pub fn new(bumps: Vec<BallBump>) -> Result<Self> {
        for b in &bumps {
            if b.width <= 0.0 {
                return Err(Error::Precondition("bump width must be positive".into()));
            }
            let r = b.center_norm() + b.width;
            if r > BALL_MARGIN {
                return Err(Error::SupportConstraint {
                    a: 0.0,
                    b: r,
                    lo: 0.0,
                    hi: BALL_MARGIN,
                });
            }
        }
        Ok(SumPhantom { bumps })
    }

    pub fn bumps(&self) -> &[BallBump] {
        &self.bumps
    }

    pub fn eval_point(&self, y: &[f64; 3]) -> f64 {
        self.bumps
            .iter()
            .map(|b| {
                let dx = y[0] - b.center[0];
                let dy = y[1] - b.center[1];
                let dz = y[2] - b.center[2];
                b.beta_value(dx * dx + dy * dy + dz * dz)
            })
            .sum()
    }

    pub fn sup_value(&self) -> f64 {
        self.bumps.iter().map(|b| b.amplitude.abs()).sum()
    }
}

/// Either a radial source (any odd n) or a sum of translated bumps (n = 3).
#[derive(Debug, Clone)]
pub enum Phantom {
    Radial(RadialPhantom),
    Sum3d(SumPhantom),
}

impl Phantom {
    pub fn eval_point(&self, y: &[f64; 3]) -> Result<f64> {
        match self {
            Phantom::Radial(p) => p.beta().value(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]),
            Phantom::Sum3d(p) => Ok(p.eval_point(y)),
        }
    }
}
