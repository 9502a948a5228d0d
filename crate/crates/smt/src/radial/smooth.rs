//! Smooth one-dimensional functions presented as jet providers.

use std::sync::Arc;

use super::taylor::Taylor;
use crate::error::{Error, Result};

/// Default derivative budget for profiles built by this crate. Covers
/// `D^(m+2k+1)` chains for dimensions up to 7 and harmonic degrees up to 4.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Value and ordinary derivatives of a function at a point:
/// `coeffs[k] = f^(k)(base_point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub base_point: f64,
    pub coeffs: Vec<f64>,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// k-th ordinary derivative.
    pub fn derivative(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn from_taylor(base_point: f64, t: &Taylor) -> Jet {
        Jet {
            base_point,
            coeffs: t.derivatives(),
        }
    }

    pub fn to_taylor(&self) -> Taylor {
        Taylor::from_derivatives(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0.0)
    }
}

type Evaluator = dyn Fn(f64, usize) -> Result<Taylor> + Send + Sync;

/// A smooth function of one real variable, queried through truncated Taylor
/// expansions. Immutable and shareable; evaluation is a pure function of
/// `(t, order)`.
#[derive(Clone)]
pub struct SmoothFn {
    max_order: usize,
    eval: Arc<Evaluator>,
}

impl std::fmt::Debug for SmoothFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmoothFn")
            .field("max_order", &self.max_order)
            .finish_non_exhaustive()
    }
}

impl SmoothFn {
    pub fn new<F>(max_order: usize, eval: F) -> Self
    where
        F: Fn(f64, usize) -> Result<Taylor> + Send + Sync + 'static,
    {
        SmoothFn {
            max_order,
            eval: Arc::new(eval),
        }
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Taylor coefficients at `t` up to `order`.
    pub fn taylor(&self, t: f64, order: usize) -> Result<Taylor> {
        if order > self.max_order {
            return Err(Error::OrderExceeded {
                requested: order,
                max: self.max_order,
            });
        }
        (self.eval)(t, order)
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        Ok(self.taylor(t, 0)?.value())
    }

    pub fn constant(v: f64) -> SmoothFn {
        SmoothFn::new(usize::MAX, move |_, order| Ok(Taylor::constant(v, order)))
    }

    pub fn zero() -> SmoothFn {
        SmoothFn::constant(0.0)
    }

    /// Polynomial `c[0] + c[1] t + c[2] t^2 + ...`
    pub fn polynomial(coeffs: Vec<f64>) -> SmoothFn {
        SmoothFn::new(usize::MAX, move |t, order| {
            let var = Taylor::variable(t, order);
            let mut res = Taylor::constant(*coeffs.last().unwrap_or(&0.0), order);
            for &c in coeffs.iter().rev().skip(1) {
                res = res.mul(&var);
                res.c[0] += c;
            }
            Ok(res)
        })
    }

    /// Monomial `t^p`.
    pub fn monomial(p: usize) -> SmoothFn {
        let mut c = vec![0.0; p + 1];
        c[p] = 1.0;
        SmoothFn::polynomial(c)
    }

    pub fn add(&self, other: &SmoothFn) -> SmoothFn {
        let (a, b) = (self.clone(), other.clone());
        SmoothFn::new(self.max_order.min(other.max_order), move |t, order| {
            Ok(a.taylor(t, order)?.add(&b.taylor(t, order)?))
        })
    }

    pub fn mul(&self, other: &SmoothFn) -> SmoothFn {
        let (a, b) = (self.clone(), other.clone());
        SmoothFn::new(self.max_order.min(other.max_order), move |t, order| {
            Ok(a.taylor(t, order)?.mul(&b.taylor(t, order)?))
        })
    }

    pub fn scale(&self, factor: f64) -> SmoothFn {
        let a = self.clone();
        SmoothFn::new(self.max_order, move |t, order| {
            Ok(a.taylor(t, order)?.scale(factor))
        })
    }

    /// `sum_i a_i f_i`.
    pub fn linear_combination(terms: Vec<(f64, SmoothFn)>) -> SmoothFn {
        let max = terms
            .iter()
            .map(|(_, f)| f.max_order())
            .min()
            .unwrap_or(usize::MAX);
        SmoothFn::new(max, move |t, order| {
            let mut acc = Taylor::zero(order);
            for (a, f) in &terms {
                acc = acc.axpy(*a, &f.taylor(t, order)?);
            }
            Ok(acc)
        })
    }

    /// Multiply by `t^p`; negative powers require `t != 0`.
    pub fn mul_t_pow(&self, p: i32) -> SmoothFn {
        let a = self.clone();
        SmoothFn::new(self.max_order, move |t, order| {
            let base = a.taylor(t, order)?;
            if p >= 0 {
                Ok(base.mul(&Taylor::variable(t, order).powi(p as usize)))
            } else {
                if t == 0.0 {
                    return Err(Error::DomainPoint(t));
                }
                let tp = Taylor::variable(t, order).powi((-p) as usize).recip();
                Ok(base.mul(&tp))
            }
        })
    }

    /// `exp(f)`.
    pub fn exp_of(f: &SmoothFn) -> SmoothFn {
        let a = f.clone();
        SmoothFn::new(a.max_order(), move |t, order| Ok(a.taylor(t, order)?.exp()))
    }

    /// Composition `outer(inner(t))`.
    pub fn compose(outer: &SmoothFn, inner: &SmoothFn) -> SmoothFn {
        let (o, i) = (outer.clone(), inner.clone());
        SmoothFn::new(o.max_order().min(i.max_order()), move |t, order| {
            let g = i.taylor(t, order)?;
            let f = o.taylor(g.value(), order)?;
            Ok(g.compose_into(&f))
        })
    }

    /// Natural cubic spline through `(xs, ys)`; provides jets up to order 2
    /// only (the output of grid-based reconstructions carries no honest
    /// higher derivatives). Outside the knot range the spline is zero.
    pub fn cubic_spline(xs: Vec<f64>, ys: Vec<f64>) -> SmoothFn {
        assert!(xs.len() >= 3 && xs.len() == ys.len());
        let n = xs.len();
        // Solve the natural-spline tridiagonal system for second derivatives.
        let mut m = vec![0.0; n];
        {
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            diag[0] = 1.0;
            diag[n - 1] = 1.0;
            let mut sub = vec![0.0; n];
            let mut sup = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                sub[i] = h0 / 6.0;
                diag[i] = (h0 + h1) / 3.0;
                sup[i] = h1 / 6.0;
                rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
            }
            // Thomas algorithm.
            for i in 1..n {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[n - 1] = rhs[n - 1] / diag[n - 1];
            for i in (0..n - 1).rev() {
                m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
            }
        }
        SmoothFn::new(2, move |t, order| {
            if t < xs[0] || t > xs[n - 1] {
                return Ok(Taylor::zero(order));
            }
            let i = match xs.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
                Ok(i) => i.min(n - 2),
                Err(i) => i.saturating_sub(1).min(n - 2),
            };
            let h = xs[i + 1] - xs[i];
            let a = (xs[i + 1] - t) / h;
            let b = (t - xs[i]) / h;
            let val = a * ys[i]
                + b * ys[i + 1]
                + ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
            let d1 = (ys[i + 1] - ys[i]) / h
                + ((3.0 * b * b - 1.0) * m[i + 1] - (3.0 * a * a - 1.0) * m[i]) * h / 6.0;
            let d2 = a * m[i] + b * m[i + 1];
            let derivs = [val, d1, d2];
            Ok(Taylor::from_derivatives(&derivs[..=order.min(2)]).resized(order))
        })
    }
}

/// Evaluate the jet of `fn_` at `t` up to `order`.
pub fn jet_eval(fn_: &SmoothFn, t: f64, order: usize) -> Result<Jet> {
    Ok(Jet::from_taylor(t, &fn_.taylor(t, order)?))
}
