//! Truncated Taylor arithmetic.
//!
//! A [`Taylor`] holds the scaled derivatives `c[i] = f^(i)(t0) / i!` of a
//! function at an (implicit) base point. All operations are exact truncations
//! of the corresponding power-series operations, so derivatives propagate
//! through `+`, `*`, `/`, `exp`, `sqrt` and composition without any
//! finite-difference error.

/// Truncated Taylor coefficients around a base point kept by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    pub c: Vec<f64>,
}

impl Taylor {
    pub fn zero(order: usize) -> Self {
        Taylor {
            c: vec![0.0; order + 1],
        }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Taylor { c }
    }

    /// The identity function `t` expanded at `t0`.
    pub fn variable(t0: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = t0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Taylor { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Truncate (or zero-extend) to the given order.
    pub fn resized(&self, order: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(order + 1, 0.0);
        Taylor { c }
    }

    pub fn add(&self, other: &Taylor) -> Taylor {
        let n = self.c.len().min(other.c.len());
        Taylor {
            c: (0..n).map(|i| self.c[i] + other.c[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Taylor) -> Taylor {
        let n = self.c.len().min(other.c.len());
        Taylor {
            c: (0..n).map(|i| self.c[i] - other.c[i]).collect(),
        }
    }

    pub fn scale(&self, a: f64) -> Taylor {
        Taylor {
            c: self.c.iter().map(|x| a * x).collect(),
        }
    }

    pub fn axpy(&self, a: f64, other: &Taylor) -> Taylor {
        let n = self.c.len().min(other.c.len());
        Taylor {
            c: (0..n).map(|i| self.c[i] + a * other.c[i]).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Taylor) -> Taylor {
        let n = self.c.len().min(other.c.len());
        let mut c = vec![0.0; n];
        for (i, out) in c.iter_mut().enumerate() {
            let mut s = 0.0;
            for j in 0..=i {
                s += self.c[j] * other.c[i - j];
            }
            *out = s;
        }
        Taylor { c }
    }

    /// Reciprocal series; the constant term must be nonzero.
    pub fn recip(&self) -> Taylor {
        let n = self.c.len();
        let mut r = vec![0.0; n];
        let inv = 1.0 / self.c[0];
        r[0] = inv;
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.c[j] * r[k - j];
            }
            r[k] = -inv * s;
        }
        Taylor { c: r }
    }

    pub fn div(&self, other: &Taylor) -> Taylor {
        self.mul(&other.recip())
    }

    /// `exp` of the series.
    pub fn exp(&self) -> Taylor {
        let n = self.c.len();
        let mut e = vec![0.0; n];
        e[0] = self.c[0].exp();
        for k in 1..n {
            let mut s = 0.0;
            for j in 1..=k {
                s += (j as f64) * self.c[j] * e[k - j];
            }
            e[k] = s / k as f64;
        }
        Taylor { c: e }
    }

    /// `sqrt` of the series; the constant term must be positive.
    pub fn sqrt(&self) -> Taylor {
        let n = self.c.len();
        let mut s = vec![0.0; n];
        s[0] = self.c[0].sqrt();
        let half_inv = 0.5 / s[0];
        for k in 1..n {
            let mut acc = self.c[k];
            for j in 1..k {
                acc -= s[j] * s[k - j];
            }
            s[k] = half_inv * acc;
        }
        Taylor { c: s }
    }

    /// Integer power via repeated multiplication.
    pub fn powi(&self, p: usize) -> Taylor {
        let mut out = Taylor::constant(1.0, self.order());
        for _ in 0..p {
            out = out.mul(self);
        }
        out
    }

    /// Series of the ordinary derivative f'; drops one order.
    pub fn deriv(&self) -> Taylor {
        let n = self.c.len();
        if n == 1 {
            return Taylor::zero(0);
        }
        Taylor {
            c: (1..n).map(|k| k as f64 * self.c[k]).collect(),
        }
    }

    /// Series of the antiderivative with the given value as constant term;
    /// gains one order.
    pub fn integrate(&self, value: f64) -> Taylor {
        let n = self.c.len();
        let mut c = vec![0.0; n + 1];
        c[0] = value;
        for k in 1..=n {
            c[k] = self.c[k - 1] / k as f64;
        }
        Taylor { c }
    }

    /// Composition `F(g(t))`: `outer` holds the Taylor coefficients of `F`
    /// at `g(t0)` and `self` is the series of `g`. Evaluated by Horner on the
    /// nilpotent part of `self`.
    pub fn compose_into(&self, outer: &Taylor) -> Taylor {
        let n = self.c.len().min(outer.c.len());
        let mut w = self.resized(n - 1);
        w.c[0] = 0.0;
        let mut res = Taylor::constant(outer.c[n - 1], n - 1);
        for i in (0..n - 1).rev() {
            res = res.mul(&w);
            res.c[0] += outer.c[i];
        }
        res
    }

    /// Ordinary derivative values `f^(k)(t0)` recovered from the scaled
    /// coefficients.
    pub fn derivatives(&self) -> Vec<f64> {
        let mut fact = 1.0;
        self.c
            .iter()
            .enumerate()
            .map(|(k, &ck)| {
                if k > 0 {
                    fact *= k as f64;
                }
                ck * fact
            })
            .collect()
    }

    /// Build from ordinary derivative values.
    pub fn from_derivatives(derivs: &[f64]) -> Taylor {
        let mut fact = 1.0;
        Taylor {
            c: derivs
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    if k > 0 {
                        fact *= k as f64;
                    }
                    d / fact
                })
                .collect(),
        }
    }
}
