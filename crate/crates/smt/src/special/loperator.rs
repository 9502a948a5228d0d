//! The boundary differential operators
//! `L_kappa = sum_{p=0}^kappa (kappa+p)!/((kappa-p)! p! 2^p) (1-.)^(kappa-p) D^(kappa-p)`.
//!
//! Evaluated at 1 +- r these turn filtered backprojections of radial data
//! into pure boundary terms.

use crate::error::{Error, Result};
use crate::radial::{d_from_ordinary, jet_eval, SmoothFn};

#[derive(Debug, Clone, PartialEq)]
pub struct LOperator {
    kappa: usize,
    coeffs: Vec<f64>,
}

impl LOperator {
    pub fn new(kappa: usize) -> Self {
        // c_p = (kappa+p)! / ((kappa-p)! p! 2^p), built by the stable ratio
        // c_p / c_(p-1) = (kappa+p)(kappa-p+1) / (2p).
        let mut coeffs = Vec::with_capacity(kappa + 1);
        let mut c = 1.0;
        coeffs.push(c);
        for p in 1..=kappa {
            c *= (kappa + p) as f64 * (kappa - p + 1) as f64 / (2.0 * p as f64);
            coeffs.push(c);
        }
        LOperator { kappa, coeffs }
    }

    pub fn kappa(&self) -> usize {
        self.kappa
    }

    pub fn coefficient(&self, p: usize) -> f64 {
        self.coeffs[p]
    }

    /// `[L_kappa phi](t) = sum_p c_p (1-t)^(kappa-p) (D^(kappa-p) phi)(t)`.
    pub fn apply(&self, phi: &SmoothFn, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Err(Error::DomainPoint(t));
        }
        let jet = jet_eval(phi, t, self.kappa)?;
        let mut acc = 0.0;
        for (p, &c) in self.coeffs.iter().enumerate() {
            let j = self.kappa - p;
            acc += c * (1.0 - t).powi(j as i32) * d_from_ordinary(&jet, j)?;
        }
        Ok(acc)
    }
}

/// Free-function form of [`LOperator::apply`].
pub fn l_operator_apply(op: &LOperator, phi: &SmoothFn, t: f64) -> Result<f64> {
    op.apply(phi, t)
}
