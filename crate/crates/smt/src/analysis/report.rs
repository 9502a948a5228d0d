//! Residual reports shared by the range, kernel and counterexample checks.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    InRange,
    NotInRange,
    Inconclusive,
}

/// One named check with its value, threshold, and outcome.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Metric {
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Metric {
        Metric {
            name: name.into(),
            value,
            threshold,
            pass: value < threshold,
        }
    }

    pub fn above(name: impl Into<String>, value: f64, threshold: f64) -> Metric {
        Metric {
            name: name.into(),
            value,
            threshold,
            pass: value > threshold,
        }
    }
}

/// Residual norms, thresholds, grid metadata and verdict of one check.
/// The verdict is `InRange` exactly when `residual_sup < threshold`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RangeReport {
    /// Normalized sup of the residual over the grid.
    pub residual_sup: f64,
    /// Root-mean-square of the residual over the grid, same normalization.
    pub residual_l2: f64,
    pub threshold: f64,
    pub grid: String,
    pub verdict: Verdict,
    pub details: Vec<Metric>,
}

impl RangeReport {
    pub fn from_residuals(residuals: &[f64], threshold: f64, grid: String) -> RangeReport {
        let sup = residuals.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let l2 = if residuals.is_empty() {
            0.0
        } else {
            (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64).sqrt()
        };
        RangeReport {
            residual_sup: sup,
            residual_l2: l2,
            threshold,
            grid,
            verdict: if sup < threshold {
                Verdict::InRange
            } else {
                Verdict::NotInRange
            },
            details: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::InRange
    }
}

/// Uniform radial evaluation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub points: usize,
}

impl Default for RadialGrid {
    fn default() -> Self {
        RadialGrid {
            r_min: crate::transform::R_MIN,
            r_max: crate::transform::R_MAX,
            points: 60,
        }
    }
}

impl RadialGrid {
    pub fn new(r_min: f64, r_max: f64, points: usize) -> Self {
        RadialGrid {
            r_min,
            r_max,
            points: points.max(2),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.points.max(2);
        let (a, b) = (self.r_min, self.r_max);
        (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
    }

    pub fn describe(&self) -> String {
        format!(
            "r in [{}, {}], {} points",
            self.r_min, self.r_max, self.points
        )
    }
}

/// Pass/fail thresholds for the residual dichotomies. `tol_null` bounds what
/// counts as numerically zero (two orders above observed quadrature noise);
/// `tol_fail` is the certificate level for a genuinely nonzero residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub tol_null: f64,
    pub tol_fail: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            tol_null: 1e-7,
            tol_fail: 1e-2,
        }
    }
}
