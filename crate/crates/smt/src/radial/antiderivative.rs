//! Compactly supported antiderivatives of the operator D.
//!
//! For U with vanishing odd moments, the nested antiderivative
//! `V_d(t) = int_a^t s U(s) (t^2 - s^2)^(d-1) / (2^(d-1) (d-1)!) ds`
//! satisfies `D^d V_d = U` and is again compactly supported. Values come
//! from cumulative panel integrals of U (filled once at construction);
//! derivatives come from the exact recurrence `V_j' = t V_(j-1)`.

use std::sync::Arc;

use super::profile::RadialProfile;
use super::smooth::SmoothFn;
use super::taylor::Taylor;
use crate::error::{Error, Result};
use crate::quad::GaussLegendre;

const PANELS: usize = 24;
const PANEL_NODES: usize = 16;

struct PanelTable {
    source: SmoothFn,
    a: f64,
    b: f64,
    depth: usize,
    boundaries: Vec<f64>,
    /// cum[j][p] = int_a^{boundaries[p]} s^(2j+1) U(s) ds
    cum: Vec<Vec<f64>>,
    base: GaussLegendre,
}

impl PanelTable {
    fn build(p: &RadialProfile, depth: usize) -> Result<(Self, Vec<f64>, Vec<f64>)> {
        let (a, b) = p.support();
        let base = GaussLegendre::new(PANEL_NODES);
        // cosine-graded boundaries: profiles built from D powers of bumps
        // concentrate all their scales at the support edges, where uniform
        // panels lose eight digits
        let boundaries: Vec<f64> = (0..=PANELS)
            .map(|i| {
                a + (b - a)
                    * 0.5
                    * (1.0 - (std::f64::consts::PI * i as f64 / PANELS as f64).cos())
            })
            .collect();
        let jmax = depth - 1;
        let mut cum = vec![vec![0.0; PANELS + 1]; jmax + 1];
        let mut abs_total = vec![0.0; jmax + 1];
        for pan in 0..PANELS {
            let mut sums = vec![0.0; jmax + 1];
            for (s, w) in base.mapped(boundaries[pan], boundaries[pan + 1]) {
                let u = p.value(s)?;
                let mut spow = s; // s^(2j+1)
                for j in 0..=jmax {
                    sums[j] += w * spow * u;
                    abs_total[j] += w * (spow * u).abs();
                    spow *= s * s;
                }
            }
            for j in 0..=jmax {
                cum[j][pan + 1] = cum[j][pan] + sums[j];
            }
        }
        let totals: Vec<f64> = (0..=jmax).map(|j| cum[j][PANELS]).collect();
        Ok((
            PanelTable {
                source: p.function().clone(),
                a,
                b,
                depth,
                boundaries,
                cum,
                base,
            },
            totals,
            abs_total,
        ))
    }

    /// `W_j(t) = int_a^t s^(2j+1) U(s) ds` for j = 0..depth, all from one
    /// partial-panel pass.
    fn partial_moments(&self, t: f64) -> Result<Vec<f64>> {
        let jmax = self.depth - 1;
        let mut idx = match self
            .boundaries
            .binary_search_by(|x| x.partial_cmp(&t).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        }
        .min(PANELS - 1);
        while self.boundaries[idx] > t && idx > 0 {
            idx -= 1;
        }
        let mut w: Vec<f64> = (0..=jmax).map(|j| self.cum[j][idx]).collect();
        for (s, wt) in self.base.mapped(self.boundaries[idx], t) {
            let u = self.source.value(s)?;
            let mut spow = s;
            for wj in w.iter_mut() {
                *wj += wt * spow * u;
                spow *= s * s;
            }
        }
        Ok(w)
    }

    /// Values `V_1(t), ..., V_depth(t)` from the partial moments.
    fn stack_values(&self, t: f64, w: &[f64]) -> Vec<f64> {
        let mut vals = Vec::with_capacity(self.depth);
        for j in 1..=self.depth {
            let mut acc = 0.0;
            let mut binom = 1.0;
            for (i, &wi) in w.iter().enumerate().take(j) {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * binom * t.powi(2 * (j - 1 - i) as i32) * wi;
                binom *= (j - 1 - i) as f64 / (i + 1) as f64;
            }
            let mut norm = 1.0; // 2^(j-1) (j-1)!
            for q in 1..j {
                norm *= 2.0 * q as f64;
            }
            vals.push(acc / norm);
        }
        vals
    }
}

/// A compactly supported V with `D^order V = p`, realized by iterating
/// `V(t) = int_0^t s U(s) ds`. Fails with `NotInDPowerImage` when a required
/// moment of `p` does not vanish (normalized against `int s^(2j+1) |p|`),
/// which is exactly the obstruction to compact support of the result.
pub fn d_antiderivative(p: &RadialProfile, order: usize, tol: f64) -> Result<RadialProfile> {
    if order == 0 {
        return Ok(p.clone());
    }
    let (table, totals, abs_totals) = PanelTable::build(p, order)?;
    for (j, (&total, &scale)) in totals.iter().zip(&abs_totals).enumerate() {
        if scale > 0.0 && total.abs() > tol * scale {
            return Err(Error::NotInDPowerImage {
                index: j,
                value: total.abs() / scale,
                tol,
                order,
            });
        }
    }
    let (a, b) = p.support();
    let max_order = p.max_order().saturating_add(order);
    let table = Arc::new(table);
    let fn_ = SmoothFn::new(max_order, move |t, m| {
        if t <= table.a || t >= table.b {
            return Ok(Taylor::zero(m));
        }
        let w = table.partial_moments(t)?;
        let vals = table.stack_values(t, &w);
        let depth = table.depth;
        // T_j = Taylor series of V_j at t, built to order m - depth + j.
        let j0 = depth.saturating_sub(m);
        let mut series = if m > depth {
            table.source.taylor(t, m - depth)?
        } else if j0 == 0 {
            table.source.taylor(t, 0)?
        } else {
            Taylor::constant(vals[j0 - 1], 0)
        };
        for j in (j0 + 1)..=depth {
            let nj = m + j - depth; // >= 1
            let prod = Taylor::variable(t, nj - 1).mul(&series.resized(nj - 1));
            series = prod.integrate(vals[j - 1]);
        }
        Ok(series.resized(m))
    });
    RadialProfile::new(fn_, a, b)
}
