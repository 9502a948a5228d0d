//! The kernels A(r,u) = 1 + r^2 - u^2 and B(r,u) = 4r^2 - A^2 of the reduced
//! backprojection, their D_u calculus, the exact expansion of B^m in powers
//! of r^2, and the closed composition rule for D-derivatives of F(G) when
//! D^3 G = 0.

use crate::error::{Error, Result};
use crate::radial::{d_from_ordinary, jet_eval, SmoothFn};

use super::dimension::factorial;

pub fn kernel_a(r: f64, u: f64) -> f64 {
    1.0 + r * r - u * u
}

pub fn kernel_b(r: f64, u: f64) -> f64 {
    let a = kernel_a(r, u);
    4.0 * r * r - a * a
}

/// `D_u^j B(r, u)` where `D_u = (1/u) d/du`. The chain terminates:
/// `D B = 4A`, `D^2 B = -8`, and `D^j B = 0` for `j >= 3`.
pub fn kernel_ab_eval(r: f64, u: f64, derivative_order: usize) -> f64 {
    match derivative_order {
        0 => kernel_b(r, u),
        1 => 4.0 * kernel_a(r, u),
        2 => -8.0,
        _ => 0.0,
    }
}

/// `B(r, .)` as a polynomial in u (degree 4), for use as a jet provider.
pub fn kernel_b_polynomial(r: f64) -> SmoothFn {
    let c = 1.0 + r * r;
    // 4r^2 - (c - u^2)^2 = 4r^2 - c^2 + 2c u^2 - u^4
    SmoothFn::polynomial(vec![4.0 * r * r - c * c, 0.0, 2.0 * c, 0.0, -1.0])
}

/// Exact integer coefficients of `B^m(r,u) = sum_j q_{j,2m}(u^2) r^(2j)`.
/// Each `q_{j,2m}` is a polynomial of degree exactly `2m - j` in `u^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BExpansion {
    pub m: usize,
    /// `coeffs[j]` lists the coefficients of `q_{j,2m}` in ascending powers
    /// of `u^2`.
    pub coeffs: Vec<Vec<i128>>,
}

impl BExpansion {
    /// Evaluate `sum_j q_{j,2m}(u^2) r^(2j)` by Horner in r^2.
    pub fn eval(&self, r: f64, u: f64) -> f64 {
        let v = u * u;
        let r2 = r * r;
        let mut acc = 0.0;
        for q in self.coeffs.iter().rev() {
            acc = acc * r2 + poly_eval(q, v);
        }
        acc
    }

    pub fn degree_of(&self, j: usize) -> usize {
        self.coeffs[j]
            .iter()
            .rposition(|&c| c != 0)
            .unwrap_or(0)
    }
}

fn poly_eval(coeffs: &[i128], x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in coeffs.iter().rev() {
        acc = acc * x + c as f64;
    }
    acc
}

fn binom_i128(n: i64, k: i64) -> i128 {
    if k < 0 || k > n || n < 0 {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `(1 + sign * v)^p` as an integer coefficient list in v.
fn binomial_poly(sign: i128, p: usize) -> Vec<i128> {
    (0..=p)
        .map(|i| binom_i128(p as i64, i as i64) * sign.pow(i as u32))
        .collect()
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Expand `B^m` from the closed form
///
/// ```text
/// q_{a,2m}(u^2) = (-1)^m (-2)^a sum_i 4^(-i) C(m, a-2i) C(m-a+2i, m+i-a)
///                 (1+u^2)^(a-2i) (1-u^2)^(2m+2i-2a)
/// ```
///
/// All coefficients are integers: the factor `(-2)^a / 4^i = +-2^(a-2i)` and
/// `a - 2i >= 0` on every surviving term.
pub fn b_power_expand(m: usize) -> BExpansion {
    let mut coeffs = Vec::with_capacity(2 * m + 1);
    let sign_m: i128 = if m % 2 == 0 { 1 } else { -1 };
    for a in 0..=(2 * m) {
        let mut q = vec![0i128; (2 * m - a) + 1];
        for i in 0..=(a / 2) {
            let c1 = binom_i128(m as i64, a as i64 - 2 * i as i64);
            let c2 = binom_i128(
                m as i64 - a as i64 + 2 * i as i64,
                m as i64 + i as i64 - a as i64,
            );
            if c1 == 0 || c2 == 0 {
                continue;
            }
            let pow2: i128 = 1i128 << (a - 2 * i);
            let sign_a: i128 = if a % 2 == 0 { 1 } else { -1 };
            let scalar = sign_m * sign_a * pow2 * c1 * c2;
            let plus = binomial_poly(1, a - 2 * i);
            let minus = binomial_poly(-1, 2 * m + 2 * i - 2 * a);
            let term = poly_mul(&plus, &minus);
            for (d, &t) in term.iter().enumerate() {
                q[d] += scalar * t;
            }
        }
        coeffs.push(q);
    }
    BExpansion { m, coeffs }
}

/// `D^p F(G(t))` for G with `D^j G = 0` for `j >= 3`, via the terminating
/// composition sum
///
/// ```text
/// sum_{q >= p/2}^{p} p! / ((2q-p)! (p-q)! 2^(p-q))
///     F^(q)(G(t)) (DG)^(2q-p) (D^2 G)^(p-q)
/// ```
pub fn faa_di_bruno_special(f: &SmoothFn, g: &SmoothFn, p: usize, t: f64) -> Result<f64> {
    let g_jet = jet_eval(g, t, 3.min(g.max_order()))?;
    if g_jet.order() >= 3 {
        let d3 = d_from_ordinary(&g_jet, 3)?;
        let scale = g_jet
            .coeffs
            .iter()
            .fold(1.0_f64, |acc, &c| acc.max(c.abs()));
        if d3.abs() > 1e-12 * scale {
            return Err(Error::Precondition(format!(
                "D^3 G must vanish; got {d3:.3e} at t = {t}"
            )));
        }
    }
    let g0 = g_jet.value();
    if p == 0 {
        return Ok(f.value(g0)?);
    }
    let dg = d_from_ordinary(&g_jet, 1)?;
    let d2g = d_from_ordinary(&g_jet, 2)?;
    let f_jet = jet_eval(f, g0, p)?;
    let mut acc = 0.0;
    for q in p.div_ceil(2)..=p {
        let coeff =
            factorial(p) / (factorial(2 * q - p) * factorial(p - q) * 2f64.powi((p - q) as i32));
        acc += coeff * f_jet.derivative(q) * dg.powi((2 * q - p) as i32) * d2g.powi((p - q) as i32);
    }
    Ok(acc)
}
