//! Real orthonormal spherical harmonics on S^2 (n = 3).
//!
//! Indexing: degree m >= 0 and l in 1..=d_m with d_m = 2m + 1; l maps to the
//! order o = l - 1 - m in -m..=m. Normalized so that the Gram matrix under
//! the surface measure is the identity.

use crate::error::{Error, Result};

use super::dimension::factorial;

/// Number of linearly independent harmonics of degree m in dimension n:
/// `(2m + n - 2) (n + m - 3)! / (m! (n - 2)!)`, with d_0 = 1.
pub fn harmonic_count(m: usize, n: u32) -> usize {
    if m == 0 {
        return 1;
    }
    let n = n as usize;
    let v = (2 * m + n - 2) as f64 * factorial(n + m - 3) / (factorial(m) * factorial(n - 2));
    v.round() as usize
}

/// Associated Legendre `P_m^o(x)` (Condon-Shortley phase included), for
/// 0 <= o <= m.
fn assoc_legendre(m: usize, o: usize, x: f64) -> f64 {
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..o {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if m == o {
        return pmm;
    }
    let mut pmmp1 = x * (2.0 * o as f64 + 1.0) * pmm;
    if m == o + 1 {
        return pmmp1;
    }
    let mut pml = 0.0;
    for l in (o + 2)..=m {
        pml = ((2.0 * l as f64 - 1.0) * x * pmmp1 - (l + o - 1) as f64 * pmm) / (l - o) as f64;
        pmm = pmmp1;
        pmmp1 = pml;
    }
    pml
}

/// Real orthonormal spherical harmonic `Y_{m,l}` evaluated at a direction in
/// R^3 (normalized internally).
pub fn spherical_harmonic_eval(m: usize, l: usize, theta: &[f64; 3]) -> Result<f64> {
    let dm = 2 * m + 1;
    if l < 1 || l > dm {
        return Err(Error::HarmonicIndex { m, l, dm });
    }
    let norm = (theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2]).sqrt();
    if norm == 0.0 {
        return Err(Error::Precondition("direction must be nonzero".into()));
    }
    let z = theta[2] / norm;
    let phi = theta[1].atan2(theta[0]);
    let o = l as i64 - 1 - m as i64;
    let oa = o.unsigned_abs() as usize;
    let nrm = ((2.0 * m as f64 + 1.0) / (4.0 * std::f64::consts::PI) * factorial(m - oa)
        / factorial(m + oa))
    .sqrt();
    let p = assoc_legendre(m, oa, z);
    let val = match o.signum() {
        0 => nrm * p,
        1 => std::f64::consts::SQRT_2 * nrm * p * (oa as f64 * phi).cos(),
        _ => std::f64::consts::SQRT_2 * nrm * p * (oa as f64 * phi).sin(),
    };
    Ok(val)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::SphereRule;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn degree_zero_is_constant() {
        let v = spherical_harmonic_eval(0, 1, &[0.3, -0.4, 0.86]).unwrap();
        assert_relative_eq!(v, 0.5 / std::f64::consts::PI.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn harmonic_counts() {
        assert_eq!(harmonic_count(0, 3), 1);
        assert_eq!(harmonic_count(1, 3), 3);
        assert_eq!(harmonic_count(2, 3), 5);
        assert_eq!(harmonic_count(4, 3), 9);
        assert_eq!(harmonic_count(2, 5), 14);
    }

    #[test]
    fn index_bounds_checked() {
        assert!(spherical_harmonic_eval(2, 0, &[0.0, 0.0, 1.0]).is_err());
        assert!(spherical_harmonic_eval(2, 6, &[0.0, 0.0, 1.0]).is_err());
        assert!(spherical_harmonic_eval(2, 5, &[0.0, 0.0, 1.0]).is_ok());
    }

    #[test]
    fn gram_matrix_is_identity_up_to_degree_four() {
        let rule = SphereRule::new(32, 64);
        let mut indices = Vec::new();
        for m in 0..=4usize {
            for l in 1..=(2 * m + 1) {
                indices.push((m, l));
            }
        }
        for (i, &(m1, l1)) in indices.iter().enumerate() {
            for &(m2, l2) in &indices[i..] {
                let g = rule.integrate(|p| {
                    spherical_harmonic_eval(m1, l1, p).unwrap()
                        * spherical_harmonic_eval(m2, l2, p).unwrap()
                });
                let expect = if (m1, l1) == (m2, l2) { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(g, expect, epsilon = 1e-10);
            }
        }
    }
}
