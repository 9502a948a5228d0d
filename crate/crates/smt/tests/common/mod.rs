//! Independent oracles for the integration suites: adaptive Gauss-Kronrod
//! quadrature, symbolic derivatives of the mollifier via an exact rational
//! recurrence, and the Rodrigues form of the Gegenbauer polynomials. None of
//! these share code with the implementation paths they certify.

#![allow(dead_code)]

/// 7-15 Gauss-Kronrod pair on [-1, 1].
const KRONROD_NODES: [f64; 15] = [
    -0.991455371120813,
    -0.949107912342759,
    -0.864864423359769,
    -0.741531185599394,
    -0.586087235467691,
    -0.405845151377397,
    -0.207784955007898,
    0.0,
    0.207784955007898,
    0.405845151377397,
    0.586087235467691,
    0.741531185599394,
    0.864864423359769,
    0.949107912342759,
    0.991455371120813,
];

const KRONROD_WEIGHTS: [f64; 15] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
    0.204432940075298,
    0.190350578064785,
    0.169004726639267,
    0.140653259715525,
    0.104790010322250,
    0.063092092629979,
    0.022935322010529,
];

const GAUSS_WEIGHTS: [f64; 7] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
    0.381830050505119,
    0.279705391489277,
    0.129484966168870,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut k = 0.0;
    let mut g = 0.0;
    for (i, (&x, &w)) in KRONROD_NODES.iter().zip(&KRONROD_WEIGHTS).enumerate() {
        let v = f(mid + half * x);
        k += w * v;
        if i % 2 == 1 {
            g += GAUSS_WEIGHTS[i / 2] * v;
        }
    }
    (half * k, half * (k - g).abs())
}

/// Adaptive Gauss-Kronrod integration to the given absolute tolerance.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let mut stack = vec![(a, b, tol)];
    let mut total = 0.0;
    let mut depth_guard = 0usize;
    while let Some((lo, hi, t)) = stack.pop() {
        depth_guard += 1;
        assert!(depth_guard < 100_000, "adaptive quadrature did not converge");
        let (val, err) = gk15(&f, lo, hi);
        if err <= t || hi - lo < 1e-13 {
            total += val;
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, t / 2.0));
            stack.push((mid, hi, t / 2.0));
        }
    }
    total
}

/// Exact k-th derivative of the mollifier `amplitude exp(-1/(1-x^2))`,
/// `x = (t-center)/width`, via the rational recurrence
/// `f^(k) = f P_k(x) / (1-x^2)^(2k)` with integer polynomials
/// `P_(k+1) = P_k' D^2 + 2k x P_k D - 2 x P_k`, `D = 1 - x^2`.
pub fn bump_derivative_oracle(center: f64, width: f64, amplitude: f64, t: f64, k: usize) -> f64 {
    let x = (t - center) / width;
    if x * x >= 1.0 {
        return 0.0;
    }
    // polynomial arithmetic over f64 coefficients (values stay integral)
    let mul = |p: &[f64], q: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; p.len() + q.len() - 1];
        for (i, &pi) in p.iter().enumerate() {
            for (j, &qj) in q.iter().enumerate() {
                out[i + j] += pi * qj;
            }
        }
        out
    };
    let deriv = |p: &[f64]| -> Vec<f64> {
        if p.len() <= 1 {
            return vec![0.0];
        }
        (1..p.len()).map(|i| i as f64 * p[i]).collect()
    };
    let add = |p: &[f64], q: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; p.len().max(q.len())];
        for (i, &v) in p.iter().enumerate() {
            out[i] += v;
        }
        for (i, &v) in q.iter().enumerate() {
            out[i] += v;
        }
        out
    };
    let d_poly = [1.0, 0.0, -1.0]; // 1 - x^2
    let d2 = mul(&d_poly, &d_poly);
    let mut p = vec![1.0];
    for kk in 0..k {
        // denominator power after kk steps is m = 2 kk
        let term1 = mul(&deriv(&p), &d2);
        let term2 = mul(&[0.0, 4.0 * kk as f64], &mul(&p, &d_poly));
        let term3 = mul(&[0.0, -2.0], &p);
        p = add(&add(&term1, &term2), &term3);
    }
    let horner = |p: &[f64], x: f64| p.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let d = 1.0 - x * x;
    let f = amplitude * (-1.0 / d).exp();
    f * horner(&p, x) / d.powi(2 * k as i32) / width.powi(k as i32)
}

/// Gegenbauer polynomial by the Rodrigues form
/// `C_m^alpha = K_m (1-t^2)^(-alpha+1/2) d^m/dt^m (1-t^2)^(m+alpha-1/2)`,
/// with `K_m = (-1)^m Gamma(alpha+1/2) Gamma(m+2 alpha)
///             / (2^m m! Gamma(2 alpha) Gamma(m+alpha+1/2))`.
/// Valid for half-integer alpha, where the inner exponent is an integer and
/// the derivative is exact polynomial arithmetic.
pub fn gegenbauer_rodrigues(m: usize, alpha: f64, t: f64) -> f64 {
    let kp = alpha - 0.5;
    assert!(
        (kp - kp.round()).abs() < 1e-12 && kp >= 0.0,
        "alpha must be a half-integer >= 1/2"
    );
    let kp = kp.round() as usize;
    // (1 - t^2)^(m + kp) as polynomial coefficients
    let power = m + kp;
    let mut poly = vec![0.0; 2 * power + 1];
    let mut binom = 1.0;
    for i in 0..=power {
        poly[2 * i] = binom * if i % 2 == 0 { 1.0 } else { -1.0 };
        binom *= (power - i) as f64 / (i + 1) as f64;
    }
    // m-fold derivative
    for _ in 0..m {
        poly = (1..poly.len()).map(|i| i as f64 * poly[i]).collect();
        if poly.is_empty() {
            poly.push(0.0);
        }
    }
    let val: f64 = poly.iter().rev().fold(0.0, |acc, &c| acc * t + c);
    let g = smt::special::gamma_half;
    let twice = |x: f64| (2.0 * x).round() as u32;
    let k_m = if m % 2 == 0 { 1.0 } else { -1.0 } * g(twice(alpha + 0.5)) * g(twice(m as f64 + 2.0 * alpha))
        / (2f64.powi(m as i32)
            * smt::special::factorial(m)
            * g(twice(2.0 * alpha))
            * g(twice(m as f64 + alpha + 0.5)));
    k_m * (1.0 - t * t).powi(-(kp as i32)) * val
}
