//! Oracle comparisons for the special-function layer.

mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smt::quad::SphereRule;
use smt::radial::bump_fn;
use smt::special::{
    funk_hecke_coefficient, gegenbauer_eval, spherical_harmonic_eval, Dimension,
};

#[test]
fn recurrence_matches_rodrigues_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let t = rng.gen_range(-0.95..0.95);
        for m in 0..=8 {
            for &alpha in &[0.5, 1.5, 2.5] {
                let rec = gegenbauer_eval(m, alpha, t);
                let rod = common::gegenbauer_rodrigues(m, alpha, t);
                worst = worst.max((rec - rod).abs());
            }
        }
    }
    assert!(worst < 1e-9, "worst discrepancy {worst:.3e}");
}

#[test]
fn known_gegenbauer_value() {
    // C_2^(1/2)(1/2) = P_2(1/2) = -1/8, cross-checked through the Rodrigues
    // oracle as well
    assert!((gegenbauer_eval(2, 0.5, 0.5) + 0.125).abs() < 1e-14);
    assert!((common::gegenbauer_rodrigues(2, 0.5, 0.5) + 0.125).abs() < 1e-12);
}

#[test]
fn zonal_reduction_matches_direct_surface_integral_for_degree_one() {
    // F a zonal bump, m = 1, n = 3: the coefficient extracted by the 1D
    // reduction equals the direct surface projection
    let dim = Dimension::new(3).unwrap();
    let f = bump_fn(0.1, 0.55, 1.0, 12);
    let lambda = funk_hecke_coefficient(&f, 1, &dim).unwrap();
    let rule = SphereRule::new(128, 256);
    let eta = [0.48, -0.6, 0.64];
    for l in 1..=3 {
        let direct = rule.integrate(|sigma| {
            let dot = sigma[0] * eta[0] + sigma[1] * eta[1] + sigma[2] * eta[2];
            f.value(dot).unwrap() * spherical_harmonic_eval(1, l, sigma).unwrap()
        });
        let reduced = lambda * spherical_harmonic_eval(1, l, &eta).unwrap();
        let scale = lambda.abs();
        assert!(
            (direct - reduced).abs() < 1e-10 * scale,
            "l = {l}: direct {direct:.12e} reduced {reduced:.12e}"
        );
    }
}

#[test]
fn funk_hecke_identity_over_random_zonal_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let dim = Dimension::new(3).unwrap();
    let rule = SphereRule::new(96, 192);
    for trial in 0..10 {
        let f = bump_fn(
            rng.gen_range(-0.3..0.3),
            rng.gen_range(0.4..0.7),
            rng.gen_range(0.5..2.0),
            12,
        );
        let m = rng.gen_range(0..=4usize);
        let l = rng.gen_range(1..=(2 * m + 1));
        let eta = loop {
            let v: [f64; 3] = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n > 0.1 && n < 1.0 {
                let cand = [v[0] / n, v[1] / n, v[2] / n];
                if spherical_harmonic_eval(m, l, &cand).unwrap().abs() > 0.1 {
                    break cand;
                }
            }
        };
        let direct = rule.integrate(|sigma| {
            let dot = sigma[0] * eta[0] + sigma[1] * eta[1] + sigma[2] * eta[2];
            f.value(dot).unwrap() * spherical_harmonic_eval(m, l, sigma).unwrap()
        });
        let reduced =
            funk_hecke_coefficient(&f, m, &dim).unwrap() * spherical_harmonic_eval(m, l, &eta).unwrap();
        let rel = (direct - reduced).abs() / direct.abs().max(reduced.abs()).max(1e-10);
        assert!(rel < 1e-8, "trial {trial}: rel {rel:.3e}");
    }
}
