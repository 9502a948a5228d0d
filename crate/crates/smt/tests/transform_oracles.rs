//! Linearity, support propagation, and harmonic-reduction oracles for the
//! transform layer.

mod common;

use std::collections::BTreeMap;

use smt::analysis::SphereTimeFunction;
use smt::quad::{GaussLegendre, QuadratureSpec};
use smt::radial::{bump, RadialProfile, SmoothFn};
use smt::special::{gegenbauer_eval, spherical_harmonic_eval, Dimension};
use smt::transform::{
    backproject_radial_reduced, forward_sinogram, forward_sphere3, Phantom, RadialPhantom,
};

#[test]
fn forward_transform_is_linear() {
    let dim = Dimension::new(3).unwrap();
    let quad = QuadratureSpec::default();
    let f1 = RadialPhantom::annulus_exp(0.5, 0.25, 1.0).unwrap();
    let f2 = RadialPhantom::ball_exp(0.4, 1.0).unwrap();
    let combo = RadialPhantom::sum(vec![f1.scaled(1.7), f2.scaled(-0.6)]).unwrap();
    let s1 = forward_sinogram(&f1, &dim, &quad).unwrap();
    let s2 = forward_sinogram(&f2, &dim, &quad).unwrap();
    let sc = forward_sinogram(&combo, &dim, &quad).unwrap();
    for i in 0..30 {
        let t = 0.3 + 1.4 * i as f64 / 29.0;
        let lhs = sc.value(t).unwrap();
        let rhs = 1.7 * s1.value(t).unwrap() - 0.6 * s2.value(t).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(rhs.abs()).max(1e-3));
    }
}

#[test]
fn backprojection_is_linear() {
    let dim = Dimension::new(5).unwrap();
    let quad = QuadratureSpec::default();
    let g1 = bump(0.9, 0.25, 1.0).unwrap();
    let g2 = bump(1.1, 0.3, 1.0).unwrap();
    let combo = RadialProfile::new(
        SmoothFn::linear_combination(vec![
            (2.0, g1.function().clone()),
            (-0.5, g2.function().clone()),
        ]),
        0.65,
        1.4,
    )
    .unwrap();
    for &r in &[0.2, 0.5, 0.8] {
        let lhs = backproject_radial_reduced(&combo, r, &dim, &quad).unwrap();
        let rhs = 2.0 * backproject_radial_reduced(&g1, r, &dim, &quad).unwrap()
            - 0.5 * backproject_radial_reduced(&g2, r, &dim, &quad).unwrap();
        assert!((lhs - rhs).abs() < 1e-10 * lhs.abs().max(rhs.abs()).max(1e-3));
    }
}

#[test]
fn sinogram_support_stays_in_the_expected_band() {
    let dim = Dimension::new(5).unwrap();
    let quad = QuadratureSpec::default();
    let rho = 0.65;
    let f = RadialPhantom::annulus_exp(0.4, 0.25, 1.0).unwrap();
    assert!((f.support_radius() - rho).abs() < 1e-12);
    let sino = forward_sinogram(&f, &dim, &quad).unwrap();
    let (a, b) = sino.profile().support();
    assert!((a - (1.0 - rho)).abs() < 1e-12 && (b - (1.0 + rho)).abs() < 1e-12);
    for &t in &[0.3, 0.34, 1.66, 1.9] {
        assert_eq!(sino.value(t).unwrap(), 0.0, "t = {t}");
    }
    assert!(sino.value(1.0).unwrap() > 0.0);
}

#[test]
fn single_harmonic_data_backprojects_to_a_scaled_harmonic() {
    // data Y_ml(theta) w(t): the backprojection at x is proportional to
    // Y_ml(x/|x|), with the radial factor given by the 1D zonal reduction
    let quad = QuadratureSpec {
        polar: 128,
        azimuth: 256,
        ..Default::default()
    };
    let w = bump(1.0, 0.3, 1.0).unwrap();
    for &(m, l) in &[(1usize, 1usize), (2, 4)] {
        let g = SphereTimeFunction::from_harmonics(BTreeMap::from([((m, l), w.clone())])).unwrap();
        let r: f64 = 0.55;
        let gl = GaussLegendre::new(400);
        // (1/omega_3) |S^1| int w(sqrt(1+r^2-2rs)) P_m(s) ds * Y_ml(x.hat)
        let radial_factor = 0.5
            * gl.integrate(-1.0, 1.0, |s| {
                let u = (1.0 + r * r - 2.0 * r * s).sqrt();
                w.value(u).unwrap() * gegenbauer_eval(m, 0.5, s)
            });
        for dir in [[0.0, 0.6, 0.8], [0.57735, 0.57735, 0.57735], [1.0, 0.0, 0.0]] {
            let x = [r * dir[0], r * dir[1], r * dir[2]];
            let direct = g.backproject(&x, &quad).unwrap();
            let reduced = radial_factor * spherical_harmonic_eval(m, l, &dir).unwrap();
            assert!(
                (direct - reduced).abs() < 1e-9 * radial_factor.abs().max(1e-6),
                "m={m} l={l} dir {dir:?}: direct {direct:.10e} reduced {reduced:.10e}"
            );
        }
    }
}

#[test]
fn forward_of_two_bump_phantom_matches_adaptive_oracle() {
    // adaptive polar integration (spectrally exact azimuth) against the
    // product-rule route
    let sum = smt::transform::SumPhantom::new(vec![
        smt::transform::BallBump {
            center: [0.25, -0.15, 0.3],
            width: 0.28,
            amplitude: 1.0,
        },
        smt::transform::BallBump {
            center: [-0.3, 0.2, -0.15],
            width: 0.22,
            amplitude: 0.6,
        },
    ])
    .unwrap();
    let quad = QuadratureSpec {
        polar: 128,
        azimuth: 256,
        ..Default::default()
    };
    let p = [-0.36, 0.48, 0.8];
    let azimuth = 512usize;
    for &t in &[0.7, 1.05, 1.35] {
        let product = forward_sphere3(&Phantom::Sum3d(sum.clone()), &p, t, &quad).unwrap();
        let oracle = common::adaptive_quadrature(
            |z| {
                let s = (1.0 - z * z).sqrt();
                let mut ring = 0.0;
                for j in 0..azimuth {
                    let phi = 2.0 * std::f64::consts::PI * j as f64 / azimuth as f64;
                    let theta = [s * phi.cos(), s * phi.sin(), z];
                    ring += sum.eval_point(&[
                        p[0] + t * theta[0],
                        p[1] + t * theta[1],
                        p[2] + t * theta[2],
                    ]);
                }
                ring * 2.0 * std::f64::consts::PI / azimuth as f64
            },
            -1.0,
            1.0,
            1e-12,
        ) / (4.0 * std::f64::consts::PI);
        let rel = (product - oracle).abs() / product.abs().max(oracle.abs()).max(1e-9);
        assert!(rel < 1e-7, "t = {t}: rel {rel:.3e}");
    }
}
