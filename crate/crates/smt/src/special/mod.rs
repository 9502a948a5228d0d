//! Special functions and operator algebra: Gegenbauer polynomials, the zonal
//! (Funk-Hecke) reduction, the reduced-backprojection kernels A and B, the
//! boundary operators L_kappa, and real spherical harmonics for n = 3.

mod dimension;
mod gegenbauer;
mod harmonics;
mod kernels;
mod loperator;

pub use dimension::{factorial, gamma_half, Dimension};
pub use gegenbauer::{funk_hecke_coefficient, gegenbauer_at_one, gegenbauer_eval};
pub use harmonics::{harmonic_count, spherical_harmonic_eval};
pub use kernels::{
    b_power_expand, faa_di_bruno_special, kernel_a, kernel_ab_eval, kernel_b,
    kernel_b_polynomial, BExpansion,
};
pub use loperator::{l_operator_apply, LOperator};
