//! Ambient dimension bookkeeping for odd n >= 3.

use crate::error::{Error, Result};

/// Gamma function at half-integer arguments: `gamma_half(j)` returns
/// `Gamma(j/2)`. Exact products, no series approximation.
pub fn gamma_half(twice_arg: u32) -> f64 {
    assert!(twice_arg >= 1, "gamma argument must be positive");
    let mut val = if twice_arg % 2 == 0 {
        1.0 // Gamma(1)
    } else {
        std::f64::consts::PI.sqrt() // Gamma(1/2)
    };
    let mut k = if twice_arg % 2 == 0 { 2 } else { 1 };
    while k < twice_arg {
        val *= k as f64 / 2.0;
        k += 2;
    }
    val
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Odd ambient dimension with the derived constants used throughout the
/// reduced transforms.
#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    n: u32,
    k: usize,
    omega_n: f64,
    omega_sub: f64,
}

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::BadDimension(n));
        }
        let pi = std::f64::consts::PI;
        // surface area of S^(n-1): 2 pi^(n/2) / Gamma(n/2)
        let omega_n = 2.0 * pi.powf(n as f64 / 2.0) / gamma_half(n);
        let omega_sub = 2.0 * pi.powf((n - 1) as f64 / 2.0) / gamma_half(n - 1);
        Ok(Dimension {
            n,
            k: ((n - 3) / 2) as usize,
            omega_n,
            omega_sub,
        })
    }

    /// The ambient dimension n.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `k = (n - 3) / 2`, the exponent of the reduced kernel `B^k`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Surface area of the unit sphere in R^n.
    pub fn omega_n(&self) -> f64 {
        self.omega_n
    }

    /// Surface area of the unit sphere in R^(n-1).
    pub fn omega_sub(&self) -> f64 {
        self.omega_sub
    }

    /// The Gegenbauer index `(n - 2) / 2` of the zonal reduction.
    pub fn gegenbauer_alpha(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }
}
