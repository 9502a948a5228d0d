//! Gauss-Legendre quadrature rules and the product rule on the 2-sphere.

/// Node counts used by the transform and analysis pipelines.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Nodes for 1D reduced integrals.
    pub nodes: usize,
    /// Polar (Gauss-Legendre in cos theta) nodes of the sphere product rule.
    pub polar: usize,
    /// Azimuthal (uniform trapezoid) nodes of the sphere product rule.
    pub azimuth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            nodes: 200,
            polar: 64,
            azimuth: 128,
        }
    }
}

/// Gauss-Legendre rule on a reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi-style initial guess, then Newton.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_deriv(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    let (p2, d2) = legendre_with_deriv(n, x);
                    dp = d2;
                    x -= p2 / d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            weights[i] = w;
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Integrate `f` over `[a, b]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        if b <= a {
            return 0.0;
        }
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        half * acc
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, w * half))
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre_with_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Product quadrature on the unit 2-sphere: Gauss-Legendre in the polar
/// cosine, uniform trapezoid in azimuth. Weights sum to 4*pi.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn new(polar: usize, azimuth: usize) -> Self {
        let gl = GaussLegendre::new(polar);
        let mut points = Vec::with_capacity(polar * azimuth);
        let mut weights = Vec::with_capacity(polar * azimuth);
        let dphi = 2.0 * std::f64::consts::PI / azimuth as f64;
        for (&z, &wz) in gl.nodes.iter().zip(&gl.weights) {
            let s = (1.0 - z * z).sqrt();
            for j in 0..azimuth {
                let phi = dphi * j as f64;
                points.push([s * phi.cos(), s * phi.sin(), z]);
                weights.push(wz * dphi);
            }
        }
        SphereRule { points, weights }
    }

    pub fn from_spec(spec: &QuadratureSpec) -> Self {
        SphereRule::new(spec.polar, spec.azimuth)
    }

    /// Integrate `f` over the sphere (surface measure).
    pub fn integrate<F: FnMut(&[f64; 3]) -> f64>(&self, mut f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, &w)| w * f(p))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn low_order_nodes_match_tabulated() {
        let gl = GaussLegendre::new(3);
        assert_relative_eq!(gl.nodes[0], -0.7745966692414834, epsilon = 1e-14);
        assert_relative_eq!(gl.nodes[1], 0.0, epsilon = 1e-14);
        assert_relative_eq!(gl.weights[0], 5.0 / 9.0, epsilon = 1e-14);
        assert_relative_eq!(gl.weights[1], 8.0 / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let gl = GaussLegendre::new(6);
        // degree 11 is exact for a 6-point rule
        let val = gl.integrate(0.0, 2.0, |x| x.powi(11));
        assert_relative_eq!(val, 2.0_f64.powi(12) / 12.0, epsilon = 1e-10);
    }

    #[test]
    fn high_order_rule_on_smooth_integrand() {
        let gl = GaussLegendre::new(200);
        let val = gl.integrate(0.0, 1.0, |x| (3.0 * x).sin());
        assert_relative_eq!(val, (1.0 - 3.0_f64.cos()) / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn sphere_rule_total_measure() {
        let rule = SphereRule::new(16, 32);
        let total = rule.integrate(|_| 1.0);
        assert_relative_eq!(total, 4.0 * std::f64::consts::PI, epsilon = 1e-12);
    }

    #[test]
    fn sphere_rule_integrates_z_squared() {
        let rule = SphereRule::new(16, 32);
        let val = rule.integrate(|p| p[2] * p[2]);
        assert_relative_eq!(val, 4.0 * std::f64::consts::PI / 3.0, epsilon = 1e-12);
    }
}
