//! Gauss–Legendre rules on [−1, 1].

use std::f64::consts::PI;

/// Nodes ascending, with matching weights.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// n-point rule, exact for polynomials of degree ≤ 2n − 1. Panics if n == 0.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "quadrature order must be positive");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        // Roots are symmetric; solve for the positive half with Newton from
        // the Tricomi initial guess.
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// ∫_{−1}^{1} f(u) du
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let n = n as f64;
    (p1, n * (x * p1 - p0) / (x * x - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_point_rule() {
        let q = GaussLegendre::new(5);
        let x = (5.0 - 2.0 * (10.0f64 / 7.0).sqrt()).sqrt() / 3.0;
        let w = (322.0 + 13.0 * 70f64.sqrt()) / 900.0;
        assert!((q.nodes[3] - x).abs() < 1e-15);
        assert!((q.weights[3] - w).abs() < 1e-15);
        assert_eq!(q.nodes[2], 0.0);
        assert!((q.weights[2] - 128.0 / 225.0).abs() < 1e-15);
    }

    #[test]
    fn integrates_polynomials_exactly() {
        let q = GaussLegendre::new(64);
        assert!((q.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        for k in 0..=127usize {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            let got = q.integrate(|u| u.powi(k as i32));
            assert!((got - exact).abs() < 1e-13, "degree {k}: {got} vs {exact}");
        }
    }

    #[test]
    fn nodes_ascending_and_symmetric() {
        let q = GaussLegendre::new(64);
        for w in q.nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        for i in 0..32 {
            assert_eq!(q.nodes[i], -q.nodes[63 - i]);
        }
    }

    #[test]
    fn smooth_rational_integrand() {
        // ∫ du / (2 + u) = ln 3
        let q = GaussLegendre::new(64);
        assert!((q.integrate(|u| 1.0 / (2.0 + u)) - 3f64.ln()).abs() < 1e-14);
    }
}
