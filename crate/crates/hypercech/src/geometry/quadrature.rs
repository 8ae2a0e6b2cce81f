//! Tensor Gauss–Legendre quadrature on the unit square and the cube-to-simplex map `q₂`.

/// Gauss–Legendre nodes and weights of the given order, transported to `[0,1]`.
pub fn gauss_legendre(order: usize) -> Vec<(f64, f64)> {
    assert!(order > 0, "quadrature order must be positive");
    let n = order;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// `q₂(x₁, x₂) = ((1−x₂)x₁, x₂)`, mapping the unit square onto `Δ²` in `(s,t)` coordinates.
pub fn q2(x1: f64, x2: f64) -> (f64, f64) {
    ((1.0 - x2) * x1, x2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureScheme {
    pub order: usize,
    pub subdivisions: usize,
    nodes: Vec<(f64, f64)>,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self::new(16, 1)
    }
}

impl QuadratureScheme {
    pub fn new(order: usize, subdivisions: usize) -> Self {
        let base = gauss_legendre(order);
        let m = subdivisions.max(1);
        let h = 1.0 / m as f64;
        let nodes = (0..m).flat_map(|c| base.iter().map(move |&(x, w)| ((c as f64 + x) * h, w * h))).collect();
        Self { order, subdivisions: m, nodes }
    }

    /// One-dimensional nodes and weights on `[0,1]`.
    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn integrate_interval(&self, dim: usize, f: impl Fn(f64) -> Vec<f64>) -> Vec<f64> {
        let mut acc = vec![0.0; dim];
        for &(x, w) in &self.nodes {
            for (a, v) in acc.iter_mut().zip(f(x)) {
                *a += w * v;
            }
        }
        acc
    }

    /// Integral over `[0,1]²`, inner loop over `x₁`.
    pub fn integrate_square(&self, dim: usize, f: impl Fn(f64, f64) -> Vec<f64>) -> Vec<f64> {
        let mut acc = vec![0.0; dim];
        for &(x2, w2) in &self.nodes {
            for &(x1, w1) in &self.nodes {
                for (a, v) in acc.iter_mut().zip(f(x1, x2)) {
                    *a += w1 * w2 * v;
                }
            }
        }
        acc
    }

    pub fn describe(&self) -> String {
        format!("Gauss–Legendre order {} × {} subdivision(s) per axis", self.order, self.subdivisions)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn known_two_point_rule() {
        let r = gauss_legendre(2);
        let d = 0.5 / 3f64.sqrt();
        assert_abs_diff_eq!(r[0].0, 0.5 - d, epsilon = 1e-15);
        assert_abs_diff_eq!(r[1].0, 0.5 + d, epsilon = 1e-15);
        assert_abs_diff_eq!(r[0].1, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn exact_on_polynomials_up_to_degree() {
        for order in [1, 3, 8, 16] {
            let q = QuadratureScheme::new(order, 1);
            for deg in 0..2 * order {
                let v = q.integrate_interval(1, |x| vec![x.powi(deg as i32)])[0];
                assert_abs_diff_eq!(v, 1.0 / (deg as f64 + 1.0), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn subdivision_preserves_exactness() {
        let q = QuadratureScheme::new(4, 3);
        let v = q.integrate_square(1, |x, y| vec![x * x * y])[0];
        assert_abs_diff_eq!(v, 1.0 / 6.0, epsilon = 1e-14);
    }

    #[test]
    fn simplex_area_through_q2() {
        // Jacobian of q₂ is (1−x₂)
        let q = QuadratureScheme::default();
        let v = q.integrate_square(1, |_, x2| vec![1.0 - x2])[0];
        assert_abs_diff_eq!(v, 0.5, epsilon = 1e-15);
        assert_eq!(q2(1.0, 0.0), (1.0, 0.0));
        assert_eq!(q2(0.3, 1.0), (0.0, 1.0));
    }
}
