//! The geometric chain model: smooth simplices in a chart of a Lie group model.

use super::chain::{boundary_matches, integrate_chain, EdgeMatch, Simplex, SmoothChain, FD_STEP};
use super::construct::ChainAlgebra;
use super::model::{LieAlgebraCocycle, LieModel};
use super::quadrature::QuadratureScheme;
use super::GeometryError;

/// Parametrization of the paths `α̃_g(t) = φ⁻¹(τ(t)·g̃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathChoice {
    /// `τ(t) = t`.
    Linear,
    /// `τ(t) = t²`, with `β̃` reparametrized by `(s,t) ↦ (s², t² + 2st)`.
    Squared,
}

impl PathChoice {
    pub fn tau(self, t: f64) -> f64 {
        match self {
            PathChoice::Linear => t,
            PathChoice::Squared => t * t,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeoAlgebra {
    pub model: LieModel,
    pub omega: LieAlgebraCocycle,
    pub quadrature: QuadratureScheme,
    pub paths: PathChoice,
    /// Sampled points per edge for edge matching.
    pub edge_samples: usize,
    pub eps_edge: f64,
}

impl GeoAlgebra {
    pub fn new(model: LieModel, omega: LieAlgebraCocycle) -> Result<Self, GeometryError> {
        if omega.dim != model.dim() {
            return Err(GeometryError::Cocycle(format!("ω is defined on dimension {}, model {} has {}", omega.dim, model.name(), model.dim())));
        }
        let eps_edge = if model.is_abelian() { 1e-10 } else { 1e-8 };
        Ok(Self { model, omega, quadrature: QuadratureScheme::default(), paths: PathChoice::Linear, edge_samples: 50, eps_edge })
    }

    pub fn with_quadrature(mut self, q: QuadratureScheme) -> Self {
        self.quadrature = q;
        self
    }

    pub fn with_paths(mut self, p: PathChoice) -> Self {
        self.paths = p;
        self
    }

    /// Default tolerance for integrated identities.
    pub fn default_tolerance(&self) -> f64 {
        if self.model.is_abelian() {
            1e-8
        } else {
            1e-6
        }
    }

    fn scale(x: &[f64], t: f64) -> Vec<f64> {
        x.iter().map(|v| v * t).collect()
    }

    /// `α̃_g(t)`.
    pub fn alpha_at(&self, g: &[f64], t: f64) -> Vec<f64> {
        Self::scale(g, self.paths.tau(t))
    }

    /// `α̃_g` as a 1-simplex.
    pub fn alpha_path(&self, g: &[f64]) -> Result<Simplex, GeometryError> {
        self.model.check_dim(g)?;
        let (g, p) = (g.to_vec(), self.paths);
        Ok(Simplex::path(format!("α̃{g:?}"), move |u| Self::scale(&g, p.tau(u))))
    }

    /// `β̃_{g,h}(s,t) = φ⁻¹(t(g̃⋆sh̃) + s(g̃⋆(1−t)h̃))`, reparametrized for squared paths.
    pub fn beta_triangle(&self, g: &[f64], h: &[f64]) -> Result<Simplex, GeometryError> {
        self.model.check_dim(g)?;
        self.model.check_dim(h)?;
        let (m, g, h, p) = (self.model.clone(), g.to_vec(), h.to_vec(), self.paths);
        let label = format!("β̃{g:?},{h:?}");
        Ok(Simplex::triangle(label, move |s, t| {
            let (s, t) = match p {
                PathChoice::Linear => (s, t),
                PathChoice::Squared => (s * s, t * t + 2.0 * s * t),
            };
            let a = m.star(&g, &Self::scale(&h, s));
            let b = m.star(&g, &Self::scale(&h, 1.0 - t));
            a.iter().zip(&b).map(|(x, y)| t * x + s * y).collect()
        }))
    }

    /// A 2-simplex `Ã_g` with `∂Ã_g = α̃_g − α̃′_g` for `α̃` linear and `α̃′` squared:
    /// `(s,t) ↦ φ⁻¹((t + s(s+t))·g̃)`.
    pub fn path_homotopy(&self, g: &[f64]) -> SmoothChain {
        let g = g.to_vec();
        SmoothChain::single(Simplex::triangle(format!("Ã{g:?}"), move |s, t| Self::scale(&g, t + s * (s + t))))
    }

    /// `∫_c b^l` for a 1-chain and a linear form `b: 𝔤 → 𝔷` given by rows.
    pub fn integrate_one_form(&self, b: &[Vec<f64>], c: &SmoothChain) -> Vec<f64> {
        let h = FD_STEP;
        let mut acc = vec![0.0; b.len()];
        for (k, s) in &c.terms {
            if s.dim() != 1 {
                continue;
            }
            let v = self.quadrature.integrate_interval(b.len(), |u| {
                let pinv = self.model.chart_inv(&s.at1(u));
                let fwd = self.model.star(&pinv, &s.at1(u + h));
                let bwd = self.model.star(&pinv, &s.at1(u - h));
                let tan: Vec<f64> = fwd.iter().zip(&bwd).map(|(x, y)| (x - y) / (2.0 * h)).collect();
                b.iter().map(|row| row.iter().zip(&tan).map(|(p, q)| p * q).sum()).collect()
            });
            for (a, x) in acc.iter_mut().zip(v) {
                *a += *k as f64 * x;
            }
        }
        acc
    }
}

impl ChainAlgebra for GeoAlgebra {
    type Elem = Vec<f64>;
    type Chain = SmoothChain;

    fn identity(&self) -> Vec<f64> {
        vec![0.0; self.model.dim()]
    }

    fn mul(&self, a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
        self.model.star(a, b)
    }

    fn inv(&self, a: &Vec<f64>) -> Vec<f64> {
        self.model.chart_inv(a)
    }

    fn value_dim(&self) -> usize {
        self.omega.out_dim()
    }

    fn zero(&self) -> SmoothChain {
        SmoothChain::zero()
    }

    fn plus(&self, a: SmoothChain, c: i64, b: &SmoothChain) -> SmoothChain {
        a.plus(c, b)
    }

    fn translate(&self, x: &Vec<f64>, c: &SmoothChain) -> SmoothChain {
        c.left_translate(&self.model, x)
    }

    fn path(&self, x: &Vec<f64>, a: &Vec<f64>, y: &Vec<f64>) -> SmoothChain {
        let (m, x, a, y, p) = (self.model.clone(), x.clone(), a.clone(), y.clone(), self.paths);
        SmoothChain::single(Simplex::path(format!("{x:?}.α̃{a:?}.{y:?}"), move |u| {
            m.star(&m.star(&x, &Self::scale(&a, p.tau(u))), &y)
        }))
    }

    fn beta(&self, g: &Vec<f64>, h: &Vec<f64>) -> SmoothChain {
        SmoothChain::single(self.beta_triangle(g, h).expect("dimension checked by caller"))
    }

    fn lambda(&self, i: &Vec<f64>, j: &Vec<f64>, g: &Vec<f64>) -> SmoothChain {
        let (m, p) = (self.model.clone(), self.paths);
        let (i, j) = (i.clone(), j.clone());
        let a = m.star(&m.chart_inv(&i), g);
        SmoothChain::square(format!("λ{i:?},{j:?}"), move |s, t| {
            let left = m.star(&i, &Self::scale(&a, p.tau(s)));
            m.star(&left, &Self::scale(&j, p.tau(1.0 - t)))
        })
    }

    fn mu(&self, i: &Vec<f64>, j: &Vec<f64>, g: &Vec<f64>) -> SmoothChain {
        let (m, p) = (self.model.clone(), self.paths);
        let ij = m.star(i, j);
        let j = j.clone();
        let a = m.star(&m.chart_inv(i), g);
        SmoothChain::square(format!("μ{ij:?}"), move |s, t| {
            let c = m.conj(&j, &Self::scale(&a, p.tau(s)));
            m.star(&ij, &Self::scale(&c, p.tau(t)))
        })
    }

    fn integrate(&self, c: &SmoothChain) -> Vec<f64> {
        integrate_chain(&self.model, &self.omega, &self.quadrature, c)
    }

    fn boundary_check(&self, c: &SmoothChain, expected: &SmoothChain) -> EdgeMatch {
        boundary_matches(c, expected, self.edge_samples, self.eps_edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::construct::*;
    use approx::assert_abs_diff_eq;

    fn plane() -> GeoAlgebra {
        GeoAlgebra::new(LieModel::Abelian(2), LieAlgebraCocycle::area_form(2)).unwrap()
    }

    fn heis() -> GeoAlgebra {
        GeoAlgebra::new(LieModel::Heisenberg3, LieAlgebraCocycle::area_form(3)).unwrap()
    }

    #[test]
    fn alpha_endpoints_and_plane_formula() {
        let a = plane();
        let p = a.alpha_path(&[2.0, -1.0]).unwrap();
        assert_eq!(p.at1(0.0), vec![0.0, 0.0]);
        assert_eq!(p.at1(1.0), vec![2.0, -1.0]);
        assert_eq!(p.at1(0.25), vec![0.5, -0.25]);
        assert!(a.alpha_path(&[1.0]).is_err());
    }

    #[test]
    fn heisenberg_alpha_midpoint_is_matrix_square_root() {
        let g = [0.8, -0.6, 0.3];
        let m = |x: &[f64]| {
            let n = nalgebra::Matrix3::new(0.0, x[0], x[2], 0.0, 0.0, x[1], 0.0, 0.0, 0.0);
            nalgebra::Matrix3::identity() + n + n * n * 0.5
        };
        let mid = heis().alpha_path(&g).unwrap().at1(0.5);
        let half = m(&mid);
        assert!((half * half - m(&g)).abs().max() < 1e-14);
    }

    #[test]
    fn plane_beta_formula_and_boundary() {
        let a = plane();
        let (g, h) = (vec![0.7, 0.2], vec![-0.4, 1.1]);
        let b = a.beta_triangle(&g, &h).unwrap();
        let (s, t) = (0.3, 0.5);
        let expect: Vec<f64> = (0..2).map(|c| (t + s) * g[c] + s * h[c]).collect();
        assert!(b.at2(s, t).iter().zip(&expect).all(|(x, y)| (x - y).abs() < 1e-15));
        let m = a.boundary_check(&a.beta(&g, &h), &beta_boundary(&a, &g, &h));
        assert!(m.closed && m.residual < 1e-10, "{m:?}");
    }

    #[test]
    fn heisenberg_beta_boundary() {
        let a = heis();
        let (g, h) = (vec![0.7, 0.2, -0.3], vec![-0.4, 1.1, 0.5]);
        let m = a.boundary_check(&a.beta(&g, &h), &beta_boundary(&a, &g, &h));
        assert!(m.closed && m.residual < 1e-10, "{m:?}");
        // h = e: the h-edge is constant and the two g-edges cancel
        assert!(a.closedness(&a.beta(&g, &a.identity())).closed);
    }

    #[test]
    fn f_tilde_is_half_omega_on_the_plane() {
        let a = plane();
        let (g, h) = (vec![0.7, 0.2], vec![-0.4, 1.1]);
        let v = f_tilde(&a, &g, &h)[0];
        assert_abs_diff_eq!(v, 0.5 * (g[0] * h[1] - g[1] * h[0]), epsilon = 1e-8);
        assert_abs_diff_eq!(f_tilde(&a, &g, &a.identity())[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f_tilde(&a, &a.identity(), &h)[0], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn alpha_ij_boundary_on_both_models() {
        for a in [plane(), heis()] {
            let n = a.model.dim();
            let v = |x: [f64; 3]| x[..n].to_vec();
            let (i, j) = (v([0.5, -0.3, 0.2]), v([0.1, 0.4, -0.6]));
            let g = a.mul(&i, &v([0.05, -0.02, 0.03]));
            let h = a.mul(&j, &v([-0.04, 0.01, 0.02]));
            let m = a.boundary_check(&alpha_ij(&a, &i, &j, &g, &h), &alpha_ij_boundary(&a, &i, &j, &g, &h));
            assert!(m.closed && m.residual < a.eps_edge, "{} {m:?}", a.model.name());
        }
    }

    #[test]
    fn alpha_ee_is_beta() {
        let a = heis();
        let e = a.identity();
        let (g, h) = (vec![0.3, 0.1, -0.2], vec![-0.2, 0.4, 0.1]);
        assert_abs_diff_eq!(f_ij(&a, &e, &e, &g, &h)[0], f_tilde(&a, &g, &h)[0], epsilon = 1e-10);
    }

    #[test]
    fn squared_paths_keep_boundaries() {
        let a = heis().with_paths(PathChoice::Squared);
        let (g, h) = (vec![0.7, 0.2, -0.3], vec![-0.4, 1.1, 0.5]);
        assert!(a.boundary_check(&a.beta(&g, &h), &beta_boundary(&a, &g, &h)).closed);
        let lin = heis();
        let d = a.path_homotopy(&g);
        let expected = lin.path(&lin.identity(), &g, &lin.identity()).plus(-1, &a.path(&a.identity(), &g, &a.identity()));
        assert!(a.boundary_check(&d, &expected).closed);
    }
}
