//! Smooth singular chains in chart coordinates, their boundaries and integrals of
//! left-invariant forms.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;

use super::model::{LieAlgebraCocycle, LieModel};
use super::quadrature::{q2, QuadratureScheme};

/// Step of the central differences used for tangent vectors.
pub const FD_STEP: f64 = 1e-6;

pub type Evaluator = Arc<dyn Fn(f64, f64) -> Vec<f64> + Send + Sync>;

static NEXT_ROOT: AtomicU64 = AtomicU64::new(1);

/// A smooth map from a region of the `(s,t)` plane into the group.
pub struct Root {
    pub id: u64,
    pub label: String,
    pub eval: Evaluator,
}

/// An affine simplex in the domain of a root map. Vertices are listed in order; a 2-simplex
/// is parametrized by `A(s,t) = P₀ + t(P₁−P₀) + s(P₂−P₀)` and a 1-simplex by `P₀ + u(P₁−P₀)`.
#[derive(Clone)]
pub struct Simplex {
    pub root: Arc<Root>,
    pub verts: Vec<[f64; 2]>,
}

/// Standard vertices of `Δ²` in `(s,t)` coordinates.
pub const STANDARD_TRIANGLE: [[f64; 2]; 3] = [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0]];
/// Main-diagonal triangulation of the unit square.
pub const SQUARE_TRIANGLES: [[[f64; 2]; 3]; 2] =
    [[[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]], [[0.0, 0.0], [1.0, 1.0], [1.0, 0.0]]];

fn root(label: String, eval: Evaluator) -> Arc<Root> {
    Arc::new(Root { id: NEXT_ROOT.fetch_add(1, Ordering::Relaxed), label, eval })
}

impl Simplex {
    pub fn new(label: impl Into<String>, eval: Evaluator, verts: Vec<[f64; 2]>) -> Self {
        Self { root: root(label.into(), eval), verts }
    }

    /// The standard 2-simplex mapped by `f(s,t)`.
    pub fn triangle(label: impl Into<String>, f: impl Fn(f64, f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        Self::new(label, Arc::new(f), STANDARD_TRIANGLE.to_vec())
    }

    /// The interval mapped by `f(u)`.
    pub fn path(label: impl Into<String>, f: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        Self::new(label, Arc::new(move |_, t| f(t)), vec![[0.0, 0.0], [0.0, 1.0]])
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.root.label
    }

    fn domain_point(&self, s: f64, t: f64) -> (f64, f64) {
        let p = &self.verts;
        match p.len() {
            1 => (p[0][0], p[0][1]),
            2 => (p[0][0] + t * (p[1][0] - p[0][0]), p[0][1] + t * (p[1][1] - p[0][1])),
            _ => (
                p[0][0] + t * (p[1][0] - p[0][0]) + s * (p[2][0] - p[0][0]),
                p[0][1] + t * (p[1][1] - p[0][1]) + s * (p[2][1] - p[0][1]),
            ),
        }
    }

    /// The point at `(s,t)` of a 2-simplex.
    pub fn at2(&self, s: f64, t: f64) -> Vec<f64> {
        let (a, b) = self.domain_point(s, t);
        (self.root.eval)(a, b)
    }

    /// The point at `u` of a 1-simplex.
    pub fn at1(&self, u: f64) -> Vec<f64> {
        let (a, b) = self.domain_point(0.0, u);
        (self.root.eval)(a, b)
    }

    /// The `k`-th face, dropping vertex `k`.
    pub fn face(&self, k: usize) -> Simplex {
        let mut verts = self.verts.clone();
        verts.remove(k);
        Simplex { root: self.root.clone(), verts }
    }

    pub fn boundary(&self) -> SmoothChain {
        let terms = (0..self.verts.len()).map(|k| (if k % 2 == 0 { 1 } else { -1 }, self.face(k))).collect();
        SmoothChain { terms }
    }

    /// Post-composes the root map with `f`.
    pub fn map(&self, label: &str, f: Arc<dyn Fn(Vec<f64>) -> Vec<f64> + Send + Sync>) -> Simplex {
        let inner = self.root.eval.clone();
        Simplex {
            root: root(format!("{label}{}", self.root.label), Arc::new(move |s, t| f(inner(s, t)))),
            verts: self.verts.clone(),
        }
    }

    fn key(&self) -> (u64, Vec<[u64; 2]>) {
        (self.root.id, self.verts.iter().map(|p| [p[0].to_bits(), p[1].to_bits()]).collect())
    }
}

/// A finite integer combination of simplices.
#[derive(Clone, Default)]
pub struct SmoothChain {
    pub terms: Vec<(i64, Simplex)>,
}

impl SmoothChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: Simplex) -> Self {
        Self { terms: vec![(1, s)] }
    }

    /// A map of the unit square, triangulated along the main diagonal. Its boundary runs
    /// `top + right − bottom + left` with top and bottom in increasing `s`, left in increasing
    /// `t` and right in decreasing `t`.
    pub fn square(label: impl Into<String>, f: impl Fn(f64, f64) -> Vec<f64> + Send + Sync + 'static) -> Self {
        let r = root(label.into(), Arc::new(f));
        let terms = SQUARE_TRIANGLES.iter().map(|v| (1, Simplex { root: r.clone(), verts: v.to_vec() })).collect();
        Self { terms }
    }

    /// `self + c·other`.
    pub fn plus(mut self, c: i64, other: &SmoothChain) -> Self {
        if c != 0 {
            self.terms.extend(other.terms.iter().map(|(k, s)| (c * k, s.clone())));
        }
        self
    }

    pub fn scaled(&self, c: i64) -> Self {
        SmoothChain::zero().plus(c, self)
    }

    pub fn boundary(&self) -> SmoothChain {
        self.terms.iter().fold(SmoothChain::zero(), |acc, (c, s)| acc.plus(*c, &s.boundary()))
    }

    pub fn map(&self, label: &str, f: Arc<dyn Fn(Vec<f64>) -> Vec<f64> + Send + Sync>) -> SmoothChain {
        Self { terms: self.terms.iter().map(|(c, s)| (*c, s.map(label, f.clone()))).collect() }
    }

    /// `x.σ`.
    pub fn left_translate(&self, model: &LieModel, x: &[f64]) -> SmoothChain {
        let (m, x) = (model.clone(), x.to_vec());
        self.map(&format!("{x:?}."), Arc::new(move |p| m.star(&x, &p)))
    }

    /// `σ.y`.
    pub fn right_translate(&self, model: &LieModel, y: &[f64]) -> SmoothChain {
        let (m, y) = (model.clone(), y.to_vec());
        self.map("", Arc::new(move |p| m.star(&p, &y)))
    }

    /// Whether terms cancel as formal simplices of their root maps.
    pub fn is_formally_zero(&self) -> bool {
        let mut acc: BTreeMap<(u64, Vec<[u64; 2]>), i64> = BTreeMap::new();
        for (c, s) in &self.terms {
            *acc.entry(s.key()).or_default() += c;
        }
        acc.values().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `∫_σ ω^l` for a 2-simplex: the integrand at `x ∈ [0,1]²` is `ω(L∂_{x₂}, L∂_{x₁})` with
/// left-trivialized tangents of `σ∘q₂`.
pub fn integrate_simplex(model: &LieModel, omega: &LieAlgebraCocycle, q: &QuadratureScheme, s: &Simplex) -> Vec<f64> {
    if s.dim() != 2 {
        return vec![0.0; omega.out_dim()];
    }
    let h = FD_STEP;
    let c = |x1: f64, x2: f64| {
        let (a, b) = q2(x1, x2);
        s.at2(a, b)
    };
    q.integrate_square(omega.out_dim(), |x1, x2| {
        let pinv = model.chart_inv(&c(x1, x2));
        let tangent = |d1: f64, d2: f64| {
            let fwd = model.star(&pinv, &c(x1 + d1, x2 + d2));
            let bwd = model.star(&pinv, &c(x1 - d1, x2 - d2));
            fwd.iter().zip(&bwd).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>()
        };
        omega.eval(&tangent(0.0, h), &tangent(h, 0.0))
    })
}

/// `∫_c ω^l`, pieces integrated in parallel and summed in term order.
pub fn integrate_chain(model: &LieModel, omega: &LieAlgebraCocycle, q: &QuadratureScheme, c: &SmoothChain) -> Vec<f64> {
    let parts: Vec<Vec<f64>> = c.terms.par_iter().map(|(_, s)| integrate_simplex(model, omega, q, s)).collect();
    let mut acc = vec![0.0; omega.out_dim()];
    for ((k, _), v) in c.terms.iter().zip(parts) {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += *k as f64 * x;
        }
    }
    acc
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeMatch {
    pub closed: bool,
    /// Largest sampled distance between edges that were identified.
    pub residual: f64,
    /// Labels of edge classes with nonzero total coefficient.
    pub leftover: Vec<String>,
}

/// Decides whether a formal 1-chain vanishes after identifying edges that agree at `samples`
/// equally spaced points up to `eps`; reversed edges count with opposite sign and constant
/// edges are dropped.
pub fn match_edges(edges: &SmoothChain, samples: usize, eps: f64) -> EdgeMatch {
    let m = samples.max(2);
    let pts = |s: &Simplex| (0..m).map(|k| s.at1(k as f64 / (m - 1) as f64)).collect::<Vec<_>>();
    let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    let mut classes: Vec<(Vec<Vec<f64>>, i64, String)> = Vec::new();
    let mut residual = 0.0f64;
    for (c, s) in &edges.terms {
        if *c == 0 {
            continue;
        }
        let p = pts(s);
        if p.iter().all(|x| dist(x, &p[0]) <= eps) {
            continue;
        }
        let mut placed = false;
        for (rep, total, _) in classes.iter_mut() {
            let fwd = (0..m).map(|k| dist(&p[k], &rep[k])).fold(0.0, f64::max);
            if fwd <= eps {
                *total += c;
                residual = residual.max(fwd);
                placed = true;
                break;
            }
            let rev = (0..m).map(|k| dist(&p[k], &rep[m - 1 - k])).fold(0.0, f64::max);
            if rev <= eps {
                *total -= c;
                residual = residual.max(rev);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((p, *c, s.label().to_string()));
        }
    }
    let leftover: Vec<String> = classes.iter().filter(|c| c.1 != 0).map(|c| format!("{}×{}", c.1, c.2)).collect();
    EdgeMatch { closed: leftover.is_empty(), residual, leftover }
}

/// Compares `∂c` with `expected` by edge matching.
pub fn boundary_matches(c: &SmoothChain, expected: &SmoothChain, samples: usize, eps: f64) -> EdgeMatch {
    match_edges(&c.boundary().plus(-1, expected), samples, eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn affine(a: [f64; 2], b: [f64; 2]) -> impl Fn(f64, f64) -> Vec<f64> {
        move |s, t| vec![t * a[0] + s * b[0], t * a[1] + s * b[1]]
    }

    #[test]
    fn boundary_of_boundary_is_formally_zero() {
        let c = SmoothChain::square("sq", affine([1.0, 0.0], [0.0, 1.0]))
            .plus(3, &SmoothChain::single(Simplex::triangle("t", affine([2.0, 1.0], [0.5, 1.0]))));
        assert!(!c.boundary().is_formally_zero());
        assert!(c.boundary().boundary().is_formally_zero());
    }

    #[test]
    fn unit_area_triangle() {
        // vertices 0, e₁, e₂ with the orientation convention gives ½
        let m = LieModel::Abelian(2);
        let w = LieAlgebraCocycle::area_form(2);
        let q = QuadratureScheme::default();
        let s = SmoothChain::single(Simplex::triangle("Δ", affine([1.0, 0.0], [0.0, 1.0])));
        assert_abs_diff_eq!(integrate_chain(&m, &w, &q, &s)[0], 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(integrate_chain(&m, &w, &q, &s.scaled(-1))[0], -0.5, epsilon = 1e-9);
        let constant = SmoothChain::single(Simplex::triangle("c", |_, _| vec![0.3, 0.4]));
        assert_eq!(integrate_chain(&m, &w, &q, &constant)[0], 0.0);
    }

    #[test]
    fn square_integral_and_boundary() {
        let m = LieModel::Abelian(2);
        let w = LieAlgebraCocycle::area_form(2);
        let q = QuadratureScheme::default();
        let sq = SmoothChain::square("sq", |s, t| vec![s, t]);
        // both triangles have the orientation of the standard simplex
        let tri = SmoothChain::single(Simplex::triangle("Δ", |s, t| vec![s, t]));
        let v_sq = integrate_chain(&m, &w, &q, &sq)[0];
        let v_tri = integrate_chain(&m, &w, &q, &tri)[0];
        assert_abs_diff_eq!(v_sq, 2.0 * v_tri, epsilon = 1e-9);
        let edge = |a: [f64; 2], b: [f64; 2]| {
            SmoothChain::single(Simplex::path("e", move |u| vec![a[0] + u * (b[0] - a[0]), a[1] + u * (b[1] - a[1])]))
        };
        let expected = edge([0.0, 1.0], [1.0, 1.0])
            .plus(1, &edge([1.0, 1.0], [1.0, 0.0]))
            .plus(-1, &edge([0.0, 0.0], [1.0, 0.0]))
            .plus(1, &edge([0.0, 0.0], [0.0, 1.0]));
        assert!(boundary_matches(&sq, &expected, 50, 1e-12).closed);
        assert!(!boundary_matches(&sq, &expected.scaled(-1), 50, 1e-12).closed);
    }

    #[test]
    fn translation_preserves_integrals() {
        let m = LieModel::Heisenberg3;
        let w = LieAlgebraCocycle::area_form(3);
        let q = QuadratureScheme::default();
        let s = SmoothChain::single(Simplex::triangle("Δ", |s, t| vec![t + 0.3 * s * s, s - 0.2 * t, s * t]));
        let v = integrate_chain(&m, &w, &q, &s)[0];
        let g = integrate_chain(&m, &w, &q, &s.left_translate(&m, &[0.7, -1.1, 0.4]))[0];
        assert_abs_diff_eq!(v, g, epsilon = 1e-8);
    }
}
