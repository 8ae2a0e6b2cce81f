//! Lie group models in a global chart, and Lie algebra 2-cocycles.

use crate::group::GroupModel;
use crate::report::Report;

use super::GeometryError;

/// A simply connected Lie group given in a global chart `φ` with `φ(e) = 0`.
///
/// Coordinates are those of the Lie algebra, so `α̃_g(t) = φ⁻¹(t·g̃)` is the one-parameter
/// subgroup through `g` for both models.
#[derive(Clone, Debug, PartialEq)]
pub enum LieModel {
    /// `ℝⁿ` with `φ = id`.
    Abelian(usize),
    /// Upper triangular unipotent 3×3 matrices in the exponential chart.
    Heisenberg3,
}

impl LieModel {
    /// Parses a registry name: `abelian:<n>` or `heisenberg3`.
    pub fn parse(name: &str) -> Result<Self, GeometryError> {
        let name = name.trim();
        if name == "heisenberg3" {
            return Ok(LieModel::Heisenberg3);
        }
        if let Some(n) = name.strip_prefix("abelian:") {
            return n
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .map(LieModel::Abelian)
                .ok_or_else(|| GeometryError::UnknownModel(name.to_string()));
        }
        Err(GeometryError::UnknownModel(name.to_string()))
    }

    pub fn name(&self) -> String {
        match self {
            LieModel::Abelian(n) => format!("abelian:{n}"),
            LieModel::Heisenberg3 => "heisenberg3".into(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            LieModel::Abelian(n) => *n,
            LieModel::Heisenberg3 => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, LieModel::Abelian(_))
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<(), GeometryError> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(GeometryError::Domain(format!("{x:?} is not a point of {}", self.name())))
        }
    }

    /// Lie bracket in chart coordinates.
    pub fn bracket(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        match self {
            LieModel::Abelian(n) => vec![0.0; *n],
            LieModel::Heisenberg3 => vec![0.0, 0.0, x[0] * y[1] - x[1] * y[0]],
        }
    }

    /// `x ⋆ y = φ(φ⁻¹(x)·φ⁻¹(y))`. For the Heisenberg group this is the exact
    /// Baker–Campbell–Hausdorff product `x + y + ½[x,y]`.
    pub fn star(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        match self {
            LieModel::Abelian(_) => x.iter().zip(y).map(|(a, b)| a + b).collect(),
            LieModel::Heisenberg3 => {
                vec![x[0] + y[0], x[1] + y[1], x[2] + y[2] + 0.5 * (x[0] * y[1] - x[1] * y[0])]
            }
        }
    }

    pub fn chart_inv(&self, x: &[f64]) -> Vec<f64> {
        x.iter().map(|a| -a).collect()
    }

    /// `j⁻¹·x·j`.
    pub fn conj(&self, j: &[f64], x: &[f64]) -> Vec<f64> {
        self.star(&self.star(&self.chart_inv(j), x), j)
    }

    /// Sample checks of `φ(e) = 0`, the unit law and associativity.
    pub fn check(&self, samples: &[Vec<f64>]) -> Report {
        let mut r = Report::new(format!("chart {}", self.name()));
        let e = vec![0.0; self.dim()];
        let dist = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        for x in samples {
            let d = dist(&self.star(x, &e), x).max(dist(&self.star(&e, x), x));
            r.record("unit", d < 1e-12, d, || format!("x={x:?}"));
            let d = dist(&self.star(x, &self.chart_inv(x)), &e);
            r.record("inverse", d < 1e-12, d, || format!("x={x:?}"));
        }
        for x in samples {
            for y in samples.iter().take(4) {
                for z in samples.iter().take(4) {
                    let d = dist(&self.star(&self.star(x, y), z), &self.star(x, &self.star(y, z)));
                    r.record("associativity", d < 1e-10, d, || format!("{x:?} {y:?} {z:?}"));
                }
            }
        }
        r
    }
}

impl GroupModel for LieModel {
    type Elem = Vec<f64>;

    fn identity(&self) -> Vec<f64> {
        vec![0.0; self.dim()]
    }

    fn mul(&self, a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
        self.star(a, b)
    }

    fn inv(&self, a: &Vec<f64>) -> Vec<f64> {
        self.chart_inv(a)
    }

    fn approx_eq(&self, a: &Vec<f64>, b: &Vec<f64>) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9)
    }
}

/// A continuous bilinear antisymmetric map `ω: 𝔤 × 𝔤 → 𝔷 = ℝᵈ`, stored as
/// `coeffs[c][a][b] = ω(e_a, e_b)_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraCocycle {
    pub dim: usize,
    pub coeffs: Vec<Vec<Vec<f64>>>,
}

impl LieAlgebraCocycle {
    pub fn new(dim: usize, coeffs: Vec<Vec<Vec<f64>>>) -> Result<Self, GeometryError> {
        for (c, m) in coeffs.iter().enumerate() {
            if m.len() != dim || m.iter().any(|row| row.len() != dim) {
                return Err(GeometryError::Cocycle(format!("component {c} is not a {dim}×{dim} array")));
            }
            for a in 0..dim {
                for b in 0..dim {
                    if (m[a][b] + m[b][a]).abs() > 1e-12 {
                        return Err(GeometryError::Cocycle(format!("component {c} is not antisymmetric at ({a},{b})")));
                    }
                }
            }
        }
        Ok(Self { dim, coeffs })
    }

    /// `x₀y₁ − x₁y₀` on a `dim`-dimensional algebra, valued in `ℝ`.
    pub fn area_form(dim: usize) -> Self {
        let mut m = vec![vec![0.0; dim]; dim];
        m[0][1] = 1.0;
        m[1][0] = -1.0;
        Self { dim, coeffs: vec![m] }
    }

    pub fn zero(dim: usize, out: usize) -> Self {
        Self { dim, coeffs: vec![vec![vec![0.0; dim]; dim]; out] }
    }

    /// Dimension of `𝔷`.
    pub fn out_dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|m| {
                let mut s = 0.0;
                for (a, row) in m.iter().enumerate() {
                    for (b, c) in row.iter().enumerate() {
                        if *c != 0.0 {
                            s += c * x[a] * y[b];
                        }
                    }
                }
                s
            })
            .collect()
    }

    /// `ω + b∘[·,·]`, cohomologous to `ω` for any linear `b: 𝔤 → 𝔷` given as rows `b[c][a]`.
    pub fn plus_bracket_form(&self, model: &LieModel, b: &[Vec<f64>]) -> Self {
        let n = self.dim;
        let basis = |a: usize| {
            let mut v = vec![0.0; n];
            v[a] = 1.0;
            v
        };
        let mut out = self.clone();
        for a in 0..n {
            for bb in 0..n {
                let br = model.bracket(&basis(a), &basis(bb));
                for (c, row) in b.iter().enumerate() {
                    out.coeffs[c][a][bb] += row.iter().zip(&br).map(|(p, q)| p * q).sum::<f64>();
                }
            }
        }
        out
    }

    /// Checks the cocycle identity `ω([x,y],z) + ω([y,z],x) + ω([z,x],y) = 0` on samples.
    pub fn check(&self, model: &LieModel, samples: &[Vec<f64>]) -> Report {
        let mut r = Report::new("Lie algebra cocycle");
        if model.dim() != self.dim {
            r.record("dimension", false, f64::INFINITY, || format!("ω on {} but model has {}", self.dim, model.dim()));
            return r;
        }
        for x in samples {
            for y in samples.iter().take(4) {
                let s: Vec<f64> = self.eval(x, y).iter().zip(self.eval(y, x)).map(|(a, b)| a + b).collect();
                let d = s.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                r.record("antisymmetry", d < 1e-12, d, || format!("x={x:?} y={y:?}"));
                for z in samples.iter().take(4) {
                    let t1 = self.eval(&model.bracket(x, y), z);
                    let t2 = self.eval(&model.bracket(y, z), x);
                    let t3 = self.eval(&model.bracket(z, x), y);
                    let d = (0..t1.len()).map(|c| (t1[c] + t2[c] + t3[c]).abs()).fold(0.0, f64::max);
                    r.record("cocycle identity", d < 1e-10, d, || format!("x={x:?} y={y:?} z={z:?}"));
                }
            }
        }
        r
    }
}
