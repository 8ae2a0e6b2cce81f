//! Cochains of the triple complex `C^{p,q,r}` on a finite covered simplicial set, the three
//! differentials, the total differential and the degree-3 cocycle and coboundary equations.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coeff::{AbelianGroup, CoefficientComplex};
use crate::report::Report;
use crate::space::FiniteCoveredSpace;

#[derive(Debug, Error, PartialEq)]
pub enum CochainError {
    #[error("level {p} exceeds the tabulated maximum {max}")]
    LevelOutOfRange { p: usize, max: usize },
    #[error("component ({p},{q},{r}) does not have total degree {degree}")]
    Degree { p: usize, q: usize, r: usize, degree: usize },
    #[error("coefficient push needs r = 0, got r = {0}")]
    NotInA(usize),
    #[error("cochain of shape ({0},{1},{2}) does not fit the space")]
    Shape(usize, usize, usize),
}

/// A dense cochain in `C^{p,q,r}`: one coordinate vector per point of level `p` and
/// `(q+1)`-tuple of indices. Entries off the intersections are ignored and kept at zero.
#[derive(Clone, Debug, PartialEq)]
pub struct TriCochain {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub dim: usize,
    n_indices: usize,
    stride: usize,
    pub values: Vec<f64>,
}

impl TriCochain {
    pub fn zeros(space: &FiniteCoveredSpace, p: usize, q: usize, r: usize, dim: usize) -> Result<Self, CochainError> {
        if p > space.max_level() {
            return Err(CochainError::LevelOutOfRange { p, max: space.max_level() });
        }
        let l = space.level(p);
        let stride = l.n_indices.pow(q as u32 + 1);
        Ok(Self { p, q, r, dim, n_indices: l.n_indices, stride, values: vec![0.0; l.n_points * stride * dim] })
    }

    /// The zero cochain of the right coordinate dimension for `(p,q,r)`.
    pub fn zeros_in(space: &FiniteCoveredSpace, cx: &CoefficientComplex, p: usize, q: usize, r: usize) -> Result<Self, CochainError> {
        Self::zeros(space, p, q, r, cx.group(r).dim())
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.p, self.q, self.r)
    }

    fn offset(&self, x: usize, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.q + 1);
        let lex = tuple.iter().fold(0, |acc, &i| acc * self.n_indices + i);
        (x * self.stride + lex) * self.dim
    }

    pub fn get(&self, x: usize, tuple: &[usize]) -> &[f64] {
        let o = self.offset(x, tuple);
        &self.values[o..o + self.dim]
    }

    pub fn get_mut(&mut self, x: usize, tuple: &[usize]) -> &mut [f64] {
        let o = self.offset(x, tuple);
        &mut self.values[o..o + self.dim]
    }

    pub fn set(&mut self, x: usize, tuple: &[usize], v: &[f64]) {
        self.get_mut(x, tuple).copy_from_slice(v);
    }

    /// Adds `c · other` coordinatewise.
    pub fn add_scaled(&mut self, other: &TriCochain, c: f64) {
        assert_eq!(self.values.len(), other.values.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += c * b;
        }
    }

    pub fn scaled(&self, c: f64) -> TriCochain {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn reduce(&mut self, g: &AbelianGroup) {
        for chunk in self.values.chunks_mut(self.dim.max(1)) {
            g.reduce(chunk);
        }
    }

    /// Sets every value to `f(x, tuple)` on the intersections.
    pub fn fill(&mut self, space: &FiniteCoveredSpace, mut f: impl FnMut(usize, &[usize]) -> Vec<f64>) {
        let (p, q) = (self.p, self.q);
        space.for_each_tuple(p, q, |x, t| {
            let v = f(x, t);
            self.set(x, t, &v);
        });
    }

    /// Largest coordinate norm over the intersections.
    pub fn max_norm(&self, space: &FiniteCoveredSpace, g: &AbelianGroup) -> f64 {
        let mut m: f64 = 0.0;
        space.for_each_tuple(self.p, self.q, |x, t| m = m.max(g.norm(self.get(x, t))));
        m
    }

    pub fn is_zero(&self, space: &FiniteCoveredSpace, g: &AbelianGroup) -> bool {
        let mut ok = true;
        space.for_each_tuple(self.p, self.q, |x, t| ok &= g.is_zero(self.get(x, t)));
        ok
    }
}

fn sign(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `(δ_gp f)(x, i) = Σ_k (-1)^{k+p} f(d_k x, d_k i)` at the target level `p`.
pub fn delta_gp(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &TriCochain) -> Result<TriCochain, CochainError> {
    let p = c.p + 1;
    let mut out = TriCochain::zeros(space, p, c.q, c.r, c.dim)?;
    let g = cx.group(c.r);
    let mut src = vec![0usize; c.q + 1];
    space.for_each_tuple(p, c.q, |x, t| {
        let mut acc = vec![0.0; c.dim];
        for k in 0..=p {
            let y = space.face(p, k, x);
            for (s, &i) in src.iter_mut().zip(t) {
                *s = space.index_face(p, k, i);
            }
            let s = sign(k + p);
            for (a, v) in acc.iter_mut().zip(c.get(y, &src)) {
                *a += s * v;
            }
        }
        g.reduce(&mut acc);
        out.set(x, t, &acc);
    });
    Ok(out)
}

/// `(δ̌ f)(x, i_0..i_{q+1}) = Σ_l (-1)^l f(x, i_0..î_l..i_{q+1})`.
pub fn cech_delta(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &TriCochain) -> Result<TriCochain, CochainError> {
    let q = c.q + 1;
    let mut out = TriCochain::zeros(space, c.p, q, c.r, c.dim)?;
    let g = cx.group(c.r);
    let mut src = vec![0usize; q];
    space.for_each_tuple(c.p, q, |x, t| {
        let mut acc = vec![0.0; c.dim];
        for l in 0..=q {
            src.clear();
            src.extend(t.iter().enumerate().filter(|&(m, _)| m != l).map(|(_, &i)| i));
            let s = sign(l);
            for (a, v) in acc.iter_mut().zip(c.get(x, &src)) {
                *a += s * v;
            }
        }
        g.reduce(&mut acc);
        out.set(x, t, &acc);
    });
    Ok(out)
}

/// `μ_* f` for an `A`-valued cochain.
pub fn coeff_push(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &TriCochain) -> Result<TriCochain, CochainError> {
    if c.r != 0 {
        return Err(CochainError::NotInA(c.r));
    }
    let mut out = TriCochain::zeros(space, c.p, c.q, 1, cx.b.dim())?;
    space.for_each_tuple(c.p, c.q, |x, t| {
        let v = cx.apply_mu(c.get(x, t));
        out.set(x, t, &v);
    });
    Ok(out)
}

/// A homogeneous element of the total complex: components keyed by `(p,q,r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Family {
    pub degree: usize,
    pub comps: BTreeMap<(usize, usize, usize), TriCochain>,
}

impl Family {
    pub fn new(degree: usize) -> Self {
        Self { degree, comps: BTreeMap::new() }
    }

    /// All-zero family with every component of the given degree with `p >= min_level` that fits the space.
    pub fn zeros(space: &FiniteCoveredSpace, cx: &CoefficientComplex, degree: usize, min_level: usize) -> Self {
        let mut f = Self::new(degree);
        for (p, q, r) in components(degree, min_level, space.max_level()) {
            f.comps.insert((p, q, r), TriCochain::zeros_in(space, cx, p, q, r).unwrap());
        }
        f
    }

    pub fn insert(&mut self, c: TriCochain) -> Result<(), CochainError> {
        if c.p + c.q + c.r != self.degree {
            return Err(CochainError::Degree { p: c.p, q: c.q, r: c.r, degree: self.degree });
        }
        self.comps.insert(c.shape(), c);
        Ok(())
    }

    pub fn get(&self, p: usize, q: usize, r: usize) -> Option<&TriCochain> {
        self.comps.get(&(p, q, r))
    }

    fn accumulate(&mut self, c: TriCochain, s: f64) {
        match self.comps.get_mut(&c.shape()) {
            Some(e) => e.add_scaled(&c, s),
            None => {
                let shape = c.shape();
                self.comps.insert(shape, c.scaled(s));
            }
        }
    }

    pub fn is_zero(&self, space: &FiniteCoveredSpace, cx: &CoefficientComplex) -> bool {
        self.comps.values().all(|c| c.is_zero(space, cx.group(c.r)))
    }
}

/// The shapes `(p,q,r)` of total degree `degree` with `min_level <= p <= max_level`.
pub fn components(degree: usize, min_level: usize, max_level: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for p in min_level..=max_level.min(degree) {
        for r in 0..=1 {
            if p + r <= degree {
                out.push((p, degree - p - r, r));
            }
        }
    }
    out
}

/// `D₃ = δ_gp + (-1)^p δ̌ + (-1)^{p+q} μ_*` from degree `N` to `N+1`.
pub fn total_d3(space: &FiniteCoveredSpace, cx: &CoefficientComplex, f: &Family) -> Result<Family, CochainError> {
    let mut out = Family::new(f.degree + 1);
    for c in f.comps.values() {
        if c.p + c.q + c.r != f.degree {
            return Err(CochainError::Degree { p: c.p, q: c.q, r: c.r, degree: f.degree });
        }
        out.accumulate(delta_gp(space, cx, c)?, 1.0);
        out.accumulate(cech_delta(space, cx, c)?, sign(c.p));
        if c.r == 0 {
            out.accumulate(coeff_push(space, cx, c)?, sign(c.p + c.q));
        }
    }
    for c in out.comps.values_mut() {
        c.reduce(cx.group(c.r));
    }
    Ok(out)
}

/// The five components of a degree-3 cocycle in the truncated complex `p >= 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleSet {
    /// `(1,1,1)`
    pub gamma: TriCochain,
    /// `(1,2,0)`
    pub eta: TriCochain,
    /// `(2,0,1)`
    pub f: TriCochain,
    /// `(2,1,0)`
    pub phi: TriCochain,
    /// `(3,0,0)`
    pub theta: TriCochain,
}

pub const COCYCLE_SHAPES: [(usize, usize, usize); 5] = [(1, 1, 1), (1, 2, 0), (2, 0, 1), (2, 1, 0), (3, 0, 0)];

impl CocycleSet {
    pub fn zeros(space: &FiniteCoveredSpace, cx: &CoefficientComplex) -> Result<Self, CochainError> {
        let z = |(p, q, r): (usize, usize, usize)| TriCochain::zeros_in(space, cx, p, q, r);
        Ok(Self {
            gamma: z((1, 1, 1))?,
            eta: z((1, 2, 0))?,
            f: z((2, 0, 1))?,
            phi: z((2, 1, 0))?,
            theta: z((3, 0, 0))?,
        })
    }

    pub fn components(&self) -> [&TriCochain; 5] {
        [&self.gamma, &self.eta, &self.f, &self.phi, &self.theta]
    }

    pub fn components_mut(&mut self) -> [&mut TriCochain; 5] {
        [&mut self.gamma, &mut self.eta, &mut self.f, &mut self.phi, &mut self.theta]
    }

    pub fn to_family(&self) -> Family {
        let mut f = Family::new(3);
        for c in self.components() {
            f.comps.insert(c.shape(), c.clone());
        }
        f
    }

    /// Takes the five truncated components; other components must be absent or zero.
    pub fn from_family(space: &FiniteCoveredSpace, cx: &CoefficientComplex, f: &Family) -> Result<Self, CochainError> {
        let mut out = Self::zeros(space, cx)?;
        for (shape, c) in &f.comps {
            match out.components_mut().into_iter().find(|d| d.shape() == *shape) {
                Some(d) => *d = c.clone(),
                None if c.is_zero(space, cx.group(c.r)) => {}
                None => return Err(CochainError::Shape(shape.0, shape.1, shape.2)),
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CocycleSet, s: f64, cx: &CoefficientComplex) -> CocycleSet {
        let mut out = self.clone();
        for (a, b) in out.components_mut().into_iter().zip(other.components()) {
            a.add_scaled(b, s);
            a.reduce(cx.group(a.r));
        }
        out
    }
}

/// Degree-2 cochains `ξ (1,0,1)`, `ρ (1,1,0)`, `σ (2,0,0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainSet2 {
    pub xi: TriCochain,
    pub rho: TriCochain,
    pub sigma: TriCochain,
}

impl CochainSet2 {
    pub fn zeros(space: &FiniteCoveredSpace, cx: &CoefficientComplex) -> Result<Self, CochainError> {
        Ok(Self {
            xi: TriCochain::zeros_in(space, cx, 1, 0, 1)?,
            rho: TriCochain::zeros_in(space, cx, 1, 1, 0)?,
            sigma: TriCochain::zeros_in(space, cx, 2, 0, 0)?,
        })
    }

    pub fn components(&self) -> [&TriCochain; 3] {
        [&self.xi, &self.rho, &self.sigma]
    }

    pub fn components_mut(&mut self) -> [&mut TriCochain; 3] {
        [&mut self.xi, &mut self.rho, &mut self.sigma]
    }

    pub fn to_family(&self) -> Family {
        let mut f = Family::new(2);
        for c in self.components() {
            f.comps.insert(c.shape(), c.clone());
        }
        f
    }

    pub fn negated(&self, cx: &CoefficientComplex) -> CochainSet2 {
        let mut out = self.clone();
        for c in out.components_mut() {
            c.values.iter_mut().for_each(|v| *v = -*v);
            c.reduce(cx.group(c.r));
        }
        out
    }
}

/// Degree-4 equations: the components of `D₃φ`, in report order.
pub const COCYCLE_EQUATIONS: [((usize, usize, usize), &str); 7] = [
    ((1, 3, 0), "(1,3,0) -δ̌η = 0"),
    ((2, 2, 0), "(2,2,0) δη + δ̌Φ = 0"),
    ((3, 1, 0), "(3,1,0) δΦ - δ̌Θ = 0"),
    ((4, 0, 0), "(4,0,0) δΘ = 0"),
    ((1, 2, 1), "(1,2,1) -δ̌γ - μη = 0"),
    ((2, 1, 1), "(2,1,1) δγ + δ̌F - μΦ = 0"),
    ((3, 0, 1), "(3,0,1) δF - μΘ = 0"),
];

/// Degree-3 equations `φ - φ' = D₃ψ`, in report order.
pub const COBOUNDARY_EQUATIONS: [((usize, usize, usize), &str); 5] = [
    ((1, 1, 1), "(1,1,1) γ - γ' = -δ̌ξ + μρ"),
    ((1, 2, 0), "(1,2,0) η - η' = -δ̌ρ"),
    ((2, 0, 1), "(2,0,1) F - F' = δξ + μσ"),
    ((2, 1, 0), "(2,1,0) Φ - Φ' = δρ + δ̌σ"),
    ((3, 0, 0), "(3,0,0) Θ - Θ' = δσ"),
];

fn record_family(
    report: &mut Report,
    space: &FiniteCoveredSpace,
    cx: &CoefficientComplex,
    fam: &Family,
    equations: &[((usize, usize, usize), &str)],
) {
    for &((p, q, r), name) in equations {
        let g = cx.group(r);
        report.entry(name);
        match fam.get(p, q, r) {
            Some(c) => space.for_each_tuple(p, q, |x, t| {
                let v = c.get(x, t);
                report.record(name, g.is_zero(v), g.norm(v), || space.describe(p, x, t));
            }),
            None => report.warn(format!("{name}: not evaluated")),
        }
    }
}

/// Evaluates the seven degree-4 cocycle equations at every point and index tuple.
pub fn check_cocycle3(space: &FiniteCoveredSpace, cx: &CoefficientComplex, phi: &CocycleSet) -> Result<Report, CochainError> {
    let d = total_d3(space, cx, &phi.to_family())?;
    let mut report = Report::new("cocycle equations");
    record_family(&mut report, space, cx, &d, &COCYCLE_EQUATIONS);
    Ok(report)
}

/// Evaluates the five equations `φ - φ' = D₃ψ`.
pub fn check_coboundary(
    space: &FiniteCoveredSpace,
    cx: &CoefficientComplex,
    phi: &CocycleSet,
    phi2: &CocycleSet,
    psi: &CochainSet2,
) -> Result<Report, CochainError> {
    let d = total_d3(space, cx, &psi.to_family())?;
    let mut diff = Family::new(3);
    for (a, b) in phi.components().into_iter().zip(phi2.components()) {
        let mut c = a.clone();
        c.add_scaled(b, -1.0);
        if let Some(dc) = d.get(c.p, c.q, c.r) {
            c.add_scaled(dc, -1.0);
        }
        c.reduce(cx.group(c.r));
        diff.insert(c)?;
    }
    let mut report = Report::new("coboundary equations");
    record_family(&mut report, space, cx, &diff, &COBOUNDARY_EQUATIONS);
    Ok(report)
}

/// Whether `(x, i)` lies in the image of a degeneracy: either jointly simplicially degenerate
/// or with two equal adjacent Čech indices.
pub fn is_degenerate_coordinate(space: &FiniteCoveredSpace, p: usize, x: usize, tuple: &[usize]) -> bool {
    if tuple.windows(2).any(|w| w[0] == w[1]) {
        return true;
    }
    (0..p).any(|k| {
        let sd = |y: usize| space.degeneracy(p - 1, k, space.face(p, k, y));
        let sdi = |i: usize| space.index_degeneracy(p - 1, k, space.index_face(p, k, i));
        sd(x) == x && tuple.iter().all(|&i| sdi(i) == i)
    })
}

/// Whether the cochain vanishes on all degenerate coordinates.
pub fn is_normalized(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &TriCochain) -> bool {
    let g = cx.group(c.r);
    let mut ok = true;
    space.for_each_tuple(c.p, c.q, |x, t| {
        if is_degenerate_coordinate(space, c.p, x, t) {
            ok &= g.is_zero(c.get(x, t));
        }
    });
    ok
}

/// Projects onto the normalized subcomplex: `(1-e_0)...(1-e_{p-1})` with
/// `e_k f(x,i) = f(s_k d_k x, s_k d_k i)`, then the Čech analogue `(1-E_0)...(1-E_{q-1})` with
/// `E_l` repeating index `l+1` in place of index `l`.
pub fn normalize(space: &FiniteCoveredSpace, cx: &CoefficientComplex, c: &TriCochain) -> TriCochain {
    let g = cx.group(c.r);
    let (p, q) = (c.p, c.q);
    let mut cur = c.clone();
    if p > 0 {
        for k in (0..p).rev() {
            let prev = cur.clone();
            let mut src = vec![0usize; q + 1];
            space.for_each_tuple(p, q, |x, t| {
                let y = space.degeneracy(p - 1, k, space.face(p, k, x));
                for (s, &i) in src.iter_mut().zip(t) {
                    *s = space.index_degeneracy(p - 1, k, space.index_face(p, k, i));
                }
                let mut v: Vec<f64> = prev.get(x, t).iter().zip(prev.get(y, &src)).map(|(a, b)| a - b).collect();
                g.reduce(&mut v);
                cur.set(x, t, &v);
            });
        }
    }
    for l in (0..q).rev() {
        let prev = cur.clone();
        let mut src = vec![0usize; q + 1];
        space.for_each_tuple(p, q, |x, t| {
            src.copy_from_slice(t);
            src[l] = t[l + 1];
            let mut v: Vec<f64> = prev.get(x, t).iter().zip(prev.get(x, &src)).map(|(a, b)| a - b).collect();
            g.reduce(&mut v);
            cur.set(x, t, &v);
        });
    }
    cur
}
