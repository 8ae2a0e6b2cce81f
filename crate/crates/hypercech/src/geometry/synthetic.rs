//! The synthetic chain model over a finite group: every basic piece carries an exact weight
//! in `ℤᵏ` and a formal boundary, and integrates to `per(weight)` plus the values of its
//! boundary edges. Closed chains integrate to `per(class)` exactly, so the period map can
//! have dense image, e.g. `(m,n) ↦ m + n√2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::chain::EdgeMatch;
use super::construct::{eta, f_ij, gamma, phi_chain, theta_chain, ChainAlgebra};
use super::GeometryError;
use crate::coeff::{AbelianGroup, CoefficientComplex};
use crate::cochain::{CocycleSet, CochainError};
use crate::covers::{equivariant_nerve_cover, EquivariantCover};
use crate::group::{FiniteGroup, GroupModel};
use crate::simplicial::Nerve;
use crate::space::{group_tuples, tuple_label, FiniteCoveredSpace};

/// Formal 2-chain: total weight and boundary as edges `(x, a, y) ↦ coefficient` standing for
/// `x.α̃_a.y`. A path is the chain with zero weight and a single edge.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SynChain {
    pub w: Vec<i64>,
    pub edges: BTreeMap<(usize, usize, usize), i64>,
}

#[derive(Clone, Debug)]
pub struct SynAlgebra {
    pub group: FiniteGroup,
    /// `per[row][col]` maps coordinate `col` of `ℤᵏ` to coordinate `row` of `𝔷`.
    pub per: Vec<Vec<f64>>,
    rank: usize,
    beta_w: Vec<Vec<i64>>,
    lambda_w: Vec<Vec<i64>>,
    mu_w: Vec<Vec<i64>>,
    edge_values: Vec<Vec<f64>>,
}

impl SynAlgebra {
    /// Weights of `β̃_{g,h}` at `[g·n + h]`, of `λ_{i,j}(g)` and `μ_{i,j}(g)` at
    /// `[(i·n + j)·n + g]`, and values of `x.α̃_a.y` at `[a·n + y]`.
    pub fn new(
        group: FiniteGroup,
        per: Vec<Vec<f64>>,
        beta_w: Vec<Vec<i64>>,
        lambda_w: Vec<Vec<i64>>,
        mu_w: Vec<Vec<i64>>,
        edge_values: Vec<Vec<f64>>,
    ) -> Result<Self, GeometryError> {
        let n = group.order();
        let rank = per.first().map_or(0, Vec::len);
        if per.is_empty() || per.iter().any(|r| r.len() != rank) {
            return Err(GeometryError::Synthetic("per must be a nonempty rectangular matrix".into()));
        }
        let d = per.len();
        let shape_ok = beta_w.len() == n * n
            && lambda_w.len() == n * n * n
            && mu_w.len() == n * n * n
            && edge_values.len() == n * n
            && beta_w.iter().chain(&lambda_w).chain(&mu_w).all(|w| w.len() == rank)
            && edge_values.iter().all(|v| v.len() == d);
        if !shape_ok {
            return Err(GeometryError::Synthetic("weight tables have the wrong shape".into()));
        }
        let e = group.identity();
        for g in 0..n {
            if beta_w[g * n + e].iter().chain(&beta_w[e * n + g]).any(|&x| x != 0) {
                return Err(GeometryError::Synthetic(format!("β̃ weight not normalized at {}", group.label(g))));
            }
            if edge_values[e * n + g].iter().any(|&x| x != 0.0) {
                return Err(GeometryError::Synthetic("the constant path must have value 0".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for g in 0..n {
                    let k = (i * n + j) * n + g;
                    let degenerate = j == e || g == i;
                    if degenerate && lambda_w[k].iter().chain(&mu_w[k]).any(|&x| x != 0) {
                        return Err(GeometryError::Synthetic("square weights not normalized".into()));
                    }
                }
            }
        }
        Ok(Self { group, per, rank, beta_w, lambda_w, mu_w, edge_values })
    }

    /// Normalized weights with entries in `-bound..=bound` and edge values in `[-1,1]`.
    pub fn random(group: FiniteGroup, per: Vec<Vec<f64>>, bound: i64, seed: u64) -> Result<Self, GeometryError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = group.order();
        let e = group.identity();
        let rank = per.first().map_or(0, Vec::len);
        let d = per.len();
        let mut draw = |zero: bool, rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..rank).map(|_| if zero { 0 } else { rng.gen_range(-bound..=bound) }).collect()
        };
        let beta_w = (0..n * n).map(|k| draw(k / n == e || k % n == e, &mut rng)).collect();
        let square = |rng: &mut ChaCha8Rng, draw: &mut dyn FnMut(bool, &mut ChaCha8Rng) -> Vec<i64>| {
            (0..n * n * n)
                .map(|k| {
                    let (i, j, g) = (k / (n * n), (k / n) % n, k % n);
                    draw(j == e || g == i, rng)
                })
                .collect::<Vec<_>>()
        };
        let lambda_w = square(&mut rng, &mut draw);
        let mu_w = square(&mut rng, &mut draw);
        let edge_values = (0..n * n)
            .map(|k| (0..d).map(|_| if k / n == e { 0.0 } else { rng.gen_range(-1.0..1.0) }).collect())
            .collect();
        Self::new(group, per, beta_w, lambda_w, mu_w, edge_values)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn apply_per(&self, w: &[i64]) -> Vec<f64> {
        self.per.iter().map(|row| row.iter().zip(w).map(|(p, x)| p * *x as f64).sum()).collect()
    }

    fn piece(&self, w: &[i64], edges: &[(i64, usize, usize, usize)]) -> SynChain {
        let mut c = SynChain { w: w.to_vec(), edges: BTreeMap::new() };
        let e = self.group.identity();
        for &(k, x, a, y) in edges {
            if a != e {
                *c.edges.entry((x, a, y)).or_default() += k;
            }
        }
        c.edges.retain(|_, v| *v != 0);
        c
    }

    fn idx3(&self, i: usize, j: usize, g: usize) -> usize {
        let n = self.group.order();
        (i * n + j) * n + g
    }

    /// The coefficient complex `ℤᵏ → 𝔷` with `μ = per`.
    pub fn complex(&self) -> CoefficientComplex {
        CoefficientComplex::new(AbelianGroup::integers(self.rank), AbelianGroup::real(self.per.len()), self.per.clone())
            .expect("integer source makes every real matrix admissible")
    }
}

impl ChainAlgebra for SynAlgebra {
    type Elem = usize;
    type Chain = SynChain;

    fn identity(&self) -> usize {
        self.group.identity()
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.group.mul(a, b)
    }

    fn inv(&self, a: &usize) -> usize {
        self.group.inv(a)
    }

    fn value_dim(&self) -> usize {
        self.per.len()
    }

    fn zero(&self) -> SynChain {
        SynChain { w: vec![0; self.rank], edges: BTreeMap::new() }
    }

    fn plus(&self, mut a: SynChain, c: i64, b: &SynChain) -> SynChain {
        for (x, y) in a.w.iter_mut().zip(&b.w) {
            *x += c * y;
        }
        for (k, v) in &b.edges {
            *a.edges.entry(*k).or_default() += c * v;
        }
        a.edges.retain(|_, v| *v != 0);
        a
    }

    fn translate(&self, x: &usize, c: &SynChain) -> SynChain {
        let edges = c.edges.iter().map(|(&(l, a, r), &v)| ((self.mul(x, &l), a, r), v)).collect();
        SynChain { w: c.w.clone(), edges }
    }

    fn path(&self, x: &usize, a: &usize, y: &usize) -> SynChain {
        self.piece(&vec![0; self.rank], &[(1, *x, *a, *y)])
    }

    fn beta(&self, g: &usize, h: &usize) -> SynChain {
        let (g, h, e) = (*g, *h, self.identity());
        let gh = self.mul(&g, &h);
        self.piece(&self.beta_w[g * self.group.order() + h], &[(1, g, h, e), (-1, e, gh, e), (1, e, g, e)])
    }

    fn lambda(&self, i: &usize, j: &usize, g: &usize) -> SynChain {
        let (i, j, g, e) = (*i, *j, *g, self.identity());
        let a = self.mul(&self.inv(&i), &g);
        self.piece(&self.lambda_w[self.idx3(i, j, g)], &[(1, i, a, e), (1, g, j, e), (-1, i, a, j), (-1, i, j, e)])
    }

    fn mu(&self, i: &usize, j: &usize, g: &usize) -> SynChain {
        let (i, j, g, e) = (*i, *j, *g, self.identity());
        let ij = self.mul(&i, &j);
        let a = self.mul(&self.inv(&i), &g);
        let b = self.mul(&self.inv(&ij), &self.mul(&g, &j));
        self.piece(&self.mu_w[self.idx3(i, j, g)], &[(1, i, a, j), (-1, ij, b, e)])
    }

    fn integrate(&self, c: &SynChain) -> Vec<f64> {
        let n = self.group.order();
        let mut v = self.apply_per(&c.w);
        for (&(_, a, y), &k) in &c.edges {
            for (acc, x) in v.iter_mut().zip(&self.edge_values[a * n + y]) {
                *acc += k as f64 * x;
            }
        }
        v
    }

    fn class(&self, c: &SynChain) -> Option<Vec<i64>> {
        Some(c.w.clone())
    }

    fn boundary_check(&self, c: &SynChain, expected: &SynChain) -> EdgeMatch {
        let mut diff = c.edges.clone();
        for (k, v) in &expected.edges {
            *diff.entry(*k).or_default() -= v;
        }
        let leftover: Vec<String> = diff
            .iter()
            .filter(|(_, v)| **v != 0)
            .map(|((x, a, y), v)| {
                let l = |g: &usize| self.group.label(*g).to_string();
                format!("{v}×{}.α̃{}.{}", l(x), l(a), l(y))
            })
            .collect();
        EdgeMatch { closed: leftover.is_empty(), residual: 0.0, leftover }
    }
}

/// The equivariant cover of the nerve of a finite group from `V ⊆ G`, with
/// `W_j = {x ∈ V : j⁻¹xj ∈ V}`.
pub fn finite_equivariant_cover(group: &FiniteGroup, v: &[usize]) -> Result<EquivariantCover<FiniteGroup>, GeometryError> {
    let vset: Arc<Vec<bool>> = Arc::new((0..group.order()).map(|g| v.contains(&g)).collect());
    let (v1, v2, gr) = (vset.clone(), vset, group.clone());
    let elements: Vec<usize> = (0..group.order()).collect();
    equivariant_nerve_cover(
        group.clone(),
        Arc::new(move |x: &usize| v1[*x]),
        Arc::new(move |j: &usize, x: &usize| v2[*x] && v2[gr.mul(&gr.mul(&gr.inv(j), x), j)]),
        &elements,
        &elements,
    )
    .map_err(|e| GeometryError::Synthetic(e.to_string()))
}

/// The tabulated covered nerve up to level 4 together with the element tuples of its points
/// and indices.
pub struct SyntheticSpace {
    pub space: FiniteCoveredSpace,
    pub cover: EquivariantCover<FiniteGroup>,
    pub tuples: Vec<Vec<Vec<usize>>>,
}

pub fn synthetic_space(group: &FiniteGroup, v: &[usize]) -> Result<SyntheticSpace, GeometryError> {
    let cover = finite_equivariant_cover(group, v)?;
    let nerve = Nerve::new(group.clone());
    let label = |x: &Vec<usize>| tuple_label(&x.iter().map(|&g| group.label(g).to_string()).collect::<Vec<_>>());
    let space = FiniteCoveredSpace::build(&nerve, &cover, 4, label, label).map_err(|e| GeometryError::Synthetic(e.to_string()))?;
    let tuples = (0..=4).map(|n| group_tuples(group, n)).collect();
    Ok(SyntheticSpace { space, cover, tuples })
}

/// Emits `(γ, η, F, −Φ, Θ)` as a cocycle with coefficients in `ℤᵏ → 𝔷`.
pub fn emit_cocycle(alg: &SynAlgebra, s: &SyntheticSpace) -> Result<CocycleSet, CochainError> {
    let cx = alg.complex();
    let mut out = CocycleSet::zeros(&s.space, &cx)?;
    let t = &s.tuples;
    let to_f = |w: Vec<i64>| w.into_iter().map(|x| x as f64).collect::<Vec<f64>>();
    let mut cache: HashMap<(usize, Vec<usize>), Vec<f64>> = HashMap::new();
    out.gamma.fill(&s.space, |x, idx| gamma(alg, &t[1][idx[0]][0], &t[1][idx[1]][0], &t[1][x][0]));
    out.eta.fill(&s.space, |x, idx| {
        let (i, j, l) = (t[1][idx[0]][0], t[1][idx[1]][0], t[1][idx[2]][0]);
        to_f(alg.class(&eta(alg, &i, &j, &l, &t[1][x][0])).unwrap())
    });
    out.f.fill(&s.space, |x, idx| {
        let (p, ij) = (&t[2][x], &t[2][idx[0]]);
        f_ij(alg, &ij[0], &ij[1], &p[0], &p[1])
    });
    out.phi.fill(&s.space, |x, idx| {
        let (p, a, b) = (&t[2][x], &t[2][idx[0]], &t[2][idx[1]]);
        let c = phi_chain(alg, (&a[0], &a[1]), (&b[0], &b[1]), &p[0], &p[1]);
        to_f(alg.class(&c).unwrap()).into_iter().map(|v| -v).collect()
    });
    out.theta.fill(&s.space, |x, idx| {
        let (p, ijl) = (&t[3][x], &t[3][idx[0]]);
        cache
            .entry((x, ijl.clone()))
            .or_insert_with(|| to_f(alg.class(&theta_chain(alg, (&ijl[0], &ijl[1], &ijl[2]), &p[0], &p[1], &p[2])).unwrap()))
            .clone()
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{check_cocycle3, is_normalized};
    use crate::geometry::construct::*;

    fn sqrt2() -> Vec<Vec<f64>> {
        vec![vec![1.0, std::f64::consts::SQRT_2]]
    }

    #[test]
    fn closed_chains_integrate_to_their_periods() {
        let alg = SynAlgebra::random(FiniteGroup::cyclic(3), sqrt2(), 2, 7).unwrap();
        for (g, h, k) in [(1, 2, 1), (2, 2, 2), (1, 1, 0)] {
            let th = theta_tilde(&alg, &g, &h, &k);
            assert!(alg.closedness(&th).closed);
            let per = alg.apply_per(&th.w);
            assert!((alg.integrate(&th)[0] - per[0]).abs() < 1e-12);
            assert!(cocycle_defect(&alg, &g, &h, &k)[0].abs() < 1e-12);
        }
        let b = alg.beta(&1, &2);
        assert!(alg.boundary_check(&b, &beta_boundary(&alg, &1, &2)).closed);
        let a = alpha_ij(&alg, &1, &2, &0, &1);
        assert!(alg.boundary_check(&a, &alpha_ij_boundary(&alg, &1, &2, &0, &1)).closed);
    }

    #[test]
    fn rejects_unnormalized_weights() {
        let g = FiniteGroup::cyclic(2);
        let mut beta = vec![vec![0]; 4];
        beta[1] = vec![1];
        let z = vec![vec![0]; 8];
        assert!(SynAlgebra::new(g, vec![vec![1.0]], beta, z.clone(), z, vec![vec![0.0]; 4]).is_err());
    }

    #[test]
    fn emitted_cocycle_is_accepted() {
        for (group, v) in [(FiniteGroup::cyclic(3), vec![0, 1, 2]), (FiniteGroup::cyclic(3), vec![0])] {
            let alg = SynAlgebra::random(group.clone(), sqrt2(), 2, 11).unwrap();
            let s = synthetic_space(&group, &v).unwrap();
            let phi = emit_cocycle(&alg, &s).unwrap();
            let cx = alg.complex();
            let r = check_cocycle3(&s.space, &cx, &phi).unwrap();
            assert!(r.passed(), "{r}");
            assert!(phi.components().iter().all(|c| is_normalized(&s.space, &cx, c)));
        }
    }
}
