//! The chains `Θ̃`, `η`, `α_{i,j}`, `Φ`, `Θ` and the real-valued `F̃`, `γ`, `F_{i,j}`,
//! written once for every chain model.

use std::fmt::Debug;

use super::chain::EdgeMatch;

/// A model of 2-chains on a group with the basic pieces of the construction: the triangles
/// `β̃_{g,h}` and the squares `λ_{i,j}(g)`, `μ_{i,j}(g)`.
pub trait ChainAlgebra: Sync {
    type Elem: Clone + Debug + Send + Sync;
    type Chain: Clone + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Dimension of `𝔷`.
    fn value_dim(&self) -> usize;

    fn zero(&self) -> Self::Chain;
    /// `a + c·b`.
    fn plus(&self, a: Self::Chain, c: i64, b: &Self::Chain) -> Self::Chain;
    /// `x.c`.
    fn translate(&self, x: &Self::Elem, c: &Self::Chain) -> Self::Chain;

    /// The 1-chain `x.α̃_a.y`.
    fn path(&self, x: &Self::Elem, a: &Self::Elem, y: &Self::Elem) -> Self::Chain;
    /// `β̃_{g,h}` with `∂β̃_{g,h} = g.α̃_h − α̃_{gh} + α̃_g`.
    fn beta(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Chain;
    /// `λ_{i,j}(g)` with `∂λ = i.α̃_{i⁻¹g} + g.α̃_j − i.α̃_{i⁻¹g}.j − i.α̃_j`.
    fn lambda(&self, i: &Self::Elem, j: &Self::Elem, g: &Self::Elem) -> Self::Chain;
    /// `μ_{i,j}(g)` with `∂μ = i.α̃_{i⁻¹g}.j − ij.α̃_{(ij)⁻¹gj}`.
    fn mu(&self, i: &Self::Elem, j: &Self::Elem, g: &Self::Elem) -> Self::Chain;

    /// `∫_c ω^l`.
    fn integrate(&self, c: &Self::Chain) -> Vec<f64>;
    /// Exact class of a closed chain, when the model carries one.
    fn class(&self, _c: &Self::Chain) -> Option<Vec<i64>> {
        None
    }
    /// Compares `∂c` with the 1-chain `expected`.
    fn boundary_check(&self, c: &Self::Chain, expected: &Self::Chain) -> EdgeMatch;

    fn closedness(&self, c: &Self::Chain) -> EdgeMatch {
        self.boundary_check(c, &self.zero())
    }

    /// `Σ cₖ·chainₖ`.
    fn combo(&self, terms: &[(i64, &Self::Chain)]) -> Self::Chain {
        terms.iter().fold(self.zero(), |acc, (c, x)| self.plus(acc, *c, x))
    }
}

fn ldiv<A: ChainAlgebra>(a: &A, x: &A::Elem, y: &A::Elem) -> A::Elem {
    a.mul(&a.inv(x), y)
}

/// `Θ̃(g,h,k) = g.β̃_{h,k} − β̃_{gh,k} + β̃_{g,hk} − β̃_{g,h}`.
pub fn theta_tilde<A: ChainAlgebra>(a: &A, g: &A::Elem, h: &A::Elem, k: &A::Elem) -> A::Chain {
    let gh = a.mul(g, h);
    let hk = a.mul(h, k);
    a.combo(&[
        (1, &a.translate(g, &a.beta(h, k))),
        (-1, &a.beta(&gh, k)),
        (1, &a.beta(g, &hk)),
        (-1, &a.beta(g, h)),
    ])
}

/// `F̃(g,h) = ∫_{β̃_{g,h}} ω^l`.
pub fn f_tilde<A: ChainAlgebra>(a: &A, g: &A::Elem, h: &A::Elem) -> Vec<f64> {
    a.integrate(&a.beta(g, h))
}

/// `F̃(h,k) − F̃(gh,k) + F̃(g,hk) − F̃(g,h) − ∫_{Θ̃(g,h,k)} ω^l`.
pub fn cocycle_defect<A: ChainAlgebra>(a: &A, g: &A::Elem, h: &A::Elem, k: &A::Elem) -> Vec<f64> {
    let gh = a.mul(g, h);
    let hk = a.mul(h, k);
    let terms = [f_tilde(a, h, k), f_tilde(a, &gh, k), f_tilde(a, g, &hk), f_tilde(a, g, h)];
    let th = a.integrate(&theta_tilde(a, g, h, k));
    (0..a.value_dim()).map(|c| terms[0][c] - terms[1][c] + terms[2][c] - terms[3][c] - th[c]).collect()
}

/// Reduces each coordinate modulo its period; a zero period leaves the coordinate alone.
pub fn reduce_mod_periods(v: &[f64], periods: &[f64]) -> Vec<f64> {
    v.iter()
        .zip(periods.iter().chain(std::iter::repeat(&0.0)))
        .map(|(x, p)| {
            if *p == 0.0 {
                *x
            } else {
                let r = x.rem_euclid(p.abs());
                if r > p.abs() / 2.0 {
                    r - p.abs()
                } else {
                    r
                }
            }
        })
        .collect()
}

/// `γ_{i,j}(g) = −F̃(j,j⁻¹g) + F̃(i,i⁻¹g) − ∫_{Θ̃(i,i⁻¹j,j⁻¹g)} ω^l`.
pub fn gamma<A: ChainAlgebra>(a: &A, i: &A::Elem, j: &A::Elem, g: &A::Elem) -> Vec<f64> {
    let fj = f_tilde(a, j, &ldiv(a, j, g));
    let fi = f_tilde(a, i, &ldiv(a, i, g));
    let th = a.integrate(&theta_tilde(a, i, &ldiv(a, i, j), &ldiv(a, j, g)));
    (0..a.value_dim()).map(|c| -fj[c] + fi[c] - th[c]).collect()
}

/// `η_{i,j,l}(g) = Θ̃(j,j⁻¹l,l⁻¹g) − Θ̃(i,i⁻¹l,l⁻¹g) + Θ̃(i,i⁻¹j,j⁻¹g)`, the sign for which
/// `γ_{j,l} − γ_{i,l} + γ_{i,j} + per(η_{i,j,l}) = 0`.
pub fn eta<A: ChainAlgebra>(a: &A, i: &A::Elem, j: &A::Elem, l: &A::Elem, g: &A::Elem) -> A::Chain {
    a.combo(&[
        (1, &theta_tilde(a, j, &ldiv(a, j, l), &ldiv(a, l, g))),
        (-1, &theta_tilde(a, i, &ldiv(a, i, l), &ldiv(a, l, g))),
        (1, &theta_tilde(a, i, &ldiv(a, i, j), &ldiv(a, j, g))),
    ])
}

/// `α_{i,j}(g,h) = β̃_{i,j} + λ_{i,j}(g) + μ_{i,j}(g) + ij.β̃_{(ij)⁻¹gj, j⁻¹h}`.
pub fn alpha_ij<A: ChainAlgebra>(a: &A, i: &A::Elem, j: &A::Elem, g: &A::Elem, h: &A::Elem) -> A::Chain {
    let ij = a.mul(i, j);
    let nu = a.translate(&ij, &a.beta(&ldiv(a, &ij, &a.mul(g, j)), &ldiv(a, j, h)));
    a.combo(&[(1, &a.beta(i, j)), (1, &a.lambda(i, j, g)), (1, &a.mu(i, j, g)), (1, &nu)])
}

/// `F_{i,j}(g,h) = ∫_{α_{i,j}(g,h)} ω^l`.
pub fn f_ij<A: ChainAlgebra>(a: &A, i: &A::Elem, j: &A::Elem, g: &A::Elem, h: &A::Elem) -> Vec<f64> {
    a.integrate(&alpha_ij(a, i, j, g, h))
}

/// Expected `∂β̃_{g,h}`.
pub fn beta_boundary<A: ChainAlgebra>(a: &A, g: &A::Elem, h: &A::Elem) -> A::Chain {
    let e = a.identity();
    a.combo(&[(1, &a.path(g, h, &e)), (-1, &a.path(&e, &a.mul(g, h), &e)), (1, &a.path(&e, g, &e))])
}

/// Expected `∂α_{i,j}(g,h) = α̃_i + i.α̃_{i⁻¹g} + g.α̃_j + gj.α̃_{j⁻¹h} − ij.α̃_{(ij)⁻¹gh} − α̃_{ij}`.
pub fn alpha_ij_boundary<A: ChainAlgebra>(a: &A, i: &A::Elem, j: &A::Elem, g: &A::Elem, h: &A::Elem) -> A::Chain {
    let e = a.identity();
    let ij = a.mul(i, j);
    let gj = a.mul(g, j);
    a.combo(&[
        (1, &a.path(&e, i, &e)),
        (1, &a.path(i, &ldiv(a, i, g), &e)),
        (1, &a.path(g, j, &e)),
        (1, &a.path(&gj, &ldiv(a, j, h), &e)),
        (-1, &a.path(&ij, &ldiv(a, &ij, &a.mul(g, h)), &e)),
        (-1, &a.path(&e, &ij, &e)),
    ])
}

/// `Φ_{(i,j),(i′,j′)}(g,h)`.
pub fn phi_chain<A: ChainAlgebra>(a: &A, ij: (&A::Elem, &A::Elem), ij2: (&A::Elem, &A::Elem), g: &A::Elem, h: &A::Elem) -> A::Chain {
    let ((i, j), (i2, j2)) = (ij, ij2);
    let p = a.mul(i, j);
    let p2 = a.mul(i2, j2);
    let gj = a.mul(g, j);
    let ii = ldiv(a, i, i2);
    let jj = ldiv(a, j, j2);
    let pp = ldiv(a, &p, &p2);
    a.combo(&[
        (1, &alpha_ij(a, i, j, g, h)),
        (-1, &alpha_ij(a, i2, j2, g, h)),
        (-1, &a.beta(i, &ii)),
        (1, &a.translate(i, &a.beta(&ii, &ldiv(a, i2, g)))),
        (-1, &a.translate(g, &a.beta(j, &jj))),
        (1, &a.translate(&gj, &a.beta(&jj, &ldiv(a, j2, h)))),
        (1, &a.beta(&p, &pp)),
        (-1, &a.translate(&p, &a.beta(&pp, &ldiv(a, &p2, &a.mul(g, h))))),
    ])
}

/// `Θ_{i,j,l}(g,h,k) = −g.α_{j,l}(h,k) + α_{ij,l}(gh,k) − α_{i,jl}(g,hk) + α_{i,j}(g,h)`.
pub fn theta_chain<A: ChainAlgebra>(a: &A, ijl: (&A::Elem, &A::Elem, &A::Elem), g: &A::Elem, h: &A::Elem, k: &A::Elem) -> A::Chain {
    let (i, j, l) = ijl;
    a.combo(&[
        (-1, &a.translate(g, &alpha_ij(a, j, l, h, k))),
        (1, &alpha_ij(a, &a.mul(i, j), l, &a.mul(g, h), k)),
        (-1, &alpha_ij(a, i, &a.mul(j, l), g, &a.mul(h, k))),
        (1, &alpha_ij(a, i, j, g, h)),
    ])
}
