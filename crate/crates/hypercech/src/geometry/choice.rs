//! The coboundary `(ξ, ρ, σ)` relating the cocycles obtained from two sets of choices.
//!
//! Equations follow `φ − φ′ = D₃ψ` with `ψ = (ξ, ρ, σ)` of shapes `(1,0,1)`, `(1,1,0)`,
//! `(2,0,0)`; chain-valued terms are compared through `∫·ω^l`.

use rayon::prelude::*;

use super::chain::SmoothChain;
use super::construct::*;
use super::geometric::{GeoAlgebra, PathChoice};
use super::report::Sample;
use super::GeometryError;
use crate::cochain::COBOUNDARY_EQUATIONS;
use crate::report::Report;

pub const CHECK_PSI_CLOSED: &str = "ρ and σ are closed";

/// How the second set of choices differs from the first.
#[derive(Clone, Debug, PartialEq)]
pub enum ChoiceChange {
    /// `α̃′_g(t) = α̃_g(t²)` with `β̃′` reparametrized accordingly.
    Paths,
    /// `ω′ = ω + b∘[·,·]` for a linear `b: 𝔤 → 𝔷` given by rows.
    Cocycle { b: Vec<Vec<f64>> },
}

pub struct ChoicePair {
    pub from: GeoAlgebra,
    pub to: GeoAlgebra,
    pub change: ChoiceChange,
}

impl ChoicePair {
    pub fn new(from: &GeoAlgebra, change: ChoiceChange) -> Result<Self, GeometryError> {
        let to = match &change {
            ChoiceChange::Paths => {
                if from.paths != PathChoice::Linear {
                    return Err(GeometryError::Domain("the path filling starts from linear paths".into()));
                }
                from.clone().with_paths(PathChoice::Squared)
            }
            ChoiceChange::Cocycle { b } => {
                if b.len() != from.omega.out_dim() || b.iter().any(|r| r.len() != from.model.dim()) {
                    return Err(GeometryError::Cocycle("b must map 𝔤 to 𝔷".into()));
                }
                let mut to = from.clone();
                to.omega = from.omega.plus_bracket_form(&from.model, b);
                to
            }
        };
        Ok(Self { from: from.clone(), to, change })
    }

    fn a(&self) -> &GeoAlgebra {
        &self.from
    }

    /// `Ã_i + i.Ã_{i⁻¹g}`.
    fn filling(&self, i: &Vec<f64>, g: &Vec<f64>) -> SmoothChain {
        let a = self.a();
        let rest = a.mul(&a.inv(i), g);
        a.path_homotopy(i).plus(1, &a.translate(i, &a.path_homotopy(&rest)))
    }

    pub fn xi(&self, i: &Vec<f64>, g: &Vec<f64>) -> Vec<f64> {
        let a = self.a();
        match &self.change {
            ChoiceChange::Paths => a.integrate(&self.filling(i, g)),
            ChoiceChange::Cocycle { b } => {
                let e = a.identity();
                let rest = a.mul(&a.inv(i), g);
                let paths = a.path(&e, i, &e).plus(1, &a.path(i, &rest, &e));
                a.integrate_one_form(b, &paths)
            }
        }
    }

    /// `β̃_{i,i⁻¹j} − i.β̃_{i⁻¹j,j⁻¹g}`, whose integral is `γ_{i,j}(g)`.
    fn c_chain(alg: &GeoAlgebra, i: &Vec<f64>, j: &Vec<f64>, g: &Vec<f64>) -> SmoothChain {
        let ij = alg.mul(&alg.inv(i), j);
        let jg = alg.mul(&alg.inv(j), g);
        alg.beta(i, &ij).plus(-1, &alg.translate(i, &alg.beta(&ij, &jg)))
    }

    pub fn rho(&self, i: &Vec<f64>, j: &Vec<f64>, g: &Vec<f64>) -> SmoothChain {
        let a = self.a();
        match &self.change {
            ChoiceChange::Paths => Self::c_chain(&self.from, i, j, g)
                .plus(-1, &Self::c_chain(&self.to, i, j, g))
                .plus(-1, &self.filling(i, g))
                .plus(1, &self.filling(j, g)),
            ChoiceChange::Cocycle { .. } => {
                theta_tilde(a, i, &a.mul(&a.inv(i), j), &a.mul(&a.inv(j), g)).scaled(-1)
            }
        }
    }

    pub fn sigma(&self, i: &Vec<f64>, j: &Vec<f64>, g: &Vec<f64>, h: &Vec<f64>) -> SmoothChain {
        let a = self.a();
        match &self.change {
            ChoiceChange::Paths => alpha_ij(&self.from, i, j, g, h)
                .plus(-1, &alpha_ij(&self.to, i, j, g, h))
                .plus(-1, &self.filling(i, g))
                .plus(-1, &a.translate(g, &self.filling(j, h)))
                .plus(1, &self.filling(&a.mul(i, j), &a.mul(g, h))),
            ChoiceChange::Cocycle { .. } => SmoothChain::zero(),
        }
    }
}

type Rec = (&'static str, bool, f64, String);

fn lin(terms: &[(f64, &[f64])]) -> Vec<f64> {
    let n = terms.first().map_or(0, |t| t.1.len());
    (0..n).map(|c| terms.iter().map(|(k, v)| k * v[c]).sum()).collect()
}

fn rec(name: &'static str, v: &[f64], tol: f64, at: &str) -> Rec {
    let r = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (name, r <= tol, r, format!("{at}: residual {v:?}"))
}

fn sample_records(c: &ChoicePair, s: &Sample<Vec<f64>>, tol: f64) -> Vec<Rec> {
    let (a, b) = (&c.from, &c.to);
    let (g, h, k) = (&s.x[0], &s.x[1], &s.x[2]);
    let ix = |n: usize, c: usize| &s.idx[n][c];
    let at = format!("x={:?} idx={:?}", s.x, s.idx);
    let name = |n: usize| COBOUNDARY_EQUATIONS[n].1;
    let gh = a.mul(g, h);
    let mut out = Vec::new();

    let (i, j, l) = (ix(0, 0), ix(1, 0), ix(2, 0));
    let rho_ij = c.rho(i, j, g);
    let m = a.closedness(&rho_ij);
    out.push((CHECK_PSI_CLOSED, m.closed, m.residual, format!("ρ at {at}: {:?}", m.leftover)));
    let e1 = lin(&[
        (1.0, &gamma(a, i, j, g)),
        (-1.0, &gamma(b, i, j, g)),
        (1.0, &c.xi(j, g)),
        (-1.0, &c.xi(i, g)),
        (-1.0, &a.integrate(&rho_ij)),
    ]);
    out.push(rec(name(0), &e1, tol, &at));

    let e2 = eta(a, i, j, l, g)
        .plus(-1, &eta(b, i, j, l, g))
        .plus(1, &c.rho(j, l, g))
        .plus(-1, &c.rho(i, l, g))
        .plus(1, &rho_ij);
    out.push(rec(name(1), &a.integrate(&e2), tol, &at));

    let (i, j) = (ix(0, 0), ix(0, 1));
    let (i2, j2) = (ix(1, 0), ix(1, 1));
    let ij = a.mul(i, j);
    let ij2 = a.mul(i2, j2);
    let sigma0 = c.sigma(i, j, g, h);
    let m = a.closedness(&sigma0);
    out.push((CHECK_PSI_CLOSED, m.closed, m.residual, format!("σ at {at}: {:?}", m.leftover)));
    let e3 = lin(&[
        (1.0, &f_ij(a, i, j, g, h)),
        (-1.0, &f_ij(b, i, j, g, h)),
        (-1.0, &c.xi(j, h)),
        (1.0, &c.xi(&ij, &gh)),
        (-1.0, &c.xi(i, g)),
        (-1.0, &a.integrate(&sigma0)),
    ]);
    out.push(rec(name(2), &e3, tol, &at));

    let e4 = phi_chain(a, (i, j), (i2, j2), g, h)
        .scaled(-1)
        .plus(1, &phi_chain(b, (i, j), (i2, j2), g, h))
        .plus(-1, &c.rho(j, j2, h))
        .plus(1, &c.rho(&ij, &ij2, &gh))
        .plus(-1, &c.rho(i, i2, g))
        .plus(-1, &c.sigma(i2, j2, g, h))
        .plus(1, &sigma0);
    out.push(rec(name(3), &a.integrate(&e4), tol, &at));

    let l = ix(0, 2);
    let (jl, hk) = (a.mul(j, l), a.mul(h, k));
    let e5 = theta_chain(a, (i, j, l), g, h, k)
        .plus(-1, &theta_chain(b, (i, j, l), g, h, k))
        .plus(1, &a.translate(g, &c.sigma(j, l, h, k)))
        .plus(-1, &c.sigma(&ij, l, &gh, k))
        .plus(1, &c.sigma(i, &jl, g, &hk))
        .plus(-1, &sigma0);
    out.push(rec(name(4), &a.integrate(&e5), tol, &at));
    out
}

/// Verifies the five coboundary equations on samples admissible for both sets of choices.
pub fn choice_coboundary(pair: &ChoicePair, samples: &[Sample<Vec<f64>>], tol: f64) -> Report {
    let mut r = Report::new(match pair.change {
        ChoiceChange::Paths => "choice independence: reparametrized paths",
        ChoiceChange::Cocycle { .. } => "choice independence: cohomologous cocycles",
    });
    for (_, name) in COBOUNDARY_EQUATIONS {
        r.entry(name);
    }
    let recs: Vec<Vec<Rec>> = samples.par_iter().map(|s| sample_records(pair, s, tol)).collect();
    for (name, ok, res, detail) in recs.into_iter().flatten() {
        r.record(name, ok, res, || detail);
    }
    r.note(format!("integrated identities use tolerance {tol:e}"));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::model::{LieAlgebraCocycle, LieModel};
    use crate::geometry::report::{chart_ball_cover, lie_samples};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn samples(m: &LieModel, n: usize) -> Vec<Sample<Vec<f64>>> {
        let cover = chart_ball_cover(m, 0.5).unwrap();
        lie_samples(&cover, n, &mut ChaCha8Rng::seed_from_u64(9), 1.0, 0.1).unwrap()
    }

    #[test]
    fn reparametrized_paths_on_the_plane() {
        let m = LieModel::Abelian(2);
        let a = GeoAlgebra::new(m.clone(), LieAlgebraCocycle::area_form(2)).unwrap();
        let p = ChoicePair::new(&a, ChoiceChange::Paths).unwrap();
        let r = choice_coboundary(&p, &samples(&m, 2), 1e-6);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cohomologous_cocycles_on_heisenberg() {
        let m = LieModel::Heisenberg3;
        let a = GeoAlgebra::new(m.clone(), LieAlgebraCocycle::area_form(3)).unwrap();
        let p = ChoicePair::new(&a, ChoiceChange::Cocycle { b: vec![vec![0.3, -0.2, 1.0]] }).unwrap();
        let r = choice_coboundary(&p, &samples(&m, 2), 1e-6);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn wrong_sign_of_xi_is_detected() {
        let m = LieModel::Heisenberg3;
        let a = GeoAlgebra::new(m.clone(), LieAlgebraCocycle::area_form(3)).unwrap();
        let p = ChoicePair::new(&a, ChoiceChange::Cocycle { b: vec![vec![0.0, 0.0, 2.0]] }).unwrap();
        let q = ChoicePair::new(&a, ChoiceChange::Cocycle { b: vec![vec![0.0, 0.0, -2.0]] }).unwrap();
        let s = samples(&m, 1);
        // ξ built for b paired with the cocycle shifted by −b
        let swapped = ChoicePair { from: p.from.clone(), to: q.to.clone(), change: p.change.clone() };
        assert!(choice_coboundary(&p, &s, 1e-6).passed());
        assert!(!choice_coboundary(&swapped, &s, 1e-6).passed());
    }
}
