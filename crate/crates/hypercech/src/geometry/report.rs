//! Every identity behind the differentiable cocycle `(γ, η, F, −Φ, Θ)`, evaluated on sample
//! tuples. π₂-valued identities are compared through `∫·ω^l`, and exactly when the chain
//! model carries classes.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::construct::*;
use super::model::LieModel;
use super::GeometryError;
use crate::covers::{equivariant_nerve_cover, EquivariantCover, SimplicialCover};
use crate::group::GroupModel;
use crate::report::Report;

pub const CHECK_GAMMA_ETA: &str = "γ_jl − γ_il + γ_ij + ∫η_ijl = 0";
pub const CHECK_PHI_F: &str = "∫Φ = F_ij − F_i′j′ − γ_ii′(g) − γ_jj′(h) + γ_(ij)(i′j′)(gh)";
pub const CHECK_THETA_F: &str = "∫Θ_ijl + F_jl(h,k) − F_(ij)l(gh,k) + F_i(jl)(g,hk) − F_ij(g,h) = 0";
pub const CHECK_ETA_CECH: &str = "η_jlm − η_ilm + η_ijm − η_ijl = 0";
pub const CHECK_PHI_ETA: &str = "Φ′″ − Φ″ + Φ′ = η_ii′i″(g) + η_jj′j″(h) − η_(ij)(i′j′)(i″j″)(gh)";
pub const CHECK_THETA_PHI: &str = "Θ′ − Θ = g.Φ(h,k) − Φ(gh,k) + Φ(g,hk) − Φ(g,h)";
pub const CHECK_DELTA_THETA: &str = "δ_gp Θ = 0";
pub const CHECK_DEFECT: &str = "F̃(h,k) − F̃(gh,k) + F̃(g,hk) − F̃(g,h) = ∫Θ̃(g,h,k)";
pub const CHECK_BETA_BOUNDARY: &str = "∂β̃_g,h = g.α̃_h − α̃_gh + α̃_g";
pub const CHECK_ALPHA_BOUNDARY: &str = "∂α_ij boundary identity";
pub const CHECK_CLOSED: &str = "Θ̃, η, Φ, Θ are closed";

/// The seven identities whose residuals enter the verdict on the cocycle, in report order.
pub const IDENTITIES: [&str; 7] =
    [CHECK_GAMMA_ETA, CHECK_PHI_F, CHECK_THETA_F, CHECK_ETA_CECH, CHECK_PHI_ETA, CHECK_THETA_PHI, CHECK_DELTA_THETA];

/// A point `(g,h,k,o)` of level 4 with four level-4 indices. Lower-level data are read off
/// the leading entries, so every identity finds all its points in the right intersections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample<E> {
    pub x: Vec<E>,
    pub idx: Vec<Vec<E>>,
}

/// Checks that the sample lies in the set of each of its indices.
pub fn validate_sample<G: GroupModel + Clone>(cover: &EquivariantCover<G>, s: &Sample<G::Elem>) -> Result<(), GeometryError> {
    if s.x.len() != 4 || s.idx.len() != 4 || s.idx.iter().any(|i| i.len() != 4) {
        return Err(GeometryError::Membership("a sample needs 4 points and 4 index tuples of length 4".into()));
    }
    for i in &s.idx {
        if !cover.member(4, i, &s.x) {
            return Err(GeometryError::Membership(format!("{:?} ∉ V_{:?}", s.x, i)));
        }
    }
    Ok(())
}

/// Draws admissible samples with indices `x_c·u` for offsets `u` from `offset`.
pub fn draw_samples<G, R>(
    cover: &EquivariantCover<G>,
    count: usize,
    rng: &mut R,
    mut point: impl FnMut(&mut R) -> G::Elem,
    mut offset: impl FnMut(&mut R) -> G::Elem,
) -> Result<Vec<Sample<G::Elem>>, GeometryError>
where
    G: GroupModel + Clone,
    R: Rng,
{
    let g = cover.group().clone();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(GeometryError::Sampling(format!("{} of {count} after {attempts} attempts", out.len())));
        }
        let x: Vec<G::Elem> = (0..4).map(|_| point(rng)).collect();
        let idx: Vec<Vec<G::Elem>> = (0..4).map(|_| x.iter().map(|xc| g.mul(xc, &offset(rng))).collect()).collect();
        let s = Sample { x, idx };
        if validate_sample(cover, &s).is_ok() {
            out.push(s);
        }
    }
    Ok(out)
}

/// The cover with `V` the open max-norm ball of the given radius in the chart and
/// `W_j = {x ∈ V : j⁻¹xj ∈ V}`, both convex in the chart.
pub fn chart_ball_cover(model: &LieModel, radius: f64) -> Result<EquivariantCover<LieModel>, GeometryError> {
    let in_ball = move |x: &Vec<f64>| x.iter().all(|c| c.abs() < radius);
    let m = model.clone();
    let v = Arc::new(in_ball);
    let w = Arc::new(move |j: &Vec<f64>, x: &Vec<f64>| in_ball(x) && in_ball(&m.conj(j, x)));
    let probe: Vec<Vec<f64>> = (0..7)
        .map(|k| (0..model.dim()).map(|c| radius * (((k * 3 + c * 5) % 7) as f64 / 3.5 - 1.0)).collect())
        .collect();
    equivariant_nerve_cover(model.clone(), v, w, &probe, &probe).map_err(|e| GeometryError::Domain(e.to_string()))
}

/// Uniform points in `[-spread, spread]ⁿ` and index offsets in `[-jitter, jitter]ⁿ`.
pub fn lie_samples<R: Rng>(
    cover: &EquivariantCover<LieModel>,
    count: usize,
    rng: &mut R,
    spread: f64,
    jitter: f64,
) -> Result<Vec<Sample<Vec<f64>>>, GeometryError> {
    let n = cover.group().dim();
    draw_samples(
        cover,
        count,
        rng,
        |r| (0..n).map(|_| r.gen_range(-spread..=spread)).collect(),
        |r| (0..n).map(|_| r.gen_range(-jitter..=jitter)).collect(),
    )
}

type Rec = (&'static str, bool, f64, String);

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn real_rec(name: &'static str, v: &[f64], tol: f64, at: &str) -> Rec {
    let r = max_abs(v);
    (name, r <= tol, r, format!("{at}: residual {v:?}"))
}

fn chain_rec<A: ChainAlgebra>(a: &A, name: &'static str, c: &A::Chain, tol: f64, at: &str) -> Rec {
    let v = a.integrate(c);
    let r = max_abs(&v);
    let class = a.class(c);
    let exact = class.as_ref().is_none_or(|w| w.iter().all(|&x| x == 0));
    (name, r <= tol && exact, r, format!("{at}: ∫ = {v:?}, class {class:?}"))
}

fn closed_rec<A: ChainAlgebra>(a: &A, what: &str, c: &A::Chain, at: &str) -> Rec {
    let m = a.closedness(c);
    (CHECK_CLOSED, m.closed, m.residual, format!("{what} at {at}: unmatched {:?}", m.leftover))
}

fn lin(terms: &[(f64, &[f64])]) -> Vec<f64> {
    let n = terms.first().map_or(0, |t| t.1.len());
    (0..n).map(|c| terms.iter().map(|(k, v)| k * v[c]).sum()).collect()
}

fn sample_records<A: ChainAlgebra>(a: &A, s: &Sample<A::Elem>, tol: f64) -> Vec<Rec> {
    let (g, h, k, o) = (&s.x[0], &s.x[1], &s.x[2], &s.x[3]);
    let ix = |n: usize, c: usize| &s.idx[n][c];
    let at = format!("x={:?} idx={:?}", s.x, s.idx);
    let gh = a.mul(g, h);
    let hk = a.mul(h, k);
    let mut out = Vec::new();

    out.push(real_rec(CHECK_DEFECT, &cocycle_defect(a, g, h, k), tol, &at));
    let b = a.boundary_check(&a.beta(g, h), &beta_boundary(a, g, h));
    out.push((CHECK_BETA_BOUNDARY, b.closed, b.residual, format!("{at}: {:?}", b.leftover)));
    let (i0, j0) = (ix(0, 0), ix(0, 1));
    let m = a.boundary_check(&alpha_ij(a, i0, j0, g, h), &alpha_ij_boundary(a, i0, j0, g, h));
    out.push((CHECK_ALPHA_BOUNDARY, m.closed, m.residual, format!("{at}: {:?}", m.leftover)));
    out.push(closed_rec(a, "Θ̃", &theta_tilde(a, g, h, k), &at));

    // Čech identities at level 1
    let (i, j, l, mm) = (ix(0, 0), ix(1, 0), ix(2, 0), ix(3, 0));
    let eta_ijl = eta(a, i, j, l, g);
    out.push(closed_rec(a, "η", &eta_ijl, &at));
    let r1 = lin(&[
        (1.0, &gamma(a, j, l, g)),
        (-1.0, &gamma(a, i, l, g)),
        (1.0, &gamma(a, i, j, g)),
        (1.0, &a.integrate(&eta_ijl)),
    ]);
    out.push(real_rec(CHECK_GAMMA_ETA, &r1, tol, &at));
    let r4 = a.combo(&[(1, &eta(a, j, l, mm, g)), (-1, &eta(a, i, l, mm, g)), (1, &eta(a, i, j, mm, g)), (-1, &eta_ijl)]);
    out.push(chain_rec(a, CHECK_ETA_CECH, &r4, tol, &at));

    // level 2
    let p = |n: usize| (ix(n, 0), ix(n, 1));
    let phi01 = phi_chain(a, p(0), p(1), g, h);
    out.push(closed_rec(a, "Φ", &phi01, &at));
    let pr = |n: usize| a.mul(ix(n, 0), ix(n, 1));
    let r2 = lin(&[
        (1.0, &a.integrate(&phi01)),
        (-1.0, &f_ij(a, ix(0, 0), ix(0, 1), g, h)),
        (1.0, &f_ij(a, ix(1, 0), ix(1, 1), g, h)),
        (1.0, &gamma(a, ix(0, 0), ix(1, 0), g)),
        (1.0, &gamma(a, ix(0, 1), ix(1, 1), h)),
        (-1.0, &gamma(a, &pr(0), &pr(1), &gh)),
    ]);
    out.push(real_rec(CHECK_PHI_F, &r2, tol, &at));
    let lhs5 = a.combo(&[(1, &phi_chain(a, p(1), p(2), g, h)), (-1, &phi_chain(a, p(0), p(2), g, h)), (1, &phi01)]);
    let rhs5 = a.combo(&[
        (1, &eta(a, ix(0, 0), ix(1, 0), ix(2, 0), g)),
        (1, &eta(a, ix(0, 1), ix(1, 1), ix(2, 1), h)),
        (-1, &eta(a, &pr(0), &pr(1), &pr(2), &gh)),
    ]);
    out.push(chain_rec(a, CHECK_PHI_ETA, &a.plus(lhs5, -1, &rhs5), tol, &at));

    // level 3
    let t = |n: usize| (ix(n, 0), ix(n, 1), ix(n, 2));
    let theta0 = theta_chain(a, t(0), g, h, k);
    out.push(closed_rec(a, "Θ", &theta0, &at));
    let (i, j, l) = t(0);
    let ij = a.mul(i, j);
    let jl = a.mul(j, l);
    let r3 = lin(&[
        (1.0, &a.integrate(&theta0)),
        (1.0, &f_ij(a, j, l, h, k)),
        (-1.0, &f_ij(a, &ij, l, &gh, k)),
        (1.0, &f_ij(a, i, &jl, g, &hk)),
        (-1.0, &f_ij(a, i, j, g, h)),
    ]);
    out.push(real_rec(CHECK_THETA_F, &r3, tol, &at));
    let (i2, j2, l2) = t(1);
    let ij2 = a.mul(i2, j2);
    let jl2 = a.mul(j2, l2);
    let lhs6 = a.plus(theta_chain(a, t(1), g, h, k), -1, &theta0);
    let rhs6 = a.combo(&[
        (1, &a.translate(g, &phi_chain(a, (j, l), (j2, l2), h, k))),
        (-1, &phi_chain(a, (&ij, l), (&ij2, l2), &gh, k)),
        (1, &phi_chain(a, (i, &jl), (i2, &jl2), g, &hk)),
        (-1, &phi_chain(a, (i, j), (i2, j2), g, h)),
    ]);
    out.push(chain_rec(a, CHECK_THETA_PHI, &a.plus(lhs6, -1, &rhs6), tol, &at));

    // level 4
    let (i, j, l, m) = (ix(0, 0), ix(0, 1), ix(0, 2), ix(0, 3));
    let (ij, jl, lm) = (a.mul(i, j), a.mul(j, l), a.mul(l, m));
    let ko = a.mul(k, o);
    let r7 = a.combo(&[
        (1, &a.translate(g, &theta_chain(a, (j, l, m), h, k, o))),
        (-1, &theta_chain(a, (&ij, l, m), &gh, k, o)),
        (1, &theta_chain(a, (i, &jl, m), g, &hk, o)),
        (-1, &theta_chain(a, (i, j, &lm), g, h, &ko)),
        (1, &theta0),
    ]);
    out.push(chain_rec(a, CHECK_DELTA_THETA, &r7, tol, &at));
    out
}

/// Evaluates every identity on every sample; samples run in parallel and are recorded in
/// input order.
pub fn differentiable_cocycle_report<A: ChainAlgebra>(a: &A, samples: &[Sample<A::Elem>], tol: f64) -> Report {
    let mut r = Report::new("differentiable cocycle");
    for name in IDENTITIES {
        r.entry(name);
    }
    if samples.is_empty() {
        r.warn("no samples given; identity checks are vacuous");
    }
    let recs: Vec<Vec<Rec>> = samples.par_iter().map(|s| sample_records(a, s, tol)).collect();
    for (name, ok, res, detail) in recs.into_iter().flatten() {
        r.record(name, ok, res, || detail);
    }
    r.note(format!("integrated identities use tolerance {tol:e}"));
    r
}
