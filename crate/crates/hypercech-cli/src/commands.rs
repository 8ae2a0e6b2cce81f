use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use hypercech::cochain::{check_coboundary, check_cocycle3, is_normalized, CocycleSet};
use hypercech::cohomology::{cohomology_bruteforce, CohomologyOptions};
use hypercech::geometry::geometric::PathChoice;
use hypercech::geometry::report::{chart_ball_cover, differentiable_cocycle_report, draw_samples, lie_samples};
use hypercech::geometry::synthetic::{emit_cocycle, finite_equivariant_cover, synthetic_space, SynAlgebra};
use hypercech::geometry::{GeoAlgebra, LieAlgebraCocycle, LieModel, QuadratureScheme};
use hypercech::report::Report;
use hypercech::twogroup::bundle::Obj;
use hypercech::twogroup::crossed::crossed_module_groupoid;
use hypercech::twogroup::equivalence::equivalence_from_coboundary;
use hypercech::twogroup::gamma::{two_group_from_cocycle, CoeffSamples, Obj3, TwoGroup, TwoGroupError};

use crate::num::values;
use crate::scenario::{cocycle_spec, complex_spec, load, CoverSpec, IntegrateSpec, Loaded, Scenario};

/// Levels needed for the degree-4 cocycle equations and the pentagon.
const LEVELS: usize = 4;

pub struct Common {
    pub report: Option<PathBuf>,
    pub quadrature_order: Option<usize>,
    pub tolerance: Option<f64>,
}

/// Result of a command that ran to completion.
pub enum Outcome {
    Pass,
    Fail,
}

fn finish(r: &Report, common: &Common) -> Result<Outcome> {
    let text = r.to_string();
    print!("{text}");
    if let Some(p) = &common.report {
        std::fs::write(p, &text).with_context(|| format!("cannot write {}", p.display()))?;
    }
    Ok(if r.passed() { Outcome::Pass } else { Outcome::Fail })
}

fn write_json(path: &Path, v: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn cocycle_or_zero(sc: &Scenario, l: &Loaded) -> Result<CocycleSet> {
    match &sc.cocycle {
        Some(c) => l.cocycle(c),
        None => Ok(CocycleSet::zeros(&l.space, &l.cx)?),
    }
}

pub fn check_complex(path: &Path, common: &Common) -> Result<Outcome> {
    let sc = load(path)?;
    let spec = sc.cocycle.as_ref().ok_or_else(|| anyhow!("scenario has no \"cocycle\""))?;
    let l = sc.load_space(LEVELS)?;
    let phi = l.cocycle(spec)?;
    let mut r = check_cocycle3(&l.space, &l.cx, &phi)?;
    for c in phi.components() {
        if !is_normalized(&l.space, &l.cx, c) {
            r.note(format!("component ({},{},{}) is not normalized", c.p, c.q, c.r));
        }
    }
    if let (Some(t), Some(psi)) = (&sc.target, &sc.coboundary) {
        let phi2 = l.cocycle(t)?;
        let psi = l.cochain2(psi)?;
        r.absorb("coboundary: ", check_coboundary(&l.space, &l.cx, &phi, &phi2, &psi)?);
    }
    finish(&r, common)
}

pub fn cohomology(path: &Path, degree: usize, normalized: bool, min_level: usize) -> Result<Outcome> {
    let sc = load(path)?;
    let l = sc.load_space(degree + 1)?;
    let h = cohomology_bruteforce(&l.space, &l.cx, degree, CohomologyOptions { normalized, min_level, force_integer: false })?;
    println!("{h}");
    Ok(Outcome::Pass)
}

/// Drops negative zeros so tables print `0`.
fn clean(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x + 0.0).collect()
}

fn obj_json(l: &Loaded, o: &Obj) -> serde_json::Value {
    json!({ "x": l.space.level(1).point_labels[o.x], "i": o.i, "b": clean(&o.b) })
}

fn tables(l: &Loaded, g: &TwoGroup) -> serde_json::Value {
    let (objs, arrows) = g.base.enumerate(&g.samples.b, &g.samples.a);
    let labels = &l.space.level(1).point_labels;
    let arrows: Vec<_> = arrows
        .iter()
        .map(|f| json!({ "x": labels[f.x], "i": f.i, "j": f.j, "b": clean(&f.b), "a": clean(&f.a) }))
        .collect();
    let mut assoc = Vec::new();
    let zero = vec![0.0; l.cx.b.dim()];
    l.space.for_each_tuple(3, 0, |w, t| {
        let o = Obj3 { w, iota: t[0], b: [zero.clone(), zero.clone(), zero.clone()] };
        let a = g.associator(&o);
        assoc.push(json!({ "w": l.space.level(3).point_labels[w], "i": t[0], "a": clean(&a.a) }));
    });
    json!({
        "group": l.group.name(),
        "complex": complex_spec(&l.cx),
        "unit": obj_json(l, &g.unit()),
        "objects": objs.iter().map(|o| obj_json(l, o)).collect::<Vec<_>>(),
        "arrows": arrows,
        "associator": assoc,
    })
}

fn build(l: &Loaded, phi: CocycleSet) -> Result<std::result::Result<TwoGroup<'_>, String>> {
    match two_group_from_cocycle(&l.space, &l.cx, phi, None) {
        Ok(g) => Ok(Ok(g)),
        Err(e @ (TwoGroupError::NotACocycle(_) | TwoGroupError::NotNormalized(..))) => Ok(Err(e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn rejected(what: &str, msg: String, common: &Common) -> Result<Outcome> {
    let mut r = Report::new(what);
    r.record("input cocycle", false, f64::NAN, || msg);
    finish(&r, common)
}

pub fn build_2group(path: &Path, out: Option<&Path>, common: &Common) -> Result<Outcome> {
    let sc = load(path)?;
    let l = sc.load_space(LEVELS)?;
    let g = match build(&l, cocycle_or_zero(&sc, &l)?)? {
        Ok(g) => g,
        Err(msg) => return rejected("2-group from cocycle", msg, common),
    };
    let r = g.verify();
    if let Some(out) = out {
        write_json(out, &tables(&l, &g))?;
    }
    finish(&r, common)
}

pub fn verify_2group(path: &Path, common: &Common) -> Result<Outcome> {
    let sc = load(path)?;
    if sc.cocycle.is_none() {
        let cx = crate::scenario::complex(sc.complex.as_ref().ok_or_else(|| anyhow!("scenario has no \"complex\""))?)?;
        let s = CoeffSamples::default_for(&cx);
        let cm = crossed_module_groupoid(cx);
        let arrows: Vec<_> = s.a.iter().flat_map(|a| s.b.iter().map(|b| cm.arrow(a.clone(), b.clone()))).collect();
        return finish(&cm.verify(&arrows), common);
    }
    let l = sc.load_space(LEVELS)?;
    let g = match build(&l, cocycle_or_zero(&sc, &l)?)? {
        Ok(g) => g,
        Err(msg) => return rejected("2-group from cocycle", msg, common),
    };
    let mut r = g.verify();
    match (&sc.target, &sc.coboundary) {
        (Some(t), Some(psi)) => {
            let g2 = match build(&l, l.cocycle(t)?)? {
                Ok(g) => g,
                Err(msg) => return rejected("target 2-group", msg, common),
            };
            match equivalence_from_coboundary(&g, &g2, l.cochain2(psi)?) {
                Ok(e) => r.absorb("equivalence: ", e.verify()),
                Err(e) => r.record("equivalence: coboundary equations", false, f64::NAN, || e.to_string()),
            }
        }
        (None, None) => {}
        _ => bail!("\"target\" and \"coboundary\" must be given together"),
    }
    finish(&r, common)
}

pub fn integrate(path: &Path, out: Option<&Path>, common: &Common) -> Result<Outcome> {
    let sc = load(path)?;
    match sc.integrate.clone().ok_or_else(|| anyhow!("scenario has no \"integrate\" section"))? {
        IntegrateSpec::Geometric { model, omega, samples, seed, spread, jitter, radius, squared_paths } => {
            let m = LieModel::parse(&model)?;
            let w = match omega {
                Some(c) => {
                    let coeffs = c
                        .iter()
                        .map(|m| m.iter().map(|row| values(row)).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?;
                    LieAlgebraCocycle::new(m.dim(), coeffs)?
                }
                None if m.dim() >= 2 => LieAlgebraCocycle::area_form(m.dim()),
                None => bail!("model {} needs an explicit omega", m.name()),
            };
            let mut a = GeoAlgebra::new(m.clone(), w.clone())?;
            if let Some(k) = common.quadrature_order {
                a = a.with_quadrature(QuadratureScheme::new(k, 1));
            }
            if squared_paths {
                a = a.with_paths(PathChoice::Squared);
            }
            let tol = common.tolerance.unwrap_or_else(|| a.default_tolerance());
            let cover = chart_ball_cover(&m, radius)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let probes: Vec<Vec<f64>> = (0..8).map(|_| (0..m.dim()).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
            let mut r = differentiable_cocycle_report(&a, &lie_samples(&cover, samples, &mut rng, spread, jitter)?, tol);
            r.absorb("input: ", w.check(&m, &probes));
            r.note(format!("model {}, {}, tolerance {tol:e}", m.name(), a.quadrature.describe()));
            if out.is_some() {
                r.warn("the geometric regime emits no cocycle file; --out ignored");
            }
            finish(&r, common)
        }
        IntegrateSpec::Synthetic { per, bound, seed, samples } => {
            let group = crate::scenario::parse_group(sc.group.as_deref().ok_or_else(|| anyhow!("scenario has no \"group\""))?)?;
            let per = per.iter().map(|r| values(r)).collect::<Result<Vec<_>>>()?;
            let v: Vec<usize> = match &sc.cover {
                CoverSpec::Equivariant { v } => {
                    v.iter().map(|s| group.parse_label(s).ok_or_else(|| anyhow!("unknown element {s:?}"))).collect::<Result<_>>()?
                }
                CoverSpec::Trivial => (0..group.order()).collect(),
                CoverSpec::Copies { .. } => bail!("the synthetic regime uses an equivariant cover"),
            };
            let alg = SynAlgebra::random(group.clone(), per, bound, seed)?;
            let tol = common.tolerance.unwrap_or(1e-9);
            let cover = finite_equivariant_cover(&group, &v)?;
            let n = group.order();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = draw_samples(&cover, samples, &mut rng, |r| r.gen_range(0..n), |r| r.gen_range(0..n))?;
            let mut r = differentiable_cocycle_report(&alg, &s, tol);
            r.note(format!("synthetic regime over {}, π₂ of rank {}", group.name(), alg.rank()));
            if let Some(out) = out {
                let space = synthetic_space(&group, &v)?;
                let cx = alg.complex();
                let phi = emit_cocycle(&alg, &space)?;
                let emitted = Scenario {
                    group: Some(group.name().to_string()),
                    complex: Some(complex_spec(&cx)),
                    cover: CoverSpec::Equivariant { v: v.iter().map(|&g| group.label(g).to_string()).collect() },
                    cocycle: Some(cocycle_spec(&space.space, &cx, &phi)),
                    ..Default::default()
                };
                write_json(out, &serde_json::to_value(&emitted)?)?;
                r.note(format!("cocycle written to {}", out.display()));
            }
            finish(&r, common)
        }
    }
}
