//! The scenario file format and its translation into library objects.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use hypercech::cochain::{CochainSet2, CocycleSet, TriCochain};
use hypercech::coeff::{AbelianGroup, CoefficientComplex, Factor};
use hypercech::covers::{refine_from_level, Predicate, TrivialCover};
use hypercech::geometry::synthetic::finite_equivariant_cover;
use hypercech::group::FiniteGroup;
use hypercech::simplicial::Nerve;
use hypercech::space::{tuple_label, FiniteCoveredSpace};

use crate::num::{values, Num};

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexSpec>,
    #[serde(default)]
    pub cover: CoverSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleSpec>,
    /// The second cocycle `φ'` of a coboundary `φ - φ' = D₃ψ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<CocycleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coboundary: Option<CoboundarySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integrate: Option<IntegrateSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub a: String,
    pub b: String,
    /// `mu[row][col]`, rows indexing `B` coordinates.
    #[serde(default)]
    pub mu: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoverSpec {
    #[default]
    Trivial,
    /// `count` copies of the whole space at level 0, refined to all levels.
    Copies { count: usize },
    /// `V_i = i·V` with `V` given by element labels.
    Equivariant { v: Vec<String> },
}

/// One nonzero value at the point `x` (a point label such as `"(1,1)"` or a list of element
/// labels) and index tuple `i` (positions in the index level, or index labels).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntrySpec {
    pub x: PointRef,
    pub i: Vec<IndexRef>,
    pub v: Vec<Num>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRef {
    Label(String),
    Elements(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexRef {
    Position(usize),
    Label(String),
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleSpec {
    #[serde(default)]
    pub gamma: Vec<EntrySpec>,
    #[serde(default)]
    pub eta: Vec<EntrySpec>,
    #[serde(default)]
    pub f: Vec<EntrySpec>,
    #[serde(default)]
    pub phi: Vec<EntrySpec>,
    #[serde(default)]
    pub theta: Vec<EntrySpec>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoboundarySpec {
    #[serde(default)]
    pub xi: Vec<EntrySpec>,
    #[serde(default)]
    pub rho: Vec<EntrySpec>,
    #[serde(default)]
    pub sigma: Vec<EntrySpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "regime", rename_all = "snake_case", deny_unknown_fields)]
pub enum IntegrateSpec {
    Geometric {
        model: String,
        /// `omega[c][a][b]`; defaults to the area form in the first two coordinates.
        #[serde(default)]
        omega: Option<Vec<Vec<Vec<Num>>>>,
        #[serde(default = "default_samples")]
        samples: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_spread")]
        spread: f64,
        #[serde(default = "default_jitter")]
        jitter: f64,
        #[serde(default = "default_radius")]
        radius: f64,
        #[serde(default)]
        squared_paths: bool,
    },
    Synthetic {
        /// The period matrix `ℤᵏ → ℝᵈ`, `per[row][col]`.
        per: Vec<Vec<Num>>,
        #[serde(default = "default_bound")]
        bound: i64,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

fn default_samples() -> usize {
    10
}
fn default_spread() -> f64 {
    1.0
}
fn default_jitter() -> f64 {
    0.1
}
fn default_radius() -> f64 {
    0.5
}
fn default_bound() -> i64 {
    2
}

pub fn load(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed scenario {}", path.display()))
}

/// `"Z/n"`, `"Z/2 x Z/2"`, `"S3"` or `"1"`.
pub fn parse_group(s: &str) -> Result<FiniteGroup> {
    let s = s.trim();
    match s {
        "S3" => return Ok(FiniteGroup::symmetric3()),
        "1" | "trivial" => return Ok(FiniteGroup::cyclic(1)),
        _ => {}
    }
    let moduli = s
        .split('x')
        .map(|p| {
            p.trim()
                .strip_prefix("Z/")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| anyhow!("unknown group {s:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteGroup::product(&moduli))
}

/// Products of `0`, `Z`, `Z^k`, `Z/n`, `R`, `R^d` separated by `x`.
pub fn parse_abelian(s: &str) -> Result<AbelianGroup> {
    let mut factors = Vec::new();
    for part in s.split('x').map(str::trim) {
        let (base, power) = match part.split_once('^') {
            Some((b, k)) => (b, k.parse::<usize>().with_context(|| format!("bad exponent in {s:?}"))?),
            None => (part, 1),
        };
        let f = match base {
            "0" => continue,
            "Z" => Factor::Integer,
            "R" => Factor::Real,
            _ => match base.strip_prefix("Z/").and_then(|n| n.parse::<u64>().ok()) {
                Some(n) if n > 0 => Factor::Cyclic(n),
                _ => bail!("unknown coefficient group {s:?}"),
            },
        };
        factors.extend(std::iter::repeat(f).take(power));
    }
    Ok(AbelianGroup::new(factors))
}

pub fn complex(spec: &ComplexSpec) -> Result<CoefficientComplex> {
    let a = parse_abelian(&spec.a)?;
    let b = parse_abelian(&spec.b)?;
    let mu = if spec.mu.is_empty() {
        vec![vec![0.0; a.dim()]; b.dim()]
    } else {
        spec.mu.iter().map(|r| values(r)).collect::<Result<_>>()?
    };
    Ok(CoefficientComplex::new(a, b, mu)?)
}

/// A tabulated covered nerve together with its group and coefficients.
pub struct Loaded {
    pub group: FiniteGroup,
    pub cx: CoefficientComplex,
    pub space: FiniteCoveredSpace,
}

pub fn build_space(group: &FiniteGroup, cover: &CoverSpec, max_level: usize) -> Result<FiniteCoveredSpace> {
    let space = match cover {
        CoverSpec::Trivial => FiniteCoveredSpace::from_nerve(group, &TrivialCover, max_level)?,
        CoverSpec::Copies { count } => {
            if *count == 0 {
                bail!("a cover needs at least one set");
            }
            let nerve = Arc::new(Nerve::new(group.clone()));
            let all: Vec<Predicate<Vec<usize>>> = (0..*count).map(|_| Arc::new(|_: &Vec<usize>| true) as Predicate<Vec<usize>>).collect();
            let c = refine_from_level(nerve, 0, all, None)?;
            FiniteCoveredSpace::from_nerve(group, &c, max_level)?
        }
        CoverSpec::Equivariant { v } => {
            let v = v
                .iter()
                .map(|l| group.parse_label(l).ok_or_else(|| anyhow!("unknown element {l:?} of {}", group.name())))
                .collect::<Result<Vec<_>>>()?;
            let c = finite_equivariant_cover(group, &v)?;
            let nerve = Nerve::new(group.clone());
            let label = |x: &Vec<usize>| tuple_label(&x.iter().map(|&g| group.label(g).to_string()).collect::<Vec<_>>());
            FiniteCoveredSpace::build(&nerve, &c, max_level, label, label)?
        }
    };
    Ok(space)
}

impl Scenario {
    pub fn load_space(&self, max_level: usize) -> Result<Loaded> {
        let group = parse_group(self.group.as_deref().ok_or_else(|| anyhow!("scenario has no \"group\""))?)?;
        let cx = complex(self.complex.as_ref().ok_or_else(|| anyhow!("scenario has no \"complex\""))?)?;
        let space = build_space(&group, &self.cover, max_level)?;
        Ok(Loaded { group, cx, space })
    }
}

impl Loaded {
    fn point(&self, p: usize, x: &PointRef) -> Result<usize> {
        let label = match x {
            PointRef::Label(s) => s.clone(),
            PointRef::Elements(es) => tuple_label(es),
        };
        self.space.level(p).point_labels.iter().position(|l| *l == label).ok_or_else(|| anyhow!("no point {label} at level {p}"))
    }

    fn index(&self, p: usize, i: &IndexRef) -> Result<usize> {
        let l = self.space.level(p);
        match i {
            IndexRef::Position(k) if *k < l.n_indices => Ok(*k),
            IndexRef::Position(k) => bail!("index {k} out of range at level {p}"),
            IndexRef::Label(s) => l.index_labels.iter().position(|x| x == s).ok_or_else(|| anyhow!("no index {s} at level {p}")),
        }
    }

    fn fill(&self, c: &mut TriCochain, entries: &[EntrySpec], name: &str) -> Result<()> {
        let g = self.cx.group(c.r);
        for e in entries {
            let ctx = || format!("{name} entry at {:?}", e.x);
            let x = self.point(c.p, &e.x).with_context(ctx)?;
            let t = e.i.iter().map(|i| self.index(c.p, i)).collect::<Result<Vec<_>>>().with_context(ctx)?;
            if t.len() != c.q + 1 {
                bail!("{}: expected {} indices", ctx(), c.q + 1);
            }
            if t.iter().any(|&i| !self.space.member(c.p, i, x)) {
                bail!("{}: point lies outside the intersection", ctx());
            }
            let mut v = values(&e.v).with_context(ctx)?;
            if v.len() != c.dim {
                bail!("{}: expected {} coordinates", ctx(), c.dim);
            }
            g.reduce(&mut v);
            c.set(x, &t, &v);
        }
        Ok(())
    }

    pub fn cocycle(&self, spec: &CocycleSpec) -> Result<CocycleSet> {
        let mut phi = CocycleSet::zeros(&self.space, &self.cx)?;
        self.fill(&mut phi.gamma, &spec.gamma, "gamma")?;
        self.fill(&mut phi.eta, &spec.eta, "eta")?;
        self.fill(&mut phi.f, &spec.f, "f")?;
        self.fill(&mut phi.phi, &spec.phi, "phi")?;
        self.fill(&mut phi.theta, &spec.theta, "theta")?;
        Ok(phi)
    }

    pub fn cochain2(&self, spec: &CoboundarySpec) -> Result<CochainSet2> {
        let mut psi = CochainSet2::zeros(&self.space, &self.cx)?;
        self.fill(&mut psi.xi, &spec.xi, "xi")?;
        self.fill(&mut psi.rho, &spec.rho, "rho")?;
        self.fill(&mut psi.sigma, &spec.sigma, "sigma")?;
        Ok(psi)
    }
}

/// Nonzero entries of a cochain, labelled by point and index positions.
pub fn entries(space: &FiniteCoveredSpace, c: &TriCochain, g: &AbelianGroup) -> Vec<EntrySpec> {
    let mut out = Vec::new();
    space.for_each_tuple(c.p, c.q, |x, t| {
        let v = c.get(x, t);
        if !g.is_zero(v) {
            out.push(EntrySpec {
                x: PointRef::Label(space.level(c.p).point_labels[x].clone()),
                i: t.iter().map(|&i| IndexRef::Position(i)).collect(),
                v: v.iter().map(|&y| Num::Float(y)).collect(),
            });
        }
    });
    out
}

pub fn cocycle_spec(space: &FiniteCoveredSpace, cx: &CoefficientComplex, phi: &CocycleSet) -> CocycleSpec {
    let e = |c: &TriCochain| entries(space, c, cx.group(c.r));
    CocycleSpec { gamma: e(&phi.gamma), eta: e(&phi.eta), f: e(&phi.f), phi: e(&phi.phi), theta: e(&phi.theta) }
}

pub fn complex_spec(cx: &CoefficientComplex) -> ComplexSpec {
    ComplexSpec {
        a: cx.a.to_string(),
        b: cx.b.to_string(),
        mu: cx.mu.iter().map(|r| r.iter().map(|&m| Num::Float(m)).collect()).collect(),
    }
}
