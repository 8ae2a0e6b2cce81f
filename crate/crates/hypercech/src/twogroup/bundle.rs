//! The groupoid presenting the principal bundle of a Čech 2-cocycle `(γ, η)`.

use thiserror::Error;

use crate::coeff::{AbelianGroup, CoefficientComplex};
use crate::cochain::{cech_delta, coeff_push, TriCochain};
use crate::report::Report;
use crate::space::FiniteCoveredSpace;
use crate::twogroup::groupoid::Groupoid;

#[derive(Debug, Error, PartialEq)]
pub enum BundleError {
    #[error("(γ, η) is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("γ must have shape (p,1,1) and η shape (p,2,0) at level {0}")]
    Shape(usize),
}

/// Object `(x, i, b)` with `x ∈ U_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Obj {
    pub x: usize,
    pub i: usize,
    pub b: Vec<f64>,
}

/// Arrow `(x, i, j, b, a)` with target `(x, i, b)` and source `(x, j, b + μ(a) + γ_{ij}(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow {
    pub x: usize,
    pub i: usize,
    pub j: usize,
    pub b: Vec<f64>,
    pub a: Vec<f64>,
}

pub(crate) fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub(crate) fn sub(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub(crate) fn reduced(g: &AbelianGroup, mut v: Vec<f64>) -> Vec<f64> {
    g.reduce(&mut v);
    v
}

#[derive(Clone, Debug)]
pub struct BundleGroupoid<'a> {
    pub space: &'a FiniteCoveredSpace,
    pub cx: &'a CoefficientComplex,
    pub level: usize,
    pub gamma: TriCochain,
    pub eta: TriCochain,
}

/// Builds the groupoid after checking `δ̌γ + μη = 0` and `δ̌η = 0` on every intersection.
pub fn bundle_groupoid<'a>(
    space: &'a FiniteCoveredSpace,
    cx: &'a CoefficientComplex,
    gamma: TriCochain,
    eta: TriCochain,
) -> Result<BundleGroupoid<'a>, BundleError> {
    let g = BundleGroupoid::new_unchecked(space, cx, gamma, eta)?;
    let r = g.check_cocycle();
    if let Some(name) = r.failing().first() {
        let e = r.get(name).unwrap();
        return Err(BundleError::NotACocycle(format!("{name} at {}", e.failures[0])));
    }
    Ok(g)
}

impl<'a> BundleGroupoid<'a> {
    /// Skips the cocycle check; used to observe which axiom a faulty cocycle breaks.
    pub fn new_unchecked(
        space: &'a FiniteCoveredSpace,
        cx: &'a CoefficientComplex,
        gamma: TriCochain,
        eta: TriCochain,
    ) -> Result<Self, BundleError> {
        let level = gamma.p;
        if gamma.shape() != (level, 1, 1) || eta.shape() != (level, 2, 0) {
            return Err(BundleError::Shape(level));
        }
        Ok(Self { space, cx, level, gamma, eta })
    }

    pub fn check_cocycle(&self) -> Report {
        let mut r = Report::new("bundle cocycle");
        let (space, cx) = (self.space, self.cx);
        let mut c = cech_delta(space, cx, &self.gamma).unwrap();
        c.add_scaled(&coeff_push(space, cx, &self.eta).unwrap(), 1.0);
        c.reduce(&cx.b);
        let name = "δ̌γ + μη = 0";
        r.entry(name);
        space.for_each_tuple(self.level, 2, |x, t| {
            let v = c.get(x, t);
            r.record(name, cx.b.is_zero(v), cx.b.norm(v), || space.describe(self.level, x, t));
        });
        let d = cech_delta(space, cx, &self.eta).unwrap();
        let name = "δ̌η = 0";
        r.entry(name);
        space.for_each_tuple(self.level, 3, |x, t| {
            let v = d.get(x, t);
            r.record(name, cx.a.is_zero(v), cx.a.norm(v), || space.describe(self.level, x, t));
        });
        r
    }

    pub fn gamma_at(&self, x: usize, i: usize, j: usize) -> &[f64] {
        self.gamma.get(x, &[i, j])
    }

    pub fn eta_at(&self, x: usize, i: usize, j: usize, k: usize) -> &[f64] {
        self.eta.get(x, &[i, j, k])
    }

    pub fn obj(&self, x: usize, i: usize, b: Vec<f64>) -> Obj {
        Obj { x, i, b: reduced(&self.cx.b, b) }
    }

    pub fn arrow(&self, x: usize, i: usize, j: usize, b: Vec<f64>, a: Vec<f64>) -> Arrow {
        Arrow { x, i, j, b: reduced(&self.cx.b, b), a: reduced(&self.cx.a, a) }
    }

    /// All objects and arrows over the intersections with coordinates from the given samples.
    pub fn enumerate(&self, b_samples: &[Vec<f64>], a_samples: &[Vec<f64>]) -> (Vec<Obj>, Vec<Arrow>) {
        let mut objs = Vec::new();
        let mut arrs = Vec::new();
        self.space.for_each_tuple(self.level, 0, |x, t| {
            for b in b_samples {
                objs.push(self.obj(x, t[0], b.clone()));
            }
        });
        self.space.for_each_tuple(self.level, 1, |x, t| {
            for b in b_samples {
                for a in a_samples {
                    arrs.push(self.arrow(x, t[0], t[1], b.clone(), a.clone()));
                }
            }
        });
        (objs, arrs)
    }

    fn eq_b(&self, x: &[f64], y: &[f64]) -> bool {
        self.cx.b.is_zero(&sub(x, y))
    }

    fn eq_a(&self, x: &[f64], y: &[f64]) -> bool {
        self.cx.a.is_zero(&sub(x, y))
    }

    /// Stable integer key of an object for finite coefficient groups.
    pub fn obj_key(o: &Obj) -> Vec<i64> {
        let mut k = vec![o.x as i64, o.i as i64];
        k.extend(o.b.iter().map(|v| v.round() as i64));
        k
    }
}

impl Groupoid for BundleGroupoid<'_> {
    type Obj = Obj;
    type Arr = Arrow;

    fn source(&self, f: &Arrow) -> Obj {
        let b = add(&add(&f.b, &self.cx.apply_mu(&f.a)), self.gamma_at(f.x, f.i, f.j));
        self.obj(f.x, f.j, b)
    }

    fn target(&self, f: &Arrow) -> Obj {
        Obj { x: f.x, i: f.i, b: f.b.clone() }
    }

    fn identity(&self, o: &Obj) -> Arrow {
        self.arrow(o.x, o.i, o.i, o.b.clone(), self.eta_at(o.x, o.i, o.i, o.i).to_vec())
    }

    /// `(x,i,j,b,a) ∘ (x,j,k,b',a') = (x,i,k,b,a+a'-η_{ijk}(x))`.
    fn compose_unchecked(&self, f: &Arrow, g: &Arrow) -> Arrow {
        let a = sub(&add(&f.a, &g.a), self.eta_at(f.x, f.i, f.j, g.j));
        self.arrow(f.x, f.i, g.j, f.b.clone(), a)
    }

    /// `(x, j, i, b + μ(a) + γ_{ij}, η_{iji} + η_{iii} - a)`.
    fn inverse(&self, f: &Arrow) -> Arrow {
        let s = self.source(f);
        let a = sub(&add(self.eta_at(f.x, f.i, f.j, f.i), self.eta_at(f.x, f.i, f.i, f.i)), &f.a);
        self.arrow(f.x, f.j, f.i, s.b, a)
    }

    fn obj_eq(&self, x: &Obj, y: &Obj) -> bool {
        x.x == y.x && x.i == y.i && self.eq_b(&x.b, &y.b)
    }

    fn arr_eq(&self, f: &Arrow, g: &Arrow) -> bool {
        f.x == g.x && f.i == g.i && f.j == g.j && self.eq_b(&f.b, &g.b) && self.eq_a(&f.a, &g.a)
    }

    fn arr_residual(&self, f: &Arrow, g: &Arrow) -> f64 {
        self.cx.b.norm(&sub(&f.b, &g.b)).max(self.cx.a.norm(&sub(&f.a, &g.a)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::refine_from_level;
    use crate::group::FiniteGroup;
    use crate::simplicial::Nerve;
    use crate::twogroup::groupoid::check_groupoid_axioms;
    use std::sync::Arc;

    fn two_index_space() -> FiniteCoveredSpace {
        let g = FiniteGroup::cyclic(2);
        let nerve = Arc::new(Nerve::new(g.clone()));
        let all = || -> crate::covers::Predicate<Vec<usize>> { Arc::new(|_: &Vec<usize>| true) };
        let c = refine_from_level(nerve, 0, vec![all(), all()], None).unwrap();
        FiniteCoveredSpace::from_nerve(&g, &c, 2).unwrap()
    }

    fn z2_id() -> CoefficientComplex {
        CoefficientComplex::new(AbelianGroup::cyclic(2), AbelianGroup::cyclic(2), vec![vec![1.0]]).unwrap()
    }

    fn elems() -> Vec<Vec<f64>> {
        vec![vec![0.0], vec![1.0]]
    }

    #[test]
    fn trivial_cocycle_gives_groupoid() {
        let s = two_index_space();
        let cx = z2_id();
        let g = bundle_groupoid(&s, &cx, TriCochain::zeros_in(&s, &cx, 1, 1, 1).unwrap(), TriCochain::zeros_in(&s, &cx, 1, 2, 0).unwrap())
            .unwrap();
        let (_, arrs) = g.enumerate(&elems(), &elems());
        let f = &arrs[1];
        assert_eq!(g.source(f).b, reduced(&cx.b, add(&f.b, &f.a)));
        let r = check_groupoid_axioms(&g, &arrs);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn cech_coboundary_cocycle_gives_groupoid() {
        // γ = δ̌c, η = 0 for a 0-cochain c
        let s = two_index_space();
        let cx = z2_id();
        let mut c = TriCochain::zeros_in(&s, &cx, 1, 0, 1).unwrap();
        c.fill(&s, |x, t| vec![((x + t[0]) % 2) as f64]);
        let gamma = cech_delta(&s, &cx, &c).unwrap();
        let g = bundle_groupoid(&s, &cx, gamma, TriCochain::zeros_in(&s, &cx, 1, 2, 0).unwrap()).unwrap();
        let (_, arrs) = g.enumerate(&elems(), &elems());
        assert!(check_groupoid_axioms(&g, &arrs).passed());
    }

    #[test]
    fn eta_fault_breaks_associativity_only() {
        let s = two_index_space();
        let cx = CoefficientComplex::only_a(AbelianGroup::cyclic(2));
        let mut eta = TriCochain::zeros_in(&s, &cx, 1, 2, 0).unwrap();
        eta.set(1, &[0, 1, 2], &[1.0]);
        let gamma = TriCochain::zeros_in(&s, &cx, 1, 1, 1).unwrap();
        assert!(matches!(bundle_groupoid(&s, &cx, gamma.clone(), eta.clone()), Err(BundleError::NotACocycle(_))));
        let g = BundleGroupoid::new_unchecked(&s, &cx, gamma, eta).unwrap();
        let (_, arrs) = g.enumerate(&[vec![]], &elems());
        let r = check_groupoid_axioms(&g, &arrs);
        assert_eq!(r.failing(), vec!["associativity"]);
    }
}
