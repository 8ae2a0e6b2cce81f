//! The 2-group `Γ[φ]` of a normalized degree-3 cocycle: the bundle groupoid of `(γ, η)` at
//! level 1, multiplication from `(F, Φ)`, associator from `Θ`, and its verification.

use thiserror::Error;

use crate::coeff::CoefficientComplex;
use crate::cochain::{check_cocycle3, is_normalized, CochainError, CocycleSet};
use crate::report::Report;
use crate::space::FiniteCoveredSpace;
use crate::twogroup::bundle::{add, reduced, sub, Arrow, BundleGroupoid, Obj};
use crate::twogroup::crossed::{CmArrow, CrossedModule2Group};
use crate::twogroup::groupoid::{check_groupoid_axioms, FiniteGroupoid, FiniteMorphism, Groupoid};

#[derive(Debug, Error, PartialEq)]
pub enum TwoGroupError {
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("cocycle check failed: {0}")]
    NotACocycle(String),
    #[error("cocycle is not normalized in component ({0},{1},{2})")]
    NotNormalized(usize, usize, usize),
    #[error("no index at level 1 contains the identity")]
    NoUnit,
    #[error("space must be tabulated up to level 4")]
    TooShallow,
    #[error("verification failed: {0}")]
    Verification(String),
}

/// Report entry names of the checks tied to single cocycle equations.
pub const CHECK_MULT_SOURCE_TARGET: &str = "multiplication preserves source and target";
pub const CHECK_MULT_COMPOSITION: &str = "multiplication preserves composition";
pub const CHECK_ASSOCIATOR_ENDPOINTS: &str = "associator runs from f1 to f2";
pub const CHECK_ASSOCIATOR_NATURALITY: &str = "associator naturality";
pub const CHECK_PENTAGON: &str = "pentagon";

/// The equation component each axiom check is equivalent to.
pub const CHECK_EQUATIONS: [(&str, (usize, usize, usize)); 5] = [
    (CHECK_MULT_SOURCE_TARGET, (2, 1, 1)),
    (CHECK_MULT_COMPOSITION, (2, 2, 0)),
    (CHECK_ASSOCIATOR_ENDPOINTS, (3, 0, 1)),
    (CHECK_ASSOCIATOR_NATURALITY, (3, 1, 0)),
    (CHECK_PENTAGON, (4, 0, 0)),
];

/// Sample coordinates used where `A` or `B` is infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSamples {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

impl CoeffSamples {
    /// All elements of finite groups; a fixed small set of values per coordinate otherwise.
    pub fn default_for(cx: &CoefficientComplex) -> Self {
        let pick = |g: &crate::coeff::AbelianGroup, vals: &[f64]| -> Vec<Vec<f64>> {
            g.elements().unwrap_or_else(|| {
                let d = g.dim();
                let mut out = vec![vec![0.0; d]];
                for (k, &v) in vals.iter().enumerate() {
                    out.push((0..d).map(|c| if (c + k) % 2 == 0 { v } else { -v / 2.0 }).collect());
                }
                for s in out.iter_mut() {
                    g.reduce(s);
                }
                out
            })
        };
        let int_or = |g: &crate::coeff::AbelianGroup, reals: &[f64], ints: &[f64]| {
            if g.factors.contains(&crate::coeff::Factor::Real) {
                pick(g, reals)
            } else {
                pick(g, ints)
            }
        };
        Self { a: int_or(&cx.a, &[1.5, -0.25], &[1.0, -2.0]), b: int_or(&cx.b, &[0.5, -1.25], &[1.0, -2.0]) }
    }
}

/// A Γ²-arrow: components over the edges `(0,1)` and `(1,2)` of a level-2 point.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrow2 {
    pub v: usize,
    pub iota: usize,
    pub kappa: usize,
    pub b: [Vec<f64>; 2],
    pub a: [Vec<f64>; 2],
}

/// A Γ³-object over a level-3 point, with components over the edges `(k,k+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Obj3 {
    pub w: usize,
    pub iota: usize,
    pub b: [Vec<f64>; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct Arrow3 {
    pub w: usize,
    pub iota: usize,
    pub kappa: usize,
    pub b: [Vec<f64>; 3],
    pub a: [Vec<f64>; 3],
}

/// The 2-group built from a normalized cocycle.
#[derive(Clone, Debug)]
pub struct TwoGroup<'a> {
    pub space: &'a FiniteCoveredSpace,
    pub cx: &'a CoefficientComplex,
    pub phi: CocycleSet,
    pub base: BundleGroupoid<'a>,
    pub unit_index: usize,
    pub samples: CoeffSamples,
}

/// Applies faces to a point of level `n` so that only the listed vertices remain.
pub fn restrict_point(space: &FiniteCoveredSpace, n: usize, x: usize, verts: &[usize]) -> usize {
    let mut y = x;
    let mut level = n;
    for k in (0..=n).rev() {
        if !verts.contains(&k) {
            y = space.face(level, k, y);
            level -= 1;
        }
    }
    y
}

pub fn restrict_index(space: &FiniteCoveredSpace, n: usize, i: usize, verts: &[usize]) -> usize {
    let mut y = i;
    let mut level = n;
    for k in (0..=n).rev() {
        if !verts.contains(&k) {
            y = space.index_face(level, k, y);
            level -= 1;
        }
    }
    y
}

/// Builds `Γ[φ]` after checking that `φ` is a normalized cocycle.
pub fn two_group_from_cocycle<'a>(
    space: &'a FiniteCoveredSpace,
    cx: &'a CoefficientComplex,
    phi: CocycleSet,
    samples: Option<CoeffSamples>,
) -> Result<TwoGroup<'a>, TwoGroupError> {
    let r = check_cocycle3(space, cx, &phi)?;
    if let Some(name) = r.failing().first() {
        let e = r.get(name).unwrap();
        return Err(TwoGroupError::NotACocycle(format!("{name} at {}", e.failures[0])));
    }
    for c in phi.components() {
        if !is_normalized(space, cx, c) {
            return Err(TwoGroupError::NotNormalized(c.p, c.q, c.r));
        }
    }
    TwoGroup::new_unchecked(space, cx, phi, samples)
}

impl<'a> TwoGroup<'a> {
    /// Skips the cocycle and normalization checks; used for fault injection.
    pub fn new_unchecked(
        space: &'a FiniteCoveredSpace,
        cx: &'a CoefficientComplex,
        phi: CocycleSet,
        samples: Option<CoeffSamples>,
    ) -> Result<Self, TwoGroupError> {
        if space.max_level() < 4 {
            return Err(TwoGroupError::TooShallow);
        }
        let unit_index = space.unit_index().ok_or(TwoGroupError::NoUnit)?;
        let base = BundleGroupoid::new_unchecked(space, cx, phi.gamma.clone(), phi.eta.clone()).expect("shapes fixed by CocycleSet");
        let samples = samples.unwrap_or_else(|| CoeffSamples::default_for(cx));
        Ok(Self { space, cx, phi, base, unit_index, samples })
    }

    fn rb(&self, v: Vec<f64>) -> Vec<f64> {
        reduced(&self.cx.b, v)
    }

    fn ra(&self, v: Vec<f64>) -> Vec<f64> {
        reduced(&self.cx.a, v)
    }

    fn f_at(&self, v: usize, iota: usize) -> &[f64] {
        self.phi.f.get(v, &[iota])
    }

    fn phi_at(&self, v: usize, iota: usize, kappa: usize) -> &[f64] {
        self.phi.phi.get(v, &[iota, kappa])
    }

    /// `m(b0, b1) = b0 + b1 + F_ι(v)` over `d_1 v`.
    pub fn mult_obj(&self, v: usize, iota: usize, b0: &[f64], b1: &[f64]) -> Obj {
        Obj { x: self.space.face(2, 1, v), i: self.space.index_face(2, 1, iota), b: self.rb(add(&add(b0, b1), self.f_at(v, iota))) }
    }

    /// `m` on a Γ²-arrow: `(d_1v, d_1ι, d_1κ, b0+b1+F_ι(v), a0+a1+Φ_{ικ}(v))`.
    pub fn mult(&self, f: &Arrow2) -> Arrow {
        let s = self.space;
        Arrow {
            x: s.face(2, 1, f.v),
            i: s.index_face(2, 1, f.iota),
            j: s.index_face(2, 1, f.kappa),
            b: self.rb(add(&add(&f.b[0], &f.b[1]), self.f_at(f.v, f.iota))),
            a: self.ra(add(&add(&f.a[0], &f.a[1]), self.phi_at(f.v, f.iota, f.kappa))),
        }
    }

    /// The two components of a Γ²-arrow as arrows of the base.
    pub fn components2(&self, f: &Arrow2) -> [Arrow; 2] {
        let s = self.space;
        let comp = |k: usize, face: usize| Arrow {
            x: s.face(2, face, f.v),
            i: s.index_face(2, face, f.iota),
            j: s.index_face(2, face, f.kappa),
            b: f.b[k].clone(),
            a: f.a[k].clone(),
        };
        [comp(0, 2), comp(1, 0)]
    }

    pub fn source2(&self, f: &Arrow2) -> (usize, usize, [Vec<f64>; 2]) {
        let [c0, c1] = self.components2(f);
        (f.v, f.kappa, [self.base.source(&c0).b, self.base.source(&c1).b])
    }

    /// Componentwise composition in the restricted product, without composability checks.
    pub fn compose2(&self, f: &Arrow2, g: &Arrow2) -> Arrow2 {
        let [f0, f1] = self.components2(f);
        let [g0, g1] = self.components2(g);
        let c0 = self.base.compose_unchecked(&f0, &g0);
        let c1 = self.base.compose_unchecked(&f1, &g1);
        Arrow2 { v: f.v, iota: f.iota, kappa: g.kappa, b: [c0.b, c1.b], a: [c0.a, c1.a] }
    }

    /// The Γ²-arrow at level `n` over the vertices `verts` from two component arrows.
    fn pair_over(&self, n: usize, x: usize, iota: usize, kappa: usize, verts: [usize; 3], c0: (&[f64], &[f64]), c1: (&[f64], &[f64])) -> Arrow2 {
        Arrow2 {
            v: restrict_point(self.space, n, x, &verts),
            iota: restrict_index(self.space, n, iota, &verts),
            kappa: restrict_index(self.space, n, kappa, &verts),
            b: [c0.0.to_vec(), c1.0.to_vec()],
            a: [c0.1.to_vec(), c1.1.to_vec()],
        }
    }

    fn zero_a(&self) -> Vec<f64> {
        vec![0.0; self.cx.a.dim()]
    }

    /// `m ∘ (m × id)` on a Γ³-arrow: the product of the first two components, then the third.
    pub fn f2(&self, f: &Arrow3) -> Arrow {
        let p01 = self.pair_over(3, f.w, f.iota, f.kappa, [0, 1, 2], (&f.b[0], &f.a[0]), (&f.b[1], &f.a[1]));
        let m01 = self.mult(&p01);
        self.mult(&self.pair_over(3, f.w, f.iota, f.kappa, [0, 2, 3], (&m01.b, &m01.a), (&f.b[2], &f.a[2])))
    }

    /// `m ∘ (id × m)` on a Γ³-arrow.
    pub fn f1(&self, f: &Arrow3) -> Arrow {
        let p12 = self.pair_over(3, f.w, f.iota, f.kappa, [1, 2, 3], (&f.b[1], &f.a[1]), (&f.b[2], &f.a[2]));
        let m12 = self.mult(&p12);
        self.mult(&self.pair_over(3, f.w, f.iota, f.kappa, [0, 1, 3], (&f.b[0], &f.a[0]), (&m12.b, &m12.a)))
    }

    fn identity3(&self, o: &Obj3) -> Arrow3 {
        Arrow3 { w: o.w, iota: o.iota, kappa: o.iota, b: o.b.clone(), a: [self.zero_a(), self.zero_a(), self.zero_a()] }
    }

    /// The associator at a Γ³-object: an arrow from `f1(o)` to `f2(o)` with `A`-part `-Θ_ι(w)`.
    pub fn associator(&self, o: &Obj3) -> Arrow {
        let f2 = self.f2(&self.identity3(o));
        let a = self.ra(self.phi.theta.get(o.w, &[o.iota]).iter().map(|t| -t).collect());
        Arrow { x: f2.x, i: f2.i, j: f2.i, b: f2.b, a }
    }

    pub fn unit(&self) -> Obj {
        Obj { x: self.space.identity_point(), i: self.unit_index, b: vec![0.0; self.cx.b.dim()] }
    }

    /// `p: [A → B] → Γ`, `(a, b) ↦ (e, u, u, μ(a) + b, -a)`.
    pub fn p_arrow(&self, f: &CmArrow) -> Arrow {
        let u = self.unit();
        Arrow { x: u.x, i: u.i, j: u.i, b: self.rb(add(&self.cx.apply_mu(&f.a), &f.b)), a: self.ra(f.a.iter().map(|x| -x).collect()) }
    }

    pub fn p_obj(&self, b: &[f64]) -> Obj {
        let u = self.unit();
        Obj { x: u.x, i: u.i, b: self.rb(b.to_vec()) }
    }

    /// `q: Γ → disc(G)` on objects.
    pub fn q_obj(&self, o: &Obj) -> usize {
        o.x
    }

    pub fn enumerate2(&self) -> Vec<Arrow2> {
        let mut out = Vec::new();
        let sm = &self.samples;
        self.space.for_each_tuple(2, 1, |v, t| {
            for b0 in &sm.b {
                for b1 in &sm.b {
                    for a0 in &sm.a {
                        for a1 in &sm.a {
                            out.push(Arrow2 { v, iota: t[0], kappa: t[1], b: [b0.clone(), b1.clone()], a: [a0.clone(), a1.clone()] });
                        }
                    }
                }
            }
        });
        out
    }

    fn enumerate3_objects(&self) -> Vec<Obj3> {
        let mut out = Vec::new();
        let sm = &self.samples.b;
        self.space.for_each_tuple(3, 0, |w, t| {
            for b0 in sm {
                for b1 in sm {
                    for b2 in sm {
                        out.push(Obj3 { w, iota: t[0], b: [b0.clone(), b1.clone(), b2.clone()] });
                    }
                }
            }
        });
        out
    }

    /// Runs every structural check; each of the five named checks is equivalent to one
    /// cocycle equation component, see [`CHECK_EQUATIONS`].
    pub fn verify(&self) -> Report {
        let mut r = Report::new("2-group from cocycle");
        let (_, arrows1) = self.base.enumerate(&self.samples.b, &self.samples.a);
        r.absorb("groupoid: ", self.base.check_cocycle());
        r.absorb("groupoid: ", check_groupoid_axioms(&self.base, &arrows1));
        self.check_multiplication(&mut r);
        self.check_associator(&mut r);
        self.check_pentagon(&mut r);
        self.check_units(&mut r, &arrows1);
        self.check_extension(&mut r);
        self.check_inverses(&mut r);
        r
    }

    fn check_multiplication(&self, r: &mut Report) {
        r.entry(CHECK_MULT_SOURCE_TARGET);
        r.entry(CHECK_MULT_COMPOSITION);
        let arrows2 = self.enumerate2();
        for f in &arrows2 {
            let m = self.mult(f);
            let (v, kappa, sb) = self.source2(f);
            let ms = self.mult_obj(v, kappa, &sb[0], &sb[1]);
            let bs = self.base.source(&m);
            let ok = self.base.obj_eq(&bs, &ms);
            r.record(CHECK_MULT_SOURCE_TARGET, ok, self.cx.b.norm(&sub(&bs.b, &ms.b)), || {
                self.space.describe(2, f.v, &[f.iota, f.kappa])
            });
        }
        // composition on pairs sharing the middle index; b-parts of g are forced by f
        for f in arrows2.iter().filter(|f| f.b.iter().all(|b| self.cx.b.is_zero(b)) || self.cx.b.dim() == 0) {
            let (v, kappa, sb) = self.source2(f);
            for &lambda in &self.space.level(2).containing[v] {
                for a0 in &self.samples.a {
                    let g = Arrow2 { v, iota: kappa, kappa: lambda, b: sb.clone(), a: [a0.clone(), self.samples.a[0].clone()] };
                    let lhs = self.mult(&self.compose2(f, &g));
                    let rhs = self.base.compose_unchecked(&self.mult(f), &self.mult(&g));
                    r.record(CHECK_MULT_COMPOSITION, self.base.arr_eq(&lhs, &rhs), self.base.arr_residual(&lhs, &rhs), || {
                        self.space.describe(2, v, &[f.iota, kappa, lambda])
                    });
                }
            }
        }
    }

    fn check_associator(&self, r: &mut Report) {
        r.entry(CHECK_ASSOCIATOR_ENDPOINTS);
        r.entry(CHECK_ASSOCIATOR_NATURALITY);
        let objs = self.enumerate3_objects();
        for o in &objs {
            let alpha = self.associator(o);
            let id = self.identity3(o);
            let (f1, f2) = (self.f1(&id), self.f2(&id));
            let t_ok = self.base.obj_eq(&self.base.target(&alpha), &self.base.target(&f2));
            let s = self.base.source(&alpha);
            let s1 = self.base.target(&f1);
            let ok = t_ok && self.base.obj_eq(&s, &s1);
            r.record(CHECK_ASSOCIATOR_ENDPOINTS, ok, self.cx.b.norm(&sub(&s.b, &s1.b)), || self.space.describe(3, o.w, &[o.iota]));
        }
        // naturality on arrows γ: (w, ι, κ) with zero B-parts at the target and sampled A-parts
        let zb = vec![0.0; self.cx.b.dim()];
        let a0 = &self.samples.a;
        self.space.for_each_tuple(3, 1, |w, t| {
            for a in a0.iter().take(2) {
                let g = Arrow3 { w, iota: t[0], kappa: t[1], b: [zb.clone(), zb.clone(), zb.clone()], a: [a.clone(), a0[0].clone(), a.clone()] };
                let tgt = Obj3 { w, iota: t[0], b: g.b.clone() };
                let src = self.source3(&g);
                let lhs = self.base.compose_unchecked(&self.f2(&g), &self.associator(&src));
                let rhs = self.base.compose_unchecked(&self.associator(&tgt), &self.f1(&g));
                r.record(CHECK_ASSOCIATOR_NATURALITY, self.base.arr_eq(&lhs, &rhs), self.base.arr_residual(&lhs, &rhs), || {
                    self.space.describe(3, w, t)
                });
            }
        });
    }

    fn source3(&self, g: &Arrow3) -> Obj3 {
        let s = self.space;
        let b: Vec<Vec<f64>> = (0..3)
            .map(|k| {
                let verts = [k, k + 1];
                let c = Arrow {
                    x: restrict_point(s, 3, g.w, &verts),
                    i: restrict_index(s, 3, g.iota, &verts),
                    j: restrict_index(s, 3, g.kappa, &verts),
                    b: g.b[k].clone(),
                    a: g.a[k].clone(),
                };
                self.base.source(&c).b
            })
            .collect();
        Obj3 { w: g.w, iota: g.kappa, b: [b[0].clone(), b[1].clone(), b[2].clone()] }
    }

    /// Γ³-object at the face of a level-4 point keeping `verts`, with the given components.
    fn obj3_over(&self, w: usize, iota: usize, verts: [usize; 4], b: [Vec<f64>; 3]) -> Obj3 {
        Obj3 { w: restrict_point(self.space, 4, w, &verts), iota: restrict_index(self.space, 4, iota, &verts), b }
    }

    /// `m` at level 4 over three vertices applied to objects.
    fn m4(&self, w: usize, iota: usize, verts: [usize; 3], b0: &[f64], b1: &[f64]) -> Vec<f64> {
        let v = restrict_point(self.space, 4, w, &verts);
        let i = restrict_index(self.space, 4, iota, &verts);
        self.mult_obj(v, i, b0, b1).b
    }

    /// `m` at level 4 over three vertices applied to an identity and an arrow, in either order.
    fn m4_arrow(&self, w: usize, iota: usize, verts: [usize; 3], left: (&[f64], &[f64]), right: (&[f64], &[f64])) -> Arrow {
        self.mult(&self.pair_over(4, w, iota, iota, verts, left, right))
    }

    fn check_pentagon(&self, r: &mut Report) {
        r.entry(CHECK_PENTAGON);
        let sm = &self.samples.b;
        let za = self.zero_a();
        self.space.for_each_tuple(4, 0, |w, t| {
            let iota = t[0];
            for bs in [[&sm[0], &sm[0], &sm[0], &sm[0]], [&sm[sm.len() - 1], &sm[0], &sm[sm.len() / 2], &sm[sm.len() - 1]]] {
                let [b0, b1, b2, b3] = bs.map(|b| b.clone());
                let m012 = self.m4(w, iota, [0, 1, 2], &b0, &b1);
                let m123 = self.m4(w, iota, [1, 2, 3], &b1, &b2);
                let m234 = self.m4(w, iota, [2, 3, 4], &b2, &b3);
                let o0 = self.obj3_over(w, iota, [1, 2, 3, 4], [b1.clone(), b2.clone(), b3.clone()]);
                let o1 = self.obj3_over(w, iota, [0, 2, 3, 4], [m012.clone(), b2.clone(), b3.clone()]);
                let o2 = self.obj3_over(w, iota, [0, 1, 3, 4], [b0.clone(), m123.clone(), b3.clone()]);
                let o3 = self.obj3_over(w, iota, [0, 1, 2, 4], [b0.clone(), b1.clone(), m234.clone()]);
                let o4 = self.obj3_over(w, iota, [0, 1, 2, 3], [b0.clone(), b1.clone(), b2.clone()]);
                let path1 = self.base.compose_unchecked(&self.associator(&o1), &self.associator(&o3));
                let a0 = self.associator(&o0);
                let a4 = self.associator(&o4);
                let id_w_a0 = self.m4_arrow(w, iota, [0, 1, 4], (&b0, &za), (&a0.b, &a0.a));
                let a4_id_z = self.m4_arrow(w, iota, [0, 3, 4], (&a4.b, &a4.a), (&b3, &za));
                let path2 =
                    self.base.compose_unchecked(&a4_id_z, &self.base.compose_unchecked(&self.associator(&o2), &id_w_a0));
                r.record(CHECK_PENTAGON, self.base.arr_eq(&path1, &path2), self.base.arr_residual(&path1, &path2), || {
                    self.space.describe(4, w, t)
                });
            }
        });
    }

    fn check_units(&self, r: &mut Report, arrows1: &[Arrow]) {
        let s = self.space;
        let zb = vec![0.0; self.cx.b.dim()];
        let za = self.zero_a();
        for f in arrows1 {
            let right = Arrow2 {
                v: s.degeneracy(1, 1, f.x),
                iota: s.index_degeneracy(1, 1, f.i),
                kappa: s.index_degeneracy(1, 1, f.j),
                b: [f.b.clone(), zb.clone()],
                a: [f.a.clone(), za.clone()],
            };
            let m = self.mult(&right);
            r.record("right unit is strict", self.base.arr_eq(&m, f), self.base.arr_residual(&m, f), || format!("{f:?}"));
            let left = Arrow2 {
                v: s.degeneracy(1, 0, f.x),
                iota: s.index_degeneracy(1, 0, f.i),
                kappa: s.index_degeneracy(1, 0, f.j),
                b: [zb.clone(), f.b.clone()],
                a: [za.clone(), f.a.clone()],
            };
            let m = self.mult(&left);
            r.record("left unit is strict", self.base.arr_eq(&m, f), self.base.arr_residual(&m, f), || format!("{f:?}"));
        }
    }

    fn check_extension(&self, r: &mut Report) {
        let cm = CrossedModule2Group { cx: self.cx.clone() };
        let arrows: Vec<CmArrow> =
            self.samples.a.iter().flat_map(|a| self.samples.b.iter().map(|b| cm.arrow(a.clone(), b.clone()))).collect();
        let e = self.space.identity_point();
        for f in &arrows {
            let pf = self.p_arrow(f);
            let ok = self.base.obj_eq(&self.base.source(&pf), &self.p_obj(&cm.source(f)))
                && self.base.obj_eq(&self.base.target(&pf), &self.p_obj(&cm.target(f)));
            r.record("extension: p preserves source and target", ok, 0.0, || format!("{f:?}"));
            r.record("extension: q∘p is trivial", self.q_obj(&self.base.target(&pf)) == e && pf.x == e, 0.0, || format!("{f:?}"));
            let g = cm.arrow(self.samples.a[self.samples.a.len() - 1].clone(), cm.target(f));
            let lhs = self.p_arrow(&cm.compose_unchecked(&g, f));
            let rhs = self.base.compose_unchecked(&self.p_arrow(&g), &pf);
            r.record("extension: p preserves composition", self.base.arr_eq(&lhs, &rhs), self.base.arr_residual(&lhs, &rhs), || {
                format!("{g:?} ∘ {f:?}")
            });
        }
    }

    /// `m(x, -) ≅ y` is solvable for sampled objects `x, y`.
    fn check_inverses(&self, r: &mut Report) {
        let s = self.space;
        let (objs, _) = self.base.enumerate(&self.samples.b[..1], &self.samples.a[..1]);
        for x in &objs {
            for y in &objs {
                // a level-2 point (g, h) with g = x.x and gh = y.x, and an index over it starting at x.i
                let found = (0..s.level(2).n_points)
                    .filter(|&v| s.face(2, 2, v) == x.x && s.face(2, 1, v) == y.x)
                    .flat_map(|v| s.level(2).containing[v].iter().map(move |&iota| (v, iota)))
                    .find(|&(_, iota)| s.index_face(2, 2, iota) == x.i && s.member(1, y.i, y.x));
                let ok = match found {
                    Some((v, iota)) => {
                        let j = s.index_face(2, 1, iota);
                        let bz = sub(&sub(&add(&y.b, self.base.gamma_at(y.x, y.i, j)), &x.b), self.f_at(v, iota));
                        let z = Obj { x: s.face(2, 0, v), i: s.index_face(2, 0, iota), b: self.rb(bz) };
                        let m = self.mult_obj(v, iota, &x.b, &z.b);
                        let arrow = self.base.arrow(y.x, y.i, j, y.b.clone(), self.zero_a());
                        self.base.obj_eq(&self.base.source(&arrow), &m) && self.base.obj_eq(&self.base.target(&arrow), y)
                    }
                    None => false,
                };
                r.record("inverses: m(x,-) ≅ y solvable", ok, 0.0, || format!("x={x:?} y={y:?}"));
            }
        }
    }

    /// The restricted product Γ² and the functor `Γ² → Γ × Γ` as finite tables.
    pub fn restricted_product_tables(&self) -> (FiniteGroupoid, FiniteGroupoid, FiniteMorphism) {
        let (objs1, arrows1) = self.base.enumerate(&self.samples.b, &self.samples.a);
        let key1 = BundleGroupoid::obj_key;
        let idx1: std::collections::HashMap<Vec<i64>, usize> = objs1.iter().enumerate().map(|(k, o)| (key1(o), k)).collect();
        let t1 = FiniteGroupoid::tabulate(&self.base, &objs1, &arrows1, key1).expect("closed under source and target");
        let prod_arrows: Vec<(usize, usize)> = (0..arrows1.len()).flat_map(|a| (0..arrows1.len()).map(move |b| (a, b))).collect();
        let n1 = objs1.len();
        let prod = FiniteGroupoid {
            n_objects: n1 * n1,
            arrows: prod_arrows.iter().map(|&(f, g)| (t1.arrows[f].0 * n1 + t1.arrows[g].0, t1.arrows[f].1 * n1 + t1.arrows[g].1)).collect(),
        };
        let arr_index: std::collections::HashMap<(usize, usize, usize, Vec<i64>), usize> = arrows1
            .iter()
            .enumerate()
            .map(|(k, f)| {
                let mut key = f.b.iter().map(|v| v.round() as i64).collect::<Vec<_>>();
                key.extend(f.a.iter().map(|v| v.round() as i64));
                ((f.x, f.i, f.j, key), k)
            })
            .collect();
        let akey = |f: &Arrow| {
            let mut key = f.b.iter().map(|v| v.round() as i64).collect::<Vec<_>>();
            key.extend(f.a.iter().map(|v| v.round() as i64));
            (f.x, f.i, f.j, key)
        };
        // Γ² objects and arrows
        let mut objs2 = Vec::new();
        self.space.for_each_tuple(2, 0, |v, t| {
            for b0 in &self.samples.b {
                for b1 in &self.samples.b {
                    objs2.push((v, t[0], b0.clone(), b1.clone()));
                }
            }
        });
        let obj2_index: std::collections::HashMap<(usize, usize, Vec<i64>), usize> = objs2
            .iter()
            .enumerate()
            .map(|(k, (v, i, b0, b1))| ((*v, *i, b0.iter().chain(b1).map(|x| x.round() as i64).collect()), k))
            .collect();
        let okey = |v: usize, i: usize, b: &[Vec<f64>; 2]| (v, i, b[0].iter().chain(&b[1]).map(|x| x.round() as i64).collect::<Vec<_>>());
        let arrows2 = self.enumerate2();
        let mut g2_arrows = Vec::new();
        let mut f_arrows = Vec::new();
        for f in &arrows2 {
            let (v, kappa, sb) = self.source2(f);
            let s_idx = obj2_index[&okey(v, kappa, &sb)];
            let t_idx = obj2_index[&okey(f.v, f.iota, &f.b)];
            g2_arrows.push((s_idx, t_idx));
            let [c0, c1] = self.components2(f);
            f_arrows.push(arr_index[&akey(&c0)] * arrows1.len() + arr_index[&akey(&c1)]);
        }
        let f_objs: Vec<usize> = objs2
            .iter()
            .map(|(v, i, b0, b1)| {
                let o0 = self.base.obj(self.space.face(2, 2, *v), self.space.index_face(2, 2, *i), b0.clone());
                let o1 = self.base.obj(self.space.face(2, 0, *v), self.space.index_face(2, 0, *i), b1.clone());
                idx1[&key1(&o0)] * n1 + idx1[&key1(&o1)]
            })
            .collect();
        (FiniteGroupoid { n_objects: objs2.len(), arrows: g2_arrows }, prod, FiniteMorphism { objects: f_objs, arrows: f_arrows })
    }
}

/// Raises the first failing check as an error.
pub fn verified<'a>(g: TwoGroup<'a>) -> Result<(TwoGroup<'a>, Report), TwoGroupError> {
    let r = g.verify();
    if let Some(name) = r.failing().first() {
        let e = r.get(name).unwrap();
        return Err(TwoGroupError::Verification(format!("{name} at {}", e.failures.first().cloned().unwrap_or_default())));
    }
    Ok((g, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::AbelianGroup;
    use crate::cohomology::cocycle_basis_mod_p;
    use crate::covers::{refine_from_level, Predicate};
    use crate::group::FiniteGroup;
    use crate::simplicial::Nerve;
    use crate::twogroup::groupoid::is_essential_equivalence;
    use std::sync::Arc;

    fn two_index_space(max_level: usize) -> FiniteCoveredSpace {
        let g = FiniteGroup::cyclic(2);
        let nerve = Arc::new(Nerve::new(g.clone()));
        let all = || -> Predicate<Vec<usize>> { Arc::new(|_: &Vec<usize>| true) };
        let c = refine_from_level(nerve, 0, vec![all(), all()], None).unwrap();
        FiniteCoveredSpace::from_nerve(&g, &c, max_level).unwrap()
    }

    fn z2_id() -> CoefficientComplex {
        CoefficientComplex::new(AbelianGroup::cyclic(2), AbelianGroup::cyclic(2), vec![vec![1.0]]).unwrap()
    }

    fn cocycles(s: &FiniteCoveredSpace, cx: &CoefficientComplex) -> Vec<CocycleSet> {
        let (basis, ker) = cocycle_basis_mod_p(s, cx, 3, 1, true, 2).unwrap();
        ker.iter()
            .map(|v| {
                let v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
                CocycleSet::from_family(s, cx, &basis.to_family(s, cx, &v)).unwrap()
            })
            .collect()
    }

    #[test]
    fn zero_cocycle_gives_strict_2group() {
        let s = two_index_space(4);
        let cx = z2_id();
        let g = two_group_from_cocycle(&s, &cx, CocycleSet::zeros(&s, &cx).unwrap(), None).unwrap();
        let r = g.verify();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn basis_cocycles_give_2groups() {
        let s = two_index_space(4);
        for cx in [CoefficientComplex::only_a(AbelianGroup::cyclic(2)), z2_id()] {
            let cs = cocycles(&s, &cx);
            assert!(!cs.is_empty());
            for phi in cs.into_iter().step_by(7).take(4) {
                let g = two_group_from_cocycle(&s, &cx, phi, None).unwrap();
                let r = g.verify();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn restricted_product_is_essentially_product() {
        let s = two_index_space(4);
        let cx = z2_id();
        let g = two_group_from_cocycle(&s, &cx, CocycleSet::zeros(&s, &cx).unwrap(), None).unwrap();
        let (g2, prod, f) = g.restricted_product_tables();
        assert!(is_essential_equivalence(&g2, &prod, &f));
    }

    #[test]
    fn theta_fault_breaks_associator_endpoints() {
        let s = two_index_space(4);
        let cx = z2_id();
        let mut phi = CocycleSet::zeros(&s, &cx).unwrap();
        let mut hit = None;
        s.for_each_tuple(3, 0, |w, t| {
            if hit.is_none() && !crate::cochain::is_degenerate_coordinate(&s, 3, w, t) {
                hit = Some((w, t[0]));
            }
        });
        let (w, i) = hit.unwrap();
        phi.theta.set(w, &[i], &[1.0]);
        assert!(matches!(two_group_from_cocycle(&s, &cx, phi.clone(), None), Err(TwoGroupError::NotACocycle(_))));
        let g = TwoGroup::new_unchecked(&s, &cx, phi, None).unwrap();
        let r = g.verify();
        assert!(r.failing().contains(&CHECK_ASSOCIATOR_ENDPOINTS), "{r}");
    }
}
