//! The equivalence `Γ[φ] → Γ[φ′]` induced by a cochain `ψ` with `φ - φ′ = D₃ψ`.

use crate::cochain::{check_coboundary, CochainSet2};
use crate::report::Report;
use crate::twogroup::bundle::{add, Arrow, Obj};
use crate::twogroup::gamma::{restrict_index, restrict_point, Arrow2, Obj3, TwoGroup, TwoGroupError};
use crate::twogroup::groupoid::Groupoid;

pub const CHECK_FUNCTOR_SOURCE_TARGET: &str = "F preserves source and target";
pub const CHECK_FUNCTOR_COMPOSITION: &str = "F preserves composition";
pub const CHECK_F2_ENDPOINTS: &str = "F₂ runs from F∘m to m′∘(F×F)";
pub const CHECK_F2_NATURALITY: &str = "F₂ naturality";
pub const CHECK_F2_COHERENCE: &str = "F₂ coherence with the associators";

/// The equation component each check is equivalent to.
pub const CHECK_EQUATIONS: [(&str, (usize, usize, usize)); 5] = [
    (CHECK_FUNCTOR_SOURCE_TARGET, (1, 1, 1)),
    (CHECK_FUNCTOR_COMPOSITION, (1, 2, 0)),
    (CHECK_F2_ENDPOINTS, (2, 0, 1)),
    (CHECK_F2_NATURALITY, (2, 1, 0)),
    (CHECK_F2_COHERENCE, (3, 0, 0)),
];

/// Functor `F`, multiplication constraint `F₂`, unit constraint `F₀` and the transformation
/// `λ: F∘p ⇒ p′` between the extension maps.
pub struct Equivalence<'g, 'a> {
    pub from: &'g TwoGroup<'a>,
    pub to: &'g TwoGroup<'a>,
    pub psi: CochainSet2,
}

/// Builds the equivalence after checking the coboundary equations.
pub fn equivalence_from_coboundary<'g, 'a>(
    from: &'g TwoGroup<'a>,
    to: &'g TwoGroup<'a>,
    psi: CochainSet2,
) -> Result<Equivalence<'g, 'a>, TwoGroupError> {
    let r = check_coboundary(from.space, from.cx, &from.phi, &to.phi, &psi)?;
    if let Some(name) = r.failing().first() {
        let e = r.get(name).unwrap();
        return Err(TwoGroupError::NotACocycle(format!("{name} at {}", e.failures[0])));
    }
    Ok(Equivalence { from, to, psi })
}

impl<'g, 'a> Equivalence<'g, 'a> {
    /// Skips the coboundary check; used for fault injection.
    pub fn new_unchecked(from: &'g TwoGroup<'a>, to: &'g TwoGroup<'a>, psi: CochainSet2) -> Self {
        Self { from, to, psi }
    }

    fn xi(&self, x: usize, i: usize) -> &[f64] {
        self.psi.xi.get(x, &[i])
    }

    fn xi_edge(&self, n: usize, x: usize, iota: usize, verts: [usize; 2]) -> Vec<f64> {
        let s = self.from.space;
        self.xi(restrict_point(s, n, x, &verts), restrict_index(s, n, iota, &verts)).to_vec()
    }

    pub fn f_obj(&self, o: &Obj) -> Obj {
        self.to.base.obj(o.x, o.i, add(&o.b, self.xi(o.x, o.i)))
    }

    /// `F(x, i, j, b, a) = (x, i, j, b + ξ_i(x), a + ρ_{ij}(x))`.
    pub fn f_arrow(&self, f: &Arrow) -> Arrow {
        self.to.base.arrow(f.x, f.i, f.j, add(&f.b, self.xi(f.x, f.i)), add(&f.a, self.psi.rho.get(f.x, &[f.i, f.j])))
    }

    fn f_arrow2(&self, f: &Arrow2) -> Arrow2 {
        let [c0, c1] = self.from.components2(f);
        let (g0, g1) = (self.f_arrow(&c0), self.f_arrow(&c1));
        Arrow2 { v: f.v, iota: f.iota, kappa: f.kappa, b: [g0.b, g1.b], a: [g0.a, g1.a] }
    }

    /// `F₂` at a Γ²-object `(v, ι, b0, b1)`: the arrow `F(m(b0, b1)) → m′(F b0, F b1)` with
    /// `A`-part `σ_ι(v)`.
    pub fn f2(&self, v: usize, iota: usize, b0: &[f64], b1: &[f64]) -> Arrow {
        let s = self.from.space;
        let fb0 = add(b0, &self.xi_edge(2, v, iota, [0, 1]));
        let fb1 = add(b1, &self.xi_edge(2, v, iota, [1, 2]));
        let t = self.to.mult_obj(v, iota, &fb0, &fb1);
        let i = s.index_face(2, 1, iota);
        self.to.base.arrow(t.x, i, i, t.b, self.psi.sigma.get(v, &[iota]).to_vec())
    }

    fn f2_over(&self, n: usize, x: usize, iota: usize, verts: [usize; 3], b0: &[f64], b1: &[f64]) -> Arrow {
        let s = self.from.space;
        self.f2(restrict_point(s, n, x, &verts), restrict_index(s, n, iota, &verts), b0, b1)
    }

    /// `F₀: u′ → F(u)`, the identity when `ξ` is normalized.
    pub fn f0(&self) -> Arrow {
        self.to.base.identity(&self.to.unit())
    }

    /// `λ_b: F(p(b)) → p′(b)`.
    pub fn lambda(&self, b: &[f64]) -> Arrow {
        let u = self.to.unit();
        self.to.base.arrow(u.x, u.i, u.i, b.to_vec(), vec![0.0; self.to.cx.a.dim()])
    }

    pub fn verify(&self) -> Report {
        let mut r = Report::new("equivalence from coboundary");
        let (g, h) = (self.from, self.to);
        let (bg, bh) = (&g.base, &h.base);
        let (objs, arrows) = bg.enumerate(&g.samples.b, &g.samples.a);
        for name in [CHECK_FUNCTOR_SOURCE_TARGET, CHECK_FUNCTOR_COMPOSITION, CHECK_F2_ENDPOINTS, CHECK_F2_NATURALITY, CHECK_F2_COHERENCE] {
            r.entry(name);
        }
        for f in &arrows {
            let ff = self.f_arrow(f);
            let ok = bh.obj_eq(&bh.source(&ff), &self.f_obj(&bg.source(f))) && bh.obj_eq(&bh.target(&ff), &self.f_obj(&bg.target(f)));
            r.record(CHECK_FUNCTOR_SOURCE_TARGET, ok, 0.0, || g.space.describe(1, f.x, &[f.i, f.j]));
        }
        for o in &objs {
            let l = self.f_arrow(&bg.identity(o));
            let rr = bh.identity(&self.f_obj(o));
            r.record("F preserves identities", bh.arr_eq(&l, &rr), bh.arr_residual(&l, &rr), || g.space.describe(1, o.x, &[o.i]));
        }
        // composition on pairs (x,i,j) ∘ (x,j,k) with the second arrow chosen composable
        for f in &arrows {
            let s = bg.source(f);
            for &k in &g.space.level(1).containing[f.x] {
                let gg = bg.arrow(f.x, f.j, k, s.b.clone(), g.samples.a[g.samples.a.len() - 1].clone());
                let l = self.f_arrow(&bg.compose_unchecked(f, &gg));
                let rr = bh.compose_unchecked(&self.f_arrow(f), &self.f_arrow(&gg));
                r.record(CHECK_FUNCTOR_COMPOSITION, bh.arr_eq(&l, &rr), bh.arr_residual(&l, &rr), || {
                    g.space.describe(1, f.x, &[f.i, f.j, k])
                });
            }
        }
        self.check_f2(&mut r);
        self.check_coherence(&mut r);
        self.check_units(&mut r);
        r
    }

    fn check_f2(&self, r: &mut Report) {
        let (g, h) = (self.from, self.to);
        let bh = &h.base;
        let arrows2 = g.enumerate2();
        for f in &arrows2 {
            if f.kappa != f.iota && f.a.iter().any(|a| !g.cx.a.is_zero(a)) {
                continue;
            }
            let (v, kappa, sb) = g.source2(f);
            if f.iota == f.kappa {
                let f2 = self.f2(v, f.iota, &f.b[0], &f.b[1]);
                let src = self.f_obj(&g.mult_obj(v, f.iota, &f.b[0], &f.b[1]));
                let ok = bh.obj_eq(&bh.source(&f2), &src);
                r.record(CHECK_F2_ENDPOINTS, ok, h.cx.b.norm(&crate::twogroup::bundle::sub(&bh.source(&f2).b, &src.b)), || {
                    g.space.describe(2, v, &[f.iota])
                });
            }
            let lhs = bh.compose_unchecked(&h.mult(&self.f_arrow2(f)), &self.f2(v, kappa, &sb[0], &sb[1]));
            let rhs = bh.compose_unchecked(&self.f2(v, f.iota, &f.b[0], &f.b[1]), &self.f_arrow(&g.mult(f)));
            r.record(CHECK_F2_NATURALITY, bh.arr_eq(&lhs, &rhs), bh.arr_residual(&lhs, &rhs), || g.space.describe(2, v, &[f.iota, kappa]));
        }
    }

    fn check_coherence(&self, r: &mut Report) {
        let (g, h) = (self.from, self.to);
        let bh = &h.base;
        let za = vec![0.0; h.cx.a.dim()];
        let sm = &g.samples.b;
        g.space.for_each_tuple(3, 0, |w, t| {
            let iota = t[0];
            for bs in [[&sm[0], &sm[0], &sm[0]], [&sm[sm.len() - 1], &sm[0], &sm[sm.len() / 2]]] {
                let [b0, b1, b2] = bs.map(|b| b.clone());
                let o = Obj3 { w, iota, b: [b0.clone(), b1.clone(), b2.clone()] };
                let m = |verts: [usize; 3], x: &[f64], y: &[f64]| {
                    g.mult_obj(restrict_point(g.space, 3, w, &verts), restrict_index(g.space, 3, iota, &verts), x, y).b
                };
                let fe = |k: usize, b: &[f64]| add(b, &self.xi_edge(3, w, iota, [k, k + 1]));
                let fo = Obj3 { w, iota, b: [fe(0, &b0), fe(1, &b1), fe(2, &b2)] };
                let pair = |verts: [usize; 3], c0: (&[f64], &[f64]), c1: (&[f64], &[f64])| Arrow2 {
                    v: restrict_point(g.space, 3, w, &verts),
                    iota: restrict_index(g.space, 3, iota, &verts),
                    kappa: restrict_index(g.space, 3, iota, &verts),
                    b: [c0.0.to_vec(), c1.0.to_vec()],
                    a: [c0.1.to_vec(), c1.1.to_vec()],
                };

                let m012 = m([0, 1, 2], &b0, &b1);
                let m123 = m([1, 2, 3], &b1, &b2);
                let fa = self.f_arrow(&g.associator(&o));
                let f2_ab_c = self.f2_over(3, w, iota, [0, 2, 3], &m012, &b2);
                let f2_ab = self.f2_over(3, w, iota, [0, 1, 2], &b0, &b1);
                let f2_ab_id = h.mult(&pair([0, 2, 3], (&f2_ab.b, &f2_ab.a), (&fo.b[2], &za)));
                let lhs = bh.compose_unchecked(&f2_ab_id, &bh.compose_unchecked(&f2_ab_c, &fa));

                let f2_a_bc = self.f2_over(3, w, iota, [0, 1, 3], &b0, &m123);
                let f2_bc = self.f2_over(3, w, iota, [1, 2, 3], &b1, &b2);
                let id_f2_bc = h.mult(&pair([0, 1, 3], (&fo.b[0], &za), (&f2_bc.b, &f2_bc.a)));
                let rhs = bh.compose_unchecked(&h.associator(&fo), &bh.compose_unchecked(&id_f2_bc, &f2_a_bc));
                r.record(CHECK_F2_COHERENCE, bh.arr_eq(&lhs, &rhs), bh.arr_residual(&lhs, &rhs), || g.space.describe(3, w, t));
            }
        });
    }

    fn check_units(&self, r: &mut Report) {
        let (g, h) = (self.from, self.to);
        let bh = &h.base;
        let f0 = self.f0();
        let ok = bh.obj_eq(&bh.source(&f0), &h.unit()) && bh.obj_eq(&bh.target(&f0), &self.f_obj(&g.unit()));
        r.record("F₀ runs from u′ to F(u)", ok, 0.0, || format!("{f0:?}"));
        let cm = crate::twogroup::crossed::CrossedModule2Group { cx: g.cx.clone() };
        for a in &g.samples.a {
            for b in &g.samples.b {
                let f = cm.arrow(a.clone(), b.clone());
                let (s, t) = (cm.source(&f), cm.target(&f));
                let lhs = bh.compose_unchecked(&h.p_arrow(&f), &self.lambda(&s));
                let rhs = bh.compose_unchecked(&self.lambda(&t), &self.f_arrow(&g.p_arrow(&f)));
                let ends = bh.obj_eq(&bh.source(&self.lambda(&s)), &self.f_obj(&g.p_obj(&s)))
                    && bh.obj_eq(&bh.target(&self.lambda(&s)), &h.p_obj(&s));
                r.record("λ naturality", ends && bh.arr_eq(&lhs, &rhs), bh.arr_residual(&lhs, &rhs), || format!("a={a:?} b={b:?}"));
            }
        }
    }
}
