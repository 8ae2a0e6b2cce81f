//! The strict 2-group of a two-term complex `μ: A -> B`.

use crate::coeff::CoefficientComplex;
use crate::report::Report;
use crate::twogroup::groupoid::{check_groupoid_axioms, Groupoid};

/// Arrow `(a, b)` from `b` to `μ(a) + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct CmArrow {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// Objects `B`, arrows `A × B`, strict multiplication from the group structures, identity
/// associator and units.
#[derive(Clone, Debug)]
pub struct CrossedModule2Group {
    pub cx: CoefficientComplex,
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn crossed_module_groupoid(cx: CoefficientComplex) -> CrossedModule2Group {
    CrossedModule2Group { cx }
}

impl CrossedModule2Group {
    fn reduce_a(&self, mut v: Vec<f64>) -> Vec<f64> {
        self.cx.a.reduce(&mut v);
        v
    }

    fn reduce_b(&self, mut v: Vec<f64>) -> Vec<f64> {
        self.cx.b.reduce(&mut v);
        v
    }

    pub fn arrow(&self, a: Vec<f64>, b: Vec<f64>) -> CmArrow {
        CmArrow { a: self.reduce_a(a), b: self.reduce_b(b) }
    }

    pub fn mult_obj(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.reduce_b(add(x, y))
    }

    pub fn mult(&self, f: &CmArrow, g: &CmArrow) -> CmArrow {
        self.arrow(add(&f.a, &g.a), add(&f.b, &g.b))
    }

    pub fn unit(&self) -> Vec<f64> {
        vec![0.0; self.cx.b.dim()]
    }

    pub fn b_eq(&self, x: &[f64], y: &[f64]) -> bool {
        let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.cx.b.is_zero(&d)
    }

    fn b_res(&self, x: &[f64], y: &[f64]) -> f64 {
        let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.cx.b.norm(&d)
    }

    /// Groupoid axioms, functoriality of the multiplication, strict associativity and units on
    /// all pairs and triples of the sampled arrows.
    pub fn verify(&self, arrows: &[CmArrow]) -> Report {
        let mut r = Report::new("crossed-module 2-group");
        r.absorb("groupoid: ", check_groupoid_axioms(self, arrows));
        for f in arrows {
            for g in arrows {
                let m = self.mult(f, g);
                let ok = self.b_eq(&self.source(&m), &self.mult_obj(&self.source(f), &self.source(g)))
                    && self.b_eq(&self.target(&m), &self.mult_obj(&self.target(f), &self.target(g)));
                r.record("multiplication source/target", ok, 0.0, || format!("{f:?} {g:?}"));
                for h in arrows {
                    let l = self.mult(&self.mult(f, g), h);
                    let rr = self.mult(f, &self.mult(g, h));
                    r.record("strict associativity", self.arr_eq(&l, &rr), self.arr_residual(&l, &rr), || format!("{f:?} {g:?} {h:?}"));
                }
                // interchange law on composable pairs f∘f2, g∘g2 with f2 = f⁻¹, g2 = g⁻¹
                let (fi, gi) = (self.inverse(f), self.inverse(g));
                let lhs = self.compose_unchecked(&self.mult(f, g), &self.mult(&fi, &gi));
                let rhs = self.mult(&self.compose_unchecked(f, &fi), &self.compose_unchecked(g, &gi));
                r.record("multiplication preserves composition", self.arr_eq(&lhs, &rhs), self.arr_residual(&lhs, &rhs), || {
                    format!("{f:?} {g:?}")
                });
            }
            let id_u = self.identity(&self.unit());
            let ok = self.arr_eq(&self.mult(f, &id_u), f) && self.arr_eq(&self.mult(&id_u, f), f);
            r.record("strict units", ok, 0.0, || format!("{f:?}"));
        }
        r
    }
}

impl Groupoid for CrossedModule2Group {
    type Obj = Vec<f64>;
    type Arr = CmArrow;

    fn source(&self, f: &CmArrow) -> Vec<f64> {
        f.b.clone()
    }

    fn target(&self, f: &CmArrow) -> Vec<f64> {
        self.reduce_b(add(&self.cx.apply_mu(&f.a), &f.b))
    }

    fn identity(&self, x: &Vec<f64>) -> CmArrow {
        CmArrow { a: vec![0.0; self.cx.a.dim()], b: x.clone() }
    }

    /// `(a', μ(a) + b) ∘ (a, b) = (a + a', b)`.
    fn compose_unchecked(&self, f: &CmArrow, g: &CmArrow) -> CmArrow {
        self.arrow(add(&f.a, &g.a), g.b.clone())
    }

    fn inverse(&self, f: &CmArrow) -> CmArrow {
        self.arrow(f.a.iter().map(|x| -x).collect(), self.target(f))
    }

    fn obj_eq(&self, x: &Vec<f64>, y: &Vec<f64>) -> bool {
        self.b_eq(x, y)
    }

    fn arr_eq(&self, f: &CmArrow, g: &CmArrow) -> bool {
        let da: Vec<f64> = f.a.iter().zip(&g.a).map(|(x, y)| x - y).collect();
        self.cx.a.is_zero(&da) && self.b_eq(&f.b, &g.b)
    }

    fn arr_residual(&self, f: &CmArrow, g: &CmArrow) -> f64 {
        let da: Vec<f64> = f.a.iter().zip(&g.a).map(|(x, y)| x - y).collect();
        self.cx.a.norm(&da).max(self.b_res(&f.b, &g.b))
    }
}
