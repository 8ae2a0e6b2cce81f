//! Central extensions `Z ×_f G` from group 2-cocycles, locally smooth `(A → B)`-valued group
//! cocycles, transgression to Čech cocycles and the coordinate form of the multiplication.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::coeff::{AbelianGroup, CoefficientComplex};
use crate::group::GroupModel;
use crate::report::Report;

#[derive(Debug, Error, PartialEq)]
pub enum ExtensionError {
    #[error("𝚍f ≠ 0 at ({0}): residual {1:e}")]
    NotACocycle(String, f64),
    #[error("{0} lies outside {1}")]
    OutsideDomain(String, String),
}

/// A map `G² → Z` in coordinates.
pub type Cochain2<E> = Arc<dyn Fn(&E, &E) -> Vec<f64> + Send + Sync>;
/// A map `G³ → Z` in coordinates.
pub type Cochain3<E> = Arc<dyn Fn(&E, &E, &E) -> Vec<f64> + Send + Sync>;
/// Membership in the sets `V_i` of a translated cover, by index.
pub type Membership<E> = Arc<dyn Fn(&E, &E) -> bool + Send + Sync>;

fn comb(terms: &[(f64, Vec<f64>)]) -> Vec<f64> {
    let mut out = vec![0.0; terms[0].1.len()];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// `𝚍f(g,h,k) = f(h,k) - f(gh,k) + f(g,hk) - f(g,h)`.
pub fn group_delta2<G: GroupModel>(g: &G, f: &Cochain2<G::Elem>, a: &G::Elem, b: &G::Elem, c: &G::Elem) -> Vec<f64> {
    comb(&[(1.0, f(b, c)), (-1.0, f(&g.mul(a, b), c)), (1.0, f(a, &g.mul(b, c))), (-1.0, f(a, b))])
}

/// `𝚍Θ(g,h,k,l) = Θ(h,k,l) - Θ(gh,k,l) + Θ(g,hk,l) - Θ(g,h,kl) + Θ(g,h,k)`.
pub fn group_delta3<G: GroupModel>(g: &G, t: &Cochain3<G::Elem>, a: &G::Elem, b: &G::Elem, c: &G::Elem, d: &G::Elem) -> Vec<f64> {
    comb(&[
        (1.0, t(b, c, d)),
        (-1.0, t(&g.mul(a, b), c, d)),
        (1.0, t(a, &g.mul(b, c), d)),
        (-1.0, t(a, b, &g.mul(c, d))),
        (1.0, t(a, b, c)),
    ])
}

/// The group `Z × G` with `(x,g)(y,h) = (x + y + f(g,h), gh)`.
#[derive(Clone)]
pub struct CentralExtension<G: GroupModel> {
    pub g: G,
    pub z: AbelianGroup,
    pub f: Cochain2<G::Elem>,
}

impl<G: GroupModel + fmt::Debug> fmt::Debug for CentralExtension<G> {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("CentralExtension").field("g", &self.g).field("z", &self.z).finish_non_exhaustive()
    }
}

/// Builds the extension after checking `𝚍f = 0` on all triples of `samples` (all elements
/// when `G` is finite).
pub fn central_extension_group<G: GroupModel>(
    f: Cochain2<G::Elem>,
    z: AbelianGroup,
    g: G,
    samples: &[G::Elem],
) -> Result<CentralExtension<G>, ExtensionError> {
    let pts = g.elements().unwrap_or_else(|| samples.to_vec());
    for a in &pts {
        for b in &pts {
            for c in &pts {
                let mut d = group_delta2(&g, &f, a, b, c);
                z.reduce(&mut d);
                if !z.is_zero(&d) {
                    return Err(ExtensionError::NotACocycle(format!("{a:?}, {b:?}, {c:?}"), z.norm(&d)));
                }
            }
        }
    }
    Ok(CentralExtension { g, z, f })
}

impl<G: GroupModel> CentralExtension<G> {
    fn zsum(&self, terms: &[(f64, Vec<f64>)]) -> Vec<f64> {
        let mut v = comb(terms);
        self.z.reduce(&mut v);
        v
    }

    /// Group axioms on all pairs and triples of the given elements.
    pub fn verify(&self, samples: &[(Vec<f64>, G::Elem)]) -> Report {
        let mut r = Report::new("central extension");
        let e = self.identity();
        for x in samples {
            let ok = self.approx_eq(&self.mul(&e, x), x) && self.approx_eq(&self.mul(x, &e), x);
            r.record("identity", ok, 0.0, || format!("{x:?}"));
            let ok = self.approx_eq(&self.mul(x, &self.inv(x)), &e) && self.approx_eq(&self.mul(&self.inv(x), x), &e);
            r.record("inverse", ok, 0.0, || format!("{x:?}"));
            for y in samples {
                for w in samples {
                    let l = self.mul(&self.mul(x, y), w);
                    let rr = self.mul(x, &self.mul(y, w));
                    let res = self.z.norm(&comb(&[(1.0, l.0.clone()), (-1.0, rr.0.clone())]));
                    r.record("associativity", self.approx_eq(&l, &rr), res, || format!("{x:?} {y:?} {w:?}"));
                }
            }
        }
        r
    }
}

impl<G: GroupModel> GroupModel for CentralExtension<G> {
    type Elem = (Vec<f64>, G::Elem);

    /// `(-f(e,e), e)`.
    fn identity(&self) -> Self::Elem {
        let e = self.g.identity();
        (self.zsum(&[(-1.0, (self.f)(&e, &e))]), e)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.zsum(&[(1.0, a.0.clone()), (1.0, b.0.clone()), (1.0, (self.f)(&a.1, &b.1))]), self.g.mul(&a.1, &b.1))
    }

    /// `(-x - f(g,g⁻¹) - f(e,e), g⁻¹)`.
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        let gi = self.g.inv(&a.1);
        let e = self.g.identity();
        (self.zsum(&[(-1.0, a.0.clone()), (-1.0, (self.f)(&a.1, &gi)), (-1.0, (self.f)(&e, &e))]), gi)
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let zs = self.z.elements()?;
        let gs = self.g.elements()?;
        Some(zs.iter().flat_map(|z| gs.iter().map(move |g| (z.clone(), g.clone()))).collect())
    }

    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.z.is_zero(&comb(&[(1.0, a.0.clone()), (-1.0, b.0.clone())])) && self.g.approx_eq(&a.1, &b.1)
    }
}

/// An `(A → B)`-valued group cocycle `(F, Θ)` with `𝚍F = μ∘Θ` and `𝚍Θ = 0`, smooth on the
/// neighbourhood described by `smooth_domain`.
#[derive(Clone)]
pub struct LocallySmoothCocycle<E> {
    pub f: Cochain2<E>,
    pub theta: Cochain3<E>,
    pub smooth_domain: String,
}

impl<E: Clone + fmt::Debug> LocallySmoothCocycle<E> {
    pub fn check<G: GroupModel<Elem = E>>(&self, g: &G, cx: &CoefficientComplex, samples: &[E]) -> Report {
        let mut r = Report::new("locally smooth cocycle");
        r.entry("𝚍F = μ∘Θ");
        r.entry("𝚍Θ = 0");
        for a in samples {
            for b in samples {
                for c in samples {
                    let mut d = comb(&[(1.0, group_delta2(g, &self.f, a, b, c)), (-1.0, cx.apply_mu(&(self.theta)(a, b, c)))]);
                    cx.b.reduce(&mut d);
                    r.record("𝚍F = μ∘Θ", cx.b.is_zero(&d), cx.b.norm(&d), || format!("{a:?}, {b:?}, {c:?}"));
                    for e in samples {
                        let mut d = group_delta3(g, &self.theta, a, b, c, e);
                        cx.a.reduce(&mut d);
                        r.record("𝚍Θ = 0", cx.a.is_zero(&d), cx.a.norm(&d), || format!("{a:?}, {b:?}, {c:?}, {e:?}"));
                    }
                }
            }
        }
        r
    }
}

fn require<E: fmt::Debug>(v: &Membership<E>, i: &E, g: &E, what: &str) -> Result<(), ExtensionError> {
    if v(i, g) {
        Ok(())
    } else {
        Err(ExtensionError::OutsideDomain(format!("{g:?}"), format!("{what}_{i:?}")))
    }
}

/// `(τf)_{ij}(g) = f(i, i⁻¹g) - f(j, j⁻¹g)` on `V_i ∩ V_j`.
pub fn transgress<G: GroupModel>(
    g: &G,
    f: &Cochain2<G::Elem>,
    v: &Membership<G::Elem>,
    i: &G::Elem,
    j: &G::Elem,
    x: &G::Elem,
) -> Result<Vec<f64>, ExtensionError> {
    require(v, i, x, "V")?;
    require(v, j, x, "V")?;
    Ok(comb(&[(1.0, f(i, &g.mul(&g.inv(i), x))), (-1.0, f(j, &g.mul(&g.inv(j), x)))]))
}

/// Checks `δ̌(τf) = 0` at every sample point lying in triple intersections of the given indices.
pub fn check_transgression<G: GroupModel>(
    g: &G,
    z: &AbelianGroup,
    f: &Cochain2<G::Elem>,
    v: &Membership<G::Elem>,
    indices: &[G::Elem],
    samples: &[G::Elem],
) -> Report {
    let mut r = Report::new("transgression");
    r.entry("δ̌(τf) = 0");
    for x in samples {
        for i in indices.iter().filter(|i| v(i, x)) {
            for j in indices.iter().filter(|j| v(j, x)) {
                for k in indices.iter().filter(|k| v(k, x)) {
                    let t = |a: &G::Elem, b: &G::Elem| transgress(g, f, v, a, b, x).unwrap();
                    let mut d = comb(&[(1.0, t(j, k)), (-1.0, t(i, k)), (1.0, t(i, j))]);
                    z.reduce(&mut d);
                    r.record("δ̌(τf) = 0", z.is_zero(&d), z.norm(&d), || format!("x={x:?} i={i:?} j={j:?} k={k:?}"));
                }
            }
        }
    }
    r
}

/// `f_{ij}(g,h) = f(i,i⁻¹g) + f(j,j⁻¹h) + f(g,h) - f(ij,(ij)⁻¹gh)` on
/// `W_{ij} = {(g,h) ∈ V_i × V_j : gh ∈ V_{ij}}`.
pub fn local_mult_coordinates<G: GroupModel>(
    g: &G,
    f: &Cochain2<G::Elem>,
    v: &Membership<G::Elem>,
    i: &G::Elem,
    j: &G::Elem,
    x: &G::Elem,
    y: &G::Elem,
) -> Result<Vec<f64>, ExtensionError> {
    let ij = g.mul(i, j);
    let xy = g.mul(x, y);
    require(v, i, x, "V")?;
    require(v, j, y, "V")?;
    require(v, &ij, &xy, "V")?;
    Ok(comb(&[
        (1.0, f(i, &g.mul(&g.inv(i), x))),
        (1.0, f(j, &g.mul(&g.inv(j), y))),
        (1.0, f(x, y)),
        (-1.0, f(&ij, &g.mul(&g.inv(&ij), &xy))),
    ]))
}
