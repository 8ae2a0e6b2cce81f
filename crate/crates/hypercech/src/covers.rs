//! Simplicial covers: an index simplicial set with membership predicates compatible with all
//! simplicial maps.

use std::fmt::Debug;
use std::sync::Arc;

use thiserror::Error;

use crate::group::GroupModel;
use crate::simplicial::{monotone_maps, simplicial_action, Nerve, SimplexMap, SimplicialSet};
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("base sets do not cover the sample {0}")]
    Uncovered(String),
    #[error("neighborhood condition violated: {0}")]
    Neighborhood(String),
}

/// A cover of the simplicial set `S`, indexed by a simplicial set of its own.
pub trait SimplicialCover<S: SimplicialSet>: Send + Sync {
    type Index: Clone + PartialEq + Debug + Send + Sync;

    fn index_face(&self, n: usize, k: usize, i: &Self::Index) -> Self::Index;
    fn index_degeneracy(&self, n: usize, k: usize, i: &Self::Index) -> Self::Index;
    /// Whether `x ∈ X_n` lies in `U^{(n)}_i`.
    fn member(&self, n: usize, i: &Self::Index, x: &S::Elem) -> bool;
    /// All indices of level `n`, when finite.
    fn index_level(&self, n: usize) -> Option<Vec<Self::Index>>;

    /// Indices whose sets contain `x`.
    fn indices_containing(&self, n: usize, x: &S::Elem) -> Vec<Self::Index> {
        self.index_level(n).unwrap_or_default().into_iter().filter(|i| self.member(n, i, x)).collect()
    }
}

/// Applies the index action of a monotone map through faces and degeneracies.
pub fn index_action<S: SimplicialSet, C: SimplicialCover<S>>(c: &C, alpha: &SimplexMap, i: &C::Index) -> C::Index {
    let mut level = alpha.target_dim();
    let mut y = i.clone();
    for &k in alpha.missed().iter().rev() {
        y = c.index_face(level, k, &y);
        level -= 1;
    }
    for &j in &alpha.repeats() {
        y = c.index_degeneracy(level, j, &y);
        level += 1;
    }
    y
}

/// The cover with a single set at every level.
#[derive(Clone, Copy, Debug, Default)]
pub struct TrivialCover;

impl<S: SimplicialSet> SimplicialCover<S> for TrivialCover {
    type Index = ();

    fn index_face(&self, _: usize, _: usize, _: &()) {}
    fn index_degeneracy(&self, _: usize, _: usize, _: &()) {}
    fn member(&self, _: usize, _: &(), _: &S::Elem) -> bool {
        true
    }
    fn index_level(&self, _: usize) -> Option<Vec<()>> {
        Some(vec![()])
    }
}

pub type Predicate<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;

/// The cover obtained from a cover of a single level `m` by pulling back along all maps
/// `[m] -> [n]`. Indices at level `n` are tuples `(j_f)` over `Δ(m,n)` in lexicographic order.
pub struct RefinedCover<S: SimplicialSet> {
    space: Arc<S>,
    m: usize,
    base: Vec<Predicate<S::Elem>>,
}

impl<S: SimplicialSet> RefinedCover<S> {
    pub fn base_size(&self) -> usize {
        self.base.len()
    }

    pub fn base_level(&self) -> usize {
        self.m
    }

    /// The canonical refinement map `I^{(m)} -> J`, `(j_f) ↦ j_id`.
    pub fn refinement_map(&self, i: &[usize]) -> usize {
        let maps = monotone_maps(self.m, self.m);
        let pos = maps.iter().position(|f| *f == SimplexMap::identity(self.m)).unwrap();
        i[pos]
    }

    /// Pulls an index back along `α: [n] -> [n']`.
    fn act(&self, alpha: &SimplexMap, i: &[usize]) -> Vec<usize> {
        let source_maps = monotone_maps(self.m, alpha.source_dim());
        let target_maps = monotone_maps(self.m, alpha.target_dim());
        source_maps
            .iter()
            .map(|g| {
                let f = alpha.compose(g).unwrap();
                i[target_maps.binary_search(&f).unwrap()]
            })
            .collect()
    }
}

/// Builds the refined cover from a cover of level `m` by the sets `base`.
/// Fails if some sample of level `m` lies in none of the base sets.
pub fn refine_from_level<S: SimplicialSet>(
    space: Arc<S>,
    m: usize,
    base: Vec<Predicate<S::Elem>>,
    samples: Option<&[S::Elem]>,
) -> Result<RefinedCover<S>, CoverError> {
    let owned;
    let pts: &[S::Elem] = match samples {
        Some(s) => s,
        None => {
            owned = space.level(m).unwrap_or_default();
            &owned
        }
    };
    for x in pts {
        if !base.iter().any(|u| u(x)) {
            return Err(CoverError::Uncovered(format!("{x:?}")));
        }
    }
    Ok(RefinedCover { space, m, base })
}

impl<S: SimplicialSet> SimplicialCover<S> for RefinedCover<S> {
    type Index = Vec<usize>;

    fn index_face(&self, n: usize, k: usize, i: &Vec<usize>) -> Vec<usize> {
        self.act(&SimplexMap::coface(n, k), i)
    }

    fn index_degeneracy(&self, n: usize, k: usize, i: &Vec<usize>) -> Vec<usize> {
        self.act(&SimplexMap::codegeneracy(n, k), i)
    }

    fn member(&self, n: usize, i: &Vec<usize>, x: &S::Elem) -> bool {
        monotone_maps(self.m, n).iter().zip(i).all(|(f, &j)| (self.base[j])(&simplicial_action(&*self.space, f, x)))
    }

    fn index_level(&self, n: usize) -> Option<Vec<Vec<usize>>> {
        let len = monotone_maps(self.m, n).len();
        let total = self.base.len().checked_pow(len as u32)?;
        if total > 1_000_000 {
            return None;
        }
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    (0..self.base.len()).map(move |j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect();
        }
        Some(out)
    }

    fn indices_containing(&self, n: usize, x: &S::Elem) -> Vec<Vec<usize>> {
        let choices: Vec<Vec<usize>> = monotone_maps(self.m, n)
            .iter()
            .map(|f| {
                let y = simplicial_action(&*self.space, f, x);
                (0..self.base.len()).filter(|&j| (self.base[j])(&y)).collect()
            })
            .collect();
        let mut out = vec![Vec::new()];
        for c in choices {
            out = out
                .into_iter()
                .flat_map(|p: Vec<usize>| {
                    c.iter().map(move |&j| {
                        let mut q = p.clone();
                        q.push(j);
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Checks covering and compatibility with faces and degeneracies on per-level samples.
pub fn verify_simplicial_cover<S, C>(s: &S, cover: &C, samples: &[Vec<S::Elem>]) -> Report
where
    S: SimplicialSet,
    C: SimplicialCover<S>,
{
    let mut r = Report::new("simplicial cover");
    if samples.iter().all(Vec::is_empty) {
        r.warn("no samples given; cover checks are vacuous");
        return r;
    }
    let top = samples.len().saturating_sub(1);
    for (n, xs) in samples.iter().enumerate() {
        for x in xs {
            let idx = cover.indices_containing(n, x);
            r.record("covering", !idx.is_empty(), 0.0, || format!("level {n} x={x:?}"));
            for i in &idx {
                if n >= 1 {
                    for k in 0..=n {
                        let ok = cover.member(n - 1, &cover.index_face(n, k, i), &s.face(n, k, x));
                        r.record("face compatibility", ok, 0.0, || format!("level {n} d_{k} x={x:?} i={i:?}"));
                    }
                }
                if n < top {
                    for k in 0..=n {
                        let ok = cover.member(n + 1, &cover.index_degeneracy(n, k, i), &s.degeneracy(n, k, x));
                        r.record("degeneracy compatibility", ok, 0.0, || format!("level {n} s_{k} x={x:?} i={i:?}"));
                    }
                }
            }
        }
    }
    r
}

pub type NeighborhoodFn<E> = Arc<dyn Fn(&E, &E) -> bool + Send + Sync>;

/// The equivariant cover of a group nerve indexed by the nerve itself: `V_i = i·V`,
/// `V_{i,j}`, `V_{i,j,l}` and intersections of face preimages above level 3.
pub struct EquivariantCover<G: GroupModel> {
    group: G,
    nerve: Nerve<G>,
    v: Predicate<G::Elem>,
    /// `w(j, x)` decides `x ∈ W_j`.
    w: NeighborhoodFn<G::Elem>,
}

impl<G: GroupModel + Clone> EquivariantCover<G> {
    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn in_v(&self, x: &G::Elem) -> bool {
        (self.v)(x)
    }

    pub fn in_w(&self, j: &G::Elem, x: &G::Elem) -> bool {
        (self.w)(j, x)
    }

    fn in_vi(&self, i: &G::Elem, g: &G::Elem) -> bool {
        (self.v)(&self.group.mul(&self.group.inv(i), g))
    }

    fn in_vij(&self, i: &G::Elem, j: &G::Elem, g: &G::Elem, h: &G::Elem) -> bool {
        let gr = &self.group;
        (self.w)(j, &gr.mul(&gr.inv(i), g)) && self.in_vi(j, h) && self.in_vi(&gr.mul(i, j), &gr.mul(g, h))
    }
}

/// Builds the equivariant cover and checks the neighborhood conditions on samples:
/// `V = V⁻¹`, `e ∈ W_j ⊆ V` and `j⁻¹ W_j j ⊆ V`.
pub fn equivariant_nerve_cover<G: GroupModel + Clone>(
    group: G,
    v: Predicate<G::Elem>,
    w: NeighborhoodFn<G::Elem>,
    samples: &[G::Elem],
    index_samples: &[G::Elem],
) -> Result<EquivariantCover<G>, CoverError> {
    let e = group.identity();
    if !v(&e) {
        return Err(CoverError::Neighborhood("identity not in V".into()));
    }
    for x in samples {
        if v(x) != v(&group.inv(x)) {
            return Err(CoverError::Neighborhood(format!("V not symmetric at {x:?}")));
        }
    }
    for j in index_samples {
        if !w(j, &e) {
            return Err(CoverError::Neighborhood(format!("identity not in W_{j:?}")));
        }
        for x in samples {
            if w(j, x) {
                let conj = group.mul(&group.mul(&group.inv(j), x), j);
                if !v(x) || !v(&conj) {
                    return Err(CoverError::Neighborhood(format!("W_{j:?} condition fails at {x:?}")));
                }
            }
        }
    }
    Ok(EquivariantCover { nerve: Nerve::new(group.clone()), group, v, w })
}

impl<G: GroupModel + Clone> SimplicialCover<Nerve<G>> for EquivariantCover<G> {
    type Index = Vec<G::Elem>;

    fn index_face(&self, n: usize, k: usize, i: &Vec<G::Elem>) -> Vec<G::Elem> {
        self.nerve.face(n, k, i)
    }

    fn index_degeneracy(&self, n: usize, k: usize, i: &Vec<G::Elem>) -> Vec<G::Elem> {
        self.nerve.degeneracy(n, k, i)
    }

    fn member(&self, n: usize, i: &Vec<G::Elem>, x: &Vec<G::Elem>) -> bool {
        match n {
            0 => true,
            1 => self.in_vi(&i[0], &x[0]),
            2 => self.in_vij(&i[0], &i[1], &x[0], &x[1]),
            _ => (0..=n).all(|k| self.member(n - 1, &self.nerve.face(n, k, i), &self.nerve.face(n, k, x))),
        }
    }

    fn index_level(&self, n: usize) -> Option<Vec<Vec<G::Elem>>> {
        self.nerve.level(n)
    }
}
