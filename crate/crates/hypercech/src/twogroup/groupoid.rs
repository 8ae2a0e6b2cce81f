//! Groupoids given by structure maps, axiom checks on samples, finite groupoid tables and
//! essential equivalences.

use std::collections::HashMap;
use std::fmt::Debug;

use crate::report::Report;

/// A groupoid presented by its structure maps. `compose(f, g)` is `f ∘ g`, defined when
/// `source(f) == target(g)`.
pub trait Groupoid {
    type Obj: Clone + Debug;
    type Arr: Clone + Debug;

    fn source(&self, f: &Self::Arr) -> Self::Obj;
    fn target(&self, f: &Self::Arr) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Arr;
    /// The composition formula, applied without checking composability.
    fn compose_unchecked(&self, f: &Self::Arr, g: &Self::Arr) -> Self::Arr;
    fn inverse(&self, f: &Self::Arr) -> Self::Arr;
    fn obj_eq(&self, x: &Self::Obj, y: &Self::Obj) -> bool;
    fn arr_eq(&self, f: &Self::Arr, g: &Self::Arr) -> bool;
    /// Size of the difference between two arrows, for reporting.
    fn arr_residual(&self, _f: &Self::Arr, _g: &Self::Arr) -> f64 {
        0.0
    }

    fn composable(&self, f: &Self::Arr, g: &Self::Arr) -> bool {
        self.obj_eq(&self.source(f), &self.target(g))
    }

    fn compose(&self, f: &Self::Arr, g: &Self::Arr) -> Option<Self::Arr> {
        self.composable(f, g).then(|| self.compose_unchecked(f, g))
    }
}

/// Checks the groupoid axioms on all composable pairs and triples drawn from `arrows`,
/// together with identities and inverses of every sample.
pub fn check_groupoid_axioms<G: Groupoid>(g: &G, arrows: &[G::Arr]) -> Report {
    let mut r = Report::new("groupoid axioms");
    for name in ["composite source and target", "associativity", "identity laws", "inverse laws"] {
        r.entry(name);
    }
    for f in arrows {
        let (s, t) = (g.source(f), g.target(f));
        let left = g.compose_unchecked(&g.identity(&t), f);
        let right = g.compose_unchecked(f, &g.identity(&s));
        let ok = g.arr_eq(&left, f) && g.arr_eq(&right, f);
        r.record("identity laws", ok, g.arr_residual(&left, f).max(g.arr_residual(&right, f)), || format!("{f:?}"));
        let inv = g.inverse(f);
        let ok = g.composable(f, &inv)
            && g.composable(&inv, f)
            && g.arr_eq(&g.compose_unchecked(f, &inv), &g.identity(&t))
            && g.arr_eq(&g.compose_unchecked(&inv, f), &g.identity(&s));
        r.record("inverse laws", ok, 0.0, || format!("{f:?}"));
    }
    for f in arrows {
        for h in arrows {
            if !g.composable(f, h) {
                continue;
            }
            let fh = g.compose_unchecked(f, h);
            let ok = g.obj_eq(&g.source(&fh), &g.source(h)) && g.obj_eq(&g.target(&fh), &g.target(f));
            r.record("composite source and target", ok, 0.0, || format!("f={f:?} g={h:?}"));
            for k in arrows {
                if !g.composable(h, k) {
                    continue;
                }
                let a = g.compose_unchecked(&fh, k);
                let b = g.compose_unchecked(f, &g.compose_unchecked(h, k));
                r.record("associativity", g.arr_eq(&a, &b), g.arr_residual(&a, &b), || format!("f={f:?} g={h:?} h={k:?}"));
            }
        }
    }
    r
}

/// A finite groupoid as a list of `(source, target)` pairs over objects `0..n_objects`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    pub n_objects: usize,
    pub arrows: Vec<(usize, usize)>,
}

impl FiniteGroupoid {
    /// Tabulates objects and arrows of a groupoid using canonical keys for equality.
    pub fn tabulate<G, K>(g: &G, objects: &[G::Obj], arrows: &[G::Arr], obj_key: K) -> Option<Self>
    where
        G: Groupoid,
        K: Fn(&G::Obj) -> Vec<i64>,
    {
        let index: HashMap<Vec<i64>, usize> = objects.iter().enumerate().map(|(k, o)| (obj_key(o), k)).collect();
        let arrows = arrows
            .iter()
            .map(|f| Some((*index.get(&obj_key(&g.source(f)))?, *index.get(&obj_key(&g.target(f)))?)))
            .collect::<Option<Vec<_>>>()?;
        Some(Self { n_objects: objects.len(), arrows })
    }
}

/// A morphism of finite groupoids given on object and arrow indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMorphism {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

/// Whether `f: X -> Z` is essentially surjective and induces a bijection from the arrows of `X`
/// onto the pullback `{(x_t, x_s, ζ) : ζ: f(x_s) -> f(x_t)}`.
pub fn is_essential_equivalence(x: &FiniteGroupoid, z: &FiniteGroupoid, f: &FiniteMorphism) -> bool {
    if f.objects.len() != x.n_objects || f.arrows.len() != x.arrows.len() {
        return false;
    }
    let mut hit = vec![false; z.n_objects];
    for &o in &f.objects {
        hit[o] = true;
    }
    for &(s, t) in &z.arrows {
        if f.objects.contains(&s) {
            hit[t] = true;
        }
    }
    if hit.iter().any(|h| !h) {
        return false;
    }
    // arrows of X must land over their endpoints and hit each pullback element exactly once
    let mut seen: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (k, &(s, t)) in x.arrows.iter().enumerate() {
        let zeta = f.arrows[k];
        if z.arrows[zeta] != (f.objects[s], f.objects[t]) {
            return false;
        }
        *seen.entry((t, s, zeta)).or_default() += 1;
    }
    if seen.values().any(|&c| c != 1) {
        return false;
    }
    let mut z_between: HashMap<(usize, usize), usize> = HashMap::new();
    for &(s, t) in &z.arrows {
        *z_between.entry((s, t)).or_default() += 1;
    }
    let pullback: usize = (0..x.n_objects)
        .flat_map(|t| (0..x.n_objects).map(move |s| (t, s)))
        .map(|(t, s)| z_between.get(&(f.objects[s], f.objects[t])).copied().unwrap_or(0))
        .sum();
    seen.len() == pullback
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_essential_equivalence() {
        let g = FiniteGroupoid { n_objects: 2, arrows: vec![(0, 0), (1, 1), (0, 1), (1, 0)] };
        let id = FiniteMorphism { objects: vec![0, 1], arrows: vec![0, 1, 2, 3] };
        assert!(is_essential_equivalence(&g, &g, &id));
    }

    #[test]
    fn missing_object_is_not() {
        let x = FiniteGroupoid { n_objects: 1, arrows: vec![(0, 0)] };
        let z = FiniteGroupoid { n_objects: 2, arrows: vec![(0, 0), (1, 1)] };
        let f = FiniteMorphism { objects: vec![0], arrows: vec![0] };
        assert!(!is_essential_equivalence(&x, &z, &f));
    }

    #[test]
    fn pair_groupoid_onto_point() {
        // two isomorphic objects over one object with trivial automorphisms
        let x = FiniteGroupoid { n_objects: 2, arrows: vec![(0, 0), (1, 1), (0, 1), (1, 0)] };
        let z = FiniteGroupoid { n_objects: 1, arrows: vec![(0, 0)] };
        let f = FiniteMorphism { objects: vec![0, 0], arrows: vec![0, 0, 0, 0] };
        assert!(is_essential_equivalence(&x, &z, &f));
        // dropping an arrow breaks fullness
        let x2 = FiniteGroupoid { n_objects: 2, arrows: vec![(0, 0), (1, 1), (0, 1)] };
        let f2 = FiniteMorphism { objects: vec![0, 0], arrows: vec![0, 0, 0] };
        assert!(!is_essential_equivalence(&x2, &z, &f2));
    }
}
