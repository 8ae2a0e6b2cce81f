//! Simplicial sets, group nerves and the combinatorics of the simplex category.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::group::GroupModel;
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("values must be nondecreasing with length source_dim+1 and entries <= target_dim")]
    InvalidMap,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A nondecreasing map `[source_dim] -> [target_dim]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexMap {
    source_dim: usize,
    target_dim: usize,
    values: Vec<usize>,
}

impl SimplexMap {
    pub fn new(source_dim: usize, target_dim: usize, values: Vec<usize>) -> Result<Self, SimplicialError> {
        let ok = values.len() == source_dim + 1
            && values.iter().all(|&v| v <= target_dim)
            && values.windows(2).all(|w| w[0] <= w[1]);
        if ok {
            Ok(Self { source_dim, target_dim, values })
        } else {
            Err(SimplicialError::InvalidMap)
        }
    }

    pub fn identity(n: usize) -> Self {
        Self { source_dim: n, target_dim: n, values: (0..=n).collect() }
    }

    /// The coface `[n-1] -> [n]` whose image misses `k`.
    pub fn coface(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k <= n);
        let values = (0..n).map(|v| if v < k { v } else { v + 1 }).collect();
        Self { source_dim: n - 1, target_dim: n, values }
    }

    /// The codegeneracy `[n+1] -> [n]` hitting `k` twice.
    pub fn codegeneracy(n: usize, k: usize) -> Self {
        assert!(k <= n);
        let values = (0..=n + 1).map(|v| if v <= k { v } else { v - 1 }).collect();
        Self { source_dim: n + 1, target_dim: n, values }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SimplexMap) -> Result<SimplexMap, SimplicialError> {
        if other.target_dim != self.source_dim {
            return Err(SimplicialError::DimensionMismatch { expected: self.source_dim, got: other.target_dim });
        }
        Ok(SimplexMap {
            source_dim: other.source_dim,
            target_dim: self.target_dim,
            values: other.values.iter().map(|&v| self.values[v]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && self.values[self.source_dim] == self.target_dim && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Target vertices missed by the map, increasing.
    pub fn missed(&self) -> Vec<usize> {
        (0..=self.target_dim).filter(|v| !self.values.contains(v)).collect()
    }

    /// Source positions `j` with `α(j) = α(j+1)`, increasing.
    pub fn repeats(&self) -> Vec<usize> {
        (0..self.source_dim).filter(|&j| self.values[j] == self.values[j + 1]).collect()
    }
}

/// All nondecreasing maps `[m] -> [n]` in lexicographic order of their values.
pub fn monotone_maps(m: usize, n: usize) -> Vec<SimplexMap> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; m + 1];
    loop {
        out.push(SimplexMap { source_dim: m, target_dim: n, values: cur.clone() });
        // next nondecreasing sequence in lex order
        let mut pos = m as isize;
        while pos >= 0 && cur[pos as usize] == n {
            pos -= 1;
        }
        if pos < 0 {
            return out;
        }
        let p = pos as usize;
        let v = cur[p] + 1;
        for c in cur.iter_mut().skip(p) {
            *c = v;
        }
    }
}

/// A simplicial set: levels with face and degeneracy maps.
pub trait SimplicialSet: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    /// `d_k: X_n -> X_{n-1}`.
    fn face(&self, n: usize, k: usize, x: &Self::Elem) -> Self::Elem;
    /// `s_k: X_n -> X_{n+1}`.
    fn degeneracy(&self, n: usize, k: usize, x: &Self::Elem) -> Self::Elem;
    /// Enumerates level `n` when it is finite and small enough.
    fn level(&self, n: usize) -> Option<Vec<Self::Elem>>;
}

/// The nerve of a group: level `n` is `G^n`.
#[derive(Clone, Debug)]
pub struct Nerve<G> {
    group: G,
}

impl<G: GroupModel> Nerve<G> {
    pub fn new(group: G) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &G {
        &self.group
    }
}

/// Shorthand for [`Nerve::new`].
pub fn nerve_of_group<G: GroupModel>(group: G) -> Nerve<G> {
    Nerve::new(group)
}

impl<G: GroupModel> SimplicialSet for Nerve<G> {
    type Elem = Vec<G::Elem>;

    fn face(&self, n: usize, k: usize, x: &Self::Elem) -> Self::Elem {
        debug_assert_eq!(x.len(), n);
        if k == 0 {
            x[1..].to_vec()
        } else if k == n {
            x[..n - 1].to_vec()
        } else {
            let mut y = Vec::with_capacity(n - 1);
            y.extend_from_slice(&x[..k - 1]);
            y.push(self.group.mul(&x[k - 1], &x[k]));
            y.extend_from_slice(&x[k + 1..]);
            y
        }
    }

    fn degeneracy(&self, n: usize, k: usize, x: &Self::Elem) -> Self::Elem {
        debug_assert_eq!(x.len(), n);
        let mut y = x.clone();
        y.insert(k, self.group.identity());
        y
    }

    fn level(&self, n: usize) -> Option<Vec<Self::Elem>> {
        let elems = self.group.elements()?;
        let total = elems.len().checked_pow(n as u32)?;
        if total > 5_000_000 {
            return None;
        }
        let mut out: Vec<Vec<G::Elem>> = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    elems.iter().map(move |e| {
                        let mut p = prefix.clone();
                        p.push(e.clone());
                        p
                    })
                })
                .collect();
        }
        Some(out)
    }
}

/// The standard simplex `Δ[d]`: level `n` is the set of monotone maps `[n] -> [d]`.
#[derive(Clone, Copy, Debug)]
pub struct StandardSimplex {
    pub dim: usize,
}

impl SimplicialSet for StandardSimplex {
    type Elem = SimplexMap;

    fn face(&self, n: usize, k: usize, x: &SimplexMap) -> SimplexMap {
        x.compose(&SimplexMap::coface(n, k)).expect("face of a level-n element")
    }

    fn degeneracy(&self, n: usize, k: usize, x: &SimplexMap) -> SimplexMap {
        x.compose(&SimplexMap::codegeneracy(n, k)).expect("degeneracy of a level-n element")
    }

    fn level(&self, n: usize) -> Option<Vec<SimplexMap>> {
        Some(monotone_maps(n, self.dim))
    }
}

/// A finite simplicial set stored as face and degeneracy tables over element ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSimplicialSet {
    sizes: Vec<usize>,
    /// `faces[n][k][x]` for `n >= 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degens[n][k][x]` for `n + 1 <= max_level`.
    degens: Vec<Vec<Vec<usize>>>,
}

impl TableSimplicialSet {
    /// Tabulates levels `0..=max_level` of a finite simplicial set.
    pub fn from_model<S>(s: &S, max_level: usize) -> Option<Self>
    where
        S: SimplicialSet,
        S::Elem: Eq + Hash,
    {
        let levels: Vec<Vec<S::Elem>> = (0..=max_level).map(|n| s.level(n)).collect::<Option<_>>()?;
        let lookup: Vec<HashMap<&S::Elem, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, x)| (x, i)).collect()).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=max_level {
            faces.push((0..=n).map(|k| levels[n].iter().map(|x| lookup[n - 1][&s.face(n, k, x)]).collect()).collect());
        }
        let mut degens = Vec::new();
        for n in 0..max_level {
            degens.push((0..=n).map(|k| levels[n].iter().map(|x| lookup[n + 1][&s.degeneracy(n, k, x)]).collect()).collect());
        }
        Some(Self { sizes: levels.iter().map(Vec::len).collect(), faces, degens })
    }

    pub fn max_level(&self) -> usize {
        self.sizes.len() - 1
    }

    /// Overwrites one face value; used to build faulty models.
    pub fn set_face(&mut self, n: usize, k: usize, x: usize, y: usize) {
        self.faces[n][k][x] = y;
    }

    pub fn set_degeneracy(&mut self, n: usize, k: usize, x: usize, y: usize) {
        self.degens[n][k][x] = y;
    }
}

impl SimplicialSet for TableSimplicialSet {
    type Elem = usize;

    fn face(&self, n: usize, k: usize, x: &usize) -> usize {
        self.faces[n][k][*x]
    }

    fn degeneracy(&self, n: usize, k: usize, x: &usize) -> usize {
        self.degens[n][k][*x]
    }

    fn level(&self, n: usize) -> Option<Vec<usize>> {
        self.sizes.get(n).map(|&s| (0..s).collect())
    }
}

/// Computes `X(α)(x)` for `α: [n] -> [m]` and `x ∈ X_m` through the epi-mono factorization.
pub fn simplicial_action<S: SimplicialSet>(s: &S, alpha: &SimplexMap, x: &S::Elem) -> S::Elem {
    // Faces for the injective part, largest missed vertex first.
    let mut level = alpha.target_dim();
    let mut y = x.clone();
    for &k in alpha.missed().iter().rev() {
        y = s.face(level, k, &y);
        level -= 1;
    }
    // Degeneracies for the surjective part, smallest repeat position first.
    for &j in &alpha.repeats() {
        y = s.degeneracy(level, j, &y);
        level += 1;
    }
    debug_assert_eq!(level, alpha.source_dim());
    y
}

/// Checks the simplicial identities on every element of the enumerated levels `<= max_level`.
pub fn check_simplicial_identities<S: SimplicialSet>(s: &S, max_level: usize) -> Report {
    let mut samples = Vec::new();
    for n in 0..=max_level {
        match s.level(n) {
            Some(l) => samples.push(l),
            None => break,
        }
    }
    let mut report = check_simplicial_identities_on(s, &samples, max_level);
    if samples.len() < max_level + 1 {
        report.warn(format!("levels above {} are not enumerable and were skipped", samples.len() as isize - 1));
    }
    report
}

/// Checks the simplicial identities on the given per-level samples. Only identities whose
/// intermediate levels stay `<= max_level` are checked.
pub fn check_simplicial_identities_on<S: SimplicialSet>(s: &S, samples: &[Vec<S::Elem>], max_level: usize) -> Report {
    let mut r = Report::new("simplicial identities");
    for (n, xs) in samples.iter().enumerate().take(max_level + 1) {
        for x in xs {
            // d_i d_j = d_{j-1} d_i for i < j
            if n >= 2 {
                for j in 1..=n {
                    for i in 0..j {
                        let lhs = s.face(n - 1, i, &s.face(n, j, x));
                        let rhs = s.face(n - 1, j - 1, &s.face(n, i, x));
                        r.record("d_i d_j = d_{j-1} d_i", lhs == rhs, 0.0, || format!("(i,j)=({i},{j}) level {n} x={x:?}"));
                    }
                }
            }
            if n + 1 <= max_level {
                for j in 0..=n {
                    let sx = s.degeneracy(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = s.face(n + 1, i, &sx);
                        let (name, rhs) = if i < j {
                            ("d_i s_j = s_{j-1} d_i (i<j)", s.degeneracy(n - 1, j - 1, &s.face(n, i, x)))
                        } else if i == j || i == j + 1 {
                            ("d_j s_j = d_{j+1} s_j = id", x.clone())
                        } else {
                            ("d_i s_j = s_j d_{i-1} (i>j+1)", s.degeneracy(n - 1, j, &s.face(n, i - 1, x)))
                        };
                        r.record(name, lhs == rhs, 0.0, || format!("(i,j)=({i},{j}) level {n} x={x:?}"));
                    }
                }
            }
            if n + 2 <= max_level {
                for j in 0..=n {
                    for i in 0..=j {
                        let lhs = s.degeneracy(n + 1, i, &s.degeneracy(n, j, x));
                        let rhs = s.degeneracy(n + 1, j + 1, &s.degeneracy(n, i, x));
                        r.record("s_i s_j = s_{j+1} s_i (i<=j)", lhs == rhs, 0.0, || format!("(i,j)=({i},{j}) level {n} x={x:?}"));
                    }
                }
            }
        }
    }
    r
}
