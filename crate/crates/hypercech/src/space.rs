//! Finite covered simplicial sets tabulated up to a maximal level.
//!
//! Points and cover indices of each level are numbered; faces, degeneracies and membership
//! become table lookups so cochains can be stored densely.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::covers::SimplicialCover;
use crate::group::{FiniteGroup, GroupModel};
use crate::simplicial::{Nerve, SimplicialSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpaceError {
    #[error("level {0} is not finite or too large to enumerate")]
    Infinite(usize),
    #[error("cover indices at level {0} are not finite or too large to enumerate")]
    InfiniteIndex(usize),
    #[error("{0} does not land in the enumerated level")]
    NotClosed(String),
}

#[derive(Clone, Debug)]
pub struct Level {
    pub n_points: usize,
    pub n_indices: usize,
    pub point_face: Vec<Vec<usize>>,
    pub point_degen: Vec<Vec<usize>>,
    pub index_face: Vec<Vec<usize>>,
    pub index_degen: Vec<Vec<usize>>,
    /// `member[i * n_points + x]`.
    pub member: Vec<bool>,
    /// Indices whose sets contain each point, ascending.
    pub containing: Vec<Vec<usize>>,
    pub point_labels: Vec<String>,
    pub index_labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FiniteCoveredSpace {
    pub levels: Vec<Level>,
}

impl FiniteCoveredSpace {
    pub fn build<S, C>(
        s: &S,
        cover: &C,
        max_level: usize,
        point_label: impl Fn(&S::Elem) -> String,
        index_label: impl Fn(&C::Index) -> String,
    ) -> Result<Self, SpaceError>
    where
        S: SimplicialSet,
        S::Elem: Eq + Hash,
        C: SimplicialCover<S>,
        C::Index: Eq + Hash,
    {
        let points: Vec<Vec<S::Elem>> =
            (0..=max_level).map(|n| s.level(n).ok_or(SpaceError::Infinite(n))).collect::<Result<_, _>>()?;
        let indices: Vec<Vec<C::Index>> =
            (0..=max_level).map(|n| cover.index_level(n).ok_or(SpaceError::InfiniteIndex(n))).collect::<Result<_, _>>()?;
        let pmap: Vec<HashMap<&S::Elem, usize>> =
            points.iter().map(|l| l.iter().enumerate().map(|(k, x)| (x, k)).collect()).collect();
        let imap: Vec<HashMap<&C::Index, usize>> =
            indices.iter().map(|l| l.iter().enumerate().map(|(k, x)| (x, k)).collect()).collect();
        let find_p = |n: usize, x: &S::Elem| pmap[n].get(x).copied().ok_or_else(|| SpaceError::NotClosed(format!("point {x:?}")));
        let find_i = |n: usize, x: &C::Index| imap[n].get(x).copied().ok_or_else(|| SpaceError::NotClosed(format!("index {x:?}")));

        let mut levels = Vec::new();
        for n in 0..=max_level {
            let (np, ni) = (points[n].len(), indices[n].len());
            let mut point_face = Vec::new();
            let mut index_face = Vec::new();
            if n >= 1 {
                for k in 0..=n {
                    point_face.push(points[n].iter().map(|x| find_p(n - 1, &s.face(n, k, x))).collect::<Result<_, _>>()?);
                    index_face.push(indices[n].iter().map(|i| find_i(n - 1, &cover.index_face(n, k, i))).collect::<Result<_, _>>()?);
                }
            }
            let mut point_degen = Vec::new();
            let mut index_degen = Vec::new();
            if n < max_level {
                for k in 0..=n {
                    point_degen.push(points[n].iter().map(|x| find_p(n + 1, &s.degeneracy(n, k, x))).collect::<Result<_, _>>()?);
                    index_degen
                        .push(indices[n].iter().map(|i| find_i(n + 1, &cover.index_degeneracy(n, k, i))).collect::<Result<_, _>>()?);
                }
            }
            let mut member = vec![false; ni * np];
            let mut containing = vec![Vec::new(); np];
            for (ii, i) in indices[n].iter().enumerate() {
                for (xi, x) in points[n].iter().enumerate() {
                    if cover.member(n, i, x) {
                        member[ii * np + xi] = true;
                        containing[xi].push(ii);
                    }
                }
            }
            levels.push(Level {
                n_points: np,
                n_indices: ni,
                point_face,
                point_degen,
                index_face,
                index_degen,
                member,
                containing,
                point_labels: points[n].iter().map(&point_label).collect(),
                index_labels: indices[n].iter().map(&index_label).collect(),
            });
        }
        Ok(Self { levels })
    }

    /// The nerve of a finite group with a given cover; points are labelled by group labels.
    pub fn from_nerve<C>(group: &FiniteGroup, cover: &C, max_level: usize) -> Result<Self, SpaceError>
    where
        C: SimplicialCover<Nerve<FiniteGroup>>,
        C::Index: Eq + Hash,
    {
        let nerve = Nerve::new(group.clone());
        let label = |x: &Vec<usize>| tuple_label(&x.iter().map(|&g| group.label(g).to_string()).collect::<Vec<_>>());
        Self::build(&nerve, cover, max_level, label, |i| format!("{i:?}"))
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize) -> &Level {
        &self.levels[p]
    }

    pub fn face(&self, p: usize, k: usize, x: usize) -> usize {
        self.levels[p].point_face[k][x]
    }

    pub fn degeneracy(&self, p: usize, k: usize, x: usize) -> usize {
        self.levels[p].point_degen[k][x]
    }

    pub fn index_face(&self, p: usize, k: usize, i: usize) -> usize {
        self.levels[p].index_face[k][i]
    }

    pub fn index_degeneracy(&self, p: usize, k: usize, i: usize) -> usize {
        self.levels[p].index_degen[k][i]
    }

    pub fn member(&self, p: usize, i: usize, x: usize) -> bool {
        let l = &self.levels[p];
        l.member[i * l.n_points + x]
    }

    /// The degenerate 1-simplex at the unique-or-first vertex, i.e. the identity of a group nerve.
    pub fn identity_point(&self) -> usize {
        self.degeneracy(0, 0, 0)
    }

    /// Lowest index at level 1 whose set contains the identity point.
    pub fn unit_index(&self) -> Option<usize> {
        self.levels[1].containing[self.identity_point()].first().copied()
    }

    /// Calls `f(x, tuple)` for every point and every `(q+1)`-tuple of indices containing it,
    /// points ascending and tuples in lexicographic order.
    pub fn for_each_tuple(&self, p: usize, q: usize, mut f: impl FnMut(usize, &[usize])) {
        let l = &self.levels[p];
        let mut tuple = vec![0usize; q + 1];
        let mut pos = vec![0usize; q + 1];
        for x in 0..l.n_points {
            let c = &l.containing[x];
            if c.is_empty() {
                continue;
            }
            pos.iter_mut().for_each(|v| *v = 0);
            loop {
                for (t, &k) in tuple.iter_mut().zip(&pos) {
                    *t = c[k];
                }
                f(x, &tuple);
                let mut d = q as isize;
                while d >= 0 {
                    pos[d as usize] += 1;
                    if pos[d as usize] < c.len() {
                        break;
                    }
                    pos[d as usize] = 0;
                    d -= 1;
                }
                if d < 0 {
                    break;
                }
            }
        }
    }

    /// Number of `(x, tuple)` pairs visited by [`Self::for_each_tuple`].
    pub fn tuple_count(&self, p: usize, q: usize) -> usize {
        self.levels[p].containing.iter().map(|c| c.len().pow(q as u32 + 1)).sum()
    }

    pub fn describe(&self, p: usize, x: usize, tuple: &[usize]) -> String {
        let l = &self.levels[p];
        let idx: Vec<String> = tuple.iter().map(|&i| l.index_labels[i].clone()).collect();
        format!("x={} i={}", l.point_labels[x], tuple_label(&idx))
    }
}

pub fn tuple_label(parts: &[String]) -> String {
    format!("({})", parts.join(","))
}

/// All elements of `G^n` for a finite group, in lexicographic order.
pub fn group_tuples<G: GroupModel>(g: &G, n: usize) -> Vec<Vec<G::Elem>> {
    Nerve::new(g).level(n).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::TrivialCover;

    #[test]
    fn tabulated_nerve() {
        let g = FiniteGroup::cyclic(2);
        let s = FiniteCoveredSpace::from_nerve(&g, &TrivialCover, 4).unwrap();
        assert_eq!(s.level(3).n_points, 8);
        assert_eq!(s.level(4).n_indices, 1);
        assert_eq!(s.level(1).point_labels[s.identity_point()], "(0)");
        assert_eq!(s.unit_index(), Some(0));
        assert_eq!(s.tuple_count(2, 1), 4);
        let mut seen = Vec::new();
        s.for_each_tuple(1, 2, |x, t| seen.push((x, t.to_vec())));
        assert_eq!(seen, vec![(0, vec![0, 0, 0]), (1, vec![0, 0, 0])]);
    }
}
