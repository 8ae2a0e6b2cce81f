//! Cohomology of the total complex on finite instances by exact linear algebra.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coeff::{CoeffError, CoefficientComplex};
use crate::cochain::{components, is_degenerate_coordinate, Family, TriCochain};
use crate::linalg::{integer_kernel, is_prime, kernel_mod_p, rank_mod_p, smith_diagonal, Lattice, LinalgError};
use crate::space::FiniteCoveredSpace;

#[derive(Debug, Error, PartialEq)]
pub enum CohomologyError {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("mu has a non-integer entry; cohomology needs exact coefficients")]
    NonIntegerMu,
    #[error("degree {degree} needs levels up to {needed}, space has {max}")]
    TooShallow { degree: usize, needed: usize, max: usize },
    #[error("image is not contained in the kernel; the differential does not square to zero")]
    NotAComplex,
}

/// A finitely generated abelian group `ℤ^free ⊕ ⊕ ℤ/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u128>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            k => parts.push(format!("Z^{k}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coordinate {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub x: usize,
    pub lex: usize,
    pub c: usize,
}

/// The coordinates of the total complex in one degree, in a fixed order.
pub struct CoordinateBasis {
    pub degree: usize,
    pub coords: Vec<Coordinate>,
    pub tuples: Vec<Vec<usize>>,
    pub moduli: Vec<u64>,
    index: HashMap<Coordinate, usize>,
}

fn lex_of(t: &[usize], ni: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * ni + i)
}

impl CoordinateBasis {
    pub fn new(
        space: &FiniteCoveredSpace,
        cx: &CoefficientComplex,
        degree: usize,
        min_level: usize,
        normalized: bool,
    ) -> Result<Self, CohomologyError> {
        let mut coords = Vec::new();
        let mut tuples = Vec::new();
        let mut moduli = Vec::new();
        for (p, q, r) in components(degree, min_level, space.max_level()) {
            let g = cx.group(r);
            let ms = g.moduli()?;
            let ni = space.level(p).n_indices;
            space.for_each_tuple(p, q, |x, t| {
                if normalized && is_degenerate_coordinate(space, p, x, t) {
                    return;
                }
                for (c, &m) in ms.iter().enumerate() {
                    coords.push(Coordinate { p, q, r, x, lex: lex_of(t, ni), c });
                    tuples.push(t.to_vec());
                    moduli.push(m);
                }
            });
        }
        let index = coords.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        Ok(Self { degree, coords, tuples, moduli, index })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn position(&self, space: &FiniteCoveredSpace, p: usize, q: usize, r: usize, x: usize, t: &[usize], c: usize) -> Option<usize> {
        let ni = space.level(p).n_indices;
        self.index.get(&Coordinate { p, q, r, x, lex: lex_of(t, ni), c }).copied()
    }

    /// The family whose coordinates are `v`.
    pub fn to_family(&self, space: &FiniteCoveredSpace, cx: &CoefficientComplex, v: &[i128]) -> Family {
        let mut fam = Family::new(self.degree);
        for (k, co) in self.coords.iter().enumerate() {
            let shape = (co.p, co.q, co.r);
            let c = fam.comps.entry(shape).or_insert_with(|| TriCochain::zeros_in(space, cx, co.p, co.q, co.r).unwrap());
            c.get_mut(co.x, &self.tuples[k])[co.c] = v[k] as f64;
        }
        for c in fam.comps.values_mut() {
            c.reduce(cx.group(c.r));
        }
        fam
    }

    /// Coordinates of a family; components outside the basis are ignored.
    pub fn from_family(&self, fam: &Family) -> Vec<i128> {
        self.coords
            .iter()
            .enumerate()
            .map(|(k, co)| fam.get(co.p, co.q, co.r).map_or(0, |c| c.get(co.x, &self.tuples[k])[co.c].round() as i128))
            .collect()
    }
}

fn sign(k: usize) -> i128 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The matrix of `D₃` from `src` to `dst` (rows indexed by `dst`).
pub fn d_matrix(
    space: &FiniteCoveredSpace,
    cx: &CoefficientComplex,
    src: &CoordinateBasis,
    dst: &CoordinateBasis,
) -> Result<Vec<Vec<i128>>, CohomologyError> {
    let mu: Vec<Vec<i128>> = cx
        .mu
        .iter()
        .map(|row| row.iter().map(|&m| if m.fract() == 0.0 { Ok(m as i128) } else { Err(CohomologyError::NonIntegerMu) }).collect())
        .collect::<Result<_, _>>()?;
    let mut m = vec![vec![0i128; src.len()]; dst.len()];
    let mut buf = Vec::new();
    for (row, co) in dst.coords.iter().enumerate() {
        let (p, q, r, x, c) = (co.p, co.q, co.r, co.x, co.c);
        let t = &dst.tuples[row];
        if p >= 1 {
            for k in 0..=p {
                buf.clear();
                buf.extend(t.iter().map(|&i| space.index_face(p, k, i)));
                if let Some(col) = src.position(space, p - 1, q, r, space.face(p, k, x), &buf, c) {
                    m[row][col] += sign(k + p);
                }
            }
        }
        if q >= 1 {
            for l in 0..=q {
                buf.clear();
                buf.extend(t.iter().enumerate().filter(|&(j, _)| j != l).map(|(_, &i)| i));
                if let Some(col) = src.position(space, p, q - 1, r, x, &buf, c) {
                    m[row][col] += sign(p) * sign(l);
                }
            }
        }
        if r == 1 {
            for (a, &coef) in mu[c].iter().enumerate() {
                if coef != 0 {
                    if let Some(col) = src.position(space, p, q, 0, x, t, a) {
                        m[row][col] += sign(p + q) * coef;
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Options for [`cohomology_bruteforce`].
#[derive(Clone, Copy, Debug, Default)]
pub struct CohomologyOptions {
    /// Restrict to the subcomplex of normalized cochains.
    pub normalized: bool,
    /// Only components with `p >= min_level`.
    pub min_level: usize,
    /// Skip the prime-field shortcut.
    pub force_integer: bool,
}

/// `ker D₃ / im D₃` in the given degree.
pub fn cohomology_bruteforce(
    space: &FiniteCoveredSpace,
    cx: &CoefficientComplex,
    degree: usize,
    opts: CohomologyOptions,
) -> Result<AbelianInvariants, CohomologyError> {
    if degree + 1 > space.max_level() {
        return Err(CohomologyError::TooShallow { degree, needed: degree + 1, max: space.max_level() });
    }
    let basis = |d: usize| CoordinateBasis::new(space, cx, d, opts.min_level, opts.normalized);
    let here = basis(degree)?;
    let next = basis(degree + 1)?;
    let prev = if degree > 0 { Some(basis(degree - 1)?) } else { None };
    let d_out = d_matrix(space, cx, &here, &next)?;
    let d_in = match &prev {
        Some(b) => d_matrix(space, cx, b, &here)?,
        None => vec![Vec::new(); here.len()],
    };
    let n_in = prev.as_ref().map_or(0, |b| b.len());

    let all_moduli: Vec<u64> = prev.iter().chain([&here, &next]).flat_map(|b| b.moduli.iter().copied()).collect();
    if !opts.force_integer {
        if let Some(&p) = all_moduli.first() {
            if is_prime(p) && all_moduli.iter().all(|&m| m == p) {
                let to_u = |m: &[Vec<i128>]| -> Vec<Vec<u64>> {
                    m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect()).collect()
                };
                let k = here.len() - rank_mod_p(&to_u(&d_out), here.len(), p);
                let b = rank_mod_p(&to_u(&d_in), n_in, p);
                return Ok(AbelianInvariants { free_rank: 0, torsion: vec![p as u128; k - b] });
            }
        }
    }

    // cycles: kernel of [D | diag(moduli of next)] projected to the first block
    let rel_next: Vec<usize> = (0..next.len()).filter(|&k| next.moduli[k] != 0).collect();
    let width = here.len() + rel_next.len();
    let aug: Vec<Vec<i128>> = d_out
        .iter()
        .enumerate()
        .map(|(row, r)| {
            let mut v = r.clone();
            v.extend(rel_next.iter().map(|&k| if k == row { next.moduli[k] as i128 } else { 0 }));
            v
        })
        .collect();
    let ker = integer_kernel(&aug, width)?;
    let mut z_gens: Vec<Vec<i128>> = ker.into_iter().map(|v| v[..here.len()].to_vec()).collect();
    if aug.is_empty() {
        z_gens = (0..here.len()).map(|k| (0..here.len()).map(|j| i128::from(j == k)).collect()).collect();
    }
    let z = Lattice::spanned_by(&z_gens, here.len())?;

    // boundaries plus the relations of this degree
    let mut b_gens: Vec<Vec<i128>> = (0..n_in).map(|c| d_in.iter().map(|r| r[c]).collect()).collect();
    for k in 0..here.len() {
        if here.moduli[k] != 0 {
            let mut v = vec![0i128; here.len()];
            v[k] = here.moduli[k] as i128;
            b_gens.push(v);
        }
    }
    let coords: Vec<Vec<i128>> = b_gens
        .iter()
        .map(|g| z.coordinates(g).map_err(|_| CohomologyError::NotAComplex))
        .collect::<Result<_, _>>()?;
    let rank = z.rank();
    let mat: Vec<Vec<i128>> = (0..rank).map(|r| coords.iter().map(|c| c[r]).collect()).collect();
    let diag = smith_diagonal(&mat, coords.len())?;
    Ok(AbelianInvariants {
        free_rank: rank - diag.len(),
        torsion: diag.into_iter().filter(|&d| d > 1).map(|d| d as u128).collect(),
    })
}

/// All cocycles of a degree over a prime field, as an `F_p` basis of coordinate vectors.
pub fn cocycle_basis_mod_p(
    space: &FiniteCoveredSpace,
    cx: &CoefficientComplex,
    degree: usize,
    min_level: usize,
    normalized: bool,
    p: u64,
) -> Result<(CoordinateBasis, Vec<Vec<u64>>), CohomologyError> {
    let here = CoordinateBasis::new(space, cx, degree, min_level, normalized)?;
    let next = CoordinateBasis::new(space, cx, degree + 1, min_level, normalized)?;
    let d = d_matrix(space, cx, &here, &next)?;
    let du: Vec<Vec<u64>> = d.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p as i128) as u64).collect()).collect();
    let ker = kernel_mod_p(&du, here.len(), p);
    Ok((here, ker))
}
