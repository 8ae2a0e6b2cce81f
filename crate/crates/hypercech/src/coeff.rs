//! Abelian coefficient groups and two-term complexes `μ: A -> B`.
//!
//! Elements are coordinate vectors of `f64`. Integer and cyclic coordinates are exact as long
//! as values stay below 2^53; cyclic coordinates are kept reduced to `0..n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CoeffError {
    #[error("mu must be a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize },
    #[error("mu is not well defined: {0}")]
    NotWellDefined(String),
    #[error("real coefficients have no exact cohomology")]
    NotExact,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Factor {
    Integer,
    Cyclic(u64),
    Real,
}

/// A finite product of copies of ℤ, ℤ/n and ℝ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub factors: Vec<Factor>,
    /// Comparison tolerance for real coordinates.
    pub eps: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl AbelianGroup {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors, eps: DEFAULT_EPS }
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn integers(rank: usize) -> Self {
        Self::new(vec![Factor::Integer; rank])
    }

    pub fn cyclic(n: u64) -> Self {
        Self::new(vec![Factor::Cyclic(n)])
    }

    pub fn real(dim: usize) -> Self {
        Self::new(vec![Factor::Real; dim])
    }

    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn dim(&self) -> usize {
        self.factors.len()
    }

    pub fn is_exact(&self) -> bool {
        !self.factors.contains(&Factor::Real)
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, Factor::Cyclic(_)))
    }

    /// Order of the group when finite.
    pub fn order(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, f| match f {
            Factor::Cyclic(n) => acc.checked_mul(*n),
            _ => None,
        })
    }

    /// Moduli of the coordinates with `0` for ℤ; fails on real factors.
    pub fn moduli(&self) -> Result<Vec<u64>, CoeffError> {
        self.factors
            .iter()
            .map(|f| match f {
                Factor::Integer => Ok(0),
                Factor::Cyclic(n) => Ok(*n),
                Factor::Real => Err(CoeffError::NotExact),
            })
            .collect()
    }

    pub fn reduce(&self, v: &mut [f64]) {
        for (x, f) in v.iter_mut().zip(&self.factors) {
            if let Factor::Cyclic(n) = f {
                *x = x.rem_euclid(*n as f64);
            }
        }
    }

    /// Distance of a coordinate vector from zero: `min(x, n-x)` on cyclic factors.
    pub fn norm(&self, v: &[f64]) -> f64 {
        v.iter()
            .zip(&self.factors)
            .map(|(&x, f)| match f {
                Factor::Cyclic(n) => {
                    let r = x.rem_euclid(*n as f64);
                    r.min(*n as f64 - r)
                }
                _ => x.abs(),
            })
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, v: &[f64]) -> bool {
        if self.is_exact() {
            self.norm(v) == 0.0
        } else {
            v.iter().zip(&self.factors).all(|(&x, f)| match f {
                Factor::Real => x.abs() <= self.eps,
                Factor::Cyclic(n) => x.rem_euclid(*n as f64) == 0.0,
                Factor::Integer => x == 0.0,
            })
        }
    }

    /// Enumerates all elements of a finite group, first coordinate fastest.
    pub fn elements(&self) -> Option<Vec<Vec<f64>>> {
        let mut out = vec![Vec::new()];
        for f in &self.factors {
            let Factor::Cyclic(n) = f else { return None };
            out = out
                .into_iter()
                .flat_map(|p: Vec<f64>| {
                    (0..*n).map(move |k| {
                        let mut q = p.clone();
                        q.push(k as f64);
                        q
                    })
                })
                .collect();
        }
        Some(out)
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| match x {
                Factor::Integer => "Z".to_string(),
                Factor::Cyclic(n) => format!("Z/{n}"),
                Factor::Real => "R".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A two-term complex `μ: A -> B`; `mu[row][col]` maps coordinate `col` of `A` to `row` of `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientComplex {
    pub a: AbelianGroup,
    pub b: AbelianGroup,
    pub mu: Vec<Vec<f64>>,
}

impl CoefficientComplex {
    pub fn new(a: AbelianGroup, b: AbelianGroup, mu: Vec<Vec<f64>>) -> Result<Self, CoeffError> {
        let (rows, cols) = (b.dim(), a.dim());
        if mu.len() != rows || mu.iter().any(|r| r.len() != cols) {
            return Err(CoeffError::Shape { rows, cols });
        }
        for (r, row) in mu.iter().enumerate() {
            for (c, &m) in row.iter().enumerate() {
                let target = b.factors[r];
                if target != Factor::Real && m.fract() != 0.0 {
                    return Err(CoeffError::NotWellDefined(format!("entry ({r},{c}) = {m} is not an integer")));
                }
                // n·e_c = 0 in A forces n·μ(e_c) = 0 in B
                if let Factor::Cyclic(n) = a.factors[c] {
                    let image = m * n as f64;
                    let ok = match target {
                        Factor::Cyclic(k) => image.rem_euclid(k as f64) == 0.0,
                        _ => m == 0.0,
                    };
                    if !ok {
                        return Err(CoeffError::NotWellDefined(format!("entry ({r},{c}) does not respect the order of A")));
                    }
                }
                if a.factors[c] == Factor::Real && target != Factor::Real && m != 0.0 {
                    return Err(CoeffError::NotWellDefined(format!("entry ({r},{c}) maps a real factor to a discrete one")));
                }
            }
        }
        Ok(Self { a, b, mu })
    }

    /// The complex `A -> 0`.
    pub fn only_a(a: AbelianGroup) -> Self {
        Self { a, b: AbelianGroup::zero(), mu: Vec::new() }
    }

    /// The complex `0 -> B`.
    pub fn only_b(b: AbelianGroup) -> Self {
        let mu = vec![Vec::new(); b.dim()];
        Self { a: AbelianGroup::zero(), b, mu }
    }

    pub fn group(&self, r: usize) -> &AbelianGroup {
        if r == 0 {
            &self.a
        } else {
            &self.b
        }
    }

    pub fn apply_mu(&self, a: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = self.mu.iter().map(|row| row.iter().zip(a).map(|(m, x)| m * x).sum()).collect();
        self.b.reduce(&mut out);
        out
    }

    pub fn is_exact(&self) -> bool {
        self.a.is_exact() && self.b.is_exact()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irrational_mu() {
        let s2 = 2f64.sqrt();
        let cx = CoefficientComplex::new(AbelianGroup::integers(2), AbelianGroup::real(1), vec![vec![1.0, s2]]).unwrap();
        assert!((cx.apply_mu(&[1.0, 1.0])[0] - (1.0 + s2)).abs() < 1e-15);
        assert_eq!(cx.apply_mu(&[0.0, 0.0]), vec![0.0]);
    }

    #[test]
    fn cyclic_reduction_and_norm() {
        let g = AbelianGroup::cyclic(5);
        let mut v = vec![-1.0];
        g.reduce(&mut v);
        assert_eq!(v, vec![4.0]);
        assert_eq!(g.norm(&v), 1.0);
        assert_eq!(g.elements().unwrap().len(), 5);
    }

    #[test]
    fn ill_defined_mu_rejected() {
        let r = CoefficientComplex::new(AbelianGroup::cyclic(2), AbelianGroup::integers(1), vec![vec![1.0]]);
        assert!(r.is_err());
        let r = CoefficientComplex::new(AbelianGroup::cyclic(4), AbelianGroup::cyclic(2), vec![vec![1.0]]);
        assert!(r.is_ok());
        let r = CoefficientComplex::new(AbelianGroup::cyclic(2), AbelianGroup::cyclic(4), vec![vec![1.0]]);
        assert!(r.is_err());
        let r = CoefficientComplex::new(AbelianGroup::cyclic(2), AbelianGroup::cyclic(4), vec![vec![2.0]]);
        assert!(r.is_ok());
    }

    #[test]
    fn real_is_not_exact() {
        assert_eq!(AbelianGroup::real(1).moduli(), Err(CoeffError::NotExact));
        assert_eq!(AbelianGroup::new(vec![Factor::Integer, Factor::Cyclic(3)]).moduli().unwrap(), vec![0, 3]);
    }
}
