//! Exact integer and prime-field linear algebra on small dense matrices.
//!
//! Matrices are row-major `Vec<Vec<i128>>`; all integer arithmetic is overflow-checked.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("integer overflow during elimination")]
    Overflow,
    #[error("vector is not in the lattice")]
    NotInLattice,
}

type Mat = Vec<Vec<i128>>;

fn ck(x: Option<i128>) -> Result<i128, LinalgError> {
    x.ok_or(LinalgError::Overflow)
}

/// `col_j -= q * col_k` on every matrix in `ms`.
fn col_axpy(ms: &mut [&mut Mat], j: usize, k: usize, q: i128) -> Result<(), LinalgError> {
    for m in ms.iter_mut() {
        for row in m.iter_mut() {
            let t = ck(q.checked_mul(row[k]))?;
            row[j] = ck(row[j].checked_sub(t))?;
        }
    }
    Ok(())
}

fn col_swap(ms: &mut [&mut Mat], j: usize, k: usize) {
    for m in ms.iter_mut() {
        for row in m.iter_mut() {
            row.swap(j, k);
        }
    }
}

/// Column echelon form `M·V = H` by unimodular column operations. Returns `(H, V, rank)`;
/// the first `rank` columns of `H` have strictly increasing pivot rows, the rest are zero.
pub fn column_echelon(m: &Mat, ncols: usize) -> Result<(Mat, Mat, usize), LinalgError> {
    let mut h = m.clone();
    let mut v: Mat = (0..ncols).map(|i| (0..ncols).map(|j| i128::from(i == j)).collect()).collect();
    let mut k = 0;
    for r in 0..h.len() {
        if k == ncols {
            break;
        }
        loop {
            let best = (k..ncols).filter(|&j| h[r][j] != 0).min_by_key(|&j| h[r][j].unsigned_abs());
            let Some(j) = best else { break };
            col_swap(&mut [&mut h, &mut v], j, k);
            let mut done = true;
            for j in k + 1..ncols {
                if h[r][j] != 0 {
                    let q = h[r][j].div_euclid(h[r][k]);
                    col_axpy(&mut [&mut h, &mut v], j, k, q)?;
                    if h[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if h[r][k] < 0 {
                    for row in h.iter_mut() {
                        row[k] = -row[k];
                    }
                    for row in v.iter_mut() {
                        row[k] = -row[k];
                    }
                }
                k += 1;
                break;
            }
        }
    }
    Ok((h, v, k))
}

/// A ℤ-basis of `{v : M v = 0}` as vectors of length `ncols`.
pub fn integer_kernel(m: &Mat, ncols: usize) -> Result<Vec<Vec<i128>>, LinalgError> {
    let (_, v, rank) = column_echelon(m, ncols)?;
    Ok((rank..ncols).map(|c| v.iter().map(|row| row[c]).collect()).collect())
}

/// Echelon ℤ-basis (as columns) of the lattice spanned by `gens`, each of length `n`.
pub struct Lattice {
    pub basis: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn spanned_by(gens: &[Vec<i128>], n: usize) -> Result<Self, LinalgError> {
        let m: Mat = (0..n).map(|r| gens.iter().map(|g| g[r]).collect()).collect();
        let (h, _, rank) = column_echelon(&m, gens.len())?;
        let basis: Vec<Vec<i128>> = (0..rank).map(|c| h.iter().map(|row| row[c]).collect()).collect();
        let pivots = basis.iter().map(|b| b.iter().position(|&x| x != 0).unwrap()).collect();
        Ok(Self { basis, pivots })
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i128]) -> Result<Vec<i128>, LinalgError> {
        let mut rest = v.to_vec();
        let mut c = Vec::with_capacity(self.basis.len());
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if rest[p] % b[p] != 0 {
                return Err(LinalgError::NotInLattice);
            }
            let q = rest[p] / b[p];
            for (x, y) in rest.iter_mut().zip(b) {
                *x = ck(x.checked_sub(ck(q.checked_mul(*y))?))?;
            }
            c.push(q);
        }
        if rest.iter().any(|&x| x != 0) {
            return Err(LinalgError::NotInLattice);
        }
        Ok(c)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Nonzero diagonal entries of the Smith normal form, positive and in divisibility order.
pub fn smith_diagonal(m: &Mat, ncols: usize) -> Result<Vec<i128>, LinalgError> {
    let mut a = m.clone();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(ncols) {
        // pivot: smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..ncols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in t..ncols {
                        a[i][j] = ck(a[i][j].checked_sub(ck(q.checked_mul(a[t][j]))?))?;
                    }
                    if a[i][t] != 0 {
                        clean = false;
                        a.swap(t, i);
                    }
                }
            }
            for j in t + 1..ncols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
                    }
                    if a[t][j] != 0 {
                        clean = false;
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility of the rest of the block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..ncols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..ncols {
                        a[t][j] = ck(a[t][j].checked_add(a[i][j]))?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // divisibility order via gcd/lcm normalisation
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = gcd(diag[i], diag[j]);
            let l = ck((diag[i] / g).checked_mul(diag[j]))?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    Ok(diag)
}

/// Rank over `F_p`.
pub fn rank_mod_p(m: &[Vec<u64>], ncols: usize, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..ncols {
                    a[r][j] = (a[r][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A basis of the kernel over `F_p`.
pub fn kernel_mod_p(m: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..ncols {
                    a[r][j] = (a[r][j] + p * p - f * a[rank][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
