//! Group models used as inputs to the nerve construction.

use std::fmt::Debug;

/// A group given by identity, multiplication and inverse over some carrier.
pub trait GroupModel: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// All elements, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// Equality used by verification code. Exact by default.
    fn approx_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }
}

impl<G: GroupModel> GroupModel for &G {
    type Elem = G::Elem;
    fn identity(&self) -> G::Elem {
        (**self).identity()
    }
    fn mul(&self, a: &G::Elem, b: &G::Elem) -> G::Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: &G::Elem) -> G::Elem {
        (**self).inv(a)
    }
    fn elements(&self) -> Option<Vec<G::Elem>> {
        (**self).elements()
    }
    fn approx_eq(&self, a: &G::Elem, b: &G::Elem) -> bool {
        (**self).approx_eq(a, b)
    }
}

/// A finite group stored as a multiplication table over `0..order`.
/// Element `0` is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, checking the group axioms.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, String> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err("table must be a square array over 0..n".into());
        }
        if labels.len() != n {
            return Err("one label per element required".into());
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return Err("element 0 must be the identity".into());
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(format!("not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inverses[a] = b,
                _ => return Err(format!("element {a} has no inverse")),
            }
        }
        Ok(Self { name: name.to_string(), table, inverses, labels })
    }

    /// The cyclic group Z/n written additively.
    pub fn cyclic(n: usize) -> Self {
        Self::product(&[n])
    }

    /// A product of cyclic groups; element codes are mixed-radix with the first factor fastest.
    pub fn product(moduli: &[usize]) -> Self {
        assert!(!moduli.is_empty() && moduli.iter().all(|&m| m > 0));
        let order: usize = moduli.iter().product();
        let digits = |mut x: usize| {
            moduli
                .iter()
                .map(|&m| {
                    let d = x % m;
                    x /= m;
                    d
                })
                .collect::<Vec<_>>()
        };
        let encode = |ds: &[usize]| ds.iter().zip(moduli).rev().fold(0, |acc, (&d, &m)| acc * m + d);
        let table = (0..order)
            .map(|a| {
                let da = digits(a);
                (0..order)
                    .map(|b| {
                        let db = digits(b);
                        let s: Vec<usize> = da.iter().zip(&db).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
                        encode(&s)
                    })
                    .collect()
            })
            .collect();
        let labels = (0..order)
            .map(|a| {
                let ds = digits(a);
                if ds.len() == 1 {
                    ds[0].to_string()
                } else {
                    format!("({})", ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        let name = moduli.iter().map(|m| format!("Z/{m}")).collect::<Vec<_>>().join(" x ");
        Self::from_table(&name, table, labels).expect("products of cyclic groups are groups")
    }

    /// The symmetric group on three letters; permutations listed in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (a*b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
        Self::from_table("S3", table, labels).expect("S3 is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Looks an element up by its label.
    pub fn parse_label(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }
}

impl GroupModel for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn inv(&self, a: &usize) -> usize {
        self.inverses[*a]
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.order()).collect())
    }
}

/// The additive group `ℝⁿ`, compared up to `eps` in the max norm.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorGroup {
    pub dim: usize,
    pub eps: f64,
}

impl VectorGroup {
    pub fn new(dim: usize) -> Self {
        Self { dim, eps: 1e-9 }
    }
}

impl GroupModel for VectorGroup {
    type Elem = Vec<f64>;

    fn identity(&self) -> Vec<f64> {
        vec![0.0; self.dim]
    }

    fn mul(&self, a: &Vec<f64>, b: &Vec<f64>) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn inv(&self, a: &Vec<f64>) -> Vec<f64> {
        a.iter().map(|x| -x).collect()
    }

    fn approx_eq(&self, a: &Vec<f64>, b: &Vec<f64>) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= self.eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_arithmetic() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(g.mul(&3, &3), 2);
        assert_eq!(g.inv(&1), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn s3_is_nonabelian_of_order_six() {
        let g = FiniteGroup::symmetric3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        for a in 0..6 {
            assert_eq!(g.mul(&a, &g.inv(&a)), 0);
        }
    }

    #[test]
    fn product_labels_round_trip() {
        let g = FiniteGroup::product(&[2, 3]);
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            assert_eq!(g.parse_label(g.label(a)), Some(a));
        }
    }

    #[test]
    fn from_table_rejects_non_groups() {
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table("bad", t, vec!["0".into(), "1".into()]).is_err());
    }
}
