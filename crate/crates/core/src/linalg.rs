//! Exact linear algebra over Q(sqrt 2).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Scalar;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

/// Combination of the vectors inserted so far, by insertion index.
pub type Combination = BTreeMap<usize, Scalar>;

pub fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, c: &Scalar, x: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Scalar::zero);
        *e += &(c * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

struct Row<K> {
    pivot: K,
    vec: SparseVec<K>,
    combo: Combination,
}

/// Reduced row echelon form built one vector at a time. Every stored row
/// remembers how it is written in terms of the inserted vectors.
pub struct Echelon<K> {
    rows: Vec<Row<K>>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors passed to [`Echelon::insert`].
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Returns the residual of `v` modulo the span and the combination `c`
    /// with `v = residual + sum c_i v_i`.
    pub fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, Combination) {
        let mut res = v.clone();
        let mut combo = Combination::new();
        for row in &self.rows {
            let Some(c) = res.get(&row.pivot).cloned() else { continue };
            axpy(&mut res, &-c.clone(), &row.vec);
            axpy(&mut combo, &c, &row.combo);
        }
        (res, combo)
    }

    /// Inserts `v` under the next index. Returns `Some(c)` with
    /// `v = sum c_i v_i` when `v` already lies in the span.
    pub fn insert(&mut self, v: &SparseVec<K>) -> Option<Combination> {
        let idx = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let Some((pivot, lead)) = res.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(combo);
        };
        let inv = lead.inverse().expect("nonzero pivot");
        let mut vec = SparseVec::new();
        axpy(&mut vec, &inv, &res);
        // row = (v_idx - combo) / lead
        let mut row_combo = Combination::new();
        row_combo.insert(idx, inv.clone());
        axpy(&mut row_combo, &-inv, &combo);
        for row in &mut self.rows {
            if let Some(c) = row.vec.get(&pivot).cloned() {
                axpy(&mut row.vec, &-c.clone(), &vec);
                axpy(&mut row.combo, &-c, &row_combo);
            }
        }
        self.rows.push(Row { pivot, vec, combo: row_combo });
        None
    }

    /// Expresses `v` in the inserted vectors, or `None` if outside the span.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<Combination> {
        let (res, combo) = self.reduce(v);
        res.is_empty().then_some(combo)
    }
}

pub type Matrix = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Scalar::zero(); cols]; rows]
}

pub fn matmul(x: &Matrix, y: &Matrix) -> Matrix {
    let n = x.len();
    let m = y.first().map_or(0, Vec::len);
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, xik) in x[i].iter().enumerate() {
            if xik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !y[k][j].is_zero() {
                    out[i][j] += &(xik * &y[k][j]);
                }
            }
        }
    }
    out
}

pub fn mat_add(x: &Matrix, y: &Matrix, c: &Scalar) -> Matrix {
    x.iter().zip(y).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + &(c * b)).collect()).collect()
}

pub fn trace(x: &Matrix) -> Scalar {
    let mut t = Scalar::zero();
    for (i, row) in x.iter().enumerate() {
        t += &row[i];
    }
    t
}

pub fn is_zero_matrix(x: &Matrix) -> bool {
    x.iter().flatten().all(Zero::is_zero)
}

pub fn rank(x: &Matrix) -> usize {
    let mut e = Echelon::new();
    for row in x {
        e.insert(&flatten(std::slice::from_ref(row)));
    }
    e.rank()
}

/// Sparse form of a matrix keyed by `(row, col)`.
pub fn flatten(x: &[Vec<Scalar>]) -> SparseVec<(usize, usize)> {
    let mut out = SparseVec::new();
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                out.insert((i, j), v.clone());
            }
        }
    }
    out
}

/// Coefficients `c_0..c_n` of `det(t I - x)`, lowest degree first.
pub fn charpoly(x: &Matrix) -> Vec<Scalar> {
    let n = x.len();
    let mut c = vec![Scalar::zero(); n + 1];
    c[n] = Scalar::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        // M_k = X M_{k-1} + c_{n-k+1} I
        let mut next = matmul(x, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        m = next;
        let t = trace(&matmul(x, &m));
        c[n - k] = -(t * Scalar::frac(1, k as i64));
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn sv(pairs: &[(u32, i64)]) -> SparseVec<u32> {
        pairs.iter().map(|&(k, v)| (k, s(v))).collect()
    }

    #[test]
    fn echelon_tracks_combinations() {
        let mut e = Echelon::new();
        assert!(e.insert(&sv(&[(0, 1), (1, 2)])).is_none());
        assert!(e.insert(&sv(&[(1, 1), (2, 1)])).is_none());
        // 2 v0 - 3 v1
        let target = sv(&[(0, 2), (1, 1), (2, -3)]);
        let combo = e.insert(&target).unwrap();
        assert_eq!(combo.get(&0), Some(&s(2)));
        assert_eq!(combo.get(&1), Some(&s(-3)));
        assert_eq!(e.rank(), 2);
        assert!(e.solve(&sv(&[(3, 1)])).is_none());
    }

    #[test]
    fn zero_vector_is_dependent() {
        let mut e: Echelon<u32> = Echelon::new();
        assert_eq!(e.insert(&SparseVec::new()), Some(Combination::new()));
    }

    #[test]
    fn charpoly_of_2x2() {
        let x = vec![vec![s(1), s(2)], vec![s(3), s(4)]];
        // t^2 - 5t - 2
        assert_eq!(charpoly(&x), vec![s(-2), s(-5), s(1)]);
    }

    #[test]
    fn charpoly_with_sqrt2() {
        let r = Scalar::sqrt2();
        let x = vec![vec![Scalar::zero(), r.clone()], vec![r, Scalar::zero()]];
        assert_eq!(charpoly(&x), vec![s(-2), s(0), s(1)]);
    }

    #[test]
    fn rank_of_singular() {
        let x = vec![vec![s(1), s(2)], vec![s(2), s(4)]];
        assert_eq!(rank(&x), 1);
        assert_eq!(rank(&identity(3)), 3);
    }
}
