//! Square sparse complex matrices stored row by row.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    /// `rows[r]` holds `(col, value)` sorted by column.
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal((0..dim).map(|_| Complex64::new(1.0, 0.0)).collect())
    }

    pub fn diagonal(values: Vec<Complex64>) -> Self {
        let dim = values.len();
        let rows = values
            .into_iter()
            .enumerate()
            .map(|(r, v)| if v == ZERO { Vec::new() } else { vec![(r, v)] })
            .collect();
        Self { dim, rows }
    }

    /// Duplicate `(row, col)` entries are summed; exact zeros are dropped.
    ///
    /// # Panics
    /// If an index is out of range.
    pub fn from_triplets(dim: usize, triplets: impl IntoIterator<Item = (usize, usize, Complex64)>) -> Self {
        let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); dim];
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "entry ({r}, {c}) outside a {dim}x{dim} operator");
            rows[r].push((c, v));
        }
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, Complex64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|&(_, v)| v != ZERO);
            *row = merged;
        }
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Complex64)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.rows[r]
            .binary_search_by_key(&c, |&(col, _)| col)
            .map(|k| self.rows[r][k].1)
            .unwrap_or(ZERO)
    }

    /// Entries in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Complex64)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |&(c, v)| (r, c, v)))
            .collect()
    }

    /// Drop entries with modulus `<= tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        for row in &mut self.rows {
            row.retain(|&(_, v)| v.norm() > tol);
        }
        self
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| (c, v * s)).filter(|&(_, v)| v != ZERO).collect())
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().into_iter().map(|(r, c, v)| (c, r, v.conj())),
        )
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().into_iter().map(|(r, c, v)| (c, r, v)))
    }

    /// Largest entry modulus; the norm used by every residual.
    pub fn max_abs(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|row| row.iter().map(|&(_, v)| v.norm()))
            .fold(0.0, f64::max)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(r, row)| row.iter().all(|&(c, _)| c == r))
    }

    pub fn diagonal_values(&self) -> Vec<Complex64> {
        (0..self.dim).map(|r| self.get(r, r)).collect()
    }

    /// Whether column `c` has no stored entries.
    pub fn column_is_empty(&self, c: usize) -> bool {
        self.rows
            .iter()
            .all(|row| row.binary_search_by_key(&c, |&(col, _)| col).is_err())
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, v)| v * x[c]).sum())
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut acc = vec![ZERO; self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; self.dim];
        let rows = self
            .rows
            .iter()
            .map(|row| {
                for &(k, a) in row {
                    for &(c, b) in &other.rows[k] {
                        if !mark[c] {
                            mark[c] = true;
                            touched.push(c);
                        }
                        acc[c] += a * b;
                    }
                }
                touched.sort_unstable();
                let out: Vec<(usize, Complex64)> = touched
                    .iter()
                    .map(|&c| (c, acc[c]))
                    .filter(|&(_, v)| v != ZERO)
                    .collect();
                for &c in &touched {
                    acc[c] = ZERO;
                    mark[c] = false;
                }
                touched.clear();
                out
            })
            .collect();
        Self { dim: self.dim, rows }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.matmul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }

    /// `a * alpha + b * beta`, entrywise.
    pub fn linear_combination(a: &Self, alpha: Complex64, b: &Self, beta: Complex64) -> Self {
        assert_eq!(a.dim, b.dim, "dimension mismatch");
        let rows = a
            .rows
            .iter()
            .zip(&b.rows)
            .map(|(ra, rb)| {
                let mut out = Vec::with_capacity(ra.len() + rb.len());
                let (mut x, mut y) = (0, 0);
                while x < ra.len() || y < rb.len() {
                    let entry = match (ra.get(x), rb.get(y)) {
                        (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                            x += 1;
                            y += 1;
                            (ca, va * alpha + vb * beta)
                        }
                        (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                            x += 1;
                            (ca, va * alpha)
                        }
                        (Some(&(ca, va)), None) => {
                            x += 1;
                            (ca, va * alpha)
                        }
                        (_, Some(&(cb, vb))) => {
                            y += 1;
                            (cb, vb * beta)
                        }
                        (None, None) => unreachable!(),
                    };
                    if entry.1 != ZERO {
                        out.push(entry);
                    }
                }
                out
            })
            .collect();
        Self { dim: a.dim, rows }
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![ZERO; self.dim * self.dim];
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                out[r * self.dim + c] = v;
            }
        }
        out
    }

    /// `D self D^{-1}` for a diagonal `D = diag(d)`.
    pub fn conjugate_by_diagonal(&self, d: &[Complex64]) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| row.iter().map(|&(c, v)| (c, d[r] * v / d[c])).collect())
            .collect();
        Self { dim: self.dim, rows }
    }

    /// Relabel basis vectors: state `k` of `self` becomes state `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().into_iter().map(|(r, c, v)| (perm[r], perm[c], v)),
        )
    }

    /// Block diagonal `self (+) other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let shift = self.dim;
        Self::from_triplets(
            self.dim + other.dim,
            self.triplets()
                .into_iter()
                .chain(other.triplets().into_iter().map(|(r, c, v)| (r + shift, c + shift, v))),
        )
    }
}

impl Add for &SparseOperator {
    type Output = SparseOperator;
    fn add(self, rhs: &SparseOperator) -> SparseOperator {
        let one = Complex64::new(1.0, 0.0);
        SparseOperator::linear_combination(self, one, rhs, one)
    }
}

impl Sub for &SparseOperator {
    type Output = SparseOperator;
    fn sub(self, rhs: &SparseOperator) -> SparseOperator {
        SparseOperator::linear_combination(self, Complex64::new(1.0, 0.0), rhs, Complex64::new(-1.0, 0.0))
    }
}

impl Mul for &SparseOperator {
    type Output = SparseOperator;
    fn mul(self, rhs: &SparseOperator) -> SparseOperator {
        self.matmul(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dense_mul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                for j in 0..n {
                    out[i * n + j] += a[i * n + k] * b[k * n + j];
                }
            }
        }
        out
    }

    fn operator(n: usize) -> impl Strategy<Value = SparseOperator> {
        prop::collection::vec((0..n, 0..n, -3.0..3.0f64, -3.0..3.0f64), 0..3 * n)
            .prop_map(move |t| SparseOperator::from_triplets(n, t.into_iter().map(|(r, c0, a, b)| (r, c0, c(a, b)))))
    }

    #[test]
    fn duplicates_are_summed() {
        let m = SparseOperator::from_triplets(2, vec![(0, 1, c(1.0, 0.0)), (0, 1, c(2.0, 0.0)), (1, 0, c(1.0, 0.0)), (1, 0, c(-1.0, 0.0))]);
        assert_eq!(m.get(0, 1), c(3.0, 0.0));
        assert_eq!(m.nnz(), 1);
    }

    #[test]
    fn power_of_cycle() {
        let cycle = SparseOperator::from_triplets(3, (0..3).map(|k| (k, (k + 1) % 3, c(2.0, 0.0))));
        let cube = cycle.pow(3);
        assert!(cube.is_diagonal());
        assert_eq!(cube.diagonal_values(), vec![c(8.0, 0.0); 3]);
        assert_eq!(cycle.pow(0), SparseOperator::identity(3));
    }

    #[test]
    fn commutator_of_diagonal_and_shift() {
        let d = SparseOperator::diagonal(vec![c(1.0, 0.0), c(2.0, 0.0)]);
        let s = SparseOperator::from_triplets(2, vec![(0, 1, c(1.0, 0.0))]);
        let comm = d.commutator(&s);
        assert_eq!(comm.get(0, 1), c(-1.0, 0.0));
        assert_eq!(comm.nnz(), 1);
    }

    proptest! {
        #[test]
        fn matmul_matches_dense(a in operator(5), b in operator(5)) {
            let sparse = a.matmul(&b).to_dense();
            let dense = dense_mul(&a.to_dense(), &b.to_dense(), 5);
            for (x, y) in sparse.iter().zip(&dense) {
                prop_assert!((x - y).norm() < 1e-12);
            }
        }

        #[test]
        fn subtraction_cancels(a in operator(6)) {
            prop_assert_eq!((&a - &a).nnz(), 0);
            let doubled = &a + &a;
            prop_assert!((&doubled - &a.scale(c(2.0, 0.0))).max_abs() < 1e-15);
        }

        #[test]
        fn adjoint_is_involutive(a in operator(4)) {
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }
    }
}
