//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream (quotient algebras, Jordan chains, pairings, adapted
//! bases) reduces to rank/kernel/solve over `Q`, so this module keeps a
//! single dense row-major matrix type with fraction-exact Gaussian
//! elimination. Pivoting is deterministic (first nonzero entry in column
//! order), which keeps every derived basis reproducible across runs.

use std::fmt;

use num_traits::{One, Zero};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<Vec<Rat>>, dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), dim);
            for i in 0..dim {
                m.set(i, j, v[i].clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Rat]) {
        assert_eq!(v.len(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v[i].clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &Rat) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        acc += a * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// `v^T * self`, i.e. apply the transpose.
    pub fn tr_mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rows, v.len());
        let mut out = vec![Rat::zero(); self.cols];
        for i in 0..self.rows {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out[j] += &v[i] * a;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut out = QMatrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Row echelon reduction in place; returns pivot (row, col) pairs.
    /// The result is fully reduced (RREF) with unit pivots.
    pub fn rref_in_place(&mut self) -> Vec<(usize, usize)> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // deterministic pivot: first nonzero entry at or below row r
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = Rat::one() / self.get(r, c).clone();
            for j in c..self.cols {
                let v = self.get(r, j).clone() * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = self.get(i, j).clone() - &factor * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (QMatrix, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        // forward elimination only; cheaper than full RREF
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let pivot = m.get(rank, c).clone();
            for i in (rank + 1)..m.rows {
                if !m.get(i, c).is_zero() {
                    let factor = m.get(i, c).clone() / &pivot;
                    for j in c..m.cols {
                        let v = m.get(i, j).clone() - &factor * m.get(rank, j);
                        m.set(i, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Canonical basis of the kernel (null space), one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for &(pr, pc) in &pivots {
                v[pc] = -r.get(pr, free).clone();
            }
            out.push(v);
        }
        out
    }

    /// Solve `self * x = b`; `None` if inconsistent.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for &(r, c) in &pivots {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().any(|&(_, c)| c >= n) {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Does `v` lie in the column space?
    pub fn col_space_contains(&self, v: &[Rat]) -> bool {
        self.solve(v).is_some()
    }

    /// Smallest `e` with `self^e = 0`, or `None` if `self^(dim) != 0`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        assert_eq!(self.rows, self.cols);
        let mut p = QMatrix::identity(self.rows);
        for e in 0..=self.rows {
            if p.is_zero() {
                return Some(e);
            }
            p = p.mul(self);
        }
        if p.is_zero() {
            Some(self.rows)
        } else {
            None
        }
    }

    /// Nonzero entries as (row, col) pairs.
    pub fn support(&self) -> Vec<(usize, usize)> {
        let mut s = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() {
                    s.push((i, j));
                }
            }
        }
        s
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rat::display).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental row-space tracker: feed vectors, learn which are independent
/// of everything seen so far. Used for chain extraction and span tests.
pub struct SpanTracker {
    dim: usize,
    // reduced rows with their pivot columns
    rows: Vec<(usize, Vec<Rat>)>,
}

impl SpanTracker {
    pub fn new(dim: usize) -> Self {
        SpanTracker {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current span; returns the residue.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let factor = v[*p].clone();
                for j in 0..self.dim {
                    if !row[j].is_zero() {
                        v[j] -= &factor * &row[j];
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let red = self.reduce(v);
        let Some(p) = red.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / red[p].clone();
        let normalized: Vec<Rat> = red.iter().map(|x| x * &inv).collect();
        self.rows.push((p, normalized));
        true
    }
}

/// Canonical (RREF) basis of the span of the given vectors. Two subspaces are
/// equal iff their canonical bases are equal.
pub fn canonical_basis(vectors: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = QMatrix::from_rows(vectors.to_vec());
    assert_eq!(m.cols(), dim);
    let (r, pivots) = m.rref();
    pivots.iter().map(|&(row, _)| r.row(row).to_vec()).collect()
}
