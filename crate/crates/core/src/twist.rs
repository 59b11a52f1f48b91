//! Formal scalars `sum c_k (2 pi i)^k` and matrices over them.
//!
//! Every identity between the spectral normal forms is homogeneous in
//! `2 pi i`, so the factor is never evaluated: a twisted scalar is a sparse
//! map from integer twist to rational coefficient, exact under ring
//! operations. Twisted matrices only ever need multiplication, transpose and
//! the inversion of monomial-pattern matrices (one nonzero single-term entry
//! per row and column), which stays exact as well.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::matrix::QMatrix;
use crate::rat::{self, Rat};

/// `sum c_k (2 pi i)^k`, no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TwistedScalar(BTreeMap<i64, Rat>);

impl TwistedScalar {
    pub fn zero() -> Self {
        TwistedScalar(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(0, Rat::one())
    }

    /// `c * (2 pi i)^k`.
    pub fn term(k: i64, c: Rat) -> Self {
        let mut map = BTreeMap::new();
        if !c.is_zero() {
            map.insert(k, c);
        }
        TwistedScalar(map)
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::term(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.0.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    /// The single `(twist, coefficient)` pair, when there is exactly one.
    pub fn as_single(&self) -> Option<(i64, Rat)> {
        if self.0.len() == 1 {
            let (k, c) = self.0.iter().next().unwrap();
            Some((*k, c.clone()))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, c) in &other.0 {
            let e = out.entry(*k).or_insert_with(Rat::zero);
            *e += c;
            if e.is_zero() {
                out.remove(k);
            }
        }
        TwistedScalar(out)
    }

    pub fn neg(&self) -> Self {
        TwistedScalar(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out: BTreeMap<i64, Rat> = BTreeMap::new();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &other.0 {
                let e = out.entry(k1 + k2).or_insert_with(Rat::zero);
                *e += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        TwistedScalar(out)
    }

    /// Inverse of a single-term scalar.
    pub fn invert(&self) -> Option<Self> {
        let (k, c) = self.as_single()?;
        Some(Self::term(-k, Rat::one() / c))
    }
}

impl fmt::Debug for TwistedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_twisted(self))
    }
}

/// Render e.g. `-(2pii)^2 + 3/2`.
pub fn render_twisted(t: &TwistedScalar) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in t.0.iter().rev() {
        let coeff = rat::display(c);
        let s = match *k {
            0 => coeff,
            1 => format!("{coeff}*(2pii)"),
            k => format!("{coeff}*(2pii)^{k}"),
        };
        parts.push(s);
    }
    parts.join(" + ")
}

#[derive(Clone, PartialEq, Eq)]
pub struct TwistedMatrix {
    rows: usize,
    cols: usize,
    data: Vec<TwistedScalar>,
}

impl TwistedMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        TwistedMatrix {
            rows,
            cols,
            data: vec![TwistedScalar::zero(); rows * cols],
        }
    }

    /// Embed a rational matrix at a fixed twist.
    pub fn embed(m: &QMatrix, twist: i64) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for (i, j) in m.support() {
            out.set(i, j, TwistedScalar::term(twist, m.get(i, j).clone()));
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &TwistedScalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: TwistedScalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.add(b))
            .collect();
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.sub(b))
            .collect();
        TwistedMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
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
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Nonzero positions.
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

    /// Invert a matrix with exactly one nonzero single-term entry per row
    /// and per column.
    pub fn monomial_inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut out = Self::zeros(n, n);
        let mut seen_cols = vec![false; n];
        for i in 0..n {
            let nonzero: Vec<usize> = (0..n).filter(|&j| !self.get(i, j).is_zero()).collect();
            if nonzero.len() != 1 {
                return None;
            }
            let j = nonzero[0];
            if seen_cols[j] {
                return None;
            }
            seen_cols[j] = true;
            out.set(j, i, self.get(i, j).invert()?);
        }
        Some(out)
    }

    /// The twist-zero rational projection, when every entry is concentrated
    /// at twist zero.
    pub fn rational_part(&self) -> Option<QMatrix> {
        let mut out = QMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let t = self.get(i, j);
                if t.is_zero() {
                    continue;
                }
                let (k, c) = t.as_single()?;
                if k != 0 {
                    return None;
                }
                out.set(i, j, c);
            }
        }
        Some(out)
    }
}

impl fmt::Debug for TwistedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TwistedMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| render_twisted(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    #[test]
    fn scalar_ring_ops() {
        let a = TwistedScalar::term(1, rat(2)); // 2*(2pii)
        let b = TwistedScalar::term(-1, ratio(1, 2));
        assert_eq!(a.mul(&b), TwistedScalar::term(0, rat(1)));
        let s = a.add(&TwistedScalar::from_rat(rat(3)));
        assert_eq!(s.coeff(1), rat(2));
        assert_eq!(s.coeff(0), rat(3));
        assert!(a.sub(&a).is_zero());
        assert_eq!(a.invert().unwrap(), TwistedScalar::term(-1, ratio(1, 2)));
        assert!(s.invert().is_none()); // two terms
    }

    #[test]
    fn monomial_inverse_round_trip() {
        // anti-diagonal with twists
        let mut m = TwistedMatrix::zeros(3, 3);
        m.set(0, 2, TwistedScalar::term(1, rat(2)));
        m.set(1, 1, TwistedScalar::term(2, rat(-1)));
        m.set(2, 0, TwistedScalar::term(0, ratio(1, 3)));
        let inv = m.monomial_inverse().unwrap();
        let prod = m.mul(&inv);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j {
                    TwistedScalar::one()
                } else {
                    TwistedScalar::zero()
                };
                assert_eq!(prod.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn rational_projection() {
        let q = QMatrix::from_fn(2, 2, |i, j| rat((i + j) as i64));
        let t = TwistedMatrix::embed(&q, 0);
        assert_eq!(t.rational_part().unwrap(), q);
        let t1 = TwistedMatrix::embed(&q, 1);
        assert!(t1.rational_part().is_none());
    }
}
