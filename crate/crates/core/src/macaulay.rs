//! Independent Macaulay-matrix dimension oracle.
//!
//! Pure row reduction, no standard-basis machinery: the rows are the
//! truncations (degree < K) of `m * g` over all monomials `m` of degree < K
//! and all generators `g`; the columns are the monomials of degree < K in
//! descending local order. The row space is exactly `(I + m^K) / m^K`, so the
//! non-pivot columns are a basis of `Q[z]/(I + m^K)` and the count is
//! `dim A/m^K A`. Once `dim` stops growing at consecutive K the quotient has
//! stabilized (Nakayama) and the result equals the true dimension with the
//! true staircase.

use num_traits::Zero;

use crate::matrix::QMatrix;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;

/// All monomials of total degree < K, descending local order (1 first).
pub fn monomials_below(nvars: usize, k: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(nvars: usize, axis: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if axis == nvars {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[axis] = e;
            rec(nvars, axis + 1, left - e, cur, out);
        }
        cur[axis] = 0;
    }
    rec(nvars, 0, k.saturating_sub(1), &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Dimension and monomial basis of `(Q[z]/m^K) / (image of the ideal)`,
/// by row reduction of the Macaulay matrix of `gens` at truncation `K`.
pub fn macaulay_dimension(gens: &[MultiPoly], k: u32) -> (usize, Vec<Monomial>) {
    let nvars = gens[0].nvars();
    let cols = monomials_below(nvars, k);
    let col_index: std::collections::HashMap<&Monomial, usize> =
        cols.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut rows: Vec<Vec<crate::rat::Rat>> = Vec::new();
    for m in &cols {
        for g in gens {
            let prod = g.mul_term(m, &num_traits::One::one());
            let mut row = vec![crate::rat::Rat::zero(); cols.len()];
            let mut nonzero = false;
            for (mono, c) in prod.terms_desc() {
                if let Some(&j) = col_index.get(mono) {
                    row[j] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return (cols.len(), cols);
    }
    let mat = QMatrix::from_rows(rows);
    let (_, pivots) = mat.rref();
    let pivot_cols: std::collections::HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let basis: Vec<Monomial> = cols
        .iter()
        .enumerate()
        .filter(|(j, _)| !pivot_cols.contains(j))
        .map(|(_, m)| m.clone())
        .collect();
    (basis.len(), basis)
}

/// Oracle form for a germ: rows come from the partial derivatives.
pub fn macaulay_oracle(f: &MultiPoly, k: u32) -> (usize, Vec<Monomial>) {
    macaulay_dimension(&f.gradient(), k)
}

/// Iterate the truncation degree until the dimension stabilizes; returns the
/// Milnor number and the staircase basis. `None` if no stabilization within
/// the cap (non-isolated singularity).
pub fn macaulay_mu(f: &MultiPoly, cap: u32) -> Option<(usize, Vec<Monomial>)> {
    let gens = f.gradient();
    let mut prev: Option<(usize, Vec<Monomial>)> = None;
    for k in 2..=cap {
        let (dim, basis) = macaulay_dimension(&gens, k);
        if let Some((pdim, pbasis)) = &prev {
            let closed = basis.iter().map(|m| m.degree()).max().unwrap_or(0) + 2 <= k;
            if *pdim == dim && *pbasis == basis && closed {
                return Some((dim, basis));
            }
        }
        prev = Some((dim, basis));
    }
    None
}
