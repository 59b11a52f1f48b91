//! Structure theory of a nilpotent endomorphism: Jordan chains, the adapted
//! ordered basis, the canonical weight filtration, and the Lefschetz-type
//! primitive decomposition.
//!
//! Conventions. A chain of size `m` is `[v, Mv, ..., M^(m-1) v]`; the element
//! at (1-based) position `k` has weight `-m + 2k - 1`, so `M` raises weight
//! by two and the seed of a size-`m` chain sits at weight `-(m-1)`. `W_j` is
//! spanned by the basis elements of weight `>= j`. The filtration is also
//! constructed intrinsically (by induction on `Ann(M^m) / Im(M^m)`) and the
//! two must agree; that equality is asserted by [`weight_filtration`].
//!
//! This is the decreasing convention throughout; consumers who want the
//! increasing indexing of a monodromy-logarithm filtration negate the weight
//! index at the boundary (the dimension vectors are convention-independent).

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{canonical_basis, QMatrix, SpanTracker};
use crate::rat::Rat;

#[derive(Clone, Debug)]
pub struct JordanData {
    /// Chains in decreasing size; `chains[c][k] = M^k(seed)`.
    pub chains: Vec<Vec<Vec<Rat>>>,
    /// `type_partition[m-1]` = number of chains of size `m`.
    pub type_partition: Vec<usize>,
    /// Successor map on the adapted ordered basis: `M(b_j) = b_nu(j)`.
    pub nu: Vec<Option<usize>>,
    /// Columns are the adapted ordered basis vectors.
    pub adapted_basis: QMatrix,
    /// Weight of each adapted basis vector.
    pub weights: Vec<i64>,
    /// Adapted index -> (chain, position within chain).
    pub chain_position: Vec<(usize, usize)>,
    pub dim: usize,
    /// `M^(m0) != 0`, `M^(m0+1) = 0`; zero matrix has `m0 = 0`.
    pub m0: usize,
}

impl JordanData {
    /// Number of chains of size `>= s`.
    pub fn chains_of_size_at_least(&self, s: usize) -> usize {
        self.chains.iter().filter(|c| c.len() >= s).count()
    }

    /// Jordan type as a human-readable list `[(size, count), ...]`, largest
    /// first, zero counts omitted.
    pub fn jordan_type(&self) -> Vec<(usize, usize)> {
        self.type_partition
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i + 1, c))
            .collect()
    }
}

/// Greedy longest-chain-first Jordan decomposition of a nilpotent matrix.
///
/// Seeds for size-`s` chains are chosen from the canonical kernel basis of
/// `M^s`, ordered by the integer-cleared coordinate vector (lexicographic),
/// accepted while independent modulo `ker(M^(s-1))` plus the level-`s`
/// vectors carried down from longer chains. This makes the output
/// deterministic; the chains themselves are basis-dependent but the type
/// partition is not.
pub fn jordan_chains(m: &QMatrix) -> Result<JordanData> {
    jordan_chains_impl(m, None)
}

/// Jordan chains of a graded nilpotent operator (one that maps each level
/// into the next), with every chain vector pure of a single level.
///
/// The homogeneous components of a kernel vector of `M^s` are themselves in
/// the kernel, so the candidate pool can be restricted to level-pure vectors
/// without losing any chains.
pub fn jordan_chains_graded(m: &QMatrix, level: &[usize]) -> Result<JordanData> {
    jordan_chains_impl(m, Some(level))
}

fn jordan_chains_impl(m: &QMatrix, level: Option<&[usize]>) -> Result<JordanData> {
    let dim = m.rows();
    assert_eq!(dim, m.cols());
    let Some(nilpotency) = m.nilpotency_index() else {
        return Err(Error::NotNilpotent);
    };
    let m0 = nilpotency.saturating_sub(1);

    // powers and rank profile
    let mut powers = Vec::with_capacity(nilpotency + 2);
    powers.push(QMatrix::identity(dim));
    for _ in 0..=nilpotency {
        let last = powers.last().unwrap();
        powers.push(last.mul(m));
    }
    let rank = |k: usize| -> usize {
        if k < powers.len() {
            powers[k].rank()
        } else {
            0
        }
    };

    let mut chains: Vec<Vec<Vec<Rat>>> = Vec::new();
    let mut committed = SpanTracker::new(dim);
    for s in (1..=nilpotency.max(1)).rev() {
        let at_least_s = rank(s - 1) - rank(s);
        let at_least_s1 = rank(s) - rank(s + 1);
        let need = at_least_s - at_least_s1;
        if need == 0 {
            continue;
        }
        // blocked space: ker(M^(s-1)) plus level-s vectors of longer chains
        let mut blocked = SpanTracker::new(dim);
        for v in powers[s - 1].kernel_basis() {
            blocked.insert(&v);
        }
        for c in &chains {
            // the vector of a longer chain living at the seed level of size-s
            // chains is M^(len - s) applied to its seed
            blocked.insert(&c[c.len() - s]);
        }
        let mut candidates = powers[s].kernel_basis();
        if let Some(level) = level {
            candidates = split_by_level(candidates, level);
        }
        candidates.sort_by_key(|v| clear_denominators(v));
        let mut taken = 0;
        for v in candidates {
            if taken == need {
                break;
            }
            if !blocked.insert(&v) {
                continue;
            }
            let mut chain = Vec::with_capacity(s);
            let mut cur = v;
            for _ in 0..s {
                chain.push(cur.clone());
                cur = m.mul_vec(&cur);
            }
            debug_assert!(cur.iter().all(|x| x.is_zero()));
            for link in &chain {
                let fresh = committed.insert(link);
                debug_assert!(fresh, "chain vectors must be jointly independent");
            }
            chains.push(chain);
            taken += 1;
        }
        assert_eq!(taken, need, "kernel basis must supply all chain seeds");
    }
    debug_assert_eq!(committed.rank(), dim);

    let mut type_partition = vec![0usize; m0 + 1];
    for c in &chains {
        type_partition[c.len() - 1] += 1;
    }

    // adapted ordering: by weight (column), longer chains first inside a column
    let mut slots: Vec<(i64, usize, usize)> = Vec::new(); // (weight, chain, pos)
    for (ci, c) in chains.iter().enumerate() {
        let size = c.len() as i64;
        for k in 0..c.len() {
            let w = -size + 2 * (k as i64) + 1;
            slots.push((w, ci, k));
        }
    }
    slots.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| chains[b.1].len().cmp(&chains[a.1].len()))
            .then_with(|| a.1.cmp(&b.1))
    });
    let position_of = |ci: usize, k: usize| slots.iter().position(|&(_, c, p)| c == ci && p == k);
    let mut nu = Vec::with_capacity(dim);
    let mut weights = Vec::with_capacity(dim);
    let mut chain_position = Vec::with_capacity(dim);
    let mut cols = Vec::with_capacity(dim);
    for &(w, ci, k) in &slots {
        weights.push(w);
        chain_position.push((ci, k));
        cols.push(chains[ci][k].clone());
        nu.push(if k + 1 < chains[ci].len() {
            position_of(ci, k + 1)
        } else {
            None
        });
    }

    Ok(JordanData {
        adapted_basis: QMatrix::from_cols(cols, dim),
        chains,
        type_partition,
        nu,
        weights,
        chain_position,
        dim,
        m0,
    })
}

/// Homogeneous components of the given vectors, deduplicated.
fn split_by_level(vectors: Vec<Vec<Rat>>, level: &[usize]) -> Vec<Vec<Rat>> {
    let mut out: Vec<Vec<Rat>> = Vec::new();
    let max_level = level.iter().copied().max().unwrap_or(0);
    for v in vectors {
        for l in 0..=max_level {
            let comp: Vec<Rat> = v
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    if level[i] == l {
                        c.clone()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            if comp.iter().any(|c| !c.is_zero()) && !out.contains(&comp) {
                out.push(comp);
            }
        }
    }
    out
}

fn clear_denominators(v: &[Rat]) -> Vec<num_bigint::BigInt> {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::from(1);
    for r in v {
        lcm = lcm.lcm(r.denom());
    }
    v.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
}

#[derive(Clone, Debug)]
pub struct WeightFiltration {
    pub m0: usize,
    /// `flags[i]` is a canonical basis of `W_(i - m0)` for
    /// `i = 0 ..= 2*m0 + 1`; the last entry is the zero space.
    pub flags: Vec<Vec<Vec<Rat>>>,
    /// `graded_dims[i] = dim Gr_(i - m0)` for `i = 0 ..= 2*m0`.
    pub graded_dims: Vec<usize>,
    /// `primitive_dims[j] = dim Prim_(-j)` for `j = 0 ..= m0`.
    pub primitive_dims: Vec<usize>,
}

impl WeightFiltration {
    pub fn flag(&self, j: i64) -> &[Vec<Rat>] {
        let m0 = self.m0 as i64;
        if j < -m0 {
            &self.flags[0]
        } else if j > m0 + 1 {
            &self.flags[self.flags.len() - 1]
        } else {
            &self.flags[(j + m0) as usize]
        }
    }

    pub fn graded_dim(&self, j: i64) -> usize {
        let m0 = self.m0 as i64;
        if j < -m0 || j > m0 {
            0
        } else {
            self.graded_dims[(j + m0) as usize]
        }
    }

    pub fn primitive_dim(&self, j: i64) -> usize {
        if j > 0 || j < -(self.m0 as i64) {
            0
        } else {
            self.primitive_dims[(-j) as usize]
        }
    }
}

/// Canonical weight filtration of a nilpotent operator.
///
/// Computed twice: from the chain weights of `jd`, and intrinsically by
/// induction on `Ann(M^m0) / Im(M^m0)`. The two flags must coincide (they do
/// for any valid input; the assertion makes basis independence executable).
pub fn weight_filtration(jd: &JordanData, m: &QMatrix) -> WeightFiltration {
    let dim = jd.dim;
    let m0 = jd.m0;

    // chain-weight construction
    let mut flags: Vec<Vec<Vec<Rat>>> = Vec::new();
    for j in -(m0 as i64)..=(m0 as i64 + 1) {
        let vecs: Vec<Vec<Rat>> = (0..dim)
            .filter(|&i| jd.weights[i] >= j)
            .map(|i| jd.adapted_basis.col(i))
            .collect();
        flags.push(canonical_basis(&vecs, dim));
    }

    // intrinsic construction must give the same flag
    let intrinsic = intrinsic_flag(m);
    assert_eq!(intrinsic.len(), flags.len(), "nilpotency indices agree");
    for (a, b) in flags.iter().zip(&intrinsic) {
        assert_eq!(a, b, "chain-weight and intrinsic filtrations differ");
    }

    let mut graded_dims = Vec::new();
    for i in 0..flags.len() - 1 {
        graded_dims.push(flags[i].len() - flags[i + 1].len());
    }

    // Prim_(-j) = ker(M^(j+1) : Gr_(-j) -> Gr_(j+2))
    let mut primitive_dims = Vec::new();
    for j in 0..=m0 as i64 {
        let gr_dim = graded_dims[(m0 as i64 - j) as usize];
        let power = m.pow(j as usize + 1);
        // rank of the induced map = dim(M^(j+1) W_(-j) + W_(j+3)) - dim W_(j+3)
        let mut tracker = SpanTracker::new(dim);
        let w_j3 = if j + 3 > m0 as i64 + 1 {
            &[][..]
        } else {
            &flags[(j + 3 + m0 as i64) as usize][..]
        };
        for v in w_j3 {
            tracker.insert(v);
        }
        let base = tracker.rank();
        for v in &flags[(m0 as i64 - j) as usize] {
            tracker.insert(&power.mul_vec(v));
        }
        let rank_induced = tracker.rank() - base;
        primitive_dims.push(gr_dim - rank_induced);
    }

    WeightFiltration {
        m0,
        flags,
        graded_dims,
        primitive_dims,
    }
}

/// Intrinsic inductive definition: extremes are `Ann(M^m0)` and `Im(M^m0)`,
/// recurse on the subquotient. Returns canonical bases of
/// `W_(-m0) .. W_(m0+1)` in the matrix's own coordinates.
fn intrinsic_flag(m: &QMatrix) -> Vec<Vec<Vec<Rat>>> {
    let dim = m.rows();
    let full: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    let full = canonical_basis(&full, dim);
    let nilpotency = m.nilpotency_index().expect("nilpotent input");
    if nilpotency <= 1 {
        // M = 0 (or dim = 0): W_0 = everything, W_1 = 0
        return vec![full, Vec::new()];
    }
    let m0 = nilpotency - 1;
    let power = m.pow(m0);
    let ann = canonical_basis(&power.kernel_basis(), dim);
    let img_vecs: Vec<Vec<Rat>> = (0..dim).map(|j| power.col(j)).collect();
    let img = canonical_basis(&img_vecs, dim);

    // coordinates inside Ann
    let a_mat = QMatrix::from_cols(ann.clone(), dim);
    let a_dim = ann.len();
    let img_in_a: Vec<Vec<Rat>> = img
        .iter()
        .map(|v| a_mat.solve(v).expect("Im(M^m0) inside Ann(M^m0)"))
        .collect();

    // direct complement of img inside Ann, in Ann coordinates
    let mut tracker = SpanTracker::new(a_dim);
    for v in &img_in_a {
        tracker.insert(v);
    }
    let mut comp: Vec<Vec<Rat>> = Vec::new();
    for i in 0..a_dim {
        let mut e = vec![Rat::zero(); a_dim];
        e[i] = Rat::one();
        if tracker.insert(&e) {
            comp.push(e);
        }
    }
    let q_dim = comp.len();
    debug_assert_eq!(q_dim, a_dim - img.len());

    // induced operator on Ann/Im in the complement coordinates
    let basis_ba: Vec<Vec<Rat>> = img_in_a.iter().chain(comp.iter()).cloned().collect();
    let ba_mat = QMatrix::from_cols(basis_ba, a_dim);
    let mut induced = QMatrix::zeros(q_dim, q_dim);
    for (jq, q) in comp.iter().enumerate() {
        let orig = a_mat.mul_vec(q);
        let image = m.mul_vec(&orig);
        let in_a = a_mat.solve(&image).expect("M preserves Ann(M^m0)");
        let coeffs = ba_mat.solve(&in_a).expect("basis of Ann");
        for i in 0..q_dim {
            induced.set(i, jq, coeffs[img.len() + i].clone());
        }
    }

    let inner = intrinsic_flag(&induced);
    let inner_m0 = inner.len() / 2 - 1; // inner has 2*inner_m0 + 2 entries
    let inner_flag = |j: i64| -> &Vec<Vec<Rat>> {
        let idx = (j + inner_m0 as i64).clamp(0, inner.len() as i64 - 1) as usize;
        &inner[idx]
    };

    // pull back: W_j = Im + lift of inner W_j, for -m0+1 <= j <= m0
    let mut flags = Vec::with_capacity(2 * m0 + 2);
    flags.push(full);
    for j in (-(m0 as i64) + 1)..=(m0 as i64) {
        let mut vecs: Vec<Vec<Rat>> = img.clone();
        for w in inner_flag(j) {
            // w lives in complement coordinates; lift through comp then Ann
            let mut in_a = vec![Rat::zero(); a_dim];
            for (k, c) in comp.iter().enumerate() {
                if !w[k].is_zero() {
                    for t in 0..a_dim {
                        in_a[t] += &w[k] * &c[t];
                    }
                }
            }
            vecs.push(a_mat.mul_vec(&in_a));
        }
        flags.push(canonical_basis(&vecs, dim));
    }
    flags.push(Vec::new());
    flags
}

/// Per-degree Lefschetz pieces: for each `j`, the list of
/// `(k, dim M^k Prim_(j - 2k))` with the direct sum filling `Gr_j`.
pub fn primitive_decomposition(wf: &WeightFiltration) -> Vec<(i64, Vec<(usize, usize)>)> {
    let m0 = wf.m0 as i64;
    let mut out = Vec::new();
    for j in -m0..=m0 {
        let mut parts = Vec::new();
        let mut k = if j > 0 { j } else { 0 };
        loop {
            let t = j - 2 * k;
            if t < -m0 {
                break;
            }
            // M^k is injective on Prim_t for k <= -t
            if k <= -t {
                let d = wf.primitive_dim(t);
                if d > 0 {
                    parts.push((k as usize, d));
                }
            }
            k += 1;
        }
        let total: usize = parts.iter().map(|&(_, d)| d).sum();
        assert_eq!(
            total,
            wf.graded_dim(j),
            "Lefschetz pieces must fill the graded piece at {j}"
        );
        out.push((j, parts));
    }
    out
}
