//! The run report: everything the pipeline computes, serializable to JSON
//! (schema version 1) and renderable as text. Rationals are emitted as
//! `p/q` strings; matrices larger than 30x30 appear in the text rendering
//! only as pattern summaries but are always present in the JSON.

use serde::Serializer;

use crate::hodge::{BindingReport, JSignReport};
use crate::matrix::QMatrix;
use crate::rat::{self, Rat};

pub const SCHEMA_VERSION: u32 = 1;

/// Text rendering cap: larger matrices are summarized.
pub const TEXT_MATRIX_CAP: usize = 30;

pub fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rat::display(r))
}

pub fn serialize_rat_vec<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat::display))
}

fn serialize_matrix<S: Serializer>(
    m: &Option<QMatrix>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match m {
        None => s.serialize_none(),
        Some(m) => {
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(rat::display).collect())
                .collect();
            s.collect_seq(rows)
        }
    }
}

#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct Verifications {
    pub rank_mf_is_mu_minus_tau: bool,
    pub mf_power_nplus1_vanishes: bool,
    pub pairings_symmetric_with_power_radicals: bool,
    pub weight_dims_symmetric: bool,
    pub lefschetz_decomposition_fills: bool,
    pub spectrum_symmetric: Option<bool>,
    pub grading_matches_spectrum: Option<bool>,
    pub filtration_shift_at_least_one: Option<bool>,
    pub s_equals_qj: Option<bool>,
    pub q_symmetry_type: Option<bool>,
    pub ntop_type_matches_graded: Option<bool>,
    pub ntop_q_antisymmetric: Option<bool>,
    pub binding_arithmetic: Option<bool>,
    pub b_top_plus_b_alg_is_order_one: Option<bool>,
    /// `(j, holds)` for the order-j identity.
    pub main_theorem: Option<Vec<(usize, bool)>>,
    pub oracle_mu_matches: Option<bool>,
    pub oracle_basis_matches: Option<bool>,
    pub kouchnirenko_matches: Option<bool>,
}

impl Verifications {
    pub fn all_hold(&self) -> bool {
        let opts = [
            self.spectrum_symmetric,
            self.grading_matches_spectrum,
            self.filtration_shift_at_least_one,
            self.s_equals_qj,
            self.q_symmetry_type,
            self.ntop_type_matches_graded,
            self.ntop_q_antisymmetric,
            self.binding_arithmetic,
            self.b_top_plus_b_alg_is_order_one,
            self.oracle_mu_matches,
            self.oracle_basis_matches,
            self.kouchnirenko_matches,
        ];
        self.rank_mf_is_mu_minus_tau
            && self.mf_power_nplus1_vanishes
            && self.pairings_symmetric_with_power_radicals
            && self.weight_dims_symmetric
            && self.lefschetz_decomposition_fills
            && opts.iter().all(|o| o.unwrap_or(true))
            && self
                .main_theorem
                .as_ref()
                .is_none_or(|v| v.iter().all(|&(_, ok)| ok))
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub f: String,
    pub vars: Vec<String>,
    pub spectrum_method: String,
    pub mu: usize,
    pub tau: usize,
    /// Nilpotency index: `M_f^m0 != 0`, `M_f^(m0+1) = 0`.
    pub m0: usize,
    /// `(block size, count)`, largest first.
    pub jordan_type_mf: Vec<(usize, usize)>,
    /// `(weight, dim Gr_j)`.
    pub weight_filtration_dims: Vec<(i64, usize)>,
    /// `(weight, dim Prim_j)` for `j <= 0`.
    pub primitive_dims: Vec<(i64, usize)>,
    /// Ranks of the order-j pairings, `j = 0 ..= m0`.
    pub pairing_ranks: Vec<usize>,
    pub socle_monomial: String,
    #[serde(serialize_with = "serialize_rat")]
    pub hessian_coefficient: Rat,
    /// `value -> multiplicity`, ascending; absent without a spectrum method.
    pub spectrum: Option<Vec<(String, usize)>>,
    /// Monodromy eigenvalue exponents `q` (lambda = exp(-2 pi i q)).
    pub eigenvalues: Option<Vec<(String, usize)>>,
    /// Kappa-fixed slots (1-based).
    pub kappa_fixed: Option<Vec<usize>>,
    pub n_jordan_type: Option<Vec<(usize, usize)>>,
    pub ntop_support: Option<Vec<(usize, usize)>>,
    pub n1_support: Option<Vec<(usize, usize)>>,
    pub binding: Option<BindingReport>,
    pub j_sign: Option<JSignReport>,
    pub verifications: Verifications,
    pub timings_ms: Vec<(String, u128)>,
    #[serde(serialize_with = "serialize_matrix")]
    pub multiplication_matrix: Option<QMatrix>,
    #[serde(serialize_with = "serialize_matrix")]
    pub ntop_matrix: Option<QMatrix>,
    #[serde(serialize_with = "serialize_matrix")]
    pub n1_matrix: Option<QMatrix>,
    #[serde(serialize_with = "serialize_matrix")]
    pub pairing_pattern: Option<QMatrix>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Text rendering; contains every JSON field, with large matrices
    /// summarized by their support pattern.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("schema_version: {}", self.schema_version));
        line(format!("f: {}", self.f));
        line(format!("vars: {}", self.vars.join(",")));
        line(format!("spectrum_method: {}", self.spectrum_method));
        line(format!("mu: {}", self.mu));
        line(format!("tau: {}", self.tau));
        line(format!("m0: {}", self.m0));
        line(format!(
            "jordan_type_mf: {}",
            fmt_type(&self.jordan_type_mf)
        ));
        line(format!(
            "weight_filtration_dims: {}",
            self.weight_filtration_dims
                .iter()
                .map(|(j, d)| format!("Gr[{j}]={d}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        line(format!(
            "primitive_dims: {}",
            self.primitive_dims
                .iter()
                .map(|(j, d)| format!("Prim[{j}]={d}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        line(format!(
            "pairing_ranks: {}",
            self.pairing_ranks
                .iter()
                .enumerate()
                .map(|(j, r)| format!("rank(B{j})={r}"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        line(format!("socle_monomial: {}", self.socle_monomial));
        line(format!(
            "hessian_coefficient: {}",
            rat::display(&self.hessian_coefficient)
        ));
        match &self.spectrum {
            None => line("spectrum: (none)".into()),
            Some(sp) => line(format!(
                "spectrum: {}",
                sp.iter()
                    .map(|(v, m)| format!("{v}:{m}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
        }
        match &self.eigenvalues {
            None => line("eigenvalues: (none)".into()),
            Some(e) => line(format!(
                "eigenvalues: {}",
                e.iter()
                    .map(|(v, m)| format!("{v}:{m}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
        }
        line(format!(
            "kappa_fixed: {}",
            self.kappa_fixed
                .as_ref()
                .map_or("(none)".into(), |f| format!("{f:?}"))
        ));
        line(format!(
            "n_jordan_type: {}",
            self.n_jordan_type
                .as_ref()
                .map_or("(none)".into(), |t| fmt_type(t))
        ));
        line(format!(
            "ntop_support: {}",
            self.ntop_support
                .as_ref()
                .map_or("(none)".into(), |s| format!("{s:?}"))
        ));
        line(format!(
            "n1_support: {}",
            self.n1_support
                .as_ref()
                .map_or("(none)".into(), |s| format!("{s:?}"))
        ));
        match &self.binding {
            None => line("binding: (none)".into()),
            Some(b) => {
                for (i, (len, ns)) in b.summary().iter().enumerate() {
                    line(format!(
                        "binding_chain[{i}]: length={len} binds_chains_of_lengths={ns:?}"
                    ));
                }
            }
        }
        line(format!(
            "j_sign: {}",
            self.j_sign
                .as_ref()
                .map_or("(none)".into(), |j| format!("{j:?}"))
        ));
        let v = &self.verifications;
        line(format!(
            "verify.rank_mf_is_mu_minus_tau: {}",
            v.rank_mf_is_mu_minus_tau
        ));
        line(format!(
            "verify.mf_power_nplus1_vanishes: {}",
            v.mf_power_nplus1_vanishes
        ));
        line(format!(
            "verify.pairings_symmetric_with_power_radicals: {}",
            v.pairings_symmetric_with_power_radicals
        ));
        line(format!(
            "verify.weight_dims_symmetric: {}",
            v.weight_dims_symmetric
        ));
        line(format!(
            "verify.lefschetz_decomposition_fills: {}",
            v.lefschetz_decomposition_fills
        ));
        line(format!(
            "verify.spectrum_symmetric: {:?}",
            v.spectrum_symmetric
        ));
        line(format!(
            "verify.grading_matches_spectrum: {:?}",
            v.grading_matches_spectrum
        ));
        line(format!(
            "verify.filtration_shift_at_least_one: {:?}",
            v.filtration_shift_at_least_one
        ));
        line(format!("verify.s_equals_qj: {:?}", v.s_equals_qj));
        line(format!("verify.q_symmetry_type: {:?}", v.q_symmetry_type));
        line(format!(
            "verify.ntop_type_matches_graded: {:?}",
            v.ntop_type_matches_graded
        ));
        line(format!(
            "verify.ntop_q_antisymmetric: {:?}",
            v.ntop_q_antisymmetric
        ));
        line(format!(
            "verify.binding_arithmetic: {:?}",
            v.binding_arithmetic
        ));
        line(format!(
            "verify.b_top_plus_b_alg_is_order_one: {:?}",
            v.b_top_plus_b_alg_is_order_one
        ));
        line(format!("verify.main_theorem: {:?}", v.main_theorem));
        line(format!(
            "verify.oracle_mu_matches: {:?}",
            v.oracle_mu_matches
        ));
        line(format!(
            "verify.oracle_basis_matches: {:?}",
            v.oracle_basis_matches
        ));
        line(format!(
            "verify.kouchnirenko_matches: {:?}",
            v.kouchnirenko_matches
        ));
        for (stage, ms) in &self.timings_ms {
            line(format!("timing_ms.{stage}: {ms}"));
        }
        for (name, m) in [
            ("multiplication_matrix", &self.multiplication_matrix),
            ("ntop_matrix", &self.ntop_matrix),
            ("n1_matrix", &self.n1_matrix),
            ("pairing_pattern", &self.pairing_pattern),
        ] {
            match m {
                None => line(format!("{name}: (none)")),
                Some(m) if m.rows() <= TEXT_MATRIX_CAP && m.cols() <= TEXT_MATRIX_CAP => {
                    line(format!("{name}: ({}x{})", m.rows(), m.cols()));
                    for i in 0..m.rows() {
                        let row: Vec<String> = m.row(i).iter().map(rat::display).collect();
                        line(format!("  [{}]", row.join(" ")));
                    }
                }
                Some(m) => {
                    line(format!(
                        "{name}: {}x{} with {} nonzero entries at {:?}",
                        m.rows(),
                        m.cols(),
                        m.support().len(),
                        m.support()
                    ));
                }
            }
        }
        out
    }
}

fn fmt_type(t: &[(usize, usize)]) -> String {
    if t.is_empty() {
        return "trivial".into();
    }
    t.iter()
        .map(|(size, count)| format!("{count}x[{size}]"))
        .collect::<Vec<_>>()
        .join(" + ")
}
