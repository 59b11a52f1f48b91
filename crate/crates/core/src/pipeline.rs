//! The full pipeline: parse a germ, build its Milnor algebra and residue
//! pairings, attach a spectrum (with basis grading where the class supports
//! it), assemble the spectral normal forms, run every verification, and
//! produce a [`Report`].

use std::time::Instant;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hodge;
use crate::macaulay;
use crate::matrix::SpanTracker;
use crate::monomial::Monomial;
use crate::newton;
use crate::nilstruct;
use crate::poly::{self, MultiPoly};
use crate::quotient::{self, QuotientAlgebra};
use crate::rat::{self, Rat};
use crate::report::{Report, Verifications, SCHEMA_VERSION};
use crate::respair;
use crate::spectrum::{self, SpectralBasis, SpectrumData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// Newton-nondegenerate convenient plane curve.
    Newton,
    /// Quasi-homogeneous of weighted degree one.
    QuasiHomogeneous(Vec<Rat>),
    /// Sum of two germs in disjoint variables (each a plane curve or a
    /// one-variable power).
    ThomSebastiani(String, String),
    /// Externally supplied spectrum file (`value:multiplicity` lines).
    External(std::path::PathBuf),
}

impl SpectrumMethod {
    pub fn describe(&self) -> String {
        match self {
            SpectrumMethod::Newton => "newton".into(),
            SpectrumMethod::QuasiHomogeneous(w) => format!(
                "qh:{}",
                w.iter().map(rat::display).collect::<Vec<_>>().join(",")
            ),
            SpectrumMethod::ThomSebastiani(a, b) => format!("ts:{a};{b}"),
            SpectrumMethod::External(p) => format!("external:{}", p.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ChecksLevel {
    #[default]
    Fast,
    /// Adds the Macaulay oracle and the direct pairing definition.
    Full,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub f_text: String,
    pub vars: Vec<String>,
    pub method: SpectrumMethod,
    pub checks: ChecksLevel,
}

/// Exit-code classification of pipeline failures.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. }
        | Error::UnknownVariable(_)
        | Error::NvarsMismatch(_, _)
        | Error::InvalidConfig(_)
        | Error::InvalidSpectrum(_)
        | Error::Io(_) => 2,
        Error::NotSingular(_)
        | Error::NotIsolated { .. }
        | Error::NotConvenient
        | Error::DegenerateNewtonBoundary
        | Error::WrongArity { .. }
        | Error::NotQuasiHomogeneous
        | Error::SpectrumMismatch
        | Error::FiltrationViolation { .. }
        | Error::GradingPairingClash(_) => 3,
        Error::NotNilpotent
        | Error::SocleNotOneDimensional
        | Error::DegeneratePairing
        | Error::NonDiagonalJ => 4,
    }
}

struct Timer {
    start: Instant,
    laps: Vec<(String, u128)>,
}

impl Timer {
    fn new() -> Self {
        Timer {
            start: Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        self.laps
            .push((name.to_string(), self.start.elapsed().as_millis()));
        self.start = Instant::now();
    }
}

/// Run the whole pipeline for one germ.
pub fn run(config: &RunConfig) -> Result<Report> {
    let vars: Vec<&str> = config.vars.iter().map(|s| s.as_str()).collect();
    if vars.is_empty() {
        return Err(Error::InvalidConfig("no variables".into()));
    }
    {
        let mut seen = vars.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != vars.len() {
            return Err(Error::InvalidConfig("duplicate variable names".into()));
        }
    }
    let f = poly::parse(&config.f_text, &vars)?;
    if !f.constant_term().is_zero() {
        return Err(Error::InvalidConfig(
            "germ must vanish at the origin".into(),
        ));
    }
    let mut timer = Timer::new();

    // Milnor algebra and numbers
    let qa = QuotientAlgebra::for_jacobian(&f)?;
    let mu = qa.mu();
    let n = qa.nvars() - 1;
    let mut tau_gens = f.gradient();
    tau_gens.push(f.clone());
    let tau = quotient::quotient_dimension(&tau_gens)?;
    timer.lap("algebra");

    // multiplication operator and its nilpotent structure
    let mf = qa.multiplication_matrix(&f)?.matrix;
    let jd = nilstruct::jordan_chains(&mf)?;
    let m0 = jd.m0;
    let wf = nilstruct::weight_filtration(&jd, &mf);
    let decomp = nilstruct::primitive_decomposition(&wf);
    let lefschetz_fills = decomp
        .iter()
        .all(|(j, parts)| parts.iter().map(|&(_, d)| d).sum::<usize>() == wf.graded_dim(*j));
    let weight_dims_symmetric = (0..=m0 as i64).all(|j| wf.graded_dim(j) == wf.graded_dim(-j));
    timer.lap("nilpotent_structure");

    // residue pairings
    let (socle_monomial, hess_coeff) = qa.socle_generator(&f)?;
    let l = respair::residue_functional(&qa, &f)?;
    let b0 = respair::base_pairing(&qa, &l)?;
    let mut pairing_ranks = Vec::new();
    let mut pairings_ok = true;
    for j in 0..=m0 {
        let bj = respair::pairing_matrix(j, &b0, &mf);
        let (rank, radical) = respair::radical_rank(&bj);
        pairing_ranks.push(rank);
        if !bj.entries.is_symmetric() {
            pairings_ok = false;
        }
        // radical must be exactly ker(M_f^j)
        let mj = mf.pow(j);
        if rank != mj.rank() {
            pairings_ok = false;
        }
        let mut ker = SpanTracker::new(mu);
        for v in mj.kernel_basis() {
            ker.insert(&v);
        }
        if !(radical.iter().all(|v| ker.contains(v)) && ker.rank() == radical.len()) {
            pairings_ok = false;
        }
    }
    if config.checks == ChecksLevel::Full && mu <= 24 {
        for j in 0..=m0 {
            let fast = respair::pairing_matrix(j, &b0, &mf);
            let direct = respair::pairing_matrix_direct(j, &qa, &f, &l);
            if fast.entries != direct.entries {
                pairings_ok = false;
            }
        }
    }
    timer.lap("pairings");

    let mut verifications = Verifications {
        rank_mf_is_mu_minus_tau: mf.rank() == mu - tau,
        mf_power_nplus1_vanishes: mf.pow(n + 1).is_zero(),
        pairings_symmetric_with_power_radicals: pairings_ok,
        weight_dims_symmetric,
        lefschetz_decomposition_fills: lefschetz_fills,
        ..Default::default()
    };

    // spectrum and basis grading
    let spectrum_stage = attach_spectrum(config, &f, &qa, mu)?;
    timer.lap("spectrum");

    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        f: f.render(&config.vars),
        vars: config.vars.clone(),
        spectrum_method: config.method.describe(),
        mu,
        tau,
        m0,
        jordan_type_mf: jd.jordan_type(),
        weight_filtration_dims: (-(m0 as i64)..=m0 as i64)
            .map(|j| (j, wf.graded_dim(j)))
            .collect(),
        primitive_dims: (-(m0 as i64)..=0)
            .map(|j| (j, wf.primitive_dim(j)))
            .collect(),
        pairing_ranks,
        socle_monomial: socle_monomial.render(&config.vars),
        hessian_coefficient: hess_coeff,
        spectrum: None,
        eigenvalues: None,
        kappa_fixed: None,
        n_jordan_type: None,
        ntop_support: None,
        n1_support: None,
        binding: None,
        j_sign: None,
        verifications: Verifications::default(),
        timings_ms: Vec::new(),
        multiplication_matrix: Some(mf.clone()),
        ntop_matrix: None,
        n1_matrix: None,
        pairing_pattern: None,
    };

    if let Some((sp, sbasis, kouch)) = spectrum_stage {
        if sp.mu() != mu {
            return Err(Error::SpectrumMismatch);
        }
        verifications.spectrum_symmetric = Some(sp.is_symmetric());
        verifications.kouchnirenko_matches = kouch.map(|k| k == mu as i64);
        report.spectrum = Some(
            sp.entries()
                .iter()
                .map(|(v, m)| (rat::display(v), *m))
                .collect(),
        );
        report.eigenvalues = Some(
            spectrum::monodromy_eigenvalues(&sp)
                .iter()
                .map(|(v, m)| (rat::display(v), *m))
                .collect(),
        );

        // normal-form patterns from the spectrum alone
        let kappa = hodge::kappa_involution(&sp);
        let s_mat = hodge::build_s(&kappa);
        let q_mat = hodge::build_q(&sp, &kappa);
        let j_mat = hodge::build_j(&q_mat, &s_mat)?;
        verifications.s_equals_qj = Some(q_mat.mul(&j_mat) == s_mat);
        verifications.q_symmetry_type = Some(hodge::q_symmetry_holds(&q_mat, &sp));
        report.j_sign = Some(hodge::j_sign_report(&j_mat, &sp));
        report.kappa_fixed = Some(kappa.fixed.iter().map(|i| i + 1).collect());

        if let Some(sb) = sbasis {
            verifications.grading_matches_spectrum = Some(sb.matches_spectrum(&sp));
            if verifications.grading_matches_spectrum != Some(true) {
                return Err(Error::SpectrumMismatch);
            }
            // graded operator and the adapted normal form
            let graded = spectrum::graded_multiplication(&mf, &sb)?;
            verifications.filtration_shift_at_least_one = Some(true);
            report.n_jordan_type = Some(graded.jordan_type());
            timer.lap("graded");

            let b0_sp = sb.transport_pairing(&b0);
            let adapted = hodge::adapt_basis(&b0_sp, &sb.alpha, &kappa, n)?;
            let m_ad = {
                let inv = adapted.change.inverse().expect("adapted basis");
                inv.mul(&graded.full.mul(&adapted.change))
            };
            let (ntop, n1) = hodge::split_ntop_n1(&m_ad, &adapted.alpha)?;
            let ntop_jd = nilstruct::jordan_chains(&ntop)?;
            verifications.ntop_type_matches_graded =
                Some(ntop_jd.type_partition == graded.jordan.type_partition);
            verifications.ntop_q_antisymmetric = Some(hodge::ntop_q_antisymmetric(&ntop, &q_mat));
            timer.lap("adapted_basis");

            // order-j identities, via the independent transport route
            let total_change = sb.change.mul(&adapted.change);
            let total_t = total_change.transpose();
            let mut theorem = Vec::new();
            for j in 0..=n + 1 {
                let bj = respair::pairing_matrix(j, &b0, &mf).entries;
                let bj_ad = total_t.mul(&bj.mul(&total_change));
                let check = hodge::verify_main_theorem(
                    j,
                    &bj_ad,
                    &m_ad,
                    &adapted.pattern,
                    &q_mat,
                    &j_mat,
                    &adapted.fixed_scales,
                );
                theorem.push((j, check.holds));
            }
            verifications.main_theorem = Some(theorem);

            // order-one split into grade-one and higher parts
            let b1_ad = total_t.mul(
                &respair::pairing_matrix(1, &b0, &mf)
                    .entries
                    .mul(&total_change),
            );
            let b_top = hodge::b_top_matrix(&ntop, &adapted.pattern);
            let b_alg = hodge::b_alg_matrix(&n1, &adapted.pattern);
            verifications.b_top_plus_b_alg_is_order_one = Some(b_top.add(&b_alg) == b1_ad);

            let binding = hodge::bind_chains(&ntop, &n1, &adapted.alpha)?;
            let binding_ok = binding
                .chains
                .iter()
                .all(|c| c.segments.iter().map(|s| s.len).sum::<usize>() == c.length);
            verifications.binding_arithmetic = Some(binding_ok);

            report.ntop_support = Some(ntop.support());
            report.n1_support = Some(n1.support());
            report.ntop_matrix = Some(ntop);
            report.n1_matrix = Some(n1);
            report.pairing_pattern = Some(adapted.pattern.clone());
            report.binding = Some(binding);
            timer.lap("normal_forms");
        }
    }

    // independent oracle (full checks, plane germs)
    if config.checks == ChecksLevel::Full && qa.nvars() == 2 {
        let cap = 2 * qa.truncation_degree().max(4);
        match macaulay::macaulay_mu(&f, cap) {
            Some((oracle_mu, oracle_basis)) => {
                verifications.oracle_mu_matches = Some(oracle_mu == mu);
                let mut ours: Vec<Monomial> = qa.basis().to_vec();
                let mut theirs = oracle_basis;
                ours.sort();
                theirs.sort();
                verifications.oracle_basis_matches = Some(ours == theirs);
            }
            None => {
                verifications.oracle_mu_matches = Some(false);
                verifications.oracle_basis_matches = Some(false);
            }
        }
        timer.lap("oracle");
    }

    report.verifications = verifications;
    report.timings_ms = timer.laps;
    Ok(report)
}

type SpectrumStage = Option<(SpectrumData, Option<SpectralBasis>, Option<i64>)>;

fn attach_spectrum(
    config: &RunConfig,
    f: &MultiPoly,
    qa: &QuotientAlgebra,
    mu: usize,
) -> Result<SpectrumStage> {
    match &config.method {
        SpectrumMethod::Newton => {
            let (sp, nd) = spectrum::spectrum_newton_curve(f)?;
            let kouch = newton::kouchnirenko_mu(&nd)?;
            let sb = spectrum::spectral_basis_newton(qa, &nd)?;
            Ok(Some((sp, Some(sb), Some(kouch))))
        }
        SpectrumMethod::QuasiHomogeneous(weights) => {
            let sp = spectrum::spectrum_quasihomogeneous(weights, f, qa)?;
            let sb = spectrum::spectral_basis_weights(qa, weights);
            Ok(Some((sp, Some(sb), None)))
        }
        SpectrumMethod::ThomSebastiani(t1, t2) => {
            let stage = thom_sebastiani_stage(config, f, qa, t1, t2)?;
            Ok(Some(stage))
        }
        SpectrumMethod::External(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let sp = spectrum::parse_external_spectrum(&text, qa.nvars() - 1)?;
            if sp.mu() != mu {
                return Err(Error::InvalidSpectrum(format!(
                    "external spectrum has {} values, Milnor number is {mu}",
                    sp.mu()
                )));
            }
            Ok(Some((sp, None, None)))
        }
    }
}

/// Split a sum germ into its two disjoint-variable parts and assemble the
/// joined spectrum and the product spectral basis.
fn thom_sebastiani_stage(
    config: &RunConfig,
    f: &MultiPoly,
    qa: &QuotientAlgebra,
    t1: &str,
    t2: &str,
) -> Result<(SpectrumData, Option<SpectralBasis>, Option<i64>)> {
    let vars: Vec<&str> = config.vars.iter().map(|s| s.as_str()).collect();
    let f1 = poly::parse(t1, &vars)?;
    let f2 = poly::parse(t2, &vars)?;
    if &f1.add(&f2)? != f {
        return Err(Error::InvalidConfig(
            "the two parts must add up to the germ".into(),
        ));
    }
    let used = |p: &MultiPoly| -> Vec<usize> {
        (0..vars.len())
            .filter(|&v| p.support().iter().any(|m| m.0[v] > 0))
            .collect()
    };
    let v1 = used(&f1);
    let v2 = used(&f2);
    if v1.iter().any(|v| v2.contains(v)) || v1.len() + v2.len() != vars.len() {
        return Err(Error::InvalidConfig(
            "the two parts must split the variables".into(),
        ));
    }

    let part =
        |p: &MultiPoly, vs: &[usize]| -> Result<(QuotientAlgebra, SpectrumData, SpectralBasis)> {
            let proj = MultiPoly::from_terms(
                vs.len(),
                p.support()
                    .iter()
                    .map(|m| (Monomial(vs.iter().map(|&v| m.0[v]).collect()), p.coeff(m)))
                    .collect(),
            );
            let part_qa = QuotientAlgebra::for_jacobian(&proj)?;
            match vs.len() {
                2 => {
                    let (sp, nd) = spectrum::spectrum_newton_curve(&proj)?;
                    if sp.mu() != part_qa.mu() {
                        return Err(Error::SpectrumMismatch);
                    }
                    let sb = spectrum::spectral_basis_newton(&part_qa, &nd)?;
                    Ok((part_qa, sp, sb))
                }
                1 => {
                    let deg = proj.max_degree().expect("nonzero part") as i64;
                    let w = [Rat::one() / rat::rat(deg)];
                    let sp = spectrum::spectrum_quasihomogeneous(&w, &proj, &part_qa)?;
                    let sb = spectrum::spectral_basis_weights(&part_qa, &w);
                    Ok((part_qa, sp, sb))
                }
                _ => Err(Error::InvalidConfig(
                    "each part must use one or two variables".into(),
                )),
            }
        };

    let (qa1, sp1, sb1) = part(&f1, &v1)?;
    let (qa2, sp2, sb2) = part(&f2, &v2)?;
    let sp = spectrum::thom_sebastiani_join(&sp1, &sp2);
    let sb = spectrum::spectral_basis_join(qa, (&qa1, &sb1, &v1), (&qa2, &sb2, &v2))?;
    Ok((sp, Some(sb), None))
}
