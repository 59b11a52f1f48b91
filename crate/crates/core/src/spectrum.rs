//! The singularity spectrum and the spectral grading of the Milnor algebra.
//!
//! Three supported routes produce a spectrum with an accompanying basis
//! grading:
//!
//! - Newton-nondegenerate convenient plane curves: the spectral value of a
//!   basis monomial `z^a` is `l(a + (1,1)) - 1` through the Newton distance,
//!   the part in `(-1, 0]` enumerates lattice points on or below the diagram
//!   and the positive part is its mirror;
//! - quasi-homogeneous germs of degree one in any number of variables:
//!   `sum w_i (a_i + 1) - 1` over the monomial basis;
//! - sums of germs in disjoint variables: spectra add with a shift of one and
//!   multiplicities multiply, and the product basis inherits the sum grading.
//!
//! Germs outside these classes can carry an externally supplied spectrum
//! (validated for count and symmetry) but no basis grading.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::monomial::Monomial;
use crate::newton::{newton_diagram, newton_distance, nondegeneracy_check, NewtonDiagram};
use crate::nilstruct::JordanData;
use crate::poly::MultiPoly;
use crate::quotient::QuotientAlgebra;
use crate::rat::{self, rat, Rat};

/// Sorted spectrum with multiplicities; values lie in the open interval
/// `(-1, n)` and are symmetric about `(n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumData {
    n: usize,
    entries: Vec<(Rat, usize)>,
}

impl SpectrumData {
    pub fn new(n: usize, values: impl IntoIterator<Item = (Rat, usize)>) -> Result<Self> {
        let mut map: BTreeMap<Rat, usize> = BTreeMap::new();
        for (v, m) in values {
            if m == 0 {
                continue;
            }
            if v <= rat(-1) || v >= rat(n as i64) {
                return Err(Error::InvalidSpectrum(format!(
                    "value {} outside (-1, {n})",
                    rat::display(&v)
                )));
            }
            *map.entry(v).or_insert(0) += m;
        }
        if map.is_empty() {
            return Err(Error::InvalidSpectrum("empty spectrum".into()));
        }
        Ok(SpectrumData {
            n,
            entries: map.into_iter().collect(),
        })
    }

    /// Ambient dimension parameter: the germ lives in `n + 1` variables.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(Rat, usize)] {
        &self.entries
    }

    pub fn mu(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// All values in ascending order, repeated by multiplicity.
    pub fn sorted_values(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.mu());
        for (v, m) in &self.entries {
            for _ in 0..*m {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn multiplicity(&self, v: &Rat) -> usize {
        self.entries
            .iter()
            .find(|(a, _)| a == v)
            .map_or(0, |&(_, m)| m)
    }

    pub fn min(&self) -> &Rat {
        &self.entries.first().unwrap().0
    }

    pub fn max(&self) -> &Rat {
        &self.entries.last().unwrap().0
    }

    /// `alpha_i + alpha_(mu+1-i) = n - 1` for all `i`.
    pub fn is_symmetric(&self) -> bool {
        let vals = self.sorted_values();
        let target = rat(self.n as i64 - 1);
        let mu = vals.len();
        (0..mu).all(|i| &vals[i] + &vals[mu - 1 - i] == target)
    }

    /// V-flag level of a spectral value: `r = ceil(alpha)`.
    pub fn r_level(alpha: &Rat) -> i64 {
        use num_traits::ToPrimitive;
        rat::ceil_int(alpha).to_i64().expect("small level")
    }

    /// Hodge level: `p = n - ceil(alpha)`.
    pub fn p_level(&self, alpha: &Rat) -> i64 {
        self.n as i64 - Self::r_level(alpha)
    }

    /// Is the associated monodromy eigenvalue equal to one?
    pub fn lambda_is_one(alpha: &Rat) -> bool {
        alpha.denom().is_one()
    }
}

/// Spectrum of a Newton-nondegenerate convenient plane-curve germ.
///
/// The `(-1, 0]` part takes `l(p) - 1` once per lattice point `p >= (1,1)`
/// with `l(p) <= 1`; the `(0, 1)` part is the mirror image of the open part.
pub fn spectrum_newton_curve(f: &MultiPoly) -> Result<(SpectrumData, NewtonDiagram)> {
    if f.nvars() != 2 {
        return Err(Error::WrongArity {
            expected: 2,
            got: f.nvars(),
        });
    }
    let nd = newton_diagram(&f.support())?;
    if !nd.convenient {
        return Err(Error::NotConvenient);
    }
    if !nondegeneracy_check(f, &nd) {
        return Err(Error::DegenerateNewtonBoundary);
    }
    let mut values: Vec<(Rat, usize)> = Vec::new();
    let one = Rat::one();
    let mut x = 1i64;
    loop {
        let base = newton_distance((x, 1), &nd)?;
        if base > one {
            break;
        }
        let mut y = 1i64;
        loop {
            let l = newton_distance((x, y), &nd)?;
            if l > one {
                break;
            }
            values.push((&l - &one, 1));
            if l < one {
                // mirror of the open part
                values.push((&one - &l, 1));
            }
            y += 1;
        }
        x += 1;
    }
    Ok((SpectrumData::new(1, values)?, nd))
}

/// Spectrum of a quasi-homogeneous germ of weighted degree one: the values
/// `sum w_i (a_i + 1) - 1` over the monomial basis of the Milnor algebra.
pub fn spectrum_quasihomogeneous(
    weights: &[Rat],
    f: &MultiPoly,
    qa: &QuotientAlgebra,
) -> Result<SpectrumData> {
    if weights.len() != f.nvars() {
        return Err(Error::WrongArity {
            expected: f.nvars(),
            got: weights.len(),
        });
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::NotQuasiHomogeneous);
    }
    for m in f.support() {
        let deg: Rat =
            m.0.iter()
                .zip(weights)
                .map(|(&e, w)| w * rat(e as i64))
                .sum();
        if !deg.is_one() {
            return Err(Error::NotQuasiHomogeneous);
        }
    }
    let values = qa
        .basis()
        .iter()
        .map(|m| (qh_alpha(weights, m), 1))
        .collect::<Vec<_>>();
    SpectrumData::new(f.nvars() - 1, values)
}

fn qh_alpha(weights: &[Rat], m: &Monomial) -> Rat {
    let mut acc = -Rat::one();
    for (&e, w) in m.0.iter().zip(weights) {
        acc += w * rat(e as i64 + 1);
    }
    acc
}

/// Join of spectra for a sum of germs in disjoint variables: values add with
/// a shift of one, multiplicities multiply.
pub fn thom_sebastiani_join(a: &SpectrumData, b: &SpectrumData) -> SpectrumData {
    let n = a.n + b.n + 1;
    let mut values = Vec::new();
    for (va, ma) in &a.entries {
        for (vb, mb) in &b.entries {
            values.push((va + vb + Rat::one(), ma * mb));
        }
    }
    SpectrumData::new(n, values).expect("join of valid spectra is valid")
}

/// Monodromy eigenvalues as reduced fractions `q` in `[0, 1)` with
/// `lambda = exp(-2 pi i q)`: the fractional parts of `-alpha`.
pub fn monodromy_eigenvalues(sp: &SpectrumData) -> Vec<(Rat, usize)> {
    let mut map: BTreeMap<Rat, usize> = BTreeMap::new();
    for (v, m) in &sp.entries {
        *map.entry(rat::fract(&-v)).or_insert(0) += m;
    }
    map.into_iter().collect()
}

/// Parse the external spectrum format: one `numerator/denominator:multiplicity`
/// entry per line; `#` starts a comment.
pub fn parse_external_spectrum(text: &str, n: usize) -> Result<SpectrumData> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let (val, mult) = line.split_once(':').ok_or_else(|| {
            Error::InvalidSpectrum(format!("line {}: expected value:multiplicity", lineno + 1))
        })?;
        let v = rat::parse(val)
            .ok_or_else(|| Error::InvalidSpectrum(format!("line {}: bad value", lineno + 1)))?;
        let m: usize = mult.trim().parse().map_err(|_| {
            Error::InvalidSpectrum(format!("line {}: bad multiplicity", lineno + 1))
        })?;
        values.push((v, m));
    }
    let sp = SpectrumData::new(n, values)?;
    if !sp.is_symmetric() {
        return Err(Error::InvalidSpectrum(
            "spectrum is not symmetric about (n-1)/2".into(),
        ));
    }
    Ok(sp)
}

/// A spectral monomial basis of the Milnor algebra: one monomial class per
/// slot, ordered by ascending grade, with the change of basis from the
/// staircase coordinates.
///
/// The staircase itself need not realize the spectrum: a staircase monomial's
/// class can sit deeper in the Newton filtration than the monomial does. The
/// basis is therefore re-chosen where necessary: candidates are scanned from
/// the deepest grade downward and kept when their exact classes are
/// independent of everything already taken, so the grade multiset equals the
/// graded dimension vector of the induced filtration on the algebra.
#[derive(Clone, Debug)]
pub struct SpectralBasis {
    /// Representative monomials, grade-ascending (ties broken by the local
    /// order, largest monomial first).
    pub monomials: Vec<Monomial>,
    /// Grades, ascending.
    pub alpha: Vec<Rat>,
    /// Column `k` holds the staircase coordinates of the class of
    /// `monomials[k]`.
    pub change: QMatrix,
}

impl SpectralBasis {
    pub fn mu(&self) -> usize {
        self.alpha.len()
    }

    pub fn multiset(&self) -> Vec<(Rat, usize)> {
        let mut map: BTreeMap<Rat, usize> = BTreeMap::new();
        for a in &self.alpha {
            *map.entry(a.clone()).or_insert(0) += 1;
        }
        map.into_iter().collect()
    }

    pub fn matches_spectrum(&self, sp: &SpectrumData) -> bool {
        self.multiset() == sp.entries()
    }

    /// Conjugate an operator given in staircase coordinates into this basis.
    pub fn transport_operator(&self, m: &QMatrix) -> QMatrix {
        let inv = self.change.inverse().expect("spectral basis is a basis");
        inv.mul(&m.mul(&self.change))
    }

    /// Transport a bilinear form: `C^T B C`.
    pub fn transport_pairing(&self, b: &QMatrix) -> QMatrix {
        self.change.transpose().mul(&b.mul(&self.change))
    }

    /// Position of each slot's grade among the distinct grades (ascending).
    pub fn levels(&self) -> Vec<usize> {
        let mut grades: Vec<Rat> = self.alpha.clone();
        grades.sort();
        grades.dedup();
        self.alpha
            .iter()
            .map(|a| grades.binary_search(a).expect("grade present"))
            .collect()
    }
}

fn assemble_spectral(mu: usize, mut picked: Vec<(Monomial, Rat, Vec<Rat>)>) -> SpectralBasis {
    picked.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
    let monomials = picked.iter().map(|(m, _, _)| m.clone()).collect();
    let alpha = picked.iter().map(|(_, a, _)| a.clone()).collect();
    let change = QMatrix::from_cols(picked.into_iter().map(|(_, _, v)| v).collect(), mu);
    SpectralBasis {
        monomials,
        alpha,
        change,
    }
}

/// Quasi-homogeneous route: the Jacobian ideal is weighted-graded, so the
/// staircase itself is adapted and the change of basis is the identity.
pub fn spectral_basis_weights(qa: &QuotientAlgebra, weights: &[Rat]) -> SpectralBasis {
    let mu = qa.mu();
    let picked = qa
        .basis()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut v = vec![Rat::zero(); mu];
            v[i] = Rat::one();
            (m.clone(), qh_alpha(weights, m), v)
        })
        .collect();
    assemble_spectral(mu, picked)
}

/// Newton route for plane curves: greedy deepest-first selection of monomial
/// classes. Fails with `SpectrumMismatch` when the algebra cannot be filled
/// this way (germ outside the supported class).
pub fn spectral_basis_newton(qa: &QuotientAlgebra, nd: &NewtonDiagram) -> Result<SpectralBasis> {
    let mu = qa.mu();
    let n = qa.nvars() as i64 - 1;
    // candidates: all monomials below the truncation degree with grade < n
    // (deeper classes must vanish for germs in the supported class)
    let mut by_grade: BTreeMap<Rat, Vec<Monomial>> = BTreeMap::new();
    let k = qa.truncation_degree();
    for m in crate::macaulay::monomials_below(2, k) {
        let p = (m.0[0] as i64 + 1, m.0[1] as i64 + 1);
        let grade = newton_distance(p, nd)? - Rat::one();
        if grade < rat(n) {
            by_grade.entry(grade).or_default().push(m);
        }
    }
    let mut tracker = crate::matrix::SpanTracker::new(mu);
    let mut picked: Vec<(Monomial, Rat, Vec<Rat>)> = Vec::new();
    for (grade, mut monos) in by_grade.into_iter().rev() {
        // staircase members first (in basis order), then the rest downward
        monos.sort_by(|a, b| {
            let sa = qa.basis_index(a).is_some();
            let sb = qa.basis_index(b).is_some();
            sb.cmp(&sa).then_with(|| b.cmp(a))
        });
        for m in monos {
            if picked.len() == mu {
                break;
            }
            let coords = qa.nf_monomial(&m);
            if coords.iter().all(|c| c.is_zero()) {
                continue;
            }
            if tracker.insert(&coords) {
                picked.push((m, grade.clone(), coords.to_vec()));
            }
        }
    }
    if picked.len() != mu {
        return Err(Error::SpectrumMismatch);
    }
    Ok(assemble_spectral(mu, picked))
}

/// Disjoint-variable sum: the staircase of the sum is the product of the
/// part staircases, and the spectral basis is the tensor product of the part
/// bases with grades adding plus one.
pub fn spectral_basis_join(
    qa: &QuotientAlgebra,
    left: (&QuotientAlgebra, &SpectralBasis, &[usize]),
    right: (&QuotientAlgebra, &SpectralBasis, &[usize]),
) -> Result<SpectralBasis> {
    let (qa1, sb1, vars1) = left;
    let (qa2, sb2, vars2) = right;
    let nvars = qa.nvars();
    let mu = qa.mu();
    if qa1.mu() * qa2.mu() != mu {
        return Err(Error::SpectrumMismatch);
    }
    let embed = |m1: &Monomial, m2: &Monomial| -> Monomial {
        let mut e = vec![0u32; nvars];
        for (k, &v) in vars1.iter().enumerate() {
            e[v] = m1.0[k];
        }
        for (k, &v) in vars2.iter().enumerate() {
            e[v] = m2.0[k];
        }
        Monomial(e)
    };
    // row map: staircase(join) = products of part staircases
    let mut row_of = vec![vec![0usize; qa2.mu()]; qa1.mu()];
    for (s, ms) in qa1.basis().iter().enumerate() {
        for (t, mt) in qa2.basis().iter().enumerate() {
            row_of[s][t] = qa
                .basis_index(&embed(ms, mt))
                .ok_or(Error::SpectrumMismatch)?;
        }
    }
    let mut picked = Vec::with_capacity(mu);
    for (i, m1) in sb1.monomials.iter().enumerate() {
        for (j, m2) in sb2.monomials.iter().enumerate() {
            let grade = &sb1.alpha[i] + &sb2.alpha[j] + Rat::one();
            let mut coords = vec![Rat::zero(); mu];
            for s in 0..qa1.mu() {
                let c1 = sb1.change.get(s, i);
                if c1.is_zero() {
                    continue;
                }
                for t in 0..qa2.mu() {
                    let c2 = sb2.change.get(t, j);
                    if !c2.is_zero() {
                        coords[row_of[s][t]] = c1 * c2;
                    }
                }
            }
            picked.push((embed(m1, m2), grade, coords));
        }
    }
    Ok(assemble_spectral(mu, picked))
}

/// The graded multiplication operator in spectral-basis coordinates: the
/// part of `M_f` raising the grade by exactly one, its level-pure Jordan
/// structure, and the successor map on the grade-sorted slots.
#[derive(Clone, Debug)]
pub struct GradedOperator {
    /// Full multiplication matrix in the spectral basis.
    pub full: QMatrix,
    /// Jump-one part.
    pub matrix: QMatrix,
    /// Level-pure Jordan data of the jump-one part.
    pub jordan: JordanData,
    /// Successor map on spectral slots.
    pub nu_spectral: Vec<Option<usize>>,
}

impl GradedOperator {
    pub fn jordan_type(&self) -> Vec<(usize, usize)> {
        self.jordan.jordan_type()
    }
}

/// Split off the grade-one part of a multiplication matrix (staircase
/// coordinates). Every nonzero entry must raise the grade by at least one;
/// entries raising it by more are dropped here and form the higher part
/// downstream.
pub fn graded_multiplication(mf_staircase: &QMatrix, sb: &SpectralBasis) -> Result<GradedOperator> {
    let mu = sb.mu();
    let full = sb.transport_operator(mf_staircase);
    let one = Rat::one();
    let mut graded = QMatrix::zeros(mu, mu);
    for (i, j) in full.support() {
        let jump = &sb.alpha[i] - &sb.alpha[j];
        if jump < one {
            return Err(Error::FiltrationViolation { row: i, col: j });
        }
        if jump == one {
            graded.set(i, j, full.get(i, j).clone());
        }
    }
    let level = sb.levels();
    let jordan = crate::nilstruct::jordan_chains_graded(&graded, &level)
        .expect("graded part of a nilpotent operator is nilpotent");

    // chains claim grade-consecutive slots; slots are already grade-sorted
    let mut free: BTreeMap<Rat, Vec<usize>> = BTreeMap::new();
    for (slot, a) in sb.alpha.iter().enumerate() {
        free.entry(a.clone()).or_default().push(slot);
    }
    for v in free.values_mut() {
        v.reverse();
    }
    let mut nu_spectral: Vec<Option<usize>> = vec![None; mu];
    for chain in &jordan.chains {
        let seed_alpha = vector_grade(&chain[0], &sb.alpha);
        let mut slots = Vec::with_capacity(chain.len());
        for k in 0..chain.len() {
            let a = &seed_alpha + rat(k as i64);
            let slot = free
                .get_mut(&a)
                .and_then(|v| v.pop())
                .expect("slot available for chain level");
            slots.push(slot);
        }
        for w in slots.windows(2) {
            nu_spectral[w[0]] = Some(w[1]);
        }
    }
    Ok(GradedOperator {
        full,
        matrix: graded,
        jordan,
        nu_spectral,
    })
}

fn vector_grade(v: &[Rat], alpha: &[Rat]) -> Rat {
    let mut grade: Option<Rat> = None;
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            match &grade {
                None => grade = Some(alpha[i].clone()),
                Some(g) => assert_eq!(g, &alpha[i], "chain vector must be level-pure"),
            }
        }
    }
    grade.expect("nonzero chain vector")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rat::ratio;

    fn p(s: &str) -> MultiPoly {
        parse(s, &["x", "y"]).unwrap()
    }

    fn sp_of(s: &str) -> SpectrumData {
        spectrum_newton_curve(&p(s)).unwrap().0
    }

    #[test]
    fn example_two_spectrum_exact() {
        let sp = sp_of("x^4+y^5+xy^4");
        let expect: Vec<Rat> = [
            (-11, 20),
            (-7, 20),
            (-3, 10),
            (-3, 20),
            (-1, 10),
            (-1, 20),
            (1, 20),
            (1, 10),
            (3, 20),
            (3, 10),
            (7, 20),
            (11, 20),
        ]
        .iter()
        .map(|&(n, d)| ratio(n, d))
        .collect();
        assert_eq!(sp.sorted_values(), expect);
    }

    #[test]
    fn example_three_spectrum_with_multiplicities() {
        let sp = sp_of("x^5+y^5+x^2y^2");
        let expect = [
            (ratio(-1, 2), 1),
            (ratio(-3, 10), 2),
            (ratio(-1, 10), 2),
            (rat(0), 1),
            (ratio(1, 10), 2),
            (ratio(3, 10), 2),
            (ratio(1, 2), 1),
        ];
        assert_eq!(sp.entries(), &expect[..]);
        assert_eq!(sp.mu(), 11);
    }

    #[test]
    fn morse_spectrum() {
        let sp = sp_of("x^2+y^2");
        assert_eq!(sp.entries(), &[(rat(0), 1)]);
    }

    #[test]
    fn example_one_spectrum_head_and_symmetry() {
        let sp = sp_of("x^5+y^6+x^4y");
        assert_eq!(sp.mu(), 19);
        assert_eq!(sp.min(), &ratio(-5, 8));
        assert_eq!(sp.max(), &ratio(5, 8));
        assert!(sp.is_symmetric());
        assert_eq!(sp.multiplicity(&rat(0)), 1);
    }

    #[test]
    fn quasihomogeneous_cusp_pair() {
        let f = p("x^3+y^3");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let w = [ratio(1, 3), ratio(1, 3)];
        let sp = spectrum_quasihomogeneous(&w, &f, &qa).unwrap();
        assert_eq!(
            sp.entries(),
            &[(ratio(-1, 3), 1), (rat(0), 2), (ratio(1, 3), 1)]
        );
    }

    #[test]
    fn quasihomogeneous_morse() {
        let f = p("x^2+y^2");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let sp = spectrum_quasihomogeneous(&[ratio(1, 2), ratio(1, 2)], &f, &qa).unwrap();
        assert_eq!(sp.entries(), &[(rat(0), 1)]);
    }

    #[test]
    fn quasihomogeneous_suspension_summand() {
        let f = parse("z^6+w^5", &["z", "w"]).unwrap();
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let sp = spectrum_quasihomogeneous(&[ratio(1, 6), ratio(1, 5)], &f, &qa).unwrap();
        assert_eq!(sp.mu(), 20);
        assert_eq!(sp.min(), &ratio(-19, 30));
        assert!(sp.is_symmetric());
    }

    #[test]
    fn rejects_wrong_weights() {
        let f = p("x^3+y^3");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        assert!(matches!(
            spectrum_quasihomogeneous(&[ratio(1, 3), ratio(1, 4)], &f, &qa),
            Err(Error::NotQuasiHomogeneous)
        ));
    }

    #[test]
    fn join_of_two_morse_points() {
        let a = SpectrumData::new(1, [(rat(0), 1)]).unwrap();
        let j = thom_sebastiani_join(&a, &a);
        assert_eq!(j.n(), 3);
        assert_eq!(j.entries(), &[(rat(1), 1)]);
    }

    #[test]
    fn join_matches_quasihomogeneous_route() {
        // one-variable spectra of x^3 and y^3 joined = plane spectrum of x^3+y^3
        let x3 = parse("x^3", &["x"]).unwrap();
        let qa1 = QuotientAlgebra::for_jacobian(&x3).unwrap();
        let sp1 = spectrum_quasihomogeneous(&[ratio(1, 3)], &x3, &qa1).unwrap();
        assert_eq!(sp1.entries(), &[(ratio(-2, 3), 1), (ratio(-1, 3), 1)]);
        let joined = thom_sebastiani_join(&sp1, &sp1);
        let f = p("x^3+y^3");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let direct = spectrum_quasihomogeneous(&[ratio(1, 3), ratio(1, 3)], &f, &qa).unwrap();
        assert_eq!(joined, direct);
    }

    #[test]
    fn join_brieskorn_consistency_random_exponents() {
        // x^a + y^b: weight formula in two variables vs join of one-variable spectra
        for (a, b) in [(2u32, 3u32), (3, 4), (5, 7), (8, 8), (4, 6)] {
            let fx = parse(&format!("x^{a}"), &["x"]).unwrap();
            let fy = parse(&format!("x^{b}"), &["x"]).unwrap();
            let qx = QuotientAlgebra::for_jacobian(&fx).unwrap();
            let qy = QuotientAlgebra::for_jacobian(&fy).unwrap();
            let sx = spectrum_quasihomogeneous(&[Rat::new(1.into(), a.into())], &fx, &qx).unwrap();
            let sy = spectrum_quasihomogeneous(&[Rat::new(1.into(), b.into())], &fy, &qy).unwrap();
            let joined = thom_sebastiani_join(&sx, &sy);
            let f = parse(&format!("x^{a}+y^{b}"), &["x", "y"]).unwrap();
            let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
            let w = [Rat::new(1.into(), a.into()), Rat::new(1.into(), b.into())];
            let direct = spectrum_quasihomogeneous(&w, &f, &qa).unwrap();
            assert_eq!(joined, direct, "a={a}, b={b}");
        }
    }

    #[test]
    fn newton_and_quasihomogeneous_agree() {
        for (s, w) in [
            ("x^3+y^3", [ratio(1, 3), ratio(1, 3)]),
            ("x^4+y^5", [ratio(1, 4), ratio(1, 5)]),
            ("x^2+y^7", [ratio(1, 2), ratio(1, 7)]),
        ] {
            let f = p(s);
            let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
            let qh = spectrum_quasihomogeneous(&w, &f, &qa).unwrap();
            let newton = sp_of(s);
            assert_eq!(qh, newton, "{s}");
        }
    }

    #[test]
    fn eigenvalues_examples() {
        let sp3 = sp_of("x^5+y^5+x^2y^2");
        let eig = monodromy_eigenvalues(&sp3);
        let minus_one = eig.iter().find(|(q, _)| q == &ratio(1, 2)).unwrap();
        assert_eq!(minus_one.1, 2);
        let morse = monodromy_eigenvalues(&sp_of("x^2+y^2"));
        assert_eq!(morse, vec![(rat(0), 1)]);
        // closed under q -> 1 - q away from q = 0
        let sp1 = sp_of("x^5+y^6+x^4y");
        let eig1 = monodromy_eigenvalues(&sp1);
        assert_eq!(eig1.iter().map(|&(_, m)| m).sum::<usize>(), 19);
        for (q, m) in &eig1 {
            if !q.is_zero() {
                let conj = rat(1) - q;
                assert_eq!(
                    eig1.iter().find(|(r, _)| r == &conj).map(|&(_, m)| m),
                    Some(*m)
                );
            }
        }
    }

    #[test]
    fn levels() {
        assert_eq!(SpectrumData::r_level(&ratio(-5, 8)), 0);
        assert_eq!(SpectrumData::r_level(&ratio(5, 8)), 1);
        assert_eq!(SpectrumData::r_level(&rat(0)), 0);
        let sp = sp_of("x^5+y^6+x^4y");
        assert_eq!(sp.p_level(&ratio(-5, 8)), 1);
        assert_eq!(sp.p_level(&ratio(5, 8)), 0);
        assert!(SpectrumData::lambda_is_one(&rat(0)));
        assert!(!SpectrumData::lambda_is_one(&ratio(1, 24)));
    }

    #[test]
    fn external_format_round_trip() {
        let text = "-1/2:1\n-3/10:2\n-1/10:2\n0:1\n1/10:2\n3/10:2\n1/2:1\n";
        let sp = parse_external_spectrum(text, 1).unwrap();
        assert_eq!(sp, sp_of("x^5+y^5+x^2y^2"));
        assert!(parse_external_spectrum("-1/2:1\n", 1).is_err()); // asymmetric
        assert!(parse_external_spectrum("garbage\n", 1).is_err());
    }

    #[test]
    fn spectral_basis_matches_spectrum_on_curves() {
        for s in ["x^5+y^6+x^4y", "x^4+y^5+xy^4", "x^5+y^5+x^2y^2", "x^2+y^2"] {
            let f = p(s);
            let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
            let (sp, nd) = spectrum_newton_curve(&f).unwrap();
            let sb = spectral_basis_newton(&qa, &nd).unwrap();
            assert!(sb.matches_spectrum(&sp), "{s}");
            assert_eq!(sb.alpha, sp.sorted_values(), "{s}");
        }
    }

    #[test]
    fn example_one_needs_non_staircase_representatives() {
        // the ds staircase of x^5+y^6+x^4y carries y^6 and y^7 whose classes
        // sit deeper in the Newton filtration; the adapted basis replaces them
        let f = p("x^5+y^6+x^4y");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let (sp, nd) = spectrum_newton_curve(&f).unwrap();
        let sb = spectral_basis_newton(&qa, &nd).unwrap();
        assert!(sb.matches_spectrum(&sp));
        let outside: Vec<&Monomial> = sb
            .monomials
            .iter()
            .filter(|m| qa.basis_index(m).is_none())
            .collect();
        assert!(!outside.is_empty());
        // the change of basis is genuinely invertible
        assert!(sb.change.inverse().is_some());
    }

    #[test]
    fn example_three_grades() {
        let f = p("x^5+y^5+x^2y^2");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let (_, nd) = spectrum_newton_curve(&f).unwrap();
        let sb = spectral_basis_newton(&qa, &nd).unwrap();
        // slot 0 is the class of 1 at grade -1/2, top slot at grade 1/2
        assert_eq!(sb.monomials[0], Monomial(vec![0, 0]));
        assert_eq!(sb.alpha[0], ratio(-1, 2));
        assert_eq!(sb.alpha[10], ratio(1, 2));
    }

    #[test]
    fn graded_map_example_three() {
        let f = p("x^5+y^5+x^2y^2");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let (_, nd) = spectrum_newton_curve(&f).unwrap();
        let sb = spectral_basis_newton(&qa, &nd).unwrap();
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let graded = graded_multiplication(&mf, &sb).unwrap();
        // one jump-one entry: bottom slot mapped onto the top slot
        let support = graded.matrix.support();
        assert_eq!(support, vec![(10, 0)]);
        assert!(!graded.matrix.get(10, 0).is_zero());
        assert_eq!(graded.jordan_type(), vec![(2, 1), (1, 9)]);
        assert_eq!(graded.nu_spectral[0], Some(10));
        assert_eq!(graded.nu_spectral.iter().flatten().count(), 1);
    }

    #[test]
    fn graded_map_vanishes_for_finite_monodromy_examples() {
        for s in ["x^5+y^6+x^4y", "x^4+y^5+xy^4"] {
            let f = p(s);
            let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
            let (_, nd) = spectrum_newton_curve(&f).unwrap();
            let sb = spectral_basis_newton(&qa, &nd).unwrap();
            let mf = qa.multiplication_matrix(&f).unwrap().matrix;
            let graded = graded_multiplication(&mf, &sb).unwrap();
            assert!(graded.matrix.is_zero(), "{s}");
            assert_eq!(graded.jordan.m0, 0);
        }
    }

    #[test]
    fn graded_nilpotency_bound() {
        for s in ["x^5+y^5+x^2y^2", "x^3+y^3"] {
            let f = p(s);
            let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
            let (_, nd) = spectrum_newton_curve(&f).unwrap();
            let sb = spectral_basis_newton(&qa, &nd).unwrap();
            let mf = qa.multiplication_matrix(&f).unwrap().matrix;
            let graded = graded_multiplication(&mf, &sb).unwrap();
            // block sizes bounded by n + 1 = 2
            assert!(graded.matrix.pow(2).is_zero());
        }
    }

    #[test]
    fn spectral_basis_join_matches_direct() {
        // x^3 + y^4 assembled from one-variable parts
        let fx = parse("x^3", &["x"]).unwrap();
        let fy = parse("x^4", &["x"]).unwrap();
        let qx = QuotientAlgebra::for_jacobian(&fx).unwrap();
        let qy = QuotientAlgebra::for_jacobian(&fy).unwrap();
        let sx = spectral_basis_weights(&qx, &[ratio(1, 3)]);
        let sy = spectral_basis_weights(&qy, &[ratio(1, 4)]);
        let f = p("x^3+y^4");
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let joined = spectral_basis_join(&qa, (&qx, &sx, &[0]), (&qy, &sy, &[1])).unwrap();
        let direct = spectral_basis_weights(&qa, &[ratio(1, 3), ratio(1, 4)]);
        assert_eq!(joined.alpha, direct.alpha);
        assert_eq!(joined.monomials, direct.monomials);
    }
}
