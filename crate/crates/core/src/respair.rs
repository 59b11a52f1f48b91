//! Grothendieck residue pairing on the Jacobian algebra.
//!
//! The pairing is realized algebraically through the socle functional: `L`
//! picks the coefficient of the socle monomial in the exact normal form,
//! scaled so that `L(Hess f) = mu`. Then `B_0[i][k] = L(g_i g_k)` is the
//! residue pairing in the monomial basis, nondegenerate by local duality,
//! and the higher forms are `B_j = (M_f^T)^j B_0`.
//!
//! `B_0` is filled by a breadth-first sweep over the staircase: with
//! `u_m[k] = L(m * g_k)` one has `u_(z_v m) = X_v^T u_m` for the variable
//! multiplication matrices `X_v`, so each row costs one matrix-vector
//! product instead of `mu` fresh normal forms.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::quotient::QuotientAlgebra;
use crate::rat::{rat, Rat};

/// The residue functional `L` on the quotient algebra, tabulated on the
/// monomial basis, normalized by `L(Hess f) = mu`.
#[derive(Clone, Debug)]
pub struct ResidueFunctional {
    /// `values[i] = L(basis[i])`: zero except at the socle slot.
    pub values: Vec<Rat>,
    pub socle_monomial: Monomial,
    pub socle_index: usize,
    pub hess_coeff: Rat,
}

impl ResidueFunctional {
    /// Evaluate `L` on an arbitrary polynomial.
    pub fn eval(&self, qa: &QuotientAlgebra, h: &MultiPoly) -> Rat {
        let coords = qa.nf_coords(h);
        self.eval_coords(&coords)
    }

    pub fn eval_coords(&self, coords: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (c, v) in coords.iter().zip(&self.values) {
            if !c.is_zero() && !v.is_zero() {
                acc += c * v;
            }
        }
        acc
    }
}

/// Build the residue functional for `f` on its Jacobian algebra.
pub fn residue_functional(qa: &QuotientAlgebra, f: &MultiPoly) -> Result<ResidueFunctional> {
    let (socle, hess_coeff) = qa.socle_generator(f)?;
    let socle_index = qa
        .basis_index(&socle)
        .expect("socle monomial is a basis element");
    let mut values = vec![Rat::zero(); qa.mu()];
    values[socle_index] = rat(qa.mu() as i64) / &hess_coeff;
    Ok(ResidueFunctional {
        values,
        socle_monomial: socle,
        socle_index,
        hess_coeff,
    })
}

/// A higher bilinear form `B_j[i][k] = L(f^j g_i g_k)`.
#[derive(Clone, Debug)]
pub struct PairingMatrix {
    pub j: usize,
    pub entries: QMatrix,
}

/// The base pairing `B_0` in the monomial basis.
pub fn base_pairing(qa: &QuotientAlgebra, l: &ResidueFunctional) -> Result<QMatrix> {
    let mu = qa.mu();
    let vars = qa.variable_matrices();
    let basis = qa.basis();
    // u-vectors by staircase BFS: u_1 = values, u_(z_v m) = X_v^T u_m
    let mut rows: Vec<Option<Vec<Rat>>> = vec![None; mu];
    rows[0] = Some(l.values.clone());
    // basis is sorted descending, so every proper divisor of basis[i]
    // appears before i; scan in order and extend by one variable
    for i in 1..mu {
        let m = &basis[i];
        let v = (0..qa.nvars())
            .find(|&v| m.0[v] > 0)
            .expect("non-constant monomial");
        let mut parent = m.clone();
        parent.0[v] -= 1;
        let pi = qa
            .basis_index(&parent)
            .expect("staircase is closed under division");
        debug_assert!(pi < i);
        let u = vars[v].tr_mul_vec(rows[pi].as_ref().expect("computed earlier"));
        rows[i] = Some(u);
    }
    let b0 = QMatrix::from_rows(rows.into_iter().map(|r| r.unwrap()).collect());
    if !b0.is_symmetric() {
        return Err(Error::DegeneratePairing);
    }
    if b0.rank() != mu {
        return Err(Error::DegeneratePairing);
    }
    Ok(b0)
}

/// `B_j = (M_f^T)^j B_0`.
pub fn pairing_matrix(j: usize, b0: &QMatrix, mf: &QMatrix) -> PairingMatrix {
    let mt = mf.transpose();
    let mut entries = b0.clone();
    for _ in 0..j {
        entries = mt.mul(&entries);
    }
    PairingMatrix { j, entries }
}

/// Direct quadratic-definition pairing, for cross-checking `pairing_matrix`
/// on small germs: `B_j[i][k] = L(f^j g_i g_k)` via fresh normal forms.
pub fn pairing_matrix_direct(
    j: usize,
    qa: &QuotientAlgebra,
    f: &MultiPoly,
    l: &ResidueFunctional,
) -> PairingMatrix {
    let mu = qa.mu();
    let fj = f.pow(j as u32);
    let basis = qa.basis();
    let entries = QMatrix::from_fn(mu, mu, |i, k| {
        let prod = fj.mul_term(&basis[i].mul(&basis[k]), &num_traits::One::one());
        l.eval(qa, &prod)
    });
    PairingMatrix { j, entries }
}

/// Exact rank and kernel basis of a pairing matrix.
pub fn radical_rank(b: &PairingMatrix) -> (usize, Vec<Vec<Rat>>) {
    let radical = b.entries.kernel_basis();
    (b.entries.rows() - radical.len(), radical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use crate::rat::ratio;

    fn p(s: &str) -> MultiPoly {
        parse(s, &["x", "y"]).unwrap()
    }

    fn setup(fs: &str) -> (MultiPoly, QuotientAlgebra, ResidueFunctional, QMatrix) {
        let f = p(fs);
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let l = residue_functional(&qa, &f).unwrap();
        let b0 = base_pairing(&qa, &l).unwrap();
        (f, qa, l, b0)
    }

    #[test]
    fn cusp_pair_functional_values() {
        let (_, qa, l, _) = setup("x^3+y^3");
        // L(Hess) = mu = 4 with Hess = 36xy, so L(xy) = 1/9
        assert_eq!(l.eval(&qa, &p("xy")), ratio(1, 9));
        assert_eq!(l.eval(&qa, &p("1")), rat(0));
        assert_eq!(l.eval(&qa, &p("x")), rat(0));
        assert_eq!(l.eval(&qa, &p("y")), rat(0));
        assert_eq!(
            l.eval(&qa, &crate::quotient::hessian(&p("x^3+y^3"))),
            rat(4)
        );
    }

    #[test]
    fn morse_point_functional() {
        let (_, qa, l, _) = setup("x^2+y^2");
        // normalization L(Hess) = mu = 1 with Hess = 4 forces L(1) = 1/4
        assert_eq!(l.eval(&qa, &p("1")), ratio(1, 4));
        assert_eq!(l.eval(&qa, &p("4")), rat(1));
    }

    #[test]
    fn functional_kills_the_ideal() {
        let (f, qa, l, _) = setup("x^4+y^5+xy^4");
        let member = f
            .partial(0)
            .mul(&p("x^2-3y"))
            .unwrap()
            .add(&f.partial(1).mul(&p("1+xy")).unwrap())
            .unwrap();
        assert_eq!(l.eval(&qa, &member), rat(0));
    }

    #[test]
    fn cusp_pair_base_pairing_pattern() {
        let (_, qa, _, b0) = setup("x^3+y^3");
        // nonzero exactly on complementary pairs (1,xy), (x,y)
        let idx = |e: &[u32]| qa.basis_index(&Monomial(e.to_vec())).unwrap();
        let one = idx(&[0, 0]);
        let x = idx(&[1, 0]);
        let y = idx(&[0, 1]);
        let xy = idx(&[1, 1]);
        for i in 0..4 {
            for k in 0..4 {
                let expect_nonzero = (i == one && k == xy)
                    || (i == xy && k == one)
                    || (i == x && k == y)
                    || (i == y && k == x);
                assert_eq!(!b0.get(i, k).is_zero(), expect_nonzero);
                if expect_nonzero {
                    assert_eq!(b0.get(i, k), &ratio(1, 9));
                }
            }
        }
    }

    #[test]
    fn high_powers_vanish() {
        let (f, qa, _, b0) = setup("x^3+y^3");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let b = pairing_matrix(qa.nvars(), &b0, &mf);
        assert!(b.entries.is_zero());
    }

    #[test]
    fn example_one_rank_two_symmetric() {
        let (f, qa, _, b0) = setup("x^5+y^6+x^4y");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let b1 = pairing_matrix(1, &b0, &mf);
        assert!(b1.entries.is_symmetric());
        let (rank, radical) = radical_rank(&b1);
        assert_eq!(rank, 2);
        assert_eq!(radical.len(), 17);
    }

    #[test]
    fn example_two_b1_rank_one() {
        let (f, qa, _, b0) = setup("x^4+y^5+xy^4");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let (rank, _) = radical_rank(&pairing_matrix(1, &b0, &mf));
        assert_eq!(rank, 1);
    }

    #[test]
    fn example_three_b1_rank_one() {
        let (f, qa, _, b0) = setup("x^5+y^5+x^2y^2");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let (rank, _) = radical_rank(&pairing_matrix(1, &b0, &mf));
        assert_eq!(rank, 1);
    }

    #[test]
    fn adjointness_and_direct_definition_agree() {
        for fs in ["x^3+y^3", "x^4+y^5+xy^4", "x^5+y^5+x^2y^2"] {
            let (f, qa, l, b0) = setup(fs);
            let mf = qa.multiplication_matrix(&f).unwrap().matrix;
            for j in 0..=2usize {
                let fast = pairing_matrix(j, &b0, &mf);
                let direct = pairing_matrix_direct(j, &qa, &f, &l);
                assert_eq!(fast.entries, direct.entries, "j = {j} for {fs}");
                assert!(fast.entries.is_symmetric());
                // adjointness: B_(j+1) = B_j * M_f as well
                let next = pairing_matrix(j + 1, &b0, &mf);
                assert_eq!(next.entries, fast.entries.mul(&mf));
            }
        }
    }

    #[test]
    fn radical_equals_kernel_of_power() {
        let (f, qa, _, b0) = setup("x^5+y^6+x^4y");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        for j in 0..=2usize {
            let bj = pairing_matrix(j, &b0, &mf);
            let (rank, radical) = radical_rank(&bj);
            let mj = mf.pow(j);
            assert_eq!(rank, mj.rank());
            let mut ker = crate::matrix::SpanTracker::new(qa.mu());
            for v in mj.kernel_basis() {
                ker.insert(&v);
            }
            for v in &radical {
                assert!(ker.contains(v));
            }
            assert_eq!(ker.rank(), radical.len());
        }
    }

    #[test]
    fn filtration_extremes_pair_to_zero() {
        // L((f^m0 a) b) = 0 whenever f^m0 b = 0
        let (f, qa, l, _) = setup("x^5+y^5+x^2y^2");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let m0 = 1usize;
        assert!(mf.pow(m0 + 1).is_zero());
        assert!(!mf.pow(m0).is_zero());
        let ann: Vec<Vec<Rat>> = mf.pow(m0).kernel_basis();
        let image = mf.pow(m0);
        for bcoords in &ann {
            let b_poly = qa.poly_from_coords(bcoords);
            for j in 0..qa.mu() {
                let a_poly = qa.poly_from_coords(&image.col(j));
                let prod = a_poly.mul(&b_poly).unwrap();
                assert_eq!(l.eval(&qa, &prod), rat(0));
            }
        }
    }

    #[test]
    fn scaling_l_preserves_structure() {
        let (f, qa, mut l, b0) = setup("x^4+y^5+xy^4");
        let mf = qa.multiplication_matrix(&f).unwrap().matrix;
        let (r1, _) = radical_rank(&pairing_matrix(1, &b0, &mf));
        // scale L by 7: ranks and radicals cannot move
        for v in &mut l.values {
            *v *= rat(7);
        }
        let b0s = base_pairing(&qa, &l).unwrap();
        assert_eq!(b0s, b0.scale(&rat(7)));
        let (r2, _) = radical_rank(&pairing_matrix(1, &b0s, &mf));
        assert_eq!(r1, r2);
    }
}
