//! Local standard bases via Mora's tangent-cone algorithm.
//!
//! Over a local order, naive division need not terminate, so reduction uses
//! Mora's ecart rule: always reduce by a divisor of minimal ecart, and allow
//! intermediate results to join the reducer set. The outcome is a *weak*
//! normal form `u*p = sum q_i g_i + h` (with `u` a unit), which is exactly
//! what is needed for two things: deciding ideal membership (`h = 0` iff
//! `p` is in the ideal) and computing the leading ideal. Exact class
//! representatives in the quotient are produced elsewhere
//! ([`crate::quotient`]) once a truncation degree is certified.

use num_traits::One;

use crate::monomial::Monomial;
use crate::poly::MultiPoly;
use crate::rat::Rat;

/// ecart = total degree spread of the polynomial above its leading monomial.
fn ecart(p: &MultiPoly) -> u32 {
    let lead_deg = p.lead().map(|(m, _)| m.degree()).unwrap_or(0);
    p.max_degree().unwrap_or(0) - lead_deg
}

/// Mora weak normal form of `p` against `reducers`.
///
/// Postcondition: the result is zero iff `p` lies in the ideal generated by
/// `reducers` (in the local ring); when nonzero, its leading monomial is not
/// divisible by any reducer leading monomial.
pub fn weak_normal_form(p: &MultiPoly, reducers: &[MultiPoly]) -> MultiPoly {
    let mut h = p.clone();
    let mut pool: Vec<MultiPoly> = reducers.iter().filter(|g| !g.is_zero()).cloned().collect();
    loop {
        let Some((lm_h, lc_h)) = h.lead().map(|(m, c)| (m.clone(), c.clone())) else {
            return h;
        };
        // divisor of minimal ecart; first occurrence wins on ties
        let mut best: Option<(usize, u32)> = None;
        for (i, g) in pool.iter().enumerate() {
            let (lm_g, _) = g.lead().expect("reducers are nonzero");
            if lm_g.divides(&lm_h) {
                let e = ecart(g);
                if best.is_none_or(|(_, be)| e < be) {
                    best = Some((i, e));
                }
            }
        }
        let Some((idx, e_g)) = best else {
            return h;
        };
        if e_g > ecart(&h) {
            pool.push(h.clone());
        }
        let g = &pool[idx];
        let (lm_g, lc_g) = g.lead().expect("nonzero");
        let q = lm_g.div_into(&lm_h).expect("divides");
        let factor = lc_h / lc_g;
        h = h.sub(&g.mul_term(&q, &factor)).expect("same nvars");
    }
}

/// Is `p` a member of the ideal generated by `gens` in the local ring?
pub fn ideal_member(p: &MultiPoly, gens: &[MultiPoly]) -> bool {
    weak_normal_form(p, gens).is_zero()
}

fn s_poly(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let (lm_f, lc_f) = f.lead().expect("nonzero");
    let (lm_g, lc_g) = g.lead().expect("nonzero");
    let l = lm_f.lcm(lm_g);
    let qf = lm_f.div_into(&l).expect("lcm");
    let qg = lm_g.div_into(&l).expect("lcm");
    let a = f.mul_term(&qf, &(Rat::one() / lc_f));
    let b = g.mul_term(&qg, &(Rat::one() / lc_g));
    a.sub(&b).expect("same nvars")
}

/// Weak standard basis of the ideal generated by `gens`, minimalized and
/// made monic. The leading monomials generate the leading ideal; pair
/// processing is pruned by the product and chain criteria.
pub fn standard_basis(gens: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            let lc = g.lead().unwrap().1.clone();
            basis.push(g.scale(&(Rat::one() / lc)));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut done: Vec<(usize, usize)> = Vec::new();

    while !pairs.is_empty() {
        // treat the pair with the largest lcm in the local order (lowest
        // degree first); deterministic
        let lcm_of = |&(i, j): &(usize, usize)| -> Monomial {
            basis[i].lead().unwrap().0.lcm(basis[j].lead().unwrap().0)
        };
        let mut pick = 0;
        for k in 1..pairs.len() {
            if lcm_of(&pairs[k]) > lcm_of(&pairs[pick]) {
                pick = k;
            }
        }
        let (i, j) = pairs.swap_remove(pick);
        let lm_i = basis[i].lead().unwrap().0.clone();
        let lm_j = basis[j].lead().unwrap().0.clone();
        let lcm = lm_i.lcm(&lm_j);
        done.push((i, j));

        // product criterion
        if lm_i.gcd_is_one(&lm_j) {
            continue;
        }
        // chain criterion: some k with lm_k | lcm and both (i,k), (j,k) treated
        let treated = |a: usize, b: usize| {
            let key = (a.min(b), a.max(b));
            done.contains(&key)
        };
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().unwrap().0.divides(&lcm)
                && treated(i, k)
                && treated(j, k)
        });
        if chained {
            continue;
        }

        let h = weak_normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if h.is_zero() {
            continue;
        }
        let lc = h.lead().unwrap().1.clone();
        let h = h.scale(&(Rat::one() / lc));
        let new_idx = basis.len();
        for k in 0..new_idx {
            pairs.push((k, new_idx));
        }
        basis.push(h);
    }

    minimalize(basis)
}

/// Keep only generators whose leading monomial is a minimal generator of the
/// leading ideal.
fn minimalize(basis: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let lms: Vec<Monomial> = basis.iter().map(|g| g.lead().unwrap().0.clone()).collect();
    let mut keep: Vec<MultiPoly> = Vec::new();
    let mut kept_lms: Vec<Monomial> = Vec::new();
    // scan from the local-largest leading monomial down so that the survivor
    // among equal leading monomials is deterministic
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| lms[b].cmp(&lms[a]));
    for idx in order {
        let lm = &lms[idx];
        if kept_lms.iter().any(|k| k.divides(lm)) {
            continue;
        }
        kept_lms.push(lm.clone());
        keep.push(basis[idx].clone());
    }
    keep
}

/// Leading monomials of a basis.
pub fn leading_monomials(basis: &[MultiPoly]) -> Vec<Monomial> {
    basis.iter().map(|g| g.lead().unwrap().0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str) -> MultiPoly {
        parse(s, &["x", "y"]).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let sb = standard_basis(&[p("3x^2"), p("3y^2")]);
        let lms = leading_monomials(&sb);
        assert_eq!(lms.len(), 2);
        assert!(lms.contains(&Monomial(vec![2, 0])));
        assert!(lms.contains(&Monomial(vec![0, 2])));
    }

    #[test]
    fn weak_nf_detects_membership() {
        let gens = [p("5x^4+2xy^2"), p("5y^4+2x^2y")];
        let sb = standard_basis(&gens);
        // generators reduce to zero
        for g in &gens {
            assert!(ideal_member(g, &sb));
        }
        // an obvious combination too
        let comb = gens[0].mul_term(&Monomial(vec![1, 2]), &crate::rat::ratio(7, 3));
        assert!(ideal_member(&comb, &sb));
        // 1 is not a member (origin is singular)
        assert!(!ideal_member(&MultiPoly::one(2), &sb));
    }

    #[test]
    fn lead_term_is_local_smallest_degree() {
        let f = p("5x^4+2xy^2");
        let (lm, _) = f.lead().unwrap();
        assert_eq!(lm, &Monomial(vec![1, 2]));
    }

    #[test]
    fn substituted_line_plus_cusp() {
        // (x - y^2, y^3): leading ideal (x, y^3), quotient dimension 3
        let sb = standard_basis(&[p("x-y^2"), p("y^3")]);
        let lms = leading_monomials(&sb);
        assert!(lms.contains(&Monomial(vec![1, 0])));
        assert!(lms.contains(&Monomial(vec![0, 3])));
    }
}
