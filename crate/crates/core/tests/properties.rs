//! Property suites: exact ring axioms on random polynomials, the Leibniz
//! rule, the local-order laws, and idempotence of the normal form.

use proptest::prelude::*;

use singlab::poly::MultiPoly;
use singlab::quotient::QuotientAlgebra;
use singlab::rat::{ratio, Rat};
use singlab::Monomial;

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    (0u32..=4, 0u32..=4).prop_map(|(a, b)| Monomial(vec![a, b]))
}

fn arb_poly() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((arb_monomial(), arb_rat()), 0..5)
        .prop_map(|terms| MultiPoly::from_terms(2, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        // associativity and commutativity of both operations
        let ab = p.add(&q).unwrap();
        prop_assert_eq!(ab.add(&r).unwrap(), p.add(&q.add(&r).unwrap()).unwrap());
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        let pq = p.mul(&q).unwrap();
        prop_assert_eq!(pq.mul(&r).unwrap(), p.mul(&q.mul(&r).unwrap()).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        // distributivity
        let lhs = p.mul(&q.add(&r).unwrap()).unwrap();
        let rhs = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        // additive inverse
        prop_assert!(p.sub(&p).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(p in arb_poly(), q in arb_poly(), i in 0usize..2) {
        let lhs = p.mul(&q).unwrap().partial(i);
        let rhs = p
            .partial(i)
            .mul(&q)
            .unwrap()
            .add(&p.mul(&q.partial(i)).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_order_laws(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
        use std::cmp::Ordering;
        // total: compare is antisymmetric and trichotomous by construction
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        // transitivity on the sampled triple
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        // the constant monomial is the maximum
        let one = Monomial(vec![0, 0]);
        prop_assert!(a <= one);
        // multiplication compatibility
        if a.cmp(&b) == Ordering::Less {
            prop_assert!(a.mul(&c) < b.mul(&c));
        }
    }

    #[test]
    fn normal_form_idempotent_and_linear(p in arb_poly(), q in arb_poly()) {
        let f = singlab::poly::parse("x^4+y^5+xy^4", &["x", "y"]).unwrap();
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let nf_p = qa.normal_form(&p);
        prop_assert_eq!(qa.normal_form(&nf_p), nf_p.clone());
        // the normal form is supported on standard monomials only
        for m in nf_p.support() {
            prop_assert!(qa.basis_index(&m).is_some());
        }
        // linearity
        let sum_nf = qa.normal_form(&p.add(&q).unwrap());
        prop_assert_eq!(sum_nf, nf_p.add(&qa.normal_form(&q)).unwrap());
        // the difference from the normal form is an ideal member
        let diff = p.sub(&qa.normal_form(&p)).unwrap();
        prop_assert!(qa.normal_form(&diff).is_zero());
    }

    #[test]
    fn multiplication_matrices_respect_products(p in arb_poly(), q in arb_poly()) {
        let f = singlab::poly::parse("x^3+y^3", &["x", "y"]).unwrap();
        let qa = QuotientAlgebra::for_jacobian(&f).unwrap();
        let mp = qa.multiplication_matrix(&p).unwrap().matrix;
        let mq = qa.multiplication_matrix(&q).unwrap().matrix;
        let mpq = qa
            .multiplication_matrix(&p.mul(&q).unwrap())
            .unwrap()
            .matrix;
        prop_assert_eq!(mp.mul(&mq), mpq);
    }
}
