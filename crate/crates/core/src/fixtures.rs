//! Embedded example germs and their golden data, plus the 6x6 symbolic join
//! fixture. The golden values drive `verify-examples` and the acceptance
//! suite.

use crate::matrix::QMatrix;
use crate::pipeline::{ChecksLevel, RunConfig, SpectrumMethod};
use crate::rat::{rat, ratio, Rat};

pub fn example_one() -> RunConfig {
    RunConfig {
        f_text: "x^5+y^6+x^4y".into(),
        vars: vec!["x".into(), "y".into()],
        method: SpectrumMethod::Newton,
        checks: ChecksLevel::Fast,
    }
}

pub fn example_two() -> RunConfig {
    RunConfig {
        f_text: "x^4+y^5+xy^4".into(),
        vars: vec!["x".into(), "y".into()],
        method: SpectrumMethod::Newton,
        checks: ChecksLevel::Fast,
    }
}

pub fn example_three() -> RunConfig {
    RunConfig {
        f_text: "x^5+y^5+x^2y^2".into(),
        vars: vec!["x".into(), "y".into()],
        method: SpectrumMethod::Newton,
        checks: ChecksLevel::Fast,
    }
}

pub fn example_four() -> RunConfig {
    RunConfig {
        f_text: "x^10+y^3+x^2y^2+z^6+w^5+z^4w^3".into(),
        vars: vec!["x".into(), "y".into(), "z".into(), "w".into()],
        method: SpectrumMethod::ThomSebastiani("x^10+y^3+x^2y^2".into(), "z^6+w^5+z^4w^3".into()),
        checks: ChecksLevel::Fast,
    }
}

/// Golden data for one example germ.
#[derive(Clone, Debug)]
pub struct Golden {
    pub name: &'static str,
    pub mu: usize,
    pub tau: usize,
    /// rank of the multiplication operator (= mu - tau)
    pub rank_mf: usize,
    /// `(value, multiplicity)` ascending, exact
    pub spectrum: Vec<(&'static str, usize)>,
    /// Jordan type of the grade-one operator
    pub n_jordan_type: Vec<(usize, usize)>,
    /// ranks of the order-j pairings for j = 0..=m0
    pub pairing_ranks: Vec<usize>,
    /// kappa-fixed slots, 1-based
    pub kappa_fixed: Vec<usize>,
    /// Jordan type of the multiplication operator
    pub jordan_type_mf: Vec<(usize, usize)>,
}

pub fn golden_one() -> Golden {
    Golden {
        name: "example-1",
        mu: 19,
        tau: 17,
        rank_mf: 2,
        spectrum: vec![
            ("-5/8", 1),
            ("-11/24", 1),
            ("-5/12", 1),
            ("-7/24", 1),
            ("-1/4", 1),
            ("-5/24", 1),
            ("-1/8", 1),
            ("-1/12", 1),
            ("-1/24", 1),
            ("0", 1),
            ("1/24", 1),
            ("1/12", 1),
            ("1/8", 1),
            ("5/24", 1),
            ("1/4", 1),
            ("7/24", 1),
            ("5/12", 1),
            ("11/24", 1),
            ("5/8", 1),
        ],
        n_jordan_type: vec![(1, 19)],
        pairing_ranks: vec![19, 2],
        kappa_fixed: vec![10],
        jordan_type_mf: vec![(2, 2), (1, 15)],
    }
}

pub fn golden_two() -> Golden {
    Golden {
        name: "example-2",
        mu: 12,
        tau: 11,
        rank_mf: 1,
        spectrum: vec![
            ("-11/20", 1),
            ("-7/20", 1),
            ("-3/10", 1),
            ("-3/20", 1),
            ("-1/10", 1),
            ("-1/20", 1),
            ("1/20", 1),
            ("1/10", 1),
            ("3/20", 1),
            ("3/10", 1),
            ("7/20", 1),
            ("11/20", 1),
        ],
        n_jordan_type: vec![(1, 12)],
        pairing_ranks: vec![12, 1],
        kappa_fixed: vec![],
        jordan_type_mf: vec![(2, 1), (1, 10)],
    }
}

pub fn golden_three() -> Golden {
    Golden {
        name: "example-3",
        mu: 11,
        tau: 10,
        rank_mf: 1,
        spectrum: vec![
            ("-1/2", 1),
            ("-3/10", 2),
            ("-1/10", 2),
            ("0", 1),
            ("1/10", 2),
            ("3/10", 2),
            ("1/2", 1),
        ],
        n_jordan_type: vec![(2, 1), (1, 9)],
        pairing_ranks: vec![11, 1],
        kappa_fixed: vec![6],
        jordan_type_mf: vec![(2, 1), (1, 9)],
    }
}

/// The published table for the four-variable sum germ. The grade-one Jordan
/// type is the exactly computed value: the second summand has no spectral
/// pair at distance one, so the join inherits twenty 2-blocks from the first
/// summand and nothing longer (published accounts of this example disagree
/// internally about the square of the operator; the computation settles it).
pub fn golden_four() -> Golden {
    Golden {
        name: "example-4",
        mu: 280,
        tau: 248,
        rank_mf: 32,
        spectrum: vec![
            ("-2/15", 1),
            ("-1/30", 1),
            ("1/30", 1),
            ("1/15", 2),
            ("2/15", 1),
            ("1/6", 2),
            ("1/5", 2),
            ("7/30", 2),
            ("4/15", 3),
            ("3/10", 1),
            ("1/3", 2),
            ("11/30", 6),
            ("2/5", 3),
            ("13/30", 3),
            ("7/15", 5),
            ("1/2", 2),
            ("8/15", 7),
            ("17/30", 8),
            ("3/5", 4),
            ("19/30", 5),
            ("2/3", 6),
            ("7/10", 6),
            ("11/15", 9),
            ("23/30", 9),
            ("4/5", 5),
            ("5/6", 6),
            ("13/15", 10),
            ("9/10", 7),
            ("14/15", 10),
            ("29/30", 9),
            ("1", 4),
            ("31/30", 9),
            ("16/15", 10),
            ("11/10", 7),
            ("17/15", 10),
            ("7/6", 6),
            ("6/5", 5),
            ("37/30", 9),
            ("19/15", 9),
            ("13/10", 6),
            ("4/3", 6),
            ("41/30", 5),
            ("7/5", 4),
            ("43/30", 8),
            ("22/15", 7),
            ("3/2", 2),
            ("23/15", 5),
            ("47/30", 3),
            ("8/5", 3),
            ("49/30", 6),
            ("5/3", 2),
            ("17/10", 1),
            ("26/15", 3),
            ("53/30", 2),
            ("9/5", 2),
            ("11/6", 2),
            ("28/15", 1),
            ("29/15", 2),
            ("59/30", 1),
            ("61/30", 1),
            ("32/15", 1),
        ],
        n_jordan_type: vec![(2, 20), (1, 240)],
        pairing_ranks: vec![280, 32, 1],
        kappa_fixed: vec![139, 140, 141, 142],
        jordan_type_mf: vec![(3, 1), (2, 30), (1, 217)],
    }
}

/// The 6x6 restriction fixture for the sum germ: the operator
/// `[t] = N + N_1` with a free parameter `a`, graded so that the unit
/// entries jump by exactly one and the `a` entries by more.
pub fn join_fixture(a: i64) -> (QMatrix, Vec<Rat>) {
    let mut t = QMatrix::zeros(6, 6);
    t.set(2, 0, rat(1));
    t.set(3, 0, rat(a));
    t.set(5, 2, rat(a));
    t.set(5, 3, rat(1));
    let alpha = vec![
        rat(0),
        ratio(1, 2),
        rat(1),
        ratio(3, 2),
        rat(2),
        ratio(5, 2),
    ];
    (t, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_spectra_are_consistent() {
        for (g, n) in [
            (golden_one(), 1usize),
            (golden_two(), 1),
            (golden_three(), 1),
            (golden_four(), 3),
        ] {
            let total: usize = g.spectrum.iter().map(|&(_, m)| m).sum();
            assert_eq!(total, g.mu, "{}", g.name);
            assert_eq!(g.rank_mf, g.mu - g.tau, "{}", g.name);
            // symmetry of the embedded table about (n-1)/2
            let sp = crate::spectrum::SpectrumData::new(
                n,
                g.spectrum
                    .iter()
                    .map(|&(v, m)| (crate::rat::parse(v).unwrap(), m)),
            )
            .unwrap();
            assert!(sp.is_symmetric(), "{}", g.name);
        }
    }

    #[test]
    fn fixture_shape() {
        let (t, alpha) = join_fixture(1);
        assert_eq!(t.support(), vec![(2, 0), (3, 0), (5, 2), (5, 3)]);
        assert_eq!(alpha.len(), 6);
        // grading realizes the intended split
        let (ntop, n1) = crate::hodge::split_ntop_n1(&t, &alpha).unwrap();
        assert_eq!(ntop.support(), vec![(2, 0), (5, 3)]);
        assert_eq!(n1.support(), vec![(3, 0), (5, 2)]);
    }
}
