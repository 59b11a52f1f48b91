//! Monomials and the fixed local ordering.
//!
//! A monomial is an exponent vector of fixed length (one entry per variable).
//! The crate works in the local ring at the origin, so the one total order
//! used everywhere is a *local* one: the constant monomial `1` is the largest
//! element, and multiplying by a variable moves strictly down.
//!
//! The concrete order is negative-degree reverse-lex (the `ds` order):
//! `a > b` iff `deg a < deg b`, ties broken by reverse lex (scanning
//! exponents from the last variable backwards, the first difference decides,
//! smaller exponent wins). This is total and compatible with multiplication.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector; `Ord` is the local order described in the module docs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Render with the given variable names, e.g. `x^4y`.
    pub fn render(&self, vars: &[String]) -> String {
        let mut s = String::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            s.push_str(&vars[i]);
            if e > 1 {
                s.push('^');
                s.push_str(&e.to_string());
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{:?}", self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        LocalOrder::NegDegRevLex.cmp(self, other)
    }
}

/// The local monomial order in force. Only one kind is implemented; it is a
/// named type so the choice is explicit at call sites that depend on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LocalOrder {
    #[default]
    NegDegRevLex,
}

impl LocalOrder {
    /// `Greater` means closer to `1` (larger in the local order).
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), b.0.len());
        match b.degree().cmp(&a.degree()) {
            Ordering::Equal => {
                for i in (0..a.0.len()).rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        // smaller exponent in the last differing slot wins
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn one_is_largest() {
        let one = Monomial::one(2);
        for e in [[1, 0], [0, 1], [3, 2], [0, 7]] {
            assert!(m(&e) < one);
        }
    }

    #[test]
    fn degree_decides_first() {
        // xy^2 (deg 3) beats x^4 (deg 4) in the local order
        assert!(m(&[1, 2]) > m(&[4, 0]));
        // x > y at equal degree
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[2, 1]) > m(&[1, 2]));
    }

    #[test]
    fn multiplication_compatible() {
        let a = m(&[1, 2]);
        let b = m(&[4, 0]);
        let c = m(&[2, 3]);
        assert!(a > b);
        assert!(a.mul(&c) > b.mul(&c));
    }

    #[test]
    fn division() {
        assert_eq!(m(&[1, 1]).div_into(&m(&[3, 2])), Some(m(&[2, 1])));
        assert_eq!(m(&[1, 3]).div_into(&m(&[3, 2])), None);
        assert!(m(&[1, 0]).gcd_is_one(&m(&[0, 5])));
        assert!(!m(&[1, 1]).gcd_is_one(&m(&[0, 5])));
    }

    #[test]
    fn render_names() {
        let vars = vec!["x".to_string(), "y".to_string()];
        assert_eq!(m(&[4, 1]).render(&vars), "x^4y");
        assert_eq!(m(&[0, 0]).render(&vars), "1");
    }
}
