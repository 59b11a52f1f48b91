//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by the local monomial order, so the
//! leading term (the largest monomial, closest to `1`) is the last entry.
//! No zero coefficients are ever stored.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::rat::{self, Rat};

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), Rat::one())])
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let nvars = m.nvars();
        Self::from_terms(nvars, vec![(m, c)])
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending local order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    /// Leading term in the local order.
    pub fn lead(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single term.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_nvars(other)?;
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m.mul(m2), c * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self).expect("same nvars");
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[i] = e - 1;
            out.add_term(d, c * rat::rat(e as i64));
        }
        out
    }

    pub fn gradient(&self) -> Vec<MultiPoly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one(self.nvars))
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Minimal total degree over the support (`None` for the zero polynomial).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    fn check_nvars(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            Err(Error::NvarsMismatch(self.nvars, other.nvars))
        } else {
            Ok(())
        }
    }

    /// Canonical text form: terms in descending local order, coefficients as
    /// `p/q`, no explicit `*`. Parsing this back yields the same polynomial.
    pub fn render(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { "-" } else { "+" });
            }
            if m.is_one() {
                s.push_str(&rat::display(&abs));
            } else {
                if !abs.is_one() {
                    s.push_str(&rat::display(&abs));
                }
                s.push_str(&m.render(vars));
            }
        }
        s
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = (0..self.nvars).map(|i| format!("z{i}")).collect();
        write!(f, "{}", self.render(&vars))
    }
}

/// Parse a polynomial in the named variables.
///
/// Grammar: sum of terms joined by `+`/`-`; a term is a product of factors
/// joined by `*` or juxtaposition; a factor is an integer or rational
/// coefficient (`3`, `2/5`) or a variable with an optional power (`x`,
/// `x^4`). Leading `-` is allowed.
pub fn parse(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    Parser::new(text, vars)?.parse()
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    vars: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: &[&str]) -> Result<Self> {
        Ok(Parser {
            bytes: text.as_bytes(),
            pos: 0,
            vars: vars.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(&mut self) -> Result<MultiPoly> {
        let nvars = self.vars.len();
        let mut out = MultiPoly::zero(nvars);
        let mut sign = Rat::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => {
                self.pos += 1;
            }
            Some(_) => {}
            None => return Err(self.err("empty input")),
        }
        loop {
            let (m, c) = self.parse_term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                None => break,
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rat::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rat::one();
                }
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
        Ok(out)
    }

    fn parse_term(&mut self) -> Result<(Monomial, Rat)> {
        let mut coeff = Rat::one();
        let mut mono = Monomial::one(self.vars.len());
        let mut any = false;
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.parse_number()?;
                    any = true;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let (i, e) = self.parse_var_power()?;
                    let mut m = vec![0u32; self.vars.len()];
                    m[i] = e;
                    mono = mono.mul(&Monomial(m));
                    any = true;
                }
                Some(b'*') => {
                    self.pos += 1;
                    continue;
                }
                _ => break,
            }
        }
        if !any {
            return Err(self.err("expected a term"));
        }
        Ok((mono, coeff))
    }

    fn parse_number(&mut self) -> Result<Rat> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let num_str = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let numer: num_bigint::BigInt = num_str.parse().map_err(|_| self.err("invalid integer"))?;
        // a `/` directly after a number is a rational coefficient
        if self.bytes.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return Err(self.err("expected a denominator"));
            }
            let den_str = std::str::from_utf8(&self.bytes[dstart..self.pos]).unwrap();
            let denom: num_bigint::BigInt = den_str
                .parse()
                .map_err(|_| self.err("invalid denominator"))?;
            if denom == num_bigint::BigInt::from(0) {
                return Err(self.err("zero denominator"));
            }
            Ok(Rat::new(numer, denom))
        } else {
            Ok(Rat::from_integer(numer))
        }
    }

    fn parse_var_power(&mut self) -> Result<(usize, u32)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
            // stop greedily at the longest declared variable name
            let cand = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
            if self.vars.iter().any(|v| v == cand)
                && !self
                    .vars
                    .iter()
                    .any(|v| v.len() > cand.len() && v.starts_with(cand))
            {
                break;
            }
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exp = 1u32;
        if self.bytes.get(self.pos) == Some(&b'^') {
            self.pos += 1;
            let estart = self.pos;
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if estart == self.pos {
                return Err(self.err("expected an exponent"));
            }
            exp = std::str::from_utf8(&self.bytes[estart..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
        }
        Ok((idx, exp))
    }
}
