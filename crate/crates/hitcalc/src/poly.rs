//! Polynomials over the two-element field: finite sets of monomials with
//! symmetric-difference addition.
//!
//! The textual syntax is `u1^3*u2^5*u5^25` for terms, joined by `+`;
//! exponent 1 may be omitted and whitespace is ignored. The unit monomial is
//! written `1` and the zero polynomial `0`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// An element of `P_n`, stored as its set of monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    n: usize,
    terms: BTreeSet<Monomial>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Polynomial {
        Polynomial {
            n,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> Polynomial {
        let n = m.n();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Polynomial { n, terms }
    }

    /// Builds a polynomial mod 2: repeated monomials cancel in pairs.
    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = Monomial>) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for t in terms {
            p.toggle(t);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    /// Adds one monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.n(), self.n);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    /// Symmetric-difference addition (characteristic 2).
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for t in &other.terms {
            out.toggle(t.clone());
        }
        out
    }

    /// The common degree of all terms, or `None` for zero or mixed input.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|t| t.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|t| {
            Monomial::new(
                t.exponents()
                    .iter()
                    .zip(m.exponents())
                    .map(|(a, b)| a + b)
                    .collect(),
            )
        });
        Polynomial::from_terms(self.n, terms)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for t in &other.terms {
            out = out.add(&self.mul_monomial(t));
        }
        out
    }

    /// Frobenius square: each term's exponents double.
    pub fn square(&self) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Monomial::new(t.exponents().iter().map(|a| 2 * a).collect()));
        Polynomial::from_terms(self.n, terms)
    }

    /// Parses the textual syntax in `n` variables.
    pub fn parse(n: usize, input: &str) -> Result<Polynomial> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(Polynomial::zero(n));
        }
        let mut p = Polynomial::zero(n);
        for term in compact.split('+') {
            p.toggle(parse_term(n, term, 'u', false)?);
        }
        Ok(p)
    }
}

/// Parses one `*`-separated product of variable powers. `letter` selects the
/// variable symbol; `parens` expects `^(e)` divided-power exponents.
pub(crate) fn parse_term(n: usize, term: &str, letter: char, parens: bool) -> Result<Monomial> {
    if term == "1" {
        return Ok(Monomial::unit(n));
    }
    let mut exps = vec![0u64; n];
    for factor in term.split('*') {
        let rest = factor
            .strip_prefix(letter)
            .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
        let (idx_str, exp_str) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        let j: usize = idx_str
            .parse()
            .map_err(|_| Error::Parse(format!("bad variable index in {factor:?}")))?;
        if j == 0 || j > n {
            return Err(Error::IndexOutOfRange(format!(
                "variable {letter}{j} outside 1..={n}"
            )));
        }
        let e: u64 = match exp_str {
            None => 1,
            Some(e) => {
                let e = if parens {
                    e.strip_prefix('(')
                        .and_then(|e| e.strip_suffix(')'))
                        .ok_or_else(|| Error::Parse(format!("expected ^(e) in {factor:?}")))?
                } else {
                    e
                };
                e.parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?
            }
        };
        exps[j - 1] += e;
    }
    Ok(Monomial::new(exps))
}

pub(crate) fn format_term(m: &Monomial, letter: char, parens: bool) -> String {
    let mut parts = Vec::new();
    for (j, &a) in m.exponents().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let var = format!("{letter}{}", j + 1);
        if a == 1 && !parens {
            parts.push(var);
        } else if parens {
            parts.push(format!("{var}^({a})"));
        } else {
            parts.push(format!("{var}^{a}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let s: Vec<String> = self
            .terms
            .iter()
            .map(|t| format_term(t, 'u', false))
            .collect();
        write!(f, "{}", s.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let p = Polynomial::parse(5, "u1^3 * u2^5 * u5^25 + u3").unwrap();
        assert_eq!(p.len(), 2);
        let q = Polynomial::parse(5, &p.to_string()).unwrap();
        assert_eq!(p, q);
        assert!(Polynomial::parse(5, "0").unwrap().is_zero());
        assert_eq!(Polynomial::parse(3, "1").unwrap().len(), 1);
        assert!(Polynomial::parse(2, "u3").is_err());
        assert!(Polynomial::parse(2, "x1").is_err());
    }

    #[test]
    fn addition_cancels() {
        let p = Polynomial::parse(2, "u1*u2 + u1^2").unwrap();
        let q = Polynomial::parse(2, "u1^2 + u2^2").unwrap();
        let s = p.add(&q);
        assert_eq!(s, Polynomial::parse(2, "u1*u2 + u2^2").unwrap());
        assert!(p.add(&p).is_zero());
    }

    #[test]
    fn homogeneous_degree() {
        assert_eq!(
            Polynomial::parse(2, "u1^3 + u1*u2^2").unwrap().homogeneous_degree(),
            Some(3)
        );
        assert_eq!(
            Polynomial::parse(2, "u1^3 + u2").unwrap().homogeneous_degree(),
            None
        );
        assert_eq!(Polynomial::zero(2).homogeneous_degree(), None);
    }

    #[test]
    fn multiplication() {
        let p = Polynomial::parse(2, "u1 + u2").unwrap();
        let sq = p.mul(&p);
        assert_eq!(sq, Polynomial::parse(2, "u1^2 + u2^2").unwrap());
        assert_eq!(sq, p.square());
    }
}
