//! Divided power algebra `Gamma(a_1..a_n)` dual to `P_n`: right Steenrod
//! action, A-annihilated testing, and the homology/cohomology pairing.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{self, Polynomial};
use crate::steenrod::binom_parity;

/// A mod-2 sum of divided-power monomials `a_1^(d_1)..a_n^(d_n)`, stored as
/// exponent tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolynomial {
    n: usize,
    terms: BTreeSet<Monomial>,
}

impl DualPolynomial {
    pub fn zero(n: usize) -> DualPolynomial {
        DualPolynomial {
            n,
            terms: BTreeSet::new(),
        }
    }

    pub fn from_monomial(m: Monomial) -> DualPolynomial {
        let n = m.n();
        DualPolynomial {
            n,
            terms: BTreeSet::from([m]),
        }
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = Monomial>) -> DualPolynomial {
        let mut p = DualPolynomial::zero(n);
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

    /// Adds one d-monomial mod 2.
    pub fn toggle(&mut self, m: Monomial) {
        assert_eq!(m.n(), self.n);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add(&self, other: &DualPolynomial) -> DualPolynomial {
        assert_eq!(self.n, other.n);
        DualPolynomial {
            n: self.n,
            terms: self
                .terms
                .symmetric_difference(&other.terms)
                .cloned()
                .collect(),
        }
    }

    /// Common degree of all terms, if homogeneous (zero included).
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.terms.iter().map(|t| t.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Parses `a1^(3)*a2^(5) + a3^(8)` style input; `0` is zero, `1` the unit.
    pub fn parse(n: usize, input: &str) -> Result<DualPolynomial> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "0" {
            return Ok(DualPolynomial::zero(n));
        }
        let mut p = DualPolynomial::zero(n);
        for term in compact.split('+') {
            p.toggle(poly::parse_term(n, term, 'a', true)?);
        }
        Ok(p)
    }
}

impl fmt::Display for DualPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|m| poly::format_term(m, 'a', true))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn right_sq_term(k: u64, exps: &[u64], f: &mut impl FnMut(Vec<u64>)) {
    // (a^(t))Sq^k = C(t-k, k) a^(t-k), extended to products by the Cartan
    // formula: sum over compositions k = k_1 + .. + k_n
    fn recur(j: usize, k: u64, exps: &[u64], out: &mut Vec<u64>, f: &mut impl FnMut(Vec<u64>)) {
        if j == exps.len() {
            if k == 0 {
                f(out.clone());
            }
            return;
        }
        let rest: u64 = exps[j + 1..].iter().sum();
        let lo = k.saturating_sub(rest);
        let hi = k.min(exps[j]);
        for kj in lo..=hi {
            let t = exps[j];
            if binom_parity(t - kj, kj) {
                out.push(t - kj);
                recur(j + 1, k - kj, exps, out, f);
                out.pop();
            }
        }
    }
    recur(0, k, exps, &mut Vec::with_capacity(exps.len()), f);
}

/// The right action of `Sq^k` on a divided-power polynomial; degree drops
/// by `k`.
pub fn right_sq(k: u64, f: &DualPolynomial) -> DualPolynomial {
    if k == 0 {
        return f.clone();
    }
    let mut out = DualPolynomial::zero(f.n());
    for m in f.terms() {
        if m.degree() < k {
            continue;
        }
        right_sq_term(k, m.exponents(), &mut |exps| out.toggle(Monomial::new(exps)));
    }
    out
}

/// True iff `(f)Sq^k = 0` for every `1 <= k <= deg(f)`. All k are checked,
/// not only powers of two.
pub fn is_annihilated(f: &DualPolynomial) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let d = f.homogeneous_degree().ok_or(Error::NonHomogeneous)?;
    Ok((1..=d).all(|k| right_sq(k, f).is_zero()))
}

/// The canonical pairing `Gamma x P_n -> F_2`: d-monomials pair to 1 exactly
/// with the monomial of matching exponents.
pub fn pairing(f: &DualPolynomial, g: &Polynomial) -> Result<u8> {
    if f.n() != g.n() {
        return Err(Error::DimensionMismatch(f.n(), g.n()));
    }
    let mut acc = 0u8;
    for m in f.terms() {
        if g.contains(m) {
            acc ^= 1;
        }
    }
    Ok(acc)
}
