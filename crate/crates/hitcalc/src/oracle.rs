//! Small-scale reference implementations used only by tests: textbook dense
//! elimination over generators `Sq^i` for ALL positive `i`, brute-force
//! invariant dimensions, and Kameko kernels.
//!
//! Deliberately shares nothing with the streaming engine or the hit-problem
//! pipeline beyond the monomial and polynomial types. Binomial parities come
//! from a Pascal-triangle table rather than Lucas, and the Steenrod action is
//! re-derived from the Cartan convolution here.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::monomial::{enumerate_monomials, Monomial, MonomialFilter};
use crate::poly::Polynomial;

const GUARD: u64 = 20000;

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc.min(u64::MAX as u128) as u64
}

/// Parity of `C(a, b)` from the Pascal recurrence.
struct Pascal {
    rows: Vec<Vec<bool>>,
}

impl Pascal {
    fn new(max: usize) -> Pascal {
        let mut rows: Vec<Vec<bool>> = Vec::with_capacity(max + 1);
        for a in 0..=max {
            let mut row = vec![false; a + 1];
            row[0] = true;
            row[a] = true;
            for b in 1..a {
                row[b] = rows[a - 1][b - 1] ^ rows[a - 1][b];
            }
            rows.push(row);
        }
        Pascal { rows }
    }

    fn odd(&self, a: u64, b: u64) -> bool {
        if b > a {
            return false;
        }
        self.rows[a as usize][b as usize]
    }
}

/// All terms of `Sq^i` on one monomial, by direct composition enumeration.
fn sq_terms(pascal: &Pascal, i: u64, m: &Monomial) -> Vec<Monomial> {
    let n = m.n();
    let mut out = Vec::new();
    let mut ks = vec![0u64; n];
    fn rec(
        pascal: &Pascal,
        j: usize,
        remaining: u64,
        m: &Monomial,
        ks: &mut Vec<u64>,
        out: &mut Vec<Monomial>,
    ) {
        if j == m.n() {
            if remaining == 0 {
                let exps = m
                    .exponents()
                    .iter()
                    .zip(ks.iter())
                    .map(|(a, k)| a + k)
                    .collect();
                out.push(Monomial::new(exps));
            }
            return;
        }
        for kj in 0..=remaining {
            if pascal.odd(m.exponent(j), kj) {
                ks[j] = kj;
                rec(pascal, j + 1, remaining - kj, m, ks, out);
            }
        }
        ks[j] = 0;
    }
    rec(pascal, 0, i, m, &mut ks, &mut out);
    out
}

/// Dense row-major bit matrix kept in reduced row-echelon form, with pivots
/// chosen scanning columns left to right.
struct DenseRref {
    words: usize,
    rows: Vec<Vec<u64>>,
    pivot_cols: Vec<usize>,
}

impl DenseRref {
    fn new(ncols: usize) -> DenseRref {
        DenseRref {
            words: ncols.div_ceil(64),
            rows: Vec::new(),
            pivot_cols: Vec::new(),
        }
    }

    fn reduce_in_place(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivot_cols) {
            if v[p / 64] >> (p % 64) & 1 == 1 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a ^= b;
                }
            }
        }
    }

    fn add_row(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce_in_place(&mut v);
        let Some(p) = v
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
        else {
            return false;
        };
        for (row, _) in self
            .rows
            .iter_mut()
            .zip(&self.pivot_cols)
            .filter(|(_, &q)| q != p)
        {
            if row[p / 64] >> (p % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&v) {
                    *a ^= b;
                }
            }
        }
        self.rows.push(v);
        self.pivot_cols.push(p);
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Quotient computed by the oracle: columns in descending monomial order,
/// hit space from ALL positive Steenrod squares, textbook elimination.
pub struct OracleCohit {
    pub n: usize,
    pub d: u64,
    pub admissibles: Vec<Monomial>,
    cols: Vec<Monomial>,
    col_index: HashMap<Monomial, usize>,
    rref: DenseRref,
    adm_slot: HashMap<Monomial, usize>,
}

impl OracleCohit {
    pub fn dim(&self) -> usize {
        self.admissibles.len()
    }

    fn vector_of(&self, terms: &[&Monomial]) -> Result<Vec<u64>> {
        let mut v = vec![0u64; self.rref.words];
        for t in terms {
            let &i = self
                .col_index
                .get(*t)
                .ok_or_else(|| Error::DegreeMismatch(t.degree(), self.d))?;
            v[i / 64] ^= 1 << (i % 64);
        }
        Ok(v)
    }

    /// Coordinates of the class of `f` over the admissible basis.
    pub fn coords(&self, f: &Polynomial) -> Result<Vec<bool>> {
        let terms: Vec<&Monomial> = f.terms().collect();
        let mut v = self.vector_of(&terms)?;
        self.rref.reduce_in_place(&mut v);
        let mut out = vec![false; self.admissibles.len()];
        for i in 0..self.ncols() {
            if v[i / 64] >> (i % 64) & 1 == 1 {
                let slot = self.adm_slot[&self.cols[i]];
                out[slot] = true;
            }
        }
        Ok(out)
    }

    pub fn is_hit(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.coords(f)?.iter().all(|&b| !b))
    }

    fn ncols(&self) -> usize {
        self.cols.len()
    }
}

/// The oracle quotient at `(n, d)`, guarded by column count.
pub fn oracle_cohit(n: usize, d: u64) -> Result<OracleCohit> {
    let ncols = binomial(d + n as u64 - 1, n as u64 - 1);
    if ncols > GUARD {
        return Err(Error::TooLarge(format!(
            "oracle guard: {ncols} columns exceeds {GUARD}"
        )));
    }
    let cols = enumerate_monomials(n, d, &MonomialFilter::All);
    let col_index: HashMap<Monomial, usize> = cols
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let pascal = Pascal::new(d as usize + 1);
    let mut rref = DenseRref::new(cols.len());
    for i in 1..=d {
        for m in enumerate_monomials(n, d - i, &MonomialFilter::All) {
            let terms = sq_terms(&pascal, i, &m);
            if terms.is_empty() {
                continue;
            }
            let mut v = vec![0u64; rref.words];
            for t in &terms {
                let idx = col_index[t];
                v[idx / 64] ^= 1 << (idx % 64);
            }
            rref.add_row(v);
        }
    }
    let pivot_set: std::collections::HashSet<usize> = rref.pivot_cols.iter().copied().collect();
    let admissibles: Vec<Monomial> = cols
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivot_set.contains(i))
        .map(|(_, m)| m.clone())
        .collect();
    let adm_slot = admissibles
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    Ok(OracleCohit {
        n,
        d,
        admissibles,
        cols,
        col_index,
        rref,
        adm_slot,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleGroup {
    Symmetric,
    GeneralLinear,
}

/// Expansion of one generator substitution on a monomial, using only local
/// arithmetic: adjacent swaps permute exponents; the transvection expands
/// `u_n -> u_n + u_{n-1}` through the Pascal table.
fn apply_generator(pascal: &Pascal, gen: usize, n: usize, m: &Monomial) -> Polynomial {
    if gen < n - 1 {
        let mut exps = m.exponents().to_vec();
        exps.swap(gen, gen + 1);
        return Polynomial::from_monomial(Monomial::new(exps));
    }
    let a = m.exponent(n - 1);
    let mut out = Polynomial::zero(n);
    for b in 0..=a {
        if pascal.odd(a, b) {
            let mut exps = m.exponents().to_vec();
            exps[n - 1] = b;
            exps[n - 2] += a - b;
            out.toggle(Monomial::new(exps));
        }
    }
    out
}

/// Invariant dimension of the oracle quotient under the group generators.
pub fn oracle_invariants(n: usize, d: u64, group: OracleGroup) -> Result<usize> {
    let q = oracle_cohit(n, d)?;
    let dim = q.dim();
    if n == 1 {
        return Ok(dim);
    }
    let gens = match group {
        OracleGroup::Symmetric => n - 1,
        OracleGroup::GeneralLinear => n,
    };
    let pascal = Pascal::new(2 * d as usize + 2);
    // v is invariant iff v lies in the nullspace of every (M_g + I); stack
    // those operators side by side and take the nullity of the row matrix
    let words = (dim * gens).div_ceil(64);
    let mut rows_t = vec![vec![0u64; words]; dim];
    for g in 0..gens {
        for (j, adm) in q.admissibles.iter().enumerate() {
            let image = apply_generator(&pascal, g, n, adm);
            let coords = q.coords(&image)?;
            for (i, &c) in coords.iter().enumerate() {
                if (i == j) != c {
                    let col = g * dim + i;
                    rows_t[j][col / 64] ^= 1 << (col % 64);
                }
            }
        }
    }
    let mut rank_rows = DenseRref::new(dim * gens);
    for r in rows_t {
        rank_rows.add_row(r);
    }
    Ok(dim - rank_rows.rank())
}

/// Kernel dimension of the Kameko down map on oracle quotients.
pub fn oracle_kameko_kernel(n: usize, source: u64) -> Result<usize> {
    assert!(source >= n as u64 && (source - n as u64) % 2 == 0);
    let target = (source - n as u64) / 2;
    let src = oracle_cohit(n, source)?;
    let tgt = oracle_cohit(n, target)?;
    let mut map_rows = DenseRref::new(tgt.dim().max(1));
    let mut rank = 0;
    for adm in &src.admissibles {
        if adm.exponents().iter().all(|&a| a % 2 == 1) {
            let down = Monomial::new(adm.exponents().iter().map(|a| (a - 1) / 2).collect());
            let coords = tgt.coords(&Polynomial::from_monomial(down))?;
            let mut v = vec![0u64; map_rows.words.max(1)];
            for (i, &c) in coords.iter().enumerate() {
                if c {
                    v[i / 64] ^= 1 << (i % 64);
                }
            }
            if map_rows.add_row(v) {
                rank += 1;
            }
        }
    }
    Ok(src.dim() - rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qp1_supported_at_powers_minus_one() {
        for d in 1..=16u64 {
            let q = oracle_cohit(1, d).unwrap();
            let expected = if (d + 1).is_power_of_two() { 1 } else { 0 };
            assert_eq!(q.dim(), expected, "d={d}");
        }
        let q = oracle_cohit(1, 7).unwrap();
        assert_eq!(q.admissibles, vec![Monomial::new(vec![7])]);
    }

    #[test]
    fn qp3_15_is_13() {
        assert_eq!(oracle_cohit(3, 15).unwrap().dim(), 13);
    }

    #[test]
    fn trivial_group_invariants() {
        for d in 1..=6 {
            let q = oracle_cohit(1, d).unwrap();
            assert_eq!(
                oracle_invariants(1, d, OracleGroup::GeneralLinear).unwrap(),
                q.dim()
            );
        }
    }

    #[test]
    fn pascal_matches_direct_binomials() {
        let p = Pascal::new(40);
        for a in 0..=40u64 {
            for b in 0..=40u64 {
                assert_eq!(p.odd(a, b), binomial(a, b) % 2 == 1, "{a} {b}");
            }
        }
    }
}
