//! Hit spaces, cohit (admissible monomial) bases, the zero/positive split,
//! and weight-vector subquotients.
//!
//! Columns are the monomials of one `(n, d, part)` context in DESCENDING
//! graded order. That layout groups columns into contiguous weight blocks,
//! highest weight first, and a relation's leading term is its largest
//! monomial, so echelon pivots are exactly the inadmissible monomials.
//! Because a reduced row never has support above its pivot's block, a single
//! full-space echelon simultaneously realizes every weight subquotient
//! `(QP_n)_d(omega)` as a column-range view: the spec's block ordering
//! `[exceeding omega][omega][below omega]` is this order, and the below-omega
//! quotient just drops trailing columns.

use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::EchelonBasis;
use crate::monomial::{minimal_spike, Monomial, Packing, WeightVector};
use crate::poly::Polynomial;
use crate::steenrod::for_each_sq_term;

/// Which summand of `(QP_n)_d = (QP_n)_d^0 + (QP_n)_d^{>0}` is computed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Part {
    Full,
    /// Monomials with at least one zero exponent.
    Zero,
    /// Monomials with all exponents positive.
    Positive,
}

impl Part {
    pub fn matches(&self, exps: &[u64]) -> bool {
        match self {
            Part::Full => true,
            Part::Zero => exps.iter().any(|&a| a == 0),
            Part::Positive => exps.iter().all(|&a| a > 0),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Part::Full => "full",
            Part::Zero => "zero",
            Part::Positive => "positive",
        }
    }
}

/// The ordered column layout of one `(n, d, part)` context.
pub(crate) struct Columns {
    pub n: usize,
    pub d: u64,
    pub part: Part,
    pub pk: Packing,
    /// Packed exponent codes, descending in the graded order.
    pub codes: Vec<u64>,
    /// Parallel weight keys, non-increasing.
    pub wkeys: Vec<u64>,
    pub index: HashMap<u64, u32>,
    /// Maximal runs of equal weight, highest weight first.
    pub blocks: Vec<(u64, Range<u32>)>,
    /// Weight key of the minimal spike, when `mu(d) <= n`.
    pub spike_wkey: Option<u64>,
    /// Columns of weight below this are omitted (quotiented away a priori).
    pub min_wkey: Option<u64>,
}

impl Columns {
    pub fn build(n: usize, d: u64, part: Part) -> Result<Columns> {
        Columns::build_restricted(n, d, part, None)
    }

    /// Like `build`, but keeps only columns of weight at least `min_wkey`.
    /// The resulting echelon then computes every weight subquotient at or
    /// above that floor, since relations at a block only involve columns at
    /// or above it.
    pub fn build_restricted(
        n: usize,
        d: u64,
        part: Part,
        min_wkey: Option<u64>,
    ) -> Result<Columns> {
        if n == 0 {
            return Err(Error::TooLarge("n = 0 is rejected".into()));
        }
        let pk = Packing::new(n, d.max(1))?;
        let mut keyed: Vec<(u64, u64)> = Vec::new();
        let mut exps = vec![0u64; n];
        collect_codes(&pk, 0, d, &mut exps, &part, &mut keyed);
        if let Some(floor) = min_wkey {
            keyed.retain(|&(w, _)| w >= floor);
        }
        keyed.sort_unstable_by(|a, b| b.cmp(a));
        let codes: Vec<u64> = keyed.iter().map(|&(_, c)| c).collect();
        let wkeys: Vec<u64> = keyed.iter().map(|&(w, _)| w).collect();
        let index = codes
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i as u32))
            .collect();
        let mut blocks = Vec::new();
        let mut start = 0usize;
        while start < wkeys.len() {
            let w = wkeys[start];
            let end = wkeys[start..].partition_point(|&x| x >= w) + start;
            blocks.push((w, start as u32..end as u32));
            start = end;
        }
        let spike_wkey = minimal_spike(n, d).map(|s| pk.weight_key_of(&s));
        Ok(Columns {
            n,
            d,
            part,
            pk,
            codes,
            wkeys,
            index,
            blocks,
            spike_wkey,
            min_wkey,
        })
    }

    pub fn ncols(&self) -> usize {
        self.codes.len()
    }

    pub fn monomial_at(&self, col: u32) -> Monomial {
        self.pk.decode(self.codes[col as usize])
    }

    pub fn column_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(&self.pk.encode(m)).copied()
    }

    /// Column range of one weight block, empty when the weight is unachieved.
    pub fn block_of(&self, wkey: u64) -> Range<u32> {
        for (w, r) in &self.blocks {
            if *w == wkey {
                return r.clone();
            }
        }
        0..0
    }

    pub fn order_hash(&self) -> [u8; 32] {
        crate::gf2::column_order_hash(&self.codes)
    }
}

fn collect_codes(
    pk: &Packing,
    j: usize,
    remaining: u64,
    exps: &mut Vec<u64>,
    part: &Part,
    out: &mut Vec<(u64, u64)>,
) {
    if j + 1 == exps.len() {
        exps[j] = remaining;
        if part.matches(exps) {
            let m = Monomial::new(exps.clone());
            out.push((pk.weight_key_of(&m), pk.encode(&m)));
        }
        return;
    }
    for a in 0..=remaining {
        exps[j] = a;
        collect_codes(pk, j + 1, remaining - a, exps, part, out);
    }
}

/// A computed cohit space with its hit echelon.
pub struct CohitBasis {
    pub(crate) cols: Arc<Columns>,
    pub(crate) ech: EchelonBasis,
    admissible_cols: Vec<u32>,
}

impl CohitBasis {
    pub fn n(&self) -> usize {
        self.cols.n
    }

    pub fn d(&self) -> u64 {
        self.cols.d
    }

    pub fn part(&self) -> Part {
        self.cols.part
    }

    /// The weight floor of a restricted run, when one was used.
    pub fn min_omega(&self) -> Option<WeightVector> {
        self.cols.min_wkey.map(|w| self.cols.pk.weight_from_key(w))
    }

    pub fn dim(&self) -> usize {
        self.admissible_cols.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.ncols()
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Admissible monomials, largest first.
    pub fn admissibles(&self) -> Vec<Monomial> {
        self.admissible_cols
            .iter()
            .map(|&c| self.cols.monomial_at(c))
            .collect()
    }

    pub fn is_admissible(&self, m: &Monomial) -> bool {
        match self.cols.column_of(m) {
            Some(c) => !self.ech.is_pivot(c),
            None => false,
        }
    }

    fn support_of(&self, f: &Polynomial) -> Result<Vec<u32>> {
        if f.n() != self.cols.n {
            return Err(Error::DimensionMismatch(f.n(), self.cols.n));
        }
        // With a floor at or below the minimal spike weight, every dropped
        // column is hit a priori, so skipping those terms preserves classes.
        let floor = match self.cols.min_wkey {
            Some(w) => {
                match self.cols.spike_wkey {
                    Some(s) if w <= s => {}
                    _ => {
                        return Err(Error::TooLarge(
                            "reduction unavailable: weight floor above the minimal spike".into(),
                        ))
                    }
                }
                Some(w)
            }
            None => None,
        };
        let mut support = Vec::with_capacity(f.len());
        for t in f.terms() {
            if let Some(w) = floor {
                if t.n() == self.cols.n
                    && t.degree() == self.cols.d
                    && self.cols.pk.weight_key_of(t) < w
                {
                    continue;
                }
            }
            let c = self
                .cols
                .column_of(t)
                .ok_or_else(|| Error::DegreeMismatch(t.degree(), self.cols.d))?;
            support.push(c);
        }
        support.sort_unstable();
        Ok(support)
    }

    /// Membership of `f` in the hit subspace.
    pub fn is_hit(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        if f.homogeneous_degree() != Some(self.cols.d) {
            return Err(Error::NonHomogeneous);
        }
        Ok(self.ech.in_span(&self.support_of(f)?))
    }

    /// Coordinates of the class of `f` over the admissible basis.
    pub fn reduce_to_admissible(&self, f: &Polynomial) -> Result<Vec<bool>> {
        if !f.is_zero() && f.homogeneous_degree() != Some(self.cols.d) {
            return Err(Error::NonHomogeneous);
        }
        let residual = self.ech.reduce_support(&self.support_of(f)?);
        let mut out = vec![false; self.admissible_cols.len()];
        for c in residual {
            let slot = self.admissible_cols.binary_search(&c).expect("non-pivot");
            out[slot] = true;
        }
        Ok(out)
    }

    /// Weight vectors achieved by the columns, highest first, with the
    /// subquotient dimension of each.
    pub fn weight_dims(&self) -> Vec<(WeightVector, usize)> {
        self.cols
            .blocks
            .iter()
            .map(|(w, r)| {
                let dim = self.range_dim(r.clone());
                (self.cols.pk.weight_from_key(*w), dim)
            })
            .collect()
    }

    fn range_dim(&self, r: Range<u32>) -> usize {
        let pivots_in = self
            .ech
            .pivots()
            .iter()
            .filter(|&&p| r.contains(&p))
            .count();
        r.len() - pivots_in
    }

    /// The weight subquotient `(QP_n)_d(omega)` as a view over this basis.
    pub fn subquotient(&self, omega: &WeightVector) -> Result<WeightView<'_>> {
        if omega.deg() != self.cols.d {
            return Err(Error::DegreeWeightMismatch(omega.deg(), self.cols.d));
        }
        let wkey = self.cols.pk.weight_key(omega);
        Ok(WeightView {
            parent: self,
            omega: omega.clone(),
            wkey,
            range: self.cols.block_of(wkey),
        })
    }
}

/// A weight subquotient realized as a column-range view over a full basis.
pub struct WeightView<'a> {
    pub(crate) parent: &'a CohitBasis,
    pub(crate) omega: WeightVector,
    wkey: u64,
    range: Range<u32>,
}

impl WeightView<'_> {
    pub fn omega(&self) -> &WeightVector {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.parent.range_dim(self.range.clone())
    }

    /// Admissible monomials of exactly this weight, largest first.
    pub fn admissibles(&self) -> Vec<Monomial> {
        self.admissible_cols()
            .map(|c| self.parent.cols.monomial_at(c))
            .collect()
    }

    pub(crate) fn admissible_cols(&self) -> impl Iterator<Item = u32> + '_ {
        self.range
            .clone()
            .filter(|&c| !self.parent.ech.is_pivot(c))
    }

    /// Coordinates of `[f]_omega` over the subquotient basis. Terms of lower
    /// weight are quotiented away; terms of higher weight are a mode error.
    pub fn coords(&self, f: &Polynomial) -> Result<Vec<bool>> {
        if !f.is_zero() && f.homogeneous_degree() != Some(self.parent.cols.d) {
            return Err(Error::NonHomogeneous);
        }
        let mut support = Vec::with_capacity(f.len());
        for t in f.terms() {
            if t.n() != self.parent.cols.n || t.degree() != self.parent.cols.d {
                return Err(Error::DegreeMismatch(t.degree(), self.parent.cols.d));
            }
            let w = self.parent.cols.pk.weight_key_of(t);
            if w > self.wkey {
                return Err(Error::ModeViolation);
            }
            if w == self.wkey {
                let c = self
                    .parent
                    .cols
                    .column_of(t)
                    .ok_or_else(|| Error::DegreeMismatch(t.degree(), self.parent.cols.d))?;
                support.push(c);
            }
        }
        support.sort_unstable();
        let residual = self.parent.ech.reduce_support(&support);
        let adm: Vec<u32> = self.admissible_cols().collect();
        let mut out = vec![false; adm.len()];
        for c in residual {
            // support below the block is quotiented by P(< omega)
            if self.range.contains(&c) {
                let slot = adm.binary_search(&c).expect("non-pivot in block");
                out[slot] = true;
            }
        }
        Ok(out)
    }

    pub fn is_zero_class(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.coords(f)?.iter().all(|&b| !b))
    }
}

/// Yields the hit generators `Sq^{2^s}(m)` for `(n, d, part)` as column
/// support lists, one at a time.
fn stream_generators(cols: &Columns, mut sink: impl FnMut(Vec<u32>)) -> Result<()> {
    let d = cols.d;
    if d == 0 {
        return Ok(());
    }
    let mut ss: Vec<u32> = (0..)
        .take_while(|&s| (1u64 << s) <= d)
        .collect();
    ss.reverse();
    for s in ss {
        let k = 1u64 << s;
        let src = Columns::build(cols.n, d - k, cols.part)?;
        for &code in &src.codes {
            let m = src.pk.decode(code);
            let mut support: Vec<u32> = Vec::new();
            for_each_sq_term(k, m.exponents(), &mut |e| {
                let t = Monomial::new(e.to_vec());
                if let Some(floor) = cols.min_wkey {
                    // below-floor terms are quotiented away
                    if cols.pk.weight_key_of(&t) < floor {
                        return;
                    }
                }
                let c = cols
                    .column_of(&t)
                    .expect("Sq image stays in the part context");
                support.push(c);
            });
            if support.is_empty() {
                continue;
            }
            support.sort_unstable();
            sink(support);
        }
    }
    Ok(())
}

/// Computes the cohit basis of `(QP_n)_d` (or a part summand) by streaming
/// the `Sq^{2^s}` generators through the echelon engine, after seeding unit
/// rows for every column below the minimal spike's weight (such monomials
/// are hit a priori).
pub fn cohit_basis_part(n: usize, d: u64, part: Part) -> Result<CohitBasis> {
    from_columns(Columns::build(n, d, part)?)
}

/// Computes the echelon over the columns of weight at least `min_omega`
/// only. Every weight subquotient at or above the floor is then exact, at a
/// fraction of the full-space cost; `is_hit` and full-space coordinates are
/// not available.
pub fn cohit_basis_restricted(n: usize, d: u64, min_omega: &WeightVector) -> Result<CohitBasis> {
    if min_omega.deg() != d {
        return Err(Error::DegreeWeightMismatch(min_omega.deg(), d));
    }
    let pk = Packing::new(n, d.max(1))?;
    let floor = pk.weight_key(min_omega);
    from_columns(Columns::build_restricted(n, d, Part::Full, Some(floor))?)
}

fn from_columns(cols: Columns) -> Result<CohitBasis> {
    let cols = Arc::new(cols);
    let mut ech = EchelonBasis::new(cols.ncols());
    if let Some(spike_wkey) = cols.spike_wkey {
        let start = cols.wkeys.partition_point(|&w| w >= spike_wkey);
        for c in start..cols.ncols() {
            ech.insert_support(vec![c as u32]);
        }
    }
    let progress = std::env::var("HITCALC_PROGRESS").is_ok();
    // Insertion order is chosen to keep the stored residuals short: sorting
    // the generators descending by leading column saturates the tail end of
    // the column range first, so by the time a long-span row commits, most
    // pivots to its right already exist and its reduced form is close to
    // final (and therefore sparse). Inserting long-span rows early instead
    // canonicalizes them against a huge non-pivot set, which densifies the
    // basis catastrophically at large column counts. The order is a fixed
    // function of the column layout, so results stay deterministic.
    let mut cands: Vec<Vec<u32>> = Vec::new();
    stream_generators(&cols, |support| cands.push(support))?;
    cands.sort_unstable();
    cands.dedup();
    if progress {
        eprintln!("progress: candidates={}", cands.len());
    }
    let mut batches = 0usize;
    let mut start = cands.len();
    while start > 0 {
        let lo = start.saturating_sub(1024);
        ech.insert_batch(cands.drain(lo..).collect());
        start = lo;
        batches += 1;
        if batches % 256 == 0 {
            // near rank saturation the reduced rows are short, so rewriting
            // the basis in fully reduced form caps storage and removes the
            // stale-pivot folding cost from later reductions
            if cols.ncols() > (1 << 17) && cols.ncols() - ech.rank() <= (1 << 14) {
                ech.compact();
            }
            if progress {
                let (re, _) = ech.storage_stats();
                let rss = std::fs::read_to_string("/proc/self/statm")
                    .ok()
                    .and_then(|s| s.split_whitespace().nth(1).map(|v| v.to_string()))
                    .unwrap_or_default();
                eprintln!(
                    "progress: batches={batches} rank={} row_entries={re} rss_pages={rss}",
                    ech.rank()
                );
            }
        }
    }
    Ok(CohitBasis::from_parts(cols, ech))
}

impl CohitBasis {
    pub(crate) fn from_parts(cols: Arc<Columns>, ech: EchelonBasis) -> CohitBasis {
        let admissible_cols = (0..cols.ncols() as u32)
            .filter(|&c| !ech.is_pivot(c))
            .collect();
        CohitBasis {
            cols,
            ech,
            admissible_cols,
        }
    }

    pub(crate) fn echelon(&self) -> &EchelonBasis {
        &self.ech
    }

    /// Echelon storage accounting, see `EchelonBasis::storage_stats`.
    pub fn storage_stats(&self) -> (usize, usize) {
        self.ech.storage_stats()
    }

    pub(crate) fn columns(&self) -> &Arc<Columns> {
        &self.cols
    }
}

pub fn cohit_basis(n: usize, d: u64) -> Result<CohitBasis> {
    cohit_basis_part(n, d, Part::Full)
}

/// Both part summands; their dimensions add to the full dimension.
pub fn split_zero_positive(n: usize, d: u64) -> Result<(CohitBasis, CohitBasis)> {
    Ok((
        cohit_basis_part(n, d, Part::Zero)?,
        cohit_basis_part(n, d, Part::Positive)?,
    ))
}

/// Per-weight subquotient dimensions and the direct-sum consistency flag.
pub struct DirectSumReport {
    pub total_dim: usize,
    pub per_omega: Vec<(WeightVector, usize)>,
    pub consistent: bool,
}

pub fn check_direct_sum(n: usize, d: u64) -> Result<DirectSumReport> {
    let basis = cohit_basis(n, d)?;
    let per_omega = basis.weight_dims();
    let sum: usize = per_omega.iter().map(|&(_, k)| k).sum();
    Ok(DirectSumReport {
        total_dim: basis.dim(),
        per_omega,
        consistent: sum == basis.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{alpha, enumerate_monomials, mu, MonomialFilter};
    use crate::oracle::oracle_cohit;

    #[test]
    fn one_variable_cases() {
        // (n=1, d=2): Sq^1(u1) = u1^2 is the only relation
        let b = cohit_basis(1, 2).unwrap();
        assert_eq!(b.dim(), 0);
        // (n=1, d=3): hit space is zero
        let b = cohit_basis(1, 3).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.admissibles(), vec![Monomial::new(vec![3])]);
    }

    #[test]
    fn degree_zero_unit_class() {
        let b = cohit_basis(3, 0).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.admissibles(), vec![Monomial::unit(3)]);
        assert!(cohit_basis(0, 5).is_err());
    }

    #[test]
    fn qp5_14_is_320() {
        assert_eq!(cohit_basis(5, 14).unwrap().dim(), 320);
    }

    #[test]
    fn qp3_15_is_13() {
        assert_eq!(cohit_basis(3, 15).unwrap().dim(), 13);
    }

    #[test]
    fn matches_oracle_small() {
        for n in 1..=3usize {
            for d in 1..=14u64 {
                let main = cohit_basis(n, d).unwrap();
                let orc = oracle_cohit(n, d).unwrap();
                assert_eq!(main.dim(), orc.dim(), "n={n} d={d}");
                assert_eq!(main.admissibles(), orc.admissibles, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn wood_vanishing_small() {
        for n in 1..=3usize {
            for d in 1..=30u64 {
                if mu(d) > n as u32 {
                    assert_eq!(cohit_basis(n, d).unwrap().dim(), 0, "n={n} d={d}");
                }
            }
        }
    }

    #[test]
    fn spikes_admissible_small() {
        for n in 1..=3usize {
            for d in 1..=24u64 {
                let b = cohit_basis(n, d).unwrap();
                for m in enumerate_monomials(n, d, &MonomialFilter::All) {
                    if m.is_spike() {
                        assert!(b.is_admissible(&m), "spike {m:?}");
                        assert!(!b.is_hit(&Polynomial::from_monomial(m)).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn split_dims_add_up() {
        for (n, d) in [(2usize, 5u64), (3, 8), (3, 15), (4, 10)] {
            let full = cohit_basis(n, d).unwrap();
            let (zero, pos) = split_zero_positive(n, d).unwrap();
            assert_eq!(zero.dim() + pos.dim(), full.dim(), "n={n} d={d}");
        }
        let (zero, _) = split_zero_positive(1, 0).unwrap();
        assert_eq!(zero.dim(), 1);
        let (zero, _) = split_zero_positive(1, 3).unwrap();
        assert_eq!(zero.dim(), 0);
    }

    #[test]
    fn weight_direct_sum_small() {
        for (n, d) in [(2usize, 3u64), (1, 1), (3, 7), (3, 15)] {
            let rep = check_direct_sum(n, d).unwrap();
            assert!(rep.consistent, "n={n} d={d}");
        }
    }

    #[test]
    fn singer_criterion_consistency() {
        // columns below the minimal spike weight are hit
        let b = cohit_basis(3, 15).unwrap();
        let spike = minimal_spike(3, 15).unwrap();
        let sw = spike.weight_vector();
        for m in enumerate_monomials(3, 15, &MonomialFilter::All) {
            if m.weight_vector() < sw {
                assert!(b.is_hit(&Polynomial::from_monomial(m)).unwrap());
            }
        }
    }

    #[test]
    fn subquotient_view_matches_block_counts() {
        let b = cohit_basis(3, 15).unwrap();
        let total: usize = b.weight_dims().iter().map(|&(_, k)| k).sum();
        assert_eq!(total, b.dim());
        for (w, expected) in b.weight_dims() {
            let v = b.subquotient(&w).unwrap();
            assert_eq!(v.dim(), expected);
            assert_eq!(v.admissibles().len(), expected);
        }
        assert!(b.subquotient(&WeightVector::new(vec![1])).is_err());
    }

    #[test]
    fn reduce_to_admissible_round_trip() {
        let b = cohit_basis(3, 9).unwrap();
        for m in b.admissibles() {
            let coords = b
                .reduce_to_admissible(&Polynomial::from_monomial(m.clone()))
                .unwrap();
            assert_eq!(coords.iter().filter(|&&x| x).count(), 1);
        }
        // a hit class reduces to zero coordinates
        let f = crate::steenrod::sq(2, &Polynomial::parse(3, "u1^3*u2^2*u3^2").unwrap());
        if !f.is_zero() {
            assert!(b.is_hit(&f).unwrap());
            assert!(b.reduce_to_admissible(&f).unwrap().iter().all(|&x| !x));
        }
    }

    #[test]
    fn mu_alpha_shape_sanity() {
        assert_eq!(alpha(14), 3);
        assert_eq!(mu(14), 2);
    }
}
