//! Monomials, weight vectors, the graded linear order, spikes, and the
//! arithmetic functions alpha and mu.
//!
//! A monomial in `P_n` is an exponent tuple `(a_1, ..., a_n)`. Its weight
//! vector has i-th entry the number of exponents with dyadic digit i-1 set;
//! monomials of equal degree are ordered by weight vector first (left
//! lexicographic) and then by exponent vector (left lexicographic).

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A monomial `u_1^{a_1} ... u_n^{a_n}` in `n` variables.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Monomial {
        Monomial { exps }
    }

    /// The unit monomial (all exponents zero).
    pub fn unit(n: usize) -> Monomial {
        Monomial { exps: vec![0; n] }
    }

    /// Variable count.
    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent(&self, j: usize) -> u64 {
        self.exps[j]
    }

    /// The weight vector: entry i counts exponents with bit i-1 set.
    pub fn weight_vector(&self) -> WeightVector {
        let mut entries = Vec::new();
        for &a in &self.exps {
            let mut a = a;
            let mut i = 0;
            while a != 0 {
                if entries.len() <= i {
                    entries.resize(i + 1, 0);
                }
                entries[i] += (a & 1) as u32;
                a >>= 1;
                i += 1;
            }
        }
        WeightVector::new(entries)
    }

    /// True when every exponent is zero or of the form `2^c - 1`.
    pub fn is_spike(&self) -> bool {
        self.degree() > 0 && self.exps.iter().all(|&a| a & (a + 1) == 0)
    }

    /// True for spikes whose exponents `2^{c_j} - 1` satisfy
    /// `c_1 > c_2 > ... > c_{r-1} >= c_r >= 1` with zeros afterwards.
    pub fn is_minimal_spike(&self) -> bool {
        if !self.is_spike() {
            return false;
        }
        let cs: Vec<u32> = self
            .exps
            .iter()
            .take_while(|&&a| a > 0)
            .map(|&a| 64 - a.leading_zeros())
            .collect();
        if self.exps[cs.len()..].iter().any(|&a| a != 0) {
            return false;
        }
        let r = cs.len();
        cs.windows(2)
            .enumerate()
            .all(|(i, w)| if i + 2 < r { w[0] > w[1] } else { w[0] >= w[1] })
            && cs[r - 1] >= 1
    }

    /// True when some exponent is zero.
    pub fn has_zero_exponent(&self) -> bool {
        self.exps.iter().any(|&a| a == 0)
    }
}

/// A finitely supported weight vector, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightVector {
    entries: Vec<u32>,
}

impl WeightVector {
    pub fn new(mut entries: Vec<u32>) -> WeightVector {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry `omega_i` (1-based), zero beyond the stored length.
    pub fn entry(&self, i: usize) -> u32 {
        self.entries.get(i - 1).copied().unwrap_or(0)
    }

    /// `deg(omega) = sum 2^{i-1} omega_i`.
    pub fn deg(&self) -> u64 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &w)| (w as u64) << i)
            .sum()
    }
}

impl PartialOrd for WeightVector {
    fn partial_cmp(&self, other: &WeightVector) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeightVector {
    /// Left lexicographic, padding the shorter vector with zeros.
    fn cmp(&self, other: &WeightVector) -> Ordering {
        let len = self.entries.len().max(other.entries.len());
        for i in 1..=len {
            match self.entry(i).cmp(&other.entry(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

/// The paper-order comparison of equal-degree monomials: weight vector first,
/// then exponent vector, both left lexicographic.
pub fn compare(u: &Monomial, y: &Monomial) -> Result<Ordering> {
    if u.degree() != y.degree() || u.n() != y.n() {
        return Err(Error::DegreeMismatch(u.degree(), y.degree()));
    }
    Ok(u.weight_vector()
        .cmp(&y.weight_vector())
        .then_with(|| u.exps.cmp(&y.exps)))
}

/// Number of ones in the dyadic expansion of `d`.
pub fn alpha(d: u64) -> u32 {
    d.count_ones()
}

/// The least `n` with `alpha(d + n) <= n`; equivalently the least number of
/// summands expressing `d` as a sum of integers `2^s - 1`.
pub fn mu(d: u64) -> u32 {
    assert!(d >= 1, "mu is defined for positive degrees");
    (1..).find(|&n| alpha(d + n as u64) <= n).unwrap()
}

/// The unique minimal spike of degree `d` in `n` variables, or `None` when
/// `mu(d) > n`.
pub fn minimal_spike(n: usize, d: u64) -> Option<Monomial> {
    if d == 0 {
        return None;
    }
    let r = mu(d) as usize;
    if r > n {
        return None;
    }
    fn search(remaining: u64, slots: usize, max_c: u32) -> Option<Vec<u32>> {
        if slots == 0 {
            return (remaining == 0).then(Vec::new);
        }
        let mut c = max_c;
        while c >= 1 {
            let v = (1u64 << c) - 1;
            if v <= remaining {
                // the last two exponents may tie; earlier ones strictly drop
                let next_max = if slots == 2 { c } else { c - 1 };
                if let Some(mut rest) = search(remaining - v, slots - 1, next_max) {
                    rest.insert(0, c);
                    return Some(rest);
                }
            }
            c -= 1;
        }
        None
    }
    let cs = search(d, r, 63)?;
    let mut exps = vec![0u64; n];
    for (j, c) in cs.into_iter().enumerate() {
        exps[j] = (1 << c) - 1;
    }
    Some(Monomial::new(exps))
}

/// Restriction applied while enumerating the monomials of a given degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialFilter {
    All,
    /// Only monomials of exactly this weight.
    WeightEqual(WeightVector),
    /// Only monomials of strictly smaller weight.
    WeightBelow(WeightVector),
}

/// All monomials of degree `d` in `n` variables passing the filter, sorted
/// DESCENDING in the graded order (largest monomial first).
pub fn enumerate_monomials(n: usize, d: u64, filter: &MonomialFilter) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u64; n];
    fn rec(j: usize, remaining: u64, exps: &mut Vec<u64>, out: &mut Vec<Monomial>) {
        if j + 1 == exps.len() {
            exps[j] = remaining;
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for a in 0..=remaining {
            exps[j] = a;
            rec(j + 1, remaining - a, exps, out);
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
    } else {
        rec(0, d, &mut exps, &mut out);
    }
    out.retain(|m| match filter {
        MonomialFilter::All => true,
        MonomialFilter::WeightEqual(w) => &m.weight_vector() == w,
        MonomialFilter::WeightBelow(w) => &m.weight_vector() < w,
    });
    let mut keyed: Vec<(WeightVector, Monomial)> =
        out.into_iter().map(|m| (m.weight_vector(), m)).collect();
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.cmp(&a.1)));
    keyed.into_iter().map(|(_, m)| m).collect()
}

/// Fixed-width bit packing of monomials and weight vectors of one (n, d)
/// context into `u64` keys whose numeric order matches the graded order.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Packing {
    pub n: usize,
    /// Bits per exponent field.
    pub ew: u32,
    /// Bits per weight entry.
    pub wb: u32,
}

impl Packing {
    pub fn new(n: usize, d: u64) -> Result<Packing> {
        let ew = 64 - d.max(1).leading_zeros();
        let wb = 32 - (n as u32).leading_zeros();
        if n as u32 * ew > 64 || ew > 64 / wb {
            return Err(Error::TooLarge(format!(
                "cannot pack monomials for n={n}, d={d}"
            )));
        }
        Ok(Packing { n, ew, wb })
    }

    /// Exponent code; `u_1` occupies the highest field so that numeric order
    /// equals left-lexicographic order on exponent vectors.
    pub fn encode(&self, m: &Monomial) -> u64 {
        debug_assert_eq!(m.n(), self.n);
        let mut code = 0u64;
        for &a in m.exponents() {
            code = (code << self.ew) | a;
        }
        code
    }

    pub fn decode(&self, code: u64) -> Monomial {
        let mask = (1u64 << self.ew) - 1;
        let mut exps = vec![0u64; self.n];
        let mut c = code;
        for j in (0..self.n).rev() {
            exps[j] = c & mask;
            c >>= self.ew;
        }
        Monomial::new(exps)
    }

    /// Weight key; `omega_1` occupies the highest field so that numeric order
    /// equals left-lexicographic order on weight vectors.
    pub fn weight_key_of(&self, m: &Monomial) -> u64 {
        self.weight_key(&m.weight_vector())
    }

    pub fn weight_key(&self, w: &WeightVector) -> u64 {
        let fields = 64 / self.wb;
        debug_assert!(w.entries().len() as u32 <= fields);
        let mut key = 0u64;
        for i in 1..=fields as usize {
            key = (key << self.wb) | w.entry(i) as u64;
        }
        key
    }

    pub fn weight_from_key(&self, key: u64) -> WeightVector {
        let fields = (64 / self.wb) as usize;
        let mask = (1u64 << self.wb) - 1;
        let mut entries = vec![0u32; fields];
        let mut k = key;
        for i in (0..fields).rev() {
            entries[i] = (k & mask) as u32;
            k >>= self.wb;
        }
        WeightVector::new(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u64]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn weight_vector_examples() {
        assert_eq!(m(&[31, 1, 1, 0, 0]).weight_vector().entries(), &[3, 1, 1, 1, 1]);
        assert_eq!(m(&[0, 0, 0]).weight_vector().entries(), &[] as &[u32]);
        assert_eq!(
            m(&[63, 7, 1, 0, 0]).weight_vector().entries(),
            &[3, 2, 2, 1, 1, 1]
        );
    }

    #[test]
    fn weight_degree_matches_monomial_degree() {
        for mm in enumerate_monomials(3, 9, &MonomialFilter::All) {
            assert_eq!(mm.weight_vector().deg(), 9);
        }
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&m(&[1, 2]), &m(&[2, 1])).unwrap(), Ordering::Less);
        assert_eq!(
            compare(&m(&[3, 0, 0]), &m(&[1, 1, 1])).unwrap(),
            Ordering::Less
        );
        let x = m(&[2, 1, 4]);
        assert_eq!(compare(&x, &x).unwrap(), Ordering::Equal);
        assert!(compare(&m(&[1, 0]), &m(&[2, 0])).is_err());
    }

    #[test]
    fn compare_is_total_order_small() {
        for n in 1..=3 {
            for d in 0..=10 {
                let ms = enumerate_monomials(n, d, &MonomialFilter::All);
                // enumerate is descending and strict under compare
                for w in ms.windows(2) {
                    assert_eq!(compare(&w[0], &w[1]).unwrap(), Ordering::Greater);
                }
                // transitivity spot check via sortedness is enough here;
                // antisymmetry follows from strict descent above
            }
        }
    }

    #[test]
    fn alpha_mu_examples() {
        assert_eq!(alpha(5), 2);
        assert_eq!(alpha(0), 0);
        assert_eq!(alpha(33), 2);
        assert_eq!(mu(33), 3);
        assert_eq!(mu(71), 3);
        assert_eq!(mu(34), 2);
        for k in 1..10 {
            assert_eq!(mu((1 << k) - 1), 1);
        }
    }

    #[test]
    fn mu_agrees_with_minimal_summand_count() {
        // mu(d) is the least r with d a sum of r integers 2^s - 1; writing
        // each binary digit 2^s as (2^s - 1) + (2^1 - 1) bounds mu by
        // 2 * alpha. Cross-check against a direct dynamic program.
        let limit = 2000usize;
        let mut best = vec![u32::MAX; limit + 1];
        best[0] = 0;
        for d in 1..=limit {
            let mut c = 1u32;
            while (1usize << c) - 1 <= d {
                let v = d - ((1 << c) - 1);
                if best[v] != u32::MAX {
                    best[d] = best[d].min(best[v] + 1);
                }
                c += 1;
            }
        }
        for d in 1..=limit {
            assert_eq!(mu(d as u64), best[d], "d={d}");
            assert!(mu(d as u64) <= 2 * alpha(d as u64));
        }
        for d in 1..=100_000u64 {
            assert!(mu(d) <= 2 * alpha(d));
        }
    }

    #[test]
    fn minimal_spike_examples() {
        assert_eq!(minimal_spike(5, 33).unwrap(), m(&[31, 1, 1, 0, 0]));
        assert_eq!(minimal_spike(5, 34).unwrap(), m(&[31, 3, 0, 0, 0]));
        assert_eq!(minimal_spike(5, 71).unwrap(), m(&[63, 7, 1, 0, 0]));
        assert!(minimal_spike(1, 4).is_none());
        assert!(m(&[31, 1, 1, 0, 0]).is_minimal_spike());
        assert!(!m(&[2, 1]).is_spike());
    }

    #[test]
    fn minimal_spike_is_minimal_among_spikes() {
        // the minimal spike has the smallest weight vector of all spikes
        for n in 1..=4usize {
            for d in 1..=40u64 {
                let Some(s) = minimal_spike(n, d) else { continue };
                assert!(s.is_minimal_spike());
                let sw = s.weight_vector();
                for mm in enumerate_monomials(n, d, &MonomialFilter::All) {
                    if mm.is_spike() {
                        assert!(mm.weight_vector() >= sw, "{mm:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn spikes_have_weakly_decreasing_weights() {
        for n in 1..=4usize {
            for d in 1..=40u64 {
                for mm in enumerate_monomials(n, d, &MonomialFilter::All) {
                    if mm.is_spike() {
                        let w = mm.weight_vector();
                        assert!(w.entries().windows(2).all(|p| p[0] >= p[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_monomials(1, 3, &MonomialFilter::All).len(), 1);
        assert_eq!(enumerate_monomials(2, 2, &MonomialFilter::All).len(), 3);
        assert_eq!(enumerate_monomials(5, 33, &MonomialFilter::All).len(), 66045);
    }

    #[test]
    fn packing_round_trip_preserves_order() {
        let p = Packing::new(3, 12).unwrap();
        let ms = enumerate_monomials(3, 12, &MonomialFilter::All);
        let keys: Vec<(u64, u64)> = ms
            .iter()
            .map(|mm| (p.weight_key_of(mm), p.encode(mm)))
            .collect();
        for w in keys.windows(2) {
            assert!(w[0] > w[1]);
        }
        for mm in &ms {
            assert_eq!(&p.decode(p.encode(mm)), mm);
            let wv = mm.weight_vector();
            assert_eq!(p.weight_from_key(p.weight_key(&wv)), wv);
        }
    }
}
