//! The Kameko squaring maps between `(QP_n)_{2d+n}` and `(QP_n)_d`, kernel
//! computation, and the isomorphism criterion.

use crate::error::{Error, Result};
use crate::hit::{cohit_basis, CohitBasis};
use crate::monomial::{minimal_spike, mu, Monomial, WeightVector};
use crate::poly::Polynomial;

/// The down map on monomials: `prod u_j y^2 -> y`, zero (None) when some
/// exponent is even.
pub fn kameko_down(m: &Monomial) -> Option<Monomial> {
    if m.exponents().iter().any(|&a| a % 2 == 0) {
        return None;
    }
    Some(Monomial::new(
        m.exponents().iter().map(|a| (a - 1) / 2).collect(),
    ))
}

/// Termwise down map on polynomials.
pub fn kameko_down_poly(f: &Polynomial) -> Polynomial {
    Polynomial::from_terms(f.n(), f.terms().filter_map(kameko_down))
}

/// The up map `phi(t) = prod u_j t^2` on monomials.
pub fn kameko_up_monomial(t: &Monomial) -> Monomial {
    Monomial::new(t.exponents().iter().map(|a| 2 * a + 1).collect())
}

/// Termwise up map; a section of the down map.
pub fn kameko_up(f: &Polynomial) -> Polynomial {
    Polynomial::from_terms(f.n(), f.terms().map(kameko_up_monomial))
}

/// Kernel of the down map at one source degree, as a direct sum of weight
/// subquotients.
pub struct KernelReport {
    pub n: usize,
    pub source_degree: u64,
    pub total: usize,
    pub per_omega: Vec<(WeightVector, usize)>,
}

/// Weight vectors that can carry kernel classes: achieved weights at least
/// the minimal spike's weight with first entry below `n`. Admissibles of
/// full weight `omega_1 = n` map isomorphically onto the target.
pub fn kernel_weight_candidates(basis: &CohitBasis) -> Vec<WeightVector> {
    let n = basis.n() as u32;
    let spike_w = minimal_spike(basis.n(), basis.d()).map(|s| s.weight_vector());
    basis
        .weight_dims()
        .into_iter()
        .map(|(w, _)| w)
        .filter(|w| w.entry(1) < n)
        .filter(|w| spike_w.as_ref().is_none_or(|s| w >= s))
        .collect()
}

/// Computes the kernel of `(Sq^0_*)_D : (QP_n)_D -> (QP_n)_{(D-n)/2}`.
pub fn kameko_kernel(n: usize, source_degree: u64) -> Result<KernelReport> {
    kernel_from_basis(&cohit_basis(n, source_degree)?)
}

/// The kernel via a weight-restricted echelon with the minimal spike's
/// weight as floor, cheaper than a full-space run at large degrees. The
/// returned basis serves the kernel's weight subquotients exactly.
pub fn kameko_kernel_restricted(n: usize, source_degree: u64) -> Result<(CohitBasis, KernelReport)> {
    let spike = minimal_spike(n, source_degree)
        .ok_or(Error::MuTooLarge(source_degree, n as u32))?;
    let basis = crate::hit::cohit_basis_restricted(n, source_degree, &spike.weight_vector())?;
    let report = kernel_from_basis(&basis)?;
    Ok((basis, report))
}

/// Kernel report out of an already computed source basis.
pub fn kernel_from_basis(basis: &CohitBasis) -> Result<KernelReport> {
    let n = basis.n();
    let d = basis.d();
    if d < n as u64 || (d - n as u64) % 2 != 0 {
        return Err(Error::DegreeMismatch(d, n as u64));
    }
    if mu(d) > n as u32 {
        return Err(Error::MuTooLarge(d, n as u32));
    }
    let mut per_omega = Vec::new();
    let mut total = 0;
    for w in kernel_weight_candidates(basis) {
        let dim = basis.subquotient(&w)?.dim();
        total += dim;
        per_omega.push((w, dim));
    }
    Ok(KernelReport {
        n,
        source_degree: d,
        total,
        per_omega,
    })
}

/// `mu(2d + n) = n` decides whether the down map at source degree `2d + n`
/// is an isomorphism; when it is, the two cohit dimensions are asserted
/// equal (computed independently).
pub fn kameko_iso_check(n: usize, d: u64) -> Result<bool> {
    let source = 2 * d + n as u64;
    let iso = mu(source) == n as u32;
    if iso {
        let src = cohit_basis(n, source)?;
        let tgt = cohit_basis(n, d)?;
        assert_eq!(
            src.dim(),
            tgt.dim(),
            "mu criterion promises an isomorphism at (n={n}, d={d})"
        );
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{enumerate_monomials, MonomialFilter};
    use crate::oracle::oracle_kameko_kernel;
    use crate::steenrod::sq;

    fn m(exps: &[u64]) -> Monomial {
        Monomial::new(exps.to_vec())
    }

    #[test]
    fn down_examples() {
        assert_eq!(kameko_down(&m(&[1, 1])), Some(m(&[0, 0])));
        assert_eq!(kameko_down(&m(&[3, 1])), Some(m(&[1, 0])));
        assert_eq!(kameko_down(&m(&[4, 0])), None);
    }

    #[test]
    fn up_down_section() {
        assert_eq!(
            kameko_up(&Polynomial::from_monomial(Monomial::unit(5))),
            Polynomial::from_monomial(m(&[1, 1, 1, 1, 1]))
        );
        for mm in enumerate_monomials(3, 7, &MonomialFilter::All) {
            assert_eq!(kameko_down(&kameko_up_monomial(&mm)), Some(mm));
        }
    }

    #[test]
    fn down_sends_hit_to_hit() {
        // [f] = 0 at the source implies [down(f)] = 0 at the target
        for (n, d) in [(2usize, 2u64), (2, 6), (3, 6)] {
            let source = 2 * d + n as u64;
            let tgt = cohit_basis(n, d).unwrap();
            for s in 0.. {
                let k = 1u64 << s;
                if k > source {
                    break;
                }
                for mm in enumerate_monomials(n, source - k, &MonomialFilter::All) {
                    let f = sq(k, &Polynomial::from_monomial(mm));
                    if !f.is_zero() {
                        let down = kameko_down_poly(&f);
                        assert!(tgt.is_hit(&down).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn restricted_kernel_matches_full() {
        for (n, source) in [(3usize, 9u64), (3, 13), (4, 12)] {
            let full = kameko_kernel(n, source).unwrap();
            let (basis, restricted) = kameko_kernel_restricted(n, source).unwrap();
            assert_eq!(restricted.total, full.total, "n={n} source={source}");
            assert_eq!(restricted.per_omega, full.per_omega);
            // admissibles of each piece agree with the full-space views
            let fb = cohit_basis(n, source).unwrap();
            for (w, _) in &full.per_omega {
                assert_eq!(
                    basis.subquotient(w).unwrap().admissibles(),
                    fb.subquotient(w).unwrap().admissibles()
                );
            }
        }
    }

    #[test]
    fn kernel_matches_oracle_small() {
        for (n, source) in [(2usize, 4u64), (2, 8), (3, 9), (3, 13)] {
            if mu(source) > n as u32 {
                continue;
            }
            let rep = kameko_kernel(n, source).unwrap();
            assert_eq!(
                rep.total,
                oracle_kameko_kernel(n, source).unwrap(),
                "n={n} source={source}"
            );
        }
    }

    #[test]
    fn iso_check_examples() {
        // n=3, d=15: mu(33) = 3, so dims are equal (13)
        assert!(kameko_iso_check(3, 15).unwrap());
        assert!(kameko_iso_check(1, 1).unwrap());
        // source degree 7 has mu = 1 < 3
        assert!(!kameko_iso_check(3, 2).unwrap());
    }
}
