//! The left action of Steenrod squares on `P_n` via the Cartan formula, and
//! linear variable substitutions.

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Parity of the binomial coefficient `C(a, b)` by Lucas: odd exactly when
/// the bits of `b` form a submask of `a`.
pub fn binom_parity(a: u64, b: u64) -> bool {
    b & a == b
}

/// Calls `f` with the exponents of every term of `Sq^k` applied to the
/// monomial `exps`. Terms of a single monomial image are pairwise distinct.
pub(crate) fn for_each_sq_term(k: u64, exps: &[u64], f: &mut impl FnMut(&[u64])) {
    let n = exps.len();
    // suffix sums bound how much of k the remaining variables can absorb
    let mut suffix = vec![0u64; n + 1];
    for j in (0..n).rev() {
        suffix[j] = suffix[j + 1] + exps[j];
    }
    let mut out = exps.to_vec();
    fn rec(
        j: usize,
        remaining: u64,
        exps: &[u64],
        suffix: &[u64],
        out: &mut Vec<u64>,
        f: &mut impl FnMut(&[u64]),
    ) {
        if remaining > suffix[j] {
            return;
        }
        if j == exps.len() {
            f(out);
            return;
        }
        // k_j runs over the submasks of exps[j] not exceeding `remaining`
        let a = exps[j];
        let mut kj = a;
        loop {
            if kj <= remaining {
                out[j] = a + kj;
                rec(j + 1, remaining - kj, exps, suffix, out, f);
            }
            if kj == 0 {
                break;
            }
            kj = (kj - 1) & a;
        }
        out[j] = a;
    }
    rec(0, k, exps, &suffix, &mut out, f);
}

/// `Sq^k(f)` by linear extension of the Cartan convolution
/// `Sq^k(prod u_j^{a_j}) = sum over k_1+...+k_n = k of prod C(a_j, k_j)
/// u_j^{a_j + k_j}` with coefficients mod 2. `Sq^0` is the identity.
pub fn sq(k: u64, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.n());
    for t in f.terms() {
        for_each_sq_term(k, t.exponents(), &mut |e| {
            out.toggle(Monomial::new(e.to_vec()));
        });
    }
    out
}

/// Checks that `image` is a sum of distinct variables and returns the set of
/// variable indices as a bitmask.
fn image_mask(image: &Polynomial) -> Result<u32> {
    let mut mask = 0u32;
    for t in image.terms() {
        if t.degree() != 1 {
            return Err(Error::MalformedImage);
        }
        let j = t.exponents().iter().position(|&a| a == 1).unwrap();
        mask |= 1 << j;
    }
    Ok(mask)
}

/// Ring-homomorphic substitution `u_j -> images[j]`, each image a sum of
/// distinct variables. Powers of sums expand by Lucas: each set bit of an
/// exponent is assigned to one summand variable, with mod-2 cancellation.
pub fn substitute(f: &Polynomial, images: &[Polynomial]) -> Result<Polynomial> {
    let n = f.n();
    if images.len() != n {
        return Err(Error::DimensionMismatch(images.len(), n));
    }
    let masks: Vec<u32> = images.iter().map(image_mask).collect::<Result<_>>()?;
    let mut out = Polynomial::zero(n);
    let mut acc = vec![0u64; n];
    for t in f.terms() {
        // flatten the term into (bit value, target mask) choices
        let mut choices: Vec<(u64, u32)> = Vec::new();
        let mut dead = false;
        for (j, &a) in t.exponents().iter().enumerate() {
            if a != 0 && masks[j] == 0 {
                dead = true;
                break;
            }
            let mut a = a;
            while a != 0 {
                let bit = a & a.wrapping_neg();
                choices.push((bit, masks[j]));
                a -= bit;
            }
        }
        if dead {
            continue;
        }
        fn rec(
            i: usize,
            choices: &[(u64, u32)],
            acc: &mut Vec<u64>,
            out: &mut Polynomial,
        ) {
            if i == choices.len() {
                out.toggle(Monomial::new(acc.clone()));
                return;
            }
            let (bit, mut mask) = choices[i];
            while mask != 0 {
                let v = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                acc[v] += bit;
                rec(i + 1, choices, acc, out);
                acc[v] -= bit;
            }
        }
        acc.iter_mut().for_each(|x| *x = 0);
        rec(0, &choices, &mut acc, &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Polynomial {
        Polynomial::parse(n, s).unwrap()
    }

    #[test]
    fn binom_parity_examples() {
        assert!(!binom_parity(2, 1));
        assert!(binom_parity(3, 2));
        assert!(!binom_parity(25, 2));
        assert!(binom_parity(0, 0));
        assert!(!binom_parity(1, 2));
    }

    #[test]
    fn sq_examples() {
        assert_eq!(sq(1, &p(1, "u1")), p(1, "u1^2"));
        assert_eq!(sq(1, &p(1, "u1^2")), Polynomial::zero(1));
        assert_eq!(
            sq(2, &p(5, "u1^3*u2^3*u5^25")),
            p(
                5,
                "u1^5*u2^3*u5^25 + u1^3*u2^5*u5^25 + u1^4*u2^4*u5^25 \
                 + u1^4*u2^3*u5^26 + u1^3*u2^4*u5^26"
            )
        );
        assert_eq!(sq(0, &p(2, "u1*u2")), p(2, "u1*u2"));
    }

    #[test]
    fn instability() {
        let f = p(3, "u1^2*u2 + u1*u3^2 + u2*u3^2");
        assert_eq!(sq(3, &f), f.mul(&f));
        for k in 4..10 {
            assert!(sq(k, &f).is_zero());
        }
    }

    #[test]
    fn cartan_product_rule() {
        let f = p(3, "u1^2*u2 + u3^3");
        let g = p(3, "u1*u2*u3 + u2^2*u3");
        for k in 0..=7u64 {
            let lhs = sq(k, &f.mul(&g));
            let mut rhs = Polynomial::zero(3);
            for i in 0..=k {
                rhs = rhs.add(&sq(i, &f).mul(&sq(k - i, &g)));
            }
            assert_eq!(lhs, rhs, "k={k}");
        }
    }

    #[test]
    fn substitute_examples() {
        let n = 5;
        let mut images: Vec<Polynomial> = (1..=n).map(|j| p(n, &format!("u{j}"))).collect();
        images[4] = p(n, "u4 + u5");
        assert_eq!(substitute(&p(n, "u5"), &images).unwrap(), p(n, "u4 + u5"));
        assert_eq!(
            substitute(&p(n, "u5^2"), &images).unwrap(),
            p(n, "u4^2 + u5^2")
        );
        assert_eq!(
            substitute(&p(n, "u5^3"), &images).unwrap(),
            p(n, "u4^3 + u4^2*u5 + u4*u5^2 + u5^3")
        );
        assert!(substitute(&p(n, "u1"), &vec![p(n, "u1^2"); n]).is_err());
    }

    #[test]
    fn substitution_commutes_with_sq() {
        let n = 3;
        let mut images: Vec<Polynomial> = (1..=n).map(|j| p(n, &format!("u{j}"))).collect();
        images[2] = p(n, "u2 + u3");
        let f = p(n, "u1^3*u3^2 + u2^5 + u1*u2*u3^3");
        for k in 0..=6 {
            assert_eq!(
                substitute(&sq(k, &f), &images).unwrap(),
                sq(k, &substitute(&f, &images).unwrap()),
                "k={k}"
            );
        }
    }
}
