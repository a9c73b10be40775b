//! Bundled explicit polynomials: the degree-14 class `zeta`, the degree-33
//! and degree-71 invariant tails `xi` and `xi_tilde`, the dual annihilated
//! element `zeta0`, and the degree-33 symmetric-invariant generators.
//!
//! Files under `data/` are verified against `data/SHA256SUMS` at first use.

use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::dual::DualPolynomial;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

const ZETA_14: &str = include_str!("../data/zeta_14.poly");
const XI_33: &str = include_str!("../data/xi_33.poly");
const XI_TILDE_71: &str = include_str!("../data/xi_tilde_71.poly");
const ZETA0_DUAL_33: &str = include_str!("../data/zeta0_dual_33.dp");
const SIGMA5_33: &str = include_str!("../data/sigma5_33.txt");
const SHA256SUMS: &str = include_str!("../data/SHA256SUMS");

fn verify_checksums() -> Result<()> {
    let files = [
        ("zeta_14.poly", ZETA_14),
        ("xi_33.poly", XI_33),
        ("xi_tilde_71.poly", XI_TILDE_71),
        ("zeta0_dual_33.dp", ZETA0_DUAL_33),
        ("sigma5_33.txt", SIGMA5_33),
    ];
    for line in SHA256SUMS.lines() {
        let (want, name) = line
            .split_once("  ")
            .ok_or_else(|| Error::Parse(format!("bad checksum line {line:?}")))?;
        let (_, body) = files
            .iter()
            .find(|(f, _)| *f == name)
            .ok_or_else(|| Error::Parse(format!("checksum for unknown file {name:?}")))?;
        let got = format!("{:x}", Sha256::digest(body.as_bytes()));
        if got != want {
            return Err(Error::Cache(format!("data checksum mismatch for {name}")));
        }
    }
    Ok(())
}

fn checked() -> Result<()> {
    static OK: OnceLock<std::result::Result<(), String>> = OnceLock::new();
    OK.get_or_init(|| verify_checksums().map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::Cache)
}

fn load_poly(body: &str, d: u64) -> Result<Polynomial> {
    checked()?;
    let p = Polynomial::parse(5, body)?;
    if p.homogeneous_degree() != Some(d) {
        return Err(Error::Parse(format!("expected homogeneous degree {d}")));
    }
    Ok(p)
}

/// The degree-14 class `zeta` whose Kameko lift seeds the degree-33 invariant.
pub fn zeta() -> Result<Polynomial> {
    load_poly(ZETA_14, 14)
}

/// The degree-33 tail `xi`; `phi(zeta) + xi` spans the GL_5-invariants there.
pub fn xi() -> Result<Polynomial> {
    load_poly(XI_33, 33)
}

/// The degree-71 tail `xi_tilde` for the invariant class at that degree.
pub fn xi_tilde() -> Result<Polynomial> {
    load_poly(XI_TILDE_71, 71)
}

/// The A-annihilated dual element `zeta0` of degree 33.
pub fn zeta0_dual() -> Result<DualPolynomial> {
    checked()?;
    let f = DualPolynomial::parse(5, ZETA0_DUAL_33)?;
    if f.homogeneous_degree() != Some(33) {
        return Err(Error::Parse("expected homogeneous degree 33".into()));
    }
    Ok(f)
}

/// The listed degree-33 symmetric-invariant generators, as `(index, poly)`
/// pairs with indices 8 through 25.
pub fn sigma5() -> Result<Vec<(u32, Polynomial)>> {
    checked()?;
    let mut out = Vec::new();
    for line in SIGMA5_33.lines() {
        let (idx, body) = line
            .split_once('\t')
            .ok_or_else(|| Error::Parse(format!("bad generator line {line:?}")))?;
        let idx: u32 = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator index {idx:?}")))?;
        let p = Polynomial::parse(5, body)?;
        if p.homogeneous_degree() != Some(33) {
            return Err(Error::Parse(format!("generator {idx} not of degree 33")));
        }
        out.push((idx, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_load_with_expected_sizes() {
        assert_eq!(zeta().unwrap().len(), 22);
        assert_eq!(xi().unwrap().len(), 184);
        assert_eq!(xi_tilde().unwrap().len(), 193);
        assert_eq!(zeta0_dual().unwrap().len(), 36);
        let gens = sigma5().unwrap();
        assert_eq!(gens.len(), 18);
        assert_eq!(gens.first().unwrap().0, 8);
        assert_eq!(gens.last().unwrap().0, 25);
    }
}
