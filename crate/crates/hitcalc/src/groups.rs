//! Actions of the symmetric and general linear groups on cohit spaces and
//! weight subquotients, fixed-point (invariant) computation, and the
//! projection homomorphisms `P_5 -> P_4`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{kernel_intersection, BitRow};
use crate::hit::{cohit_basis, CohitBasis, WeightView};
use crate::monomial::{Monomial, WeightVector};
use crate::poly::Polynomial;
use crate::steenrod::substitute;

/// Which group acts: `Sigma_n` (adjacent swaps) or `GL_n` (swaps plus one
/// transvection).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Symmetric,
    GeneralLinear,
}

impl Group {
    pub fn as_str(&self) -> &'static str {
        match self {
            Group::Symmetric => "sigma",
            Group::GeneralLinear => "gl",
        }
    }

    pub fn parse(s: &str) -> Result<Group> {
        match s {
            "sigma" | "symmetric" => Ok(Group::Symmetric),
            "gl" | "general_linear" => Ok(Group::GeneralLinear),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }
}

/// A variable substitution `u_j -> images[j]`, each image a sum of distinct
/// variables.
#[derive(Clone, Debug)]
pub struct Substitution {
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(images: Vec<Polynomial>) -> Substitution {
        Substitution { images }
    }

    pub fn identity(n: usize) -> Substitution {
        Substitution {
            images: (0..n)
                .map(|j| Polynomial::from_monomial(variable(n, j)))
                .collect(),
        }
    }

    /// Adjacent transposition `u_i <-> u_{i+1}` (1-based `i < n`).
    pub fn swap(n: usize, i: usize) -> Substitution {
        let mut s = Substitution::identity(n);
        s.images.swap(i - 1, i);
        s
    }

    /// The transvection `u_n -> u_{n-1} + u_n`, all other variables fixed.
    pub fn transvection(n: usize) -> Substitution {
        let mut s = Substitution::identity(n);
        let mut img = Polynomial::from_monomial(variable(n, n - 2));
        img.toggle(variable(n, n - 1));
        s.images[n - 1] = img;
        s
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    /// True when every variable maps to a single variable.
    pub fn is_permutation(&self) -> bool {
        self.images.iter().all(|p| p.len() == 1)
    }

    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        substitute(f, &self.images)
    }
}

fn variable(n: usize, j: usize) -> Monomial {
    let mut exps = vec![0u64; n];
    exps[j] = 1;
    Monomial::new(exps)
}

/// Generating sets: `rho_1..rho_{n-1}` adjacent swaps for the symmetric
/// group, plus `rho_n` the transvection for the general linear group.
pub fn standard_generators(n: usize, group: Group) -> Vec<Substitution> {
    assert!(n >= 2);
    let mut gens: Vec<Substitution> = (1..n).map(|i| Substitution::swap(n, i)).collect();
    if group == Group::GeneralLinear {
        gens.push(Substitution::transvection(n));
    }
    gens
}

/// A space the groups act on: a full (or part-restricted) cohit basis, or a
/// single weight subquotient.
#[derive(Clone, Copy)]
pub enum Space<'a> {
    Full(&'a CohitBasis),
    Weight(&'a WeightView<'a>),
}

impl Space<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Space::Full(b) => b.dim(),
            Space::Weight(v) => v.dim(),
        }
    }

    pub fn admissibles(&self) -> Vec<Monomial> {
        match self {
            Space::Full(b) => b.admissibles(),
            Space::Weight(v) => v.admissibles(),
        }
    }

    pub fn coords(&self, f: &Polynomial) -> Result<Vec<bool>> {
        match self {
            Space::Full(b) => b.reduce_to_admissible(f),
            Space::Weight(v) => v.coords(f),
        }
    }
}

/// The matrix of a substitution on the space's admissible coordinates;
/// entry `j` is the image of the `j`-th admissible class. On a weight
/// subquotient the image is reduced modulo lower weight, which is valid
/// because the generators never raise the weight (the coordinate map
/// rejects any that would).
pub fn induced_operator(sub: &Substitution, space: Space<'_>) -> Result<Vec<BitRow>> {
    let adm = space.admissibles();
    let dim = adm.len();
    adm.into_par_iter()
        .map(|m| {
            let img = sub.apply(&Polynomial::from_monomial(m))?;
            let coords = space.coords(&img)?;
            Ok(BitRow::from_support(
                dim,
                &coords
                    .iter()
                    .enumerate()
                    .filter_map(|(i, &b)| b.then_some(i as u32))
                    .collect::<Vec<_>>(),
            ))
        })
        .collect()
}

/// An invariant subspace: its dimension and canonical representatives as
/// sums of admissible monomials.
pub struct InvariantReport {
    pub group: Group,
    pub dim: usize,
    pub generators: Vec<Polynomial>,
}

/// Fixed points of the group on the space: the joint kernel of
/// `induced_operator(g) - identity` over the standard generators.
pub fn invariants_on(space: Space<'_>, n: usize, group: Group) -> Result<InvariantReport> {
    let adm = space.admissibles();
    let mut maps = Vec::new();
    for g in standard_generators(n, group) {
        let mut op = induced_operator(&g, space)?;
        for (j, row) in op.iter_mut().enumerate() {
            row.flip(j);
        }
        maps.push(op);
    }
    let kernel = kernel_intersection(&maps)?;
    let generators = kernel
        .iter()
        .map(|v| Polynomial::from_terms(n, v.support().iter().map(|&c| adm[c as usize].clone())))
        .collect();
    Ok(InvariantReport {
        group,
        dim: kernel.len(),
        generators,
    })
}

/// Invariants of `(QP_n)_d`, or of the weight subquotient at `omega`.
pub fn invariants(
    n: usize,
    d: u64,
    omega: Option<&WeightVector>,
    group: Group,
) -> Result<InvariantReport> {
    let basis = cohit_basis(n, d)?;
    match omega {
        None => invariants_on(Space::Full(&basis), n, group),
        Some(w) => {
            let view = basis.subquotient(w)?;
            invariants_on(Space::Weight(&view), n, group)
        }
    }
}

/// Fixed points of the group on the span of the weight subquotients listed
/// in `weights` (e.g. a Kameko kernel). The span must be stable: an image
/// with support outside the listed weights is rejected.
pub fn invariants_on_weights(
    basis: &CohitBasis,
    weights: &[WeightVector],
    group: Group,
) -> Result<InvariantReport> {
    let n = basis.n();
    let adm = basis.admissibles();
    let mut slot_of = vec![usize::MAX; adm.len()];
    let mut selected = Vec::new();
    for (i, m) in adm.iter().enumerate() {
        if weights.contains(&m.weight_vector()) {
            slot_of[i] = selected.len();
            selected.push(i);
        }
    }
    let dim = selected.len();
    let mut maps = Vec::new();
    for g in standard_generators(n, group) {
        let rows: Result<Vec<BitRow>> = selected
            .par_iter()
            .map(|&i| {
                let img = g.apply(&Polynomial::from_monomial(adm[i].clone()))?;
                let coords = basis.reduce_to_admissible(&img)?;
                let mut support = Vec::new();
                for (c, &on) in coords.iter().enumerate() {
                    if on {
                        if slot_of[c] == usize::MAX {
                            return Err(Error::ModeViolation);
                        }
                        support.push(slot_of[c] as u32);
                    }
                }
                Ok(BitRow::from_support(dim, &support))
            })
            .collect();
        let mut op = rows?;
        for (j, row) in op.iter_mut().enumerate() {
            row.flip(j);
        }
        maps.push(op);
    }
    let kernel = kernel_intersection(&maps)?;
    let generators = kernel
        .iter()
        .map(|v| {
            Polynomial::from_terms(
                n,
                v.support().iter().map(|&c| adm[selected[c as usize]].clone()),
            )
        })
        .collect();
    Ok(InvariantReport {
        group,
        dim: kernel.len(),
        generators,
    })
}

/// True iff `[f]` is fixed by every standard generator, checked against the
/// provided basis.
pub fn verify_invariant_on(basis: &CohitBasis, f: &Polynomial, group: Group) -> Result<bool> {
    if !f.is_zero() && f.homogeneous_degree() != Some(basis.d()) {
        return Err(Error::NonHomogeneous);
    }
    for g in standard_generators(basis.n(), group) {
        if !basis.is_hit(&g.apply(f)?.add(f))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `[f]` in `(QP_n)_d` is a group invariant.
pub fn verify_invariant_class(f: &Polynomial, n: usize, d: u64, group: Group) -> Result<bool> {
    verify_invariant_on(&cohit_basis(n, d)?, f, group)
}

/// The projection `p_(l, l') : P_5 -> P_4` for `1 <= l < l' <= 5`:
/// `u_j -> u_j` for `j < l`, `u_l -> u_{l'-1}`, and `u_j -> u_{j-1}` for
/// `j > l`.
pub fn project_p(l: usize, l_prime: usize, f: &Polynomial) -> Result<Polynomial> {
    if f.n() != 5 {
        return Err(Error::DimensionMismatch(f.n(), 5));
    }
    if !(1 <= l && l < l_prime && l_prime <= 5) {
        return Err(Error::IndexOutOfRange(format!("(l, l') = ({l}, {l_prime})")));
    }
    let target = |j: usize| -> usize {
        if j < l {
            j
        } else if j == l {
            l_prime - 1
        } else {
            j - 1
        }
    };
    let images: Vec<Polynomial> = (1..=5)
        .map(|j| Polynomial::from_monomial(variable(5, target(j) - 1)))
        .collect();
    let wide = substitute(f, &images)?;
    Ok(Polynomial::from_terms(
        4,
        wide.terms().map(|t| {
            debug_assert_eq!(t.exponent(4), 0);
            Monomial::new(t.exponents()[..4].to_vec())
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{enumerate_monomials, MonomialFilter};
    use crate::oracle::{oracle_invariants, OracleGroup};
    use crate::steenrod::sq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn generator_counts() {
        assert_eq!(standard_generators(5, Group::Symmetric).len(), 4);
        assert_eq!(standard_generators(5, Group::GeneralLinear).len(), 5);
        let g2 = standard_generators(2, Group::GeneralLinear);
        assert_eq!(g2[1].images()[1].to_string(), "u2 + u1");
    }

    #[test]
    fn identity_operator() {
        let basis = cohit_basis(3, 7).unwrap();
        let op = induced_operator(&Substitution::identity(3), Space::Full(&basis)).unwrap();
        for (j, row) in op.iter().enumerate() {
            assert_eq!(row.support(), vec![j as u32]);
        }
    }

    #[test]
    fn swap_is_permutation_matrix_on_degree_one() {
        let basis = cohit_basis(2, 1).unwrap();
        let op = induced_operator(&Substitution::swap(2, 1), Space::Full(&basis)).unwrap();
        assert_eq!(op[0].support(), vec![1]);
        assert_eq!(op[1].support(), vec![0]);
    }

    #[test]
    fn five_cycle_has_order_five() {
        // the product rho_1 rho_2 rho_3 rho_4 acts as a 5-cycle
        let mut f = Polynomial::from_monomial(variable(5, 0));
        let word: Vec<Substitution> = (1..5).map(|i| Substitution::swap(5, i)).collect();
        let orig = f.clone();
        for step in 1..=5 {
            for g in &word {
                f = g.apply(&f).unwrap();
            }
            assert_eq!(f == orig, step == 5, "step {step}");
        }
    }

    #[test]
    fn invariants_match_oracle_small() {
        for (n, d) in [(2usize, 3u64), (2, 6), (3, 5), (3, 8)] {
            for (group, og) in [
                (Group::Symmetric, OracleGroup::Symmetric),
                (Group::GeneralLinear, OracleGroup::GeneralLinear),
            ] {
                let rep = invariants(n, d, None, group).unwrap();
                assert_eq!(
                    rep.dim,
                    oracle_invariants(n, d, og).unwrap(),
                    "n={n} d={d} {:?}",
                    group
                );
                let basis = cohit_basis(n, d).unwrap();
                for g in &rep.generators {
                    assert!(verify_invariant_on(&basis, g, group).unwrap());
                }
            }
        }
    }

    #[test]
    fn dickson_invariant_in_two_variables() {
        // (QP_2)_3 has GL_2-invariant dimension 1
        let rep = invariants(2, 3, None, Group::GeneralLinear).unwrap();
        assert_eq!(rep.dim, 1);
        assert!(verify_invariant_class(&rep.generators[0], 2, 3, Group::GeneralLinear).unwrap());
    }

    #[test]
    fn weight_mode_invariants_consistent() {
        let basis = cohit_basis(3, 8).unwrap();
        let mut total = 0;
        for (w, dim) in basis.weight_dims() {
            if dim == 0 {
                continue;
            }
            let view = basis.subquotient(&w).unwrap();
            total += invariants_on(Space::Weight(&view), 3, Group::Symmetric)
                .unwrap()
                .dim;
        }
        // the filtration splits the action, so per-weight fixed points are
        // at least as many as the full-space ones
        assert!(total >= invariants(3, 8, None, Group::Symmetric).unwrap().dim);
    }

    #[test]
    fn project_examples() {
        let f = Polynomial::parse(5, "u1*u2").unwrap();
        assert_eq!(project_p(1, 2, &f).unwrap().to_string(), "u1^2");
        assert!(project_p(2, 2, &f).is_err());
        assert!(project_p(0, 3, &f).is_err());
    }

    #[test]
    fn project_commutes_with_sq() {
        let mut rng = StdRng::seed_from_u64(0x9e5);
        for _ in 0..40 {
            let d = rng.gen_range(2..=8u64);
            let k = rng.gen_range(1..=3u64);
            let all = enumerate_monomials(5, d, &MonomialFilter::All);
            let f = Polynomial::from_terms(5, all.iter().filter(|_| rng.gen_bool(0.1)).cloned());
            let l = rng.gen_range(1..=4usize);
            let lp = rng.gen_range(l + 1..=5usize);
            assert_eq!(
                project_p(l, lp, &sq(k, &f)).unwrap(),
                sq(k, &project_p(l, lp, &f).unwrap())
            );
        }
    }
}
