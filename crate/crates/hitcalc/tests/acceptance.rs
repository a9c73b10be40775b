//! End-to-end acceptance suite: one PASS/FAIL line per criterion.

use rand::prelude::*;

use hitcalc::data;
use hitcalc::dual::{self, DualPolynomial};
use hitcalc::groups::{self, Group, Space};
use hitcalc::hit::{cohit_basis, Part};
use hitcalc::kameko;
use hitcalc::monomial::{enumerate_monomials, mu, Monomial, MonomialFilter, WeightVector};
use hitcalc::oracle::oracle_cohit;
use hitcalc::poly::Polynomial;
use hitcalc::session::Session;
use hitcalc::steenrod::sq;

struct Tally {
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, label: &str, ok: bool, detail: String) {
        if ok {
            println!("PASS {label}: {detail}");
        } else {
            println!("FAIL {label}: {detail}");
            self.failures.push(format!("{label}: {detail}"));
        }
    }
}

fn omega(entries: &[u32]) -> WeightVector {
    WeightVector::new(entries.to_vec())
}

fn w1() -> WeightVector {
    omega(&[3, 1, 1, 1, 1])
}

fn w3() -> WeightVector {
    omega(&[3, 3, 2, 2])
}

fn mono(exps: &[u64]) -> Monomial {
    Monomial::new(exps.to_vec())
}

fn criterion_1(t: &mut Tally, s: &Session) {
    let dim = s.basis(5, 14, Part::Full).unwrap().dim();
    t.check("criterion 1", dim == 320, format!("dim (QP_5)_14 = {dim}, expected 320"));
}

fn criterion_2(t: &mut Tally, s: &Session) {
    let dim = s.basis(5, 33, Part::Full).unwrap().dim();
    t.check("criterion 2", dim == 1322, format!("dim (QP_5)_33 = {dim}, expected 1322"));
}

fn criterion_3(t: &mut Tally, s: &Session) {
    let b = s.basis(5, 33, Part::Zero).unwrap();
    let total = b.dim();
    let d1 = b.subquotient(&w1()).unwrap().dim();
    let d3 = b.subquotient(&w3()).unwrap().dim();
    t.check(
        "criterion 3",
        (total, d1, d3) == (550, 155, 395),
        format!("zero part {total} (w1 {d1}, w3 {d3}), expected 550 (155, 395)"),
    );
}

fn criterion_4(t: &mut Tally, s: &Session) {
    let b = s.basis(5, 33, Part::Positive).unwrap();
    let dims: Vec<usize> = [
        omega(&[3, 1, 1, 1, 1]),
        omega(&[3, 1, 1, 3]),
        omega(&[3, 3, 2, 2]),
        omega(&[3, 3, 4, 1]),
    ]
    .iter()
    .map(|w| b.subquotient(w).unwrap().dim())
    .collect();
    // known inadmissible positive monomials of degree 33
    let full = s.basis(5, 33, Part::Full).unwrap();
    let spot = !full.is_admissible(&mono(&[3, 5, 8, 1, 16]))
        && !full.is_admissible(&mono(&[3, 4, 8, 9, 9]));
    t.check(
        "criterion 4",
        dims == [31, 0, 421, 0] && spot,
        format!("positive weight dims {dims:?}, expected [31, 0, 421, 0]; spot checks {spot}"),
    );
}

fn criterion_5(t: &mut Tally, s: &Session) {
    let b = s.basis(5, 33, Part::Full).unwrap();
    let v1 = b.subquotient(&w1()).unwrap();
    let v3 = b.subquotient(&w3()).unwrap();
    let d1 = groups::invariants_on(Space::Weight(&v1), 5, Group::Symmetric)
        .unwrap()
        .dim;
    let d3 = groups::invariants_on(Space::Weight(&v3), 5, Group::Symmetric)
        .unwrap()
        .dim;
    t.check(
        "criterion 5",
        (d1, d3) == (7, 18),
        format!("Sigma_5 invariants w1 {d1}, w3 {d3}, expected 7, 18"),
    );
}

fn criterion_6(t: &mut Tally, s: &Session) {
    let b33 = s.basis(5, 33, Part::Full).unwrap();
    let v1 = b33.subquotient(&w1()).unwrap();
    let v3 = b33.subquotient(&w3()).unwrap();
    let g1 = groups::invariants_on(Space::Weight(&v1), 5, Group::GeneralLinear)
        .unwrap()
        .dim;
    let g3 = groups::invariants_on(Space::Weight(&v3), 5, Group::GeneralLinear)
        .unwrap()
        .dim;
    let g33 = groups::invariants_on(Space::Full(&b33), 5, Group::GeneralLinear)
        .unwrap()
        .dim;
    let b14 = s.basis(5, 14, Part::Full).unwrap();
    let g14 = groups::invariants_on(Space::Full(&b14), 5, Group::GeneralLinear)
        .unwrap()
        .dim;
    let zeta_fixed =
        groups::verify_invariant_on(&b14, &data::zeta().unwrap(), Group::GeneralLinear).unwrap();
    t.check(
        "criterion 6",
        (g1, g3, g33, g14) == (0, 0, 1, 1) && zeta_fixed,
        format!(
            "GL_5 invariants w1 {g1}, w3 {g3}, full 33 {g33}, full 14 {g14} (zeta fixed: {zeta_fixed}), expected 0, 0, 1, 1, true"
        ),
    );
}

fn criterion_7(t: &mut Tally, s: &Session) {
    let b33 = s.basis(5, 33, Part::Full).unwrap();
    let f = kameko::kameko_up(&data::zeta().unwrap()).add(&data::xi().unwrap());
    let fixed = groups::verify_invariant_on(&b33, &f, Group::GeneralLinear).unwrap();
    let z0 = data::zeta0_dual().unwrap();
    let ann = dual::is_annihilated(&z0).unwrap();
    let pair = dual::pairing(&z0, &kameko::kameko_up(&data::zeta().unwrap())).unwrap();
    t.check(
        "criterion 7",
        fixed && ann && pair == 1,
        format!("phi(zeta)+xi GL-fixed: {fixed}, zeta0 annihilated: {ann}, pairing {pair}, expected true, true, 1"),
    );
}

fn criterion_8(t: &mut Tally, s: &Session) {
    let spike = hitcalc::monomial::minimal_spike(5, 71).unwrap();
    let basis = s.basis_restricted(5, 71, &spike.weight_vector()).unwrap();
    let report = kameko::kernel_from_basis(&basis).unwrap();
    let piece = |w: &WeightVector| {
        report
            .per_omega
            .iter()
            .find(|(x, _)| x == w)
            .map_or(0, |&(_, k)| k)
    };
    let wk1 = omega(&[3, 2, 2, 1, 1, 1]);
    let wk6 = omega(&[3, 4, 1, 1, 1, 1]);
    let (k1, k6) = (piece(&wk1), piece(&wk6));
    let others: usize = report
        .per_omega
        .iter()
        .filter(|(w, _)| w != &wk1 && w != &wk6)
        .map(|&(_, k)| k)
        .sum();
    let v1 = basis.subquotient(&wk1).unwrap();
    let v6 = basis.subquotient(&wk6).unwrap();
    let s1 = groups::invariants_on(Space::Weight(&v1), 5, Group::Symmetric)
        .unwrap()
        .dim;
    let s6 = groups::invariants_on(Space::Weight(&v6), 5, Group::Symmetric)
        .unwrap()
        .dim;
    let kernel_weights: Vec<WeightVector> =
        report.per_omega.iter().map(|(w, _)| w.clone()).collect();
    let gl = groups::invariants_on_weights(&basis, &kernel_weights, Group::GeneralLinear)
        .unwrap()
        .dim;
    let f = kameko::kameko_up(&kameko::kameko_up(&data::zeta().unwrap()))
        .add(&kameko::kameko_up(&data::xi().unwrap()))
        .add(&data::xi_tilde().unwrap());
    let fixed = groups::verify_invariant_on(&basis, &f, Group::GeneralLinear).unwrap();
    t.check(
        "criterion 8",
        (k1, k6, others, report.total) == (1395, 124, 0, 1519)
            && (s1, s6) == (27, 6)
            && gl == 0
            && fixed,
        format!(
            "kernel pieces {k1}+{k6} (others {others}, total {}), Sigma_5 {s1}/{s6}, GL {gl}, phi^2(zeta)+phi(xi)+xi~ fixed: {fixed}; expected 1395+124 (0, 1519), 27/6, 0, true",
            report.total
        ),
    );
}

fn criterion_9(t: &mut Tally, s: &Session) {
    let d315 = s.basis(3, 15, Part::Full).unwrap().dim();
    let b = s.basis(4, 33, Part::Positive).unwrap();
    let d433 = b.dim();
    let dw1 = b.subquotient(&w1()).unwrap().dim();
    let dw3 = b.subquotient(&w3()).unwrap().dim();
    t.check(
        "criterion 9",
        (d315, d433, dw1, dw3) == (13, 84, 17, 67),
        format!("(QP_3)_15 {d315}, (QP_4)^+_33 {d433} (w1 {dw1}, w3 {dw3}), expected 13, 84 (17, 67)"),
    );
}

fn poly_of(n: usize, terms: &[Monomial]) -> Polynomial {
    Polynomial::from_terms(n, terms.iter().cloned())
}

fn random_monomial(rng: &mut StdRng, n: usize, max_exp: u64) -> Monomial {
    Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect())
}

fn criterion_10(t: &mut Tally, s: &Session) {
    // generator oracle: the Sq^{2^s} span equals the span of all Sq^i
    let mut oracle_ok = true;
    for n in 1..=3usize {
        for d in 0..=24u64 {
            let a = s.basis(n, d, Part::Full).unwrap().dim();
            let b = oracle_cohit(n, d).unwrap().dim();
            if a != b {
                oracle_ok = false;
            }
        }
    }
    t.check(
        "criterion 10a",
        oracle_ok,
        "engine dims match the independent oracle for n <= 3, d <= 24".into(),
    );

    // vanishing in the degrees where no spike fits
    let mut wood_ok = true;
    for n in 1..=4usize {
        for d in 1..=40u64 {
            if mu(d) > n as u32 && s.basis(n, d, Part::Full).unwrap().dim() != 0 {
                wood_ok = false;
            }
        }
    }
    t.check(
        "criterion 10b",
        wood_ok,
        "(QP_n)_d = 0 whenever mu(d) > n, for n <= 4, d <= 40".into(),
    );

    let mut spikes_ok = true;
    for n in 1..=4usize {
        for d in 1..=40u64 {
            let spikes: Vec<Monomial> = enumerate_monomials(n, d, &MonomialFilter::All)
                .into_iter()
                .filter(|m| m.is_spike())
                .collect();
            if spikes.is_empty() {
                continue;
            }
            let b = s.basis(n, d, Part::Full).unwrap();
            if !spikes.iter().all(|m| b.is_admissible(m)) {
                spikes_ok = false;
            }
        }
    }
    t.check(
        "criterion 10c",
        spikes_ok,
        "every spike is admissible for n <= 4, d <= 40".into(),
    );

    // randomized Cartan formula and dual adjointness
    let mut rng = StdRng::seed_from_u64(0xacce97);
    let mut cartan_ok = true;
    for _ in 0..6000 {
        let n = rng.gen_range(1..=3);
        let f = poly_of(n, &[random_monomial(&mut rng, n, 9)]);
        let g = poly_of(n, &[random_monomial(&mut rng, n, 9)]);
        let k = rng.gen_range(0..=16u64);
        let lhs = sq(k, &f.mul(&g));
        let mut rhs = Polynomial::zero(n);
        for i in 0..=k {
            rhs = rhs.add(&sq(i, &f).mul(&sq(k - i, &g)));
        }
        if lhs != rhs {
            cartan_ok = false;
        }
    }
    let mut adjoint_ok = true;
    for _ in 0..6000 {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=8u64);
        let g = poly_of(
            n,
            &(0..rng.gen_range(1..=3))
                .map(|_| random_monomial(&mut rng, n, 6))
                .collect::<Vec<_>>(),
        );
        let Some(dg) = g.homogeneous_degree() else {
            continue;
        };
        let candidates = enumerate_monomials(n, dg + k, &MonomialFilter::All);
        let f = DualPolynomial::from_terms(
            n,
            candidates.into_iter().filter(|_| rng.gen_bool(0.3)),
        );
        let lhs = dual::pairing(&dual::right_sq(k, &f), &g).unwrap();
        let rhs = dual::pairing(&f, &sq(k, &g)).unwrap();
        if lhs != rhs {
            adjoint_ok = false;
        }
    }
    t.check(
        "criterion 10d",
        cartan_ok && adjoint_ok,
        format!("12000 randomized Cartan and adjointness cases (cartan {cartan_ok}, adjoint {adjoint_ok})"),
    );

    // weight subquotients decompose the full space at (5, 33)
    let b33 = s.basis(5, 33, Part::Full).unwrap();
    let sum: usize = b33.weight_dims().iter().map(|&(_, k)| k).sum();
    t.check(
        "criterion 10e",
        sum == b33.dim(),
        format!("weight dims sum {sum} equals dim {} at (5, 33)", b33.dim()),
    );

    // identical output under different thread counts
    let run = |threads: usize| -> (usize, Vec<Monomial>) {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let b = cohit_basis(5, 14).unwrap();
            (b.rank(), b.admissibles())
        })
    };
    let r1 = run(1);
    let r4 = run(4);
    let r8 = run(8);
    t.check(
        "criterion 10f",
        r1 == r4 && r4 == r8,
        "rank and admissibles identical under 1, 4, and 8 threads at (5, 14)".into(),
    );
}

#[test]
fn acceptance() {
    let session = Session::in_memory();
    let mut t = Tally { failures: Vec::new() };
    criterion_1(&mut t, &session);
    criterion_2(&mut t, &session);
    criterion_3(&mut t, &session);
    criterion_4(&mut t, &session);
    criterion_5(&mut t, &session);
    criterion_6(&mut t, &session);
    criterion_7(&mut t, &session);
    criterion_8(&mut t, &session);
    criterion_9(&mut t, &session);
    criterion_10(&mut t, &session);
    assert!(t.failures.is_empty(), "failed criteria:\n{}", t.failures.join("\n"));
}
