use std::time::Instant;

use hitcalc::data;
use hitcalc::dual::{is_annihilated, pairing};
use hitcalc::groups::{invariants_on, verify_invariant_on, Group, Space};
use hitcalc::hit::cohit_basis;
use hitcalc::kameko::kameko_up;
use hitcalc::monomial::WeightVector;

fn main() {
    let t0 = Instant::now();
    let b14 = cohit_basis(5, 14).unwrap();
    let g14 = invariants_on(Space::Full(&b14), 5, Group::GeneralLinear).unwrap();
    println!("(5,14) GL dim = {} [{:?}]", g14.dim, t0.elapsed());
    let zeta = data::zeta().unwrap();
    println!(
        "zeta fixed: {}",
        verify_invariant_on(&b14, &zeta, Group::GeneralLinear).unwrap()
    );

    let t1 = Instant::now();
    let b33 = cohit_basis(5, 33).unwrap();
    println!("(5,33) dim = {} [{:?}]", b33.dim(), t1.elapsed());
    let w1 = WeightVector::new(vec![3, 1, 1, 1, 1]);
    let w3 = WeightVector::new(vec![3, 3, 2, 2]);
    for (name, w) in [("w1", &w1), ("w3", &w3)] {
        let view = b33.subquotient(w).unwrap();
        let t = Instant::now();
        let s = invariants_on(Space::Weight(&view), 5, Group::Symmetric).unwrap();
        let g = invariants_on(Space::Weight(&view), 5, Group::GeneralLinear).unwrap();
        println!(
            "{name}: dim={} sigma={} gl={} [{:?}]",
            view.dim(),
            s.dim,
            g.dim,
            t.elapsed()
        );
    }
    let t2 = Instant::now();
    let gfull = invariants_on(Space::Full(&b33), 5, Group::GeneralLinear).unwrap();
    println!("(5,33) GL dim = {} [{:?}]", gfull.dim, t2.elapsed());

    let phi_zeta = kameko_up(&zeta);
    let cls = phi_zeta.add(&data::xi().unwrap());
    println!(
        "phi(zeta)+xi fixed: {}",
        verify_invariant_on(&b33, &cls, Group::GeneralLinear).unwrap()
    );
    let z0 = data::zeta0_dual().unwrap();
    println!("zeta0 annihilated: {}", is_annihilated(&z0).unwrap());
    println!("pairing(zeta0, phi(zeta)) = {}", pairing(&z0, &phi_zeta).unwrap());
}
