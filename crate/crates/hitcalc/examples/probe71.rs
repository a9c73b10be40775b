use std::time::Instant;

use hitcalc::data;
use hitcalc::groups::{invariants_on, invariants_on_weights, verify_invariant_on, Group, Space};
use hitcalc::kameko::{kameko_kernel_restricted, kameko_up};

fn main() {
    let t0 = Instant::now();
    let (basis, report) = kameko_kernel_restricted(5, 71).unwrap();
    let (entries, cap) = basis.storage_stats();
    println!(
        "restricted ncols={} rank={} rows len={} cap={} [{:?}]",
        basis.ncols(),
        basis.rank(),
        entries,
        cap,
        t0.elapsed()
    );
    println!("kernel total = {}", report.total);
    for (w, dim) in &report.per_omega {
        println!("  {:?} -> {}", w.entries(), dim);
    }
    for (w, dim) in &report.per_omega {
        if *dim == 0 {
            continue;
        }
        let view = basis.subquotient(w).unwrap();
        let t = Instant::now();
        let s = invariants_on(Space::Weight(&view), 5, Group::Symmetric).unwrap();
        let g = invariants_on(Space::Weight(&view), 5, Group::GeneralLinear).unwrap();
        println!(
            "  {:?}: sigma={} gl={} [{:?}]",
            w.entries(),
            s.dim,
            g.dim,
            t.elapsed()
        );
    }
    let t = Instant::now();
    let weights: Vec<_> = report.per_omega.iter().map(|(w, _)| w.clone()).collect();
    let glued = invariants_on_weights(&basis, &weights, Group::GeneralLinear).unwrap();
    println!("kernel gl invariants = {} [{:?}]", glued.dim, t.elapsed());
    let t = Instant::now();
    let f = kameko_up(&kameko_up(&data::zeta().unwrap()))
        .add(&kameko_up(&data::xi().unwrap()))
        .add(&data::xi_tilde().unwrap());
    let fixed = verify_invariant_on(&basis, &f, Group::GeneralLinear).unwrap();
    println!("phi^2(zeta)+phi(xi)+xi~ gl-fixed = {fixed} [{:?}]", t.elapsed());
    println!("total elapsed {:?}", t0.elapsed());
}
