fn main() {
    let t = std::time::Instant::now();
    let b = hitcalc::hit::cohit_basis(5, 33).unwrap();
    println!(
        "full dim={} rank={} ncols={} in {:?}",
        b.dim(),
        b.rank(),
        b.ncols(),
        t.elapsed()
    );
    let (rl, rc) = b.storage_stats();
    println!("rows len={rl} cap={rc}");
    for (w, k) in b.weight_dims() {
        if k > 0 {
            println!("  omega {:?} dim {}", w.entries(), k);
        }
    }
}
