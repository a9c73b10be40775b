use hitcalc::monomial::{enumerate_monomials, minimal_spike, MonomialFilter};

fn main() {
    let spike_w = minimal_spike(5, 71).unwrap().weight_vector();
    let all = enumerate_monomials(5, 71, &MonomialFilter::All);
    let mut total = 0usize;
    let mut per: std::collections::BTreeMap<Vec<u32>, usize> = Default::default();
    for m in &all {
        let w = m.weight_vector();
        if w >= spike_w {
            total += 1;
            *per.entry(w.entries().to_vec()).or_default() += 1;
        }
    }
    println!("full = {}, restricted = {}", all.len(), total);
    for (w, c) in per {
        println!("{w:?} {c}");
    }
}
