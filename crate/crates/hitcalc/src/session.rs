//! In-process memoization and optional on-disk caching of computed echelon
//! bases, shared by the CLI and long test runs.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use crate::error::Result;
use crate::gf2::{read_cache, write_cache};
use crate::hit::{cohit_basis_part, cohit_basis_restricted, CohitBasis, Part};
use crate::monomial::WeightVector;

type Key = (usize, u64, &'static str, Option<WeightVector>);

/// A store of computed bases keyed by `(n, d, part, weight floor)`. With a
/// cache directory set, echelons are persisted in the binary cache format
/// and validated against the column-order hash on load; corrupt or stale
/// files are recomputed with a warning.
pub struct Session {
    cache_dir: Option<PathBuf>,
    store: Mutex<HashMap<Key, Arc<CohitBasis>>>,
}

impl Session {
    pub fn new(cache_dir: Option<PathBuf>) -> Session {
        Session {
            cache_dir,
            store: Mutex::new(HashMap::new()),
        }
    }

    pub fn in_memory() -> Session {
        Session::new(None)
    }

    pub fn basis(&self, n: usize, d: u64, part: Part) -> Result<Arc<CohitBasis>> {
        self.get((n, d, part.as_str(), None), || cohit_basis_part(n, d, part))
    }

    pub fn basis_restricted(
        &self,
        n: usize,
        d: u64,
        min_omega: &WeightVector,
    ) -> Result<Arc<CohitBasis>> {
        self.get((n, d, "restricted", Some(min_omega.clone())), || {
            cohit_basis_restricted(n, d, min_omega)
        })
    }

    fn get(&self, key: Key, compute: impl FnOnce() -> Result<CohitBasis>) -> Result<Arc<CohitBasis>> {
        if let Some(b) = self.store.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let basis = Arc::new(self.load_or_compute(&key, compute)?);
        self.store
            .lock()
            .unwrap()
            .insert(key, basis.clone());
        Ok(basis)
    }

    fn load_or_compute(
        &self,
        key: &Key,
        compute: impl FnOnce() -> Result<CohitBasis>,
    ) -> Result<CohitBasis> {
        let Some(dir) = &self.cache_dir else {
            return compute();
        };
        let (n, d, part, floor) = key;
        // the filename is advisory; the embedded column-order hash is what
        // guarantees the cached echelon matches this context
        let tag = match floor {
            Some(w) => format!(
                "_w{}",
                w.entries()
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("-")
            ),
            None => String::new(),
        };
        let path = dir.join(format!("qp_n{n}_d{d}_{part}{tag}.hitc"));
        let probe = match floor {
            Some(w) => crate::hit::Columns::build_restricted(
                *n,
                *d,
                Part::Full,
                Some(crate::monomial::Packing::new(*n, (*d).max(1))?.weight_key(w)),
            )?,
            None => {
                let p = match *part {
                    "zero" => Part::Zero,
                    "positive" => Part::Positive,
                    _ => Part::Full,
                };
                crate::hit::Columns::build(*n, *d, p)?
            }
        };
        let hash = probe.order_hash();
        if path.is_file() {
            match read_cache(&path, *n as u32, *d, floor.as_ref(), &hash, probe.ncols()) {
                Ok(ech) => {
                    return Ok(CohitBasis::from_parts(Arc::new(probe), ech));
                }
                Err(e) => {
                    eprintln!(
                        "warning: ignoring cache {} ({e}); recomputing",
                        path.display()
                    );
                }
            }
        }
        let basis = compute()?;
        std::fs::create_dir_all(dir)?;
        if let Err(e) = write_cache(
            &path,
            *n as u32,
            *d,
            floor.as_ref(),
            &basis.columns().order_hash(),
            basis.echelon(),
        ) {
            eprintln!("warning: could not write cache {} ({e})", path.display());
        }
        Ok(basis)
    }
}
