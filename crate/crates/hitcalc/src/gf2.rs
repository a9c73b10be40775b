//! Streaming row-echelon engine over the two-element field.
//!
//! Rows live over a fixed ordered column set (columns in DESCENDING monomial
//! order, so the leading bit of a relation is its largest monomial). Rows
//! are frozen once inserted: the basis is in row-echelon form, not reduced
//! form. Keeping the basis reduced would force back-substitution into every
//! stored row on each insert, and at large column counts that densifies the
//! rows quadratically; with frozen rows the footprint is the sum of the
//! residual sizes at insertion time. Reduction of an incoming vector walks
//! its support in ascending column order through a dense bit accumulator
//! (the full column set is well under a megabyte of bits), folding in pivot
//! rows as their pivots appear. The residual it produces is supported on
//! non-pivot columns only and is the canonical coset representative,
//! independent of the insertion history.
//!
//! Stored rows are delta-varint compressed index lists (LEB128 gaps), which
//! roughly halves the footprint of the million-column computations; images
//! of Steenrod squares are far too sparse for dense rows to pay off.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::monomial::WeightVector;

/// A dense bit vector of `ncols` columns, 64 per word, little-endian words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitRow {
    words: Vec<u64>,
    ncols: usize,
}

impl BitRow {
    pub fn zero(ncols: usize) -> BitRow {
        BitRow {
            words: vec![0; ncols.div_ceil(64)],
            ncols,
        }
    }

    pub fn from_support(ncols: usize, support: &[u32]) -> BitRow {
        let mut r = BitRow::zero(ncols);
        for &c in support {
            r.set(c as usize);
        }
        r
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.ncols, other.ncols);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Lowest set column index.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    pub fn support(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.push((i * 64) as u32 + w.trailing_zeros());
                w &= w - 1;
            }
        }
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

const NO_PIVOT: u32 = u32::MAX;

/// Encodes a sorted support list as a raw `u32` first index followed by
/// byte gaps: a nonzero byte is the gap itself, a zero byte escapes to a
/// raw little-endian `u32` gap. Gaps between sorted entries are almost
/// always small, so this is about one byte per entry and decodes with a
/// single well-predicted branch.
fn encode_row(support: &[u32]) -> Vec<u8> {
    let mut out = Vec::with_capacity(support.len() + 8);
    let mut prev = 0;
    for (i, &c) in support.iter().enumerate() {
        if i == 0 {
            out.extend_from_slice(&c.to_le_bytes());
        } else {
            let gap = c - prev;
            if gap < 256 {
                out.push(gap as u8);
            } else {
                out.push(0);
                out.extend_from_slice(&gap.to_le_bytes());
            }
        }
        prev = c;
    }
    out.shrink_to_fit();
    out
}

/// Decodes a gap-encoded row back to ascending column indices.
struct RowIter<'a> {
    bytes: &'a [u8],
    acc: u32,
    first: bool,
}

fn decode_row(bytes: &[u8]) -> RowIter<'_> {
    RowIter {
        bytes,
        acc: 0,
        first: true,
    }
}

impl RowIter<'_> {
    fn take_u32(&mut self) -> u32 {
        let v = u32::from_le_bytes(self.bytes[..4].try_into().unwrap());
        self.bytes = &self.bytes[4..];
        v
    }
}

impl Iterator for RowIter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.first {
            if self.bytes.is_empty() {
                return None;
            }
            self.first = false;
            self.acc = self.take_u32();
            return Some(self.acc);
        }
        let (&b, rest) = self.bytes.split_first()?;
        self.bytes = rest;
        self.acc += if b != 0 { b as u32 } else { self.take_u32() };
        Some(self.acc)
    }
}

/// In-RAM byte budget of a `RowArena` before it spills to disk. Large
/// eliminations generate more residual data than fits in memory.
const ARENA_MEM_BUDGET: usize = 256 << 20;

/// Flush granularity of the disk tier.
const ARENA_HOT_BUDGET: usize = 64 << 20;

const DISK_BIT: u64 = 1 << 63;

/// Append-only store for encoded rows: an in-RAM tier up to a byte budget,
/// then an unlinked temporary file read back through a memory map, so cold
/// rows live in the page cache at the kernel's discretion.
struct RowArena {
    /// Per-row `(offset, byte length)`; the top offset bit marks the disk
    /// tier.
    spans: Vec<(u64, u32)>,
    mem: Vec<u8>,
    entries: usize,
    disk: Option<DiskTier>,
}

struct DiskTier {
    file: std::fs::File,
    map: Option<memmap2::Mmap>,
    flushed: u64,
    hot: Vec<u8>,
}

impl DiskTier {
    fn flush(&mut self) -> std::io::Result<()> {
        self.file.write_all(&self.hot)?;
        self.flushed += self.hot.len() as u64;
        self.hot.clear();
        // SAFETY: the file is unlinked and private to this process, and the
        // map is rebuilt after every append, so the mapped prefix is stable.
        self.map = Some(unsafe { memmap2::Mmap::map(&self.file)? });
        Ok(())
    }
}

impl RowArena {
    fn new() -> RowArena {
        RowArena {
            spans: Vec::new(),
            mem: Vec::new(),
            entries: 0,
            disk: None,
        }
    }

    fn len(&self) -> usize {
        self.spans.len()
    }

    fn push(&mut self, bytes: &[u8], entries: usize) -> std::io::Result<()> {
        self.entries += entries;
        if self.disk.is_none() && self.mem.len() + bytes.len() <= ARENA_MEM_BUDGET {
            self.spans.push((self.mem.len() as u64, bytes.len() as u32));
            self.mem.extend_from_slice(bytes);
            return Ok(());
        }
        if self.disk.is_none() {
            self.disk = Some(DiskTier {
                file: tempfile::tempfile()?,
                map: None,
                flushed: 0,
                hot: Vec::new(),
            });
        }
        let t = self.disk.as_mut().unwrap();
        let off = t.flushed + t.hot.len() as u64;
        self.spans.push((DISK_BIT | off, bytes.len() as u32));
        t.hot.extend_from_slice(bytes);
        if t.hot.len() >= ARENA_HOT_BUDGET {
            t.flush()?;
        }
        Ok(())
    }

    fn get(&self, id: usize) -> &[u8] {
        let (off, len) = self.spans[id];
        let len = len as usize;
        if off & DISK_BIT == 0 {
            return &self.mem[off as usize..off as usize + len];
        }
        let t = self.disk.as_ref().unwrap();
        let off = off & !DISK_BIT;
        if off >= t.flushed {
            let o = (off - t.flushed) as usize;
            &t.hot[o..o + len]
        } else {
            &t.map.as_ref().unwrap()[off as usize..off as usize + len]
        }
    }

    fn bytes(&self) -> usize {
        self.mem.len() + self.disk.as_ref().map_or(0, |t| t.flushed as usize + t.hot.len())
    }
}

/// Online row-echelon basis with sparse, frozen, compressed rows.
pub struct EchelonBasis {
    ncols: usize,
    /// Delta-varint encoded sorted supports; the first index is the pivot.
    rows: RowArena,
    pivots: Vec<u32>,
    pivot_of_col: Vec<u32>,
}

impl EchelonBasis {
    pub fn new(ncols: usize) -> EchelonBasis {
        EchelonBasis {
            ncols,
            rows: RowArena::new(),
            pivots: Vec::new(),
            pivot_of_col: vec![NO_PIVOT; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_of_col[col as usize] != NO_PIVOT
    }

    /// XORs the full row `id` (pivot included) into a dense accumulator.
    /// Every entry is at or after the row's pivot, so the accumulator never
    /// gains bits before the fold position.
    fn fold(&self, bits: &mut [u64], id: u32) {
        for e in decode_row(self.rows.get(id as usize)) {
            bits[e as usize / 64] ^= 1 << (e % 64);
        }
    }

    /// Reduces a sorted support list against the basis; the residual has no
    /// support on pivot columns. A dense bit accumulator is swept in
    /// ascending column order, and each pivot row is merged exactly when its
    /// pivot column surfaces set. This is correct even though stored rows
    /// may carry pivot columns that became pivots after they were frozen:
    /// any such column is folded in turn when it surfaces.
    pub fn reduce_support(&self, support: &[u32]) -> Vec<u32> {
        debug_assert!(support.windows(2).all(|w| w[0] < w[1]));
        if support
            .iter()
            .all(|&c| self.pivot_of_col[c as usize] == NO_PIVOT)
        {
            return support.to_vec();
        }
        let mut bits = self.accumulator(support);
        let mut out = Vec::new();
        self.sweep(&mut bits, |c| {
            out.push(c);
            true
        });
        out
    }

    fn accumulator(&self, support: &[u32]) -> Vec<u64> {
        let mut bits = vec![0u64; self.ncols.div_ceil(64)];
        for &c in support {
            bits[c as usize / 64] ^= 1 << (c % 64);
        }
        bits
    }

    /// Ascending sweep of the accumulator: pivot columns are folded away,
    /// pivot-free columns are cleared and handed to `on_free`, which may
    /// return `false` to stop early.
    fn sweep(&self, bits: &mut [u64], mut on_free: impl FnMut(u32) -> bool) {
        let mut w = 0;
        while w < bits.len() {
            if bits[w] == 0 {
                w += 1;
                continue;
            }
            let c = (w * 64) as u32 + bits[w].trailing_zeros();
            match self.pivot_of_col[c as usize] {
                NO_PIVOT => {
                    bits[w] &= bits[w] - 1;
                    if !on_free(c) {
                        return;
                    }
                }
                id => self.fold(bits, id),
            }
        }
    }

    /// Membership of the vector in the row span: the sweep stops at the
    /// first pivot-free column, which decides the question early.
    pub fn in_span(&self, support: &[u32]) -> bool {
        let mut bits = self.accumulator(support);
        let mut free = false;
        self.sweep(&mut bits, |_| {
            free = true;
            false
        });
        !free
    }

    /// Inserts a row given by sorted support; returns whether the rank grew.
    pub fn insert_support(&mut self, support: Vec<u32>) -> bool {
        let residual = self.reduce_support(&support);
        if residual.is_empty() {
            return false;
        }
        self.commit(&residual);
        true
    }

    pub fn insert(&mut self, row: &BitRow) -> Result<bool> {
        if row.ncols() != self.ncols {
            return Err(Error::DimensionMismatch(row.ncols(), self.ncols));
        }
        Ok(self.insert_support(row.support()))
    }

    pub fn reduce(&self, row: &BitRow) -> Result<BitRow> {
        if row.ncols() != self.ncols {
            return Err(Error::DimensionMismatch(row.ncols(), self.ncols));
        }
        Ok(BitRow::from_support(
            self.ncols,
            &self.reduce_support(&row.support()),
        ))
    }

    pub fn member(&self, row: &BitRow) -> Result<bool> {
        if row.ncols() != self.ncols {
            return Err(Error::DimensionMismatch(row.ncols(), self.ncols));
        }
        Ok(self.in_span(&row.support()))
    }

    /// Installs a reduced nonzero residual as a frozen row.
    fn commit(&mut self, residual: &[u32]) {
        let p = residual[0];
        debug_assert_eq!(self.pivot_of_col[p as usize], NO_PIVOT);
        self.pivot_of_col[p as usize] = self.rows.len() as u32;
        self.pivots.push(p);
        self.rows
            .push(&encode_row(residual), residual.len())
            .expect("row arena spill file");
    }

    /// Batched insertion: candidates are reduced in parallel against a
    /// snapshot of the basis, then committed serially (folding in whatever
    /// pivots appeared after the snapshot). The snapshot and the serial
    /// order are both deterministic, so the result does not depend on
    /// batching or thread count.
    pub fn insert_batch(&mut self, batch: Vec<Vec<u32>>) {
        use rayon::prelude::*;
        let reduced: Vec<Option<Vec<u32>>> = batch
            .par_iter()
            .map(|s| {
                let r = self.reduce_support(s);
                if r.is_empty() {
                    None
                } else {
                    Some(r)
                }
            })
            .collect();
        for r in reduced.into_iter().flatten() {
            self.insert_support(r);
        }
    }

    /// Debug validation of the echelon invariants.
    pub fn check_invariants(&self) -> bool {
        for i in 0..self.rows.len() {
            let row: Vec<u32> = decode_row(self.rows.get(i)).collect();
            if row.is_empty() || row[0] != self.pivots[i] {
                return false;
            }
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            if self.pivot_of_col[row[0] as usize] != i as u32 {
                return false;
            }
        }
        self.pivots.len() == self.rows.len()
    }

    /// Decoded row supports, for serialization and kernel extraction.
    pub fn rows(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.rows.len()).map(|i| decode_row(self.rows.get(i)).collect())
    }

    /// `(row support entries, encoded row bytes)`, for storage accounting.
    pub fn storage_stats(&self) -> (usize, usize) {
        (self.rows.entries, self.rows.bytes())
    }

    /// Rewrites every row in fully reduced form: tails become supported on
    /// current non-pivot columns only. Mid-elimination residuals can be
    /// dense, but once few non-pivot columns remain the reduced rows are
    /// short, so compacting near rank saturation shrinks storage and makes
    /// later reductions cheap (no more folding of stale pivot entries).
    /// Insertions after a compaction may introduce new staleness; compacting
    /// again is then cheap because most rows hit the fast path. The row
    /// space, pivots, and all reductions are unchanged.
    pub fn compact(&mut self) {
        let n = self.rank();
        if n == 0 {
            return;
        }
        // processing in descending pivot order means every fold target is
        // already rewritten, so no canonization ever cascades
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_unstable_by_key(|&i| std::cmp::Reverse(self.pivots[i as usize]));
        let old = std::mem::replace(&mut self.rows, RowArena::new());
        let old_pivots = std::mem::take(&mut self.pivots);
        let mut pivot_of_col = vec![NO_PIVOT; self.ncols];
        let mut pivots = Vec::with_capacity(n);
        let mut bits = vec![0u64; self.ncols.div_ceil(64)];
        let mut row = Vec::new();
        for &i in &order {
            row.clear();
            row.extend(decode_row(old.get(i as usize)));
            let p = row[0];
            debug_assert_eq!(p, old_pivots[i as usize]);
            if row[1..]
                .iter()
                .any(|&c| pivot_of_col[c as usize] != NO_PIVOT)
            {
                bits.fill(0);
                for &c in &row[1..] {
                    bits[c as usize / 64] ^= 1 << (c % 64);
                }
                row.truncate(1);
                let mut w = p as usize / 64;
                while w < bits.len() {
                    if bits[w] == 0 {
                        w += 1;
                        continue;
                    }
                    let c = (w * 64) as u32 + bits[w].trailing_zeros();
                    match pivot_of_col[c as usize] {
                        NO_PIVOT => {
                            bits[w as usize] &= bits[w as usize] - 1;
                            row.push(c);
                        }
                        id => {
                            for e in decode_row(self.rows.get(id as usize)) {
                                bits[e as usize / 64] ^= 1 << (e % 64);
                            }
                        }
                    }
                }
            }
            pivot_of_col[p as usize] = pivots.len() as u32;
            pivots.push(p);
            self.rows
                .push(&encode_row(&row), row.len())
                .expect("row arena spill file");
        }
        self.pivots = pivots;
        self.pivot_of_col = pivot_of_col;
    }
}

/// Basis of the intersection of the kernels of row-major operators: vectors
/// `v` with `sum_j v_j * op.row_j = 0` for every operator.
pub fn kernel_intersection(maps: &[Vec<BitRow>]) -> Result<Vec<BitRow>> {
    let dim = maps.first().map_or(0, |m| m.len());
    for m in maps {
        if m.len() != dim {
            return Err(Error::DimensionMismatch(m.len(), dim));
        }
        for r in m {
            if r.ncols() != dim {
                return Err(Error::DimensionMismatch(r.ncols(), dim));
            }
        }
    }
    // stack the operators side by side and augment with the identity; rows
    // of the reduced echelon whose pivot lands in the identity block encode
    // kernel vectors
    let width = maps.len() * dim + dim;
    let mut basis = EchelonBasis::new(width);
    for j in 0..dim {
        let mut support = Vec::new();
        for (k, m) in maps.iter().enumerate() {
            for c in m[j].support() {
                support.push((k * dim) as u32 + c);
            }
        }
        support.push((maps.len() * dim + j) as u32);
        support.sort_unstable();
        basis.insert_support(support);
    }
    let off = (maps.len() * dim) as u32;
    let mut kernel = Vec::new();
    for row in basis.rows() {
        if row[0] >= off {
            let mut v = BitRow::zero(dim);
            for &c in &row {
                v.set((c - off) as usize);
            }
            kernel.push(v);
        }
    }
    kernel.sort_by_key(|r| r.leading());
    Ok(kernel)
}

const MAGIC: &[u8; 5] = b"HITC1";

/// Writes the cache format: magic `HITC1`, n, d, optional omega, the
/// column-order hash, rank, then sparse rows in ascending pivot order, each
/// as a little-endian u32 length followed by its sorted u32 support.
pub fn write_cache(
    path: &Path,
    n: u32,
    d: u64,
    omega: Option<&WeightVector>,
    col_hash: &[u8; 32],
    basis: &EchelonBasis,
) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    f.write_all(MAGIC)?;
    f.write_all(&n.to_le_bytes())?;
    f.write_all(&d.to_le_bytes())?;
    match omega {
        None => f.write_all(&[0xFF])?,
        Some(w) => {
            let entries = w.entries();
            f.write_all(&[entries.len() as u8])?;
            for &e in entries {
                f.write_all(&e.to_le_bytes())?;
            }
        }
    }
    f.write_all(col_hash)?;
    f.write_all(&(basis.rank() as u64).to_le_bytes())?;
    let mut order: Vec<u32> = (0..basis.rank() as u32).collect();
    order.sort_by_key(|&i| basis.pivots[i as usize]);
    for i in order {
        let row: Vec<u32> = decode_row(basis.rows.get(i as usize)).collect();
        f.write_all(&(row.len() as u32).to_le_bytes())?;
        for &c in row.iter() {
            f.write_all(&c.to_le_bytes())?;
        }
    }
    f.flush()?;
    Ok(())
}

/// Reads the cache format back, validating magic, header, and column hash.
pub fn read_cache(
    path: &Path,
    n: u32,
    d: u64,
    omega: Option<&WeightVector>,
    col_hash: &[u8; 32],
    ncols: usize,
) -> Result<EchelonBasis> {
    let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
    let mut magic = [0u8; 5];
    f.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    f.read_exact(&mut b4)?;
    if u32::from_le_bytes(b4) != n {
        return Err(Error::Cache("variable count mismatch".into()));
    }
    f.read_exact(&mut b8)?;
    if u64::from_le_bytes(b8) != d {
        return Err(Error::Cache("degree mismatch".into()));
    }
    let mut lb = [0u8; 1];
    f.read_exact(&mut lb)?;
    let file_omega = if lb[0] == 0xFF {
        None
    } else {
        let mut entries = vec![0u32; lb[0] as usize];
        for e in entries.iter_mut() {
            f.read_exact(&mut b4)?;
            *e = u32::from_le_bytes(b4);
        }
        Some(WeightVector::new(entries))
    };
    if file_omega.as_ref() != omega {
        return Err(Error::Cache("weight vector mismatch".into()));
    }
    let mut hash = [0u8; 32];
    f.read_exact(&mut hash)?;
    if &hash != col_hash {
        return Err(Error::Cache("column-order hash mismatch".into()));
    }
    f.read_exact(&mut b8)?;
    let rank = u64::from_le_bytes(b8) as usize;
    if rank > ncols {
        return Err(Error::Cache("rank exceeds column count".into()));
    }
    let mut basis = EchelonBasis::new(ncols);
    for _ in 0..rank {
        f.read_exact(&mut b4)?;
        let len = u32::from_le_bytes(b4) as usize;
        if len == 0 || len > ncols {
            return Err(Error::Cache("bad row length".into()));
        }
        let mut support = vec![0u32; len];
        for c in support.iter_mut() {
            f.read_exact(&mut b4)?;
            *c = u32::from_le_bytes(b4);
        }
        if support.windows(2).any(|w| w[0] >= w[1])
            || support.last().is_some_and(|&c| c as usize >= ncols)
        {
            return Err(Error::Cache("row support is not sorted in range".into()));
        }
        basis.load_row(&support)?;
    }
    if !basis.check_invariants() {
        return Err(Error::Cache("rows are not in echelon form".into()));
    }
    Ok(basis)
}

impl EchelonBasis {
    /// Installs a stored row while deserializing.
    fn load_row(&mut self, support: &[u32]) -> Result<()> {
        let p = support[0];
        if self.pivot_of_col[p as usize] != NO_PIVOT {
            return Err(Error::Cache("duplicate pivot".into()));
        }
        self.pivot_of_col[p as usize] = self.rows.len() as u32;
        self.pivots.push(p);
        self.rows.push(&encode_row(support), support.len())?;
        Ok(())
    }
}

/// SHA-256 hash of an ordered column layout given by packed monomial codes.
pub fn column_order_hash(codes: &[u64]) -> [u8; 32] {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    for &c in codes {
        h.update(c.to_le_bytes());
    }
    h.finalize().into()
}

/// Content digest used to key cache files on disk.
pub fn hash_hex(bytes: &[u8; 32]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
