//! Exact rank, echelon bases and left kernels over a prime field.
//!
//! Everything is row-oriented: rows are generators or conditions, columns
//! are monomials. Rows are reduced against an echelon basis whose pivot rows
//! are stored from their pivot column onward with a leading 1. The reduced
//! form of a vector against such a basis is unique, so the order in which
//! pivots are applied (and how work is split across threads) never changes
//! the result.

use rayon::prelude::*;

use crate::error::{structural, Result};
use crate::field::PrimeField;

/// Rows pulled from a stream before they are reduced together.
const BATCH_ROWS: usize = 32;
/// Pivot rows applied to a batch before moving on, sized to stay cache resident.
const PIVOT_BLOCK: usize = 48;

const MERSENNE31: u64 = (1 << 31) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
    field: PrimeField,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<u32>, field: PrimeField) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(structural(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.iter().any(|&x| x >= field.modulus()) {
            return Err(structural("matrix entry is not a canonical residue"));
        }
        Ok(DenseMatrix { rows, cols, entries, field })
    }

    pub fn zeros(rows: usize, cols: usize, field: PrimeField) -> Self {
        DenseMatrix { rows, cols, entries: vec![0; rows * cols], field }
    }

    pub fn identity(n: usize, field: PrimeField) -> Self {
        let mut m = Self::zeros(n, n, field);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, field: PrimeField) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(structural(format!("row {i} has length {}, expected {cols}", r.len())));
            }
            entries.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, entries, field)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.entries[i * self.cols + j];
            }
        }
        t
    }

    /// `v·M` for a row vector `v` of length `rows`.
    pub fn left_mul(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.rows, "vector length must equal row count");
        let p = self.field.modulus() as u64;
        let mut acc = vec![0u64; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(self.row(i)) {
                *a = (*a + c as u64 * x as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// `M·x` for a column vector `x` of length `cols`.
    pub fn right_mul(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols, "vector length must equal column count");
        let p = self.field.modulus() as u64;
        self.row_iter()
            .map(|r| r.iter().zip(x).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p) as u32)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    /// Sorted pivot columns of the row space.
    pub pivot_columns: Vec<usize>,
    /// `cols − rank`.
    pub nullity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamingRank {
    pub result: RankResult,
    /// Rows pulled from the source, up to and including the row that completed the rank.
    pub rows_consumed: usize,
    /// The stream was abandoned because the rank reached the column count.
    pub early_exit: bool,
}

/// Accumulation strategy for rows under reduction.
///
/// Rows hold unreduced `u64` values; up to `limit` products `< p²` are added
/// before the touched range is brought back down.
#[derive(Clone, Copy, Debug)]
enum Kernel {
    /// p = 2³¹ − 1: flushing folds the high bits down, leaving values below 2³⁴.
    Mersenne,
    /// Generic p: flushing reduces with `%`.
    Lazy { p: u64, limit: u32 },
}

struct WorkRow {
    vals: Vec<u64>,
    pending: u32,
    /// Leftmost column written since the last flush.
    dirty: usize,
}

impl Kernel {
    fn for_field(field: &PrimeField) -> Self {
        if field.is_mersenne31() {
            Kernel::Mersenne
        } else {
            let p = field.modulus() as u64;
            let sq = (p - 1) * (p - 1);
            Kernel::Lazy { p, limit: ((u64::MAX - p) / sq).min(u32::MAX as u64) as u32 }
        }
    }

    fn limit(&self) -> u32 {
        match *self {
            // 2³⁴ + 3·(2³¹)² < 2⁶⁴
            Kernel::Mersenne => 3,
            Kernel::Lazy { limit, .. } => limit,
        }
    }

    #[inline]
    fn read(&self, x: u64) -> u32 {
        match *self {
            Kernel::Mersenne => {
                let y = (x & MERSENNE31) + (x >> 31);
                let y = (y & MERSENNE31) + (y >> 31);
                if y >= MERSENNE31 {
                    (y - MERSENNE31) as u32
                } else {
                    y as u32
                }
            }
            Kernel::Lazy { p, .. } => (x % p) as u32,
        }
    }

    fn flush(&self, dst: &mut [u64]) {
        match *self {
            Kernel::Mersenne => fold_mersenne(dst),
            Kernel::Lazy { p, .. } => {
                for x in dst.iter_mut() {
                    *x %= p;
                }
            }
        }
    }

    /// Eliminates column `col` of `row` with a normalized pivot row.
    #[inline]
    fn apply(&self, row: &mut WorkRow, col: usize, tail: &[u32]) {
        let f = self.read(row.vals[col]);
        if f == 0 {
            return;
        }
        if row.pending >= self.limit() {
            self.flush(&mut row.vals[row.dirty.min(col)..]);
            row.pending = 0;
            row.dirty = col;
        } else {
            row.dirty = row.dirty.min(col);
        }
        let dst = &mut row.vals[col..col + tail.len()];
        let p = match *self {
            Kernel::Mersenne => MERSENNE31,
            Kernel::Lazy { p, .. } => p,
        };
        axpy(dst, (p - f as u64) as u32, tail);
        row.pending += 1;
        row.vals[col] = 0;
    }

    fn finish(&self, row: WorkRow) -> Vec<u32> {
        row.vals.into_iter().map(|x| self.read(x)).collect()
    }
}

// The update loops are plain scalar code; they are compiled a second and
// third time with wider vector units enabled and picked at runtime.
macro_rules! axpy_variants {
    ($name:ident, $body:expr) => {
        #[inline]
        fn $name(dst: &mut [u64], f: u32, src: &[u32]) {
            #[cfg(target_arch = "x86_64")]
            {
                #[target_feature(enable = "avx512f")]
                unsafe fn wide(dst: &mut [u64], f: u32, src: &[u32]) {
                    $body(dst, f, src)
                }
                #[target_feature(enable = "avx2")]
                unsafe fn narrow(dst: &mut [u64], f: u32, src: &[u32]) {
                    $body(dst, f, src)
                }
                if std::arch::is_x86_feature_detected!("avx512f") {
                    // SAFETY: the required CPU feature was detected above.
                    return unsafe { wide(dst, f, src) };
                }
                if std::arch::is_x86_feature_detected!("avx2") {
                    // SAFETY: as above.
                    return unsafe { narrow(dst, f, src) };
                }
            }
            $body(dst, f, src)
        }
    };
}

#[inline(always)]
fn axpy_body(dst: &mut [u64], f: u32, src: &[u32]) {
    let f = f as u64;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d += f * s as u64;
    }
}

#[inline(always)]
fn fold_body(dst: &mut [u64], _f: u32, _src: &[u32]) {
    for d in dst.iter_mut() {
        *d = (*d & MERSENNE31) + (*d >> 31);
    }
}

axpy_variants!(axpy, axpy_body);
axpy_variants!(fold_variants, fold_body);

fn fold_mersenne(dst: &mut [u64]) {
    fold_variants(dst, 0, &[]);
}

#[derive(Clone, Debug)]
struct PivotRow {
    col: usize,
    /// Entries from `col` onward; `tail[0] == 1`.
    tail: Vec<u32>,
}

/// An incrementally built row-echelon basis of a subspace of `F_p^ncols`.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    kernel: Kernel,
    ncols: usize,
    by_col: Vec<Option<usize>>,
    rows: Vec<PivotRow>,
}

impl Echelon {
    pub fn new(ncols: usize, field: PrimeField) -> Self {
        Echelon { field, kernel: Kernel::for_field(&field), ncols, by_col: vec![None; ncols], rows: Vec::new() }
    }

    fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.by_col[c].is_some()).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.by_col[col].is_some()
    }

    pub fn rank_result(&self) -> RankResult {
        RankResult { rank: self.rank(), pivot_columns: self.pivot_columns(), nullity: self.ncols - self.rank() }
    }

    fn pivot_order(&self) -> Vec<usize> {
        self.by_col.iter().filter_map(|x| *x).collect()
    }

    fn work_row(&self, v: &[u32]) -> WorkRow {
        let p = self.field.modulus();
        WorkRow { vals: v.iter().map(|&x| (x % p) as u64).collect(), pending: 0, dirty: v.len() }
    }

    /// Unique reduced form of `v`: zero in every pivot column, same coset modulo the span.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols, "vector length must equal column count");
        let kernel = self.kernel();
        let mut w = self.work_row(v);
        for i in self.pivot_order() {
            let r = &self.rows[i];
            kernel.apply(&mut w, r.col, &r.tail);
        }
        kernel.finish(w)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts one row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[u32]) -> Result<bool> {
        let before = self.rank();
        self.insert_batch(vec![row.to_vec()])?;
        Ok(self.rank() > before)
    }

    /// Reduces a batch of rows and adds the independent ones as pivots.
    ///
    /// Returns the index within the batch of the row that made the basis
    /// full, if that happened; later rows of the batch are then ignored.
    pub fn insert_batch(&mut self, batch: Vec<Vec<u32>>) -> Result<Option<usize>> {
        if let Some(bad) = batch.iter().find(|r| r.len() != self.ncols) {
            return Err(structural(format!("row of length {} in a stream of {} columns", bad.len(), self.ncols)));
        }
        if self.is_full() {
            return Ok(None);
        }
        let kernel = self.kernel();
        let mut work: Vec<WorkRow> = batch.iter().map(|r| self.work_row(r)).collect();

        let order = self.pivot_order();
        for block in order.chunks(PIVOT_BLOCK) {
            let rows = &self.rows;
            work.par_iter_mut().for_each(|w| {
                for &i in block {
                    kernel.apply(w, rows[i].col, &rows[i].tail);
                }
            });
        }

        // rows from this batch that became pivots, kept sorted by column
        let mut fresh: Vec<usize> = Vec::new();
        for (j, mut w) in work.into_iter().enumerate() {
            for &i in &fresh {
                let r = &self.rows[i];
                kernel.apply(&mut w, r.col, &r.tail);
            }
            let v = kernel.finish(w);
            let Some(lead) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = self.field.inv(v[lead])?;
            let tail: Vec<u32> = v[lead..].iter().map(|&x| self.field.mul(x, inv)).collect();
            let idx = self.rows.len();
            self.rows.push(PivotRow { col: lead, tail });
            self.by_col[lead] = Some(idx);
            let pos = fresh.partition_point(|&i| self.rows[i].col < lead);
            fresh.insert(pos, idx);
            if self.is_full() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    /// Fully reduced echelon rows as `(pivot column, dense row)`, sorted by pivot column.
    pub fn reduced_rows(&self) -> Vec<(usize, Vec<u32>)> {
        let f = self.field;
        let mut dense: Vec<(usize, Vec<u32>)> = self
            .pivot_order()
            .into_iter()
            .map(|i| {
                let r = &self.rows[i];
                let mut d = vec![0u32; self.ncols];
                d[r.col..].copy_from_slice(&r.tail);
                (r.col, d)
            })
            .collect();
        for i in (0..dense.len()).rev() {
            let (head, tail) = dense.split_at_mut(i + 1);
            let row = &mut head[i].1;
            for (col, other) in tail.iter() {
                let c = row[*col];
                if c == 0 {
                    continue;
                }
                let m = f.neg(c);
                for (x, &y) in row[*col..].iter_mut().zip(&other[*col..]) {
                    if y != 0 {
                        *x = f.add(*x, f.mul(m, y));
                    }
                }
            }
        }
        dense
    }
}

/// Rank of a dense matrix with deterministic first-nonzero pivoting.
pub fn rank(m: &DenseMatrix) -> RankResult {
    rank_streaming(m.row_iter().map(|r| r.to_vec()), m.cols(), &m.field())
        .expect("a well-formed matrix has rows of the right length")
        .result
}

/// Rank of a stream of rows without materializing it.
///
/// Only rows that add rank are retained, so memory is bounded by
/// `ncols × ncols` residues. The stream is abandoned as soon as the rank
/// reaches `ncols`.
pub fn rank_streaming<I>(rows: I, ncols: usize, field: &PrimeField) -> Result<StreamingRank>
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let echelon = echelon_streaming(rows, ncols, field)?;
    Ok(StreamingRank { result: echelon.0.rank_result(), rows_consumed: echelon.1, early_exit: echelon.2 })
}

/// Echelon basis of a row stream, with rows consumed and the early-exit flag.
pub fn echelon_streaming<I>(rows: I, ncols: usize, field: &PrimeField) -> Result<(Echelon, usize, bool)>
where
    I: IntoIterator<Item = Vec<u32>>,
{
    let mut ech = Echelon::new(ncols, *field);
    let mut consumed = 0usize;
    if ncols == 0 {
        return Ok((ech, 0, false));
    }
    let mut iter = rows.into_iter();
    loop {
        let batch: Vec<Vec<u32>> = iter.by_ref().take(BATCH_ROWS).collect();
        if batch.is_empty() {
            return Ok((ech, consumed, false));
        }
        let n = batch.len();
        if let Some(j) = ech.insert_batch(batch)? {
            return Ok((ech, consumed + j + 1, true));
        }
        consumed += n;
    }
}

/// Canonical basis of the left kernel `{v : v·M = 0}`.
///
/// Vectors come from the reduced echelon form of `Mᵀ`: one per free row
/// index of `M`, in increasing order, with a 1 in that position.
pub fn kernel_basis(m: &DenseMatrix) -> Vec<Vec<u32>> {
    let f = m.field();
    let t = m.transpose();
    let mut ech = Echelon::new(m.rows(), f);
    for r in t.row_iter() {
        if ech.is_full() {
            break;
        }
        ech.insert_batch(vec![r.to_vec()]).expect("row length matches");
    }
    let reduced = ech.reduced_rows();
    let pivots: Vec<bool> = (0..m.rows()).map(|c| ech.is_pivot(c)).collect();
    (0..m.rows())
        .filter(|&j| !pivots[j])
        .map(|free| {
            let mut v = vec![0u32; m.rows()];
            v[free] = 1;
            for (col, row) in &reduced {
                v[*col] = f.neg(row[free]);
            }
            v
        })
        .collect()
}
