//! GF(2) rank, nullspace and exhaustive minimum distance.
//!
//! The minimum distance is found by walking the nonzero codewords in Gray-code
//! order over a nullspace basis: step `i` flips basis vector `tz(i)`, so each
//! codeword costs one XOR and one popcount per 64-bit word.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::Serialize;

use crate::bounds::{bound_eq1, PolyVector};
use crate::permanent::MAX_PERMANENT_SIZE;
use crate::{Error, Extended, PolyMatrix, Result, ScalarMatrix};

/// Default largest dimension searched exhaustively.
pub const DEFAULT_MAX_DIM: usize = 28;
/// Hard ceiling on the searched dimension (the Gray index is a `u64`).
pub const MAX_SEARCH_DIM: usize = 62;
/// Steps between progress callbacks.
pub const PROGRESS_INTERVAL: u64 = 1 << 24;
/// Longest block length handled by the packed enumerator.
pub const MAX_PACKED_LENGTH: usize = 64 * 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DminStatus {
    /// Every nonzero codeword was visited.
    Exact,
    /// The dimension exceeded the limit; only upper bounds are known.
    UpperOnly,
    /// Enumeration was interrupted; `dmin_upper` is the best weight seen.
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub dmin: Option<u64>,
    pub dmin_upper: Extended,
    pub status: DminStatus,
    /// A codeword of weight `dmin_upper` found by the search, packed like a scalar row.
    #[serde(skip)]
    pub min_codeword: Option<Vec<u64>>,
}

impl CodeParams {
    /// `[n, k, d]`, or `[n, k, d <= U]` without an exact value.
    pub fn bracket(&self) -> String {
        match self.dmin {
            Some(d) => format!("[{}, {}, {}]", self.n, self.k, d),
            None => format!("[{}, {}, d <= {}]", self.n, self.k, self.dmin_upper),
        }
    }
}

/// Row-reduced copy of `m` with its pivot columns, one per nonzero row.
fn row_reduce(m: &ScalarMatrix) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut rows: Vec<Vec<u64>> = (0..m.n_rows()).map(|u| m.row(u).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..m.n_cols() {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&u| rows[u][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (u, row) in rows.iter_mut().enumerate() {
            if u != rank && row[word] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub fn gf2_rank(m: &ScalarMatrix) -> usize {
    row_reduce(m).1.len()
}

/// A basis of `{c : M c^T = 0}`, one vector per non-pivot column, packed like rows of `m`.
pub fn nullspace_basis(m: &ScalarMatrix) -> Vec<Vec<u64>> {
    let (rows, pivots) = row_reduce(m);
    let words = m.n_cols().div_ceil(64);
    let mut is_pivot = vec![false; m.n_cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.n_cols())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![0u64; words];
            v[f / 64] |= 1 << (f % 64);
            for (row, &p) in rows.iter().zip(&pivots) {
                if row[f / 64] >> (f % 64) & 1 == 1 {
                    v[p / 64] |= 1 << (p % 64);
                }
            }
            v
        })
        .collect()
}

fn popcount(v: &[u64]) -> u64 {
    v.iter().map(|w| w.count_ones() as u64).sum()
}

/// Smallest nonzero codeword weight seen in one range of Gray indices.
struct RangeBest {
    weight: u64,
    index: u64,
}

fn search_range<const W: usize>(
    basis: &[[u64; W]],
    lo: u64,
    hi: u64,
    done: &AtomicU64,
    stop: &AtomicBool,
    progress: &(dyn Fn(u64, u64) -> bool + Sync),
    total: u64,
) -> Option<RangeBest> {
    let mut state = [0u64; W];
    let g = lo ^ (lo >> 1);
    for (b, v) in basis.iter().enumerate() {
        if g >> b & 1 == 1 {
            for w in 0..W {
                state[w] ^= v[w];
            }
        }
    }
    let mut best: Option<RangeBest> = None;
    let weight = |s: &[u64; W]| s.iter().map(|w| w.count_ones() as u64).sum::<u64>();
    if lo != 0 {
        best = Some(RangeBest {
            weight: weight(&state),
            index: lo,
        });
    }
    let mut best_weight = best.as_ref().map_or(u64::MAX, |b| b.weight);
    let mut i = lo + 1;
    while i < hi {
        let chunk_end = hi.min((i | (PROGRESS_INTERVAL - 1)) + 1);
        for idx in i..chunk_end {
            let v = &basis[idx.trailing_zeros() as usize];
            let mut wt = 0u64;
            for w in 0..W {
                state[w] ^= v[w];
                wt += state[w].count_ones() as u64;
            }
            if wt < best_weight {
                best_weight = wt;
                best = Some(RangeBest {
                    weight: wt,
                    index: idx,
                });
            }
        }
        let steps = chunk_end - i;
        i = chunk_end;
        let so_far = done.fetch_add(steps, Ordering::Relaxed) + steps;
        if stop.load(Ordering::Relaxed) {
            break;
        }
        if chunk_end.is_multiple_of(PROGRESS_INTERVAL) && !progress(so_far, total) {
            stop.store(true, Ordering::Relaxed);
            break;
        }
    }
    best
}

/// Runs the Gray-code search split into `jobs` contiguous ranges. Returns the
/// best (weight, gray index) and whether the search finished.
fn search<const W: usize>(
    basis: &[Vec<u64>],
    jobs: usize,
    progress: &(dyn Fn(u64, u64) -> bool + Sync),
) -> (Option<(u64, u64)>, bool) {
    let packed: Vec<[u64; W]> = basis
        .iter()
        .map(|v| {
            let mut a = [0u64; W];
            a[..v.len()].copy_from_slice(v);
            a
        })
        .collect();
    let total = 1u64 << basis.len();
    let jobs = (jobs.max(1) as u64).min(total);
    let done = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let bounds: Vec<(u64, u64)> = (0..jobs)
        .map(|t| {
            (
                total / jobs * t + (total % jobs).min(t),
                total / jobs * (t + 1) + (total % jobs).min(t + 1),
            )
        })
        .collect();
    let results: Vec<Option<RangeBest>> = if jobs == 1 {
        vec![search_range(
            &packed, 0, total, &done, &stop, progress, total,
        )]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(lo, hi)| {
                    let (packed, done, stop) = (&packed, &done, &stop);
                    s.spawn(move || search_range(packed, lo, hi, done, stop, progress, total))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search thread panicked"))
                .collect()
        })
    };
    let best = results
        .into_iter()
        .flatten()
        .min_by_key(|b| (b.weight, b.index))
        .map(|b| (b.weight, b.index));
    (best, !stop.load(Ordering::Relaxed))
}

fn combine(basis: &[Vec<u64>], index: u64) -> Vec<u64> {
    let g = index ^ (index >> 1);
    let mut out = vec![0u64; basis.first().map_or(0, Vec::len)];
    for (b, v) in basis.iter().enumerate() {
        if g >> b & 1 == 1 {
            out.iter_mut().zip(v).for_each(|(a, x)| *a ^= x);
        }
    }
    out
}

/// Upper bound for codes too large to search: the permanent-codeword bound
/// (when defined and affordable) and the lightest nullspace basis vector.
fn fallback_upper(h: &PolyMatrix, basis: &[Vec<u64>]) -> (Extended, Option<Vec<u64>>) {
    let mut upper = Extended::Infinite;
    let mut word = None;
    if h.rows() < h.cols() && h.rows() <= MAX_PERMANENT_SIZE {
        if let Ok(b) = bound_eq1(h) {
            if let Some(w) = b.witness {
                upper = b.value;
                word = Some(w.to_bits());
            }
        }
    }
    if let Some(v) = basis.iter().min_by_key(|v| popcount(v)) {
        if Extended::Finite(popcount(v)) < upper {
            upper = Extended::Finite(popcount(v));
            word = Some(v.clone());
        }
    }
    (upper, word)
}

pub fn dmin_exhaustive(h: &PolyMatrix, max_dim: usize, jobs: usize) -> CodeParams {
    dmin_exhaustive_with_progress(h, max_dim, jobs, &|_, _| true)
}

/// As [`dmin_exhaustive`], calling `progress(done, total)` every
/// [`PROGRESS_INTERVAL`] steps per range; returning `false` stops the search.
pub fn dmin_exhaustive_with_progress(
    h: &PolyMatrix,
    max_dim: usize,
    jobs: usize,
    progress: &(dyn Fn(u64, u64) -> bool + Sync),
) -> CodeParams {
    let hs = h.expand_scalar();
    let n = hs.n_cols();
    let basis = nullspace_basis(&hs);
    let k = basis.len();
    if k == 0 {
        return CodeParams {
            n,
            k,
            dmin: None,
            dmin_upper: Extended::Infinite,
            status: DminStatus::Exact,
            min_codeword: None,
        };
    }
    if k > max_dim.min(MAX_SEARCH_DIM) || n > MAX_PACKED_LENGTH {
        let (upper, word) = fallback_upper(h, &basis);
        return CodeParams {
            n,
            k,
            dmin: None,
            dmin_upper: upper,
            status: DminStatus::UpperOnly,
            min_codeword: word,
        };
    }
    let (best, finished) = match n.div_ceil(64) {
        0 | 1 => search::<1>(&basis, jobs, progress),
        2 => search::<2>(&basis, jobs, progress),
        3 => search::<3>(&basis, jobs, progress),
        4 => search::<4>(&basis, jobs, progress),
        5 => search::<5>(&basis, jobs, progress),
        6 => search::<6>(&basis, jobs, progress),
        7 => search::<7>(&basis, jobs, progress),
        _ => search::<8>(&basis, jobs, progress),
    };
    let (weight, index) = best.expect("k > 0 yields at least one codeword");
    let word = combine(&basis, index);
    debug_assert_eq!(popcount(&word), weight);
    if finished {
        CodeParams {
            n,
            k,
            dmin: Some(weight),
            dmin_upper: Extended::Finite(weight),
            status: DminStatus::Exact,
            min_codeword: Some(word),
        }
    } else {
        let (upper, fallback_word) = fallback_upper(h, &basis);
        let (upper, word) = if upper < Extended::Finite(weight) {
            (upper, fallback_word)
        } else {
            (Extended::Finite(weight), Some(word))
        };
        CodeParams {
            n,
            k,
            dmin: None,
            dmin_upper: upper,
            status: DminStatus::Capped,
            min_codeword: word,
        }
    }
}

/// Lightest nonzero permanent codeword, equal to the first bound.
pub fn dmin_upper_witness(h: &PolyMatrix) -> Result<(Extended, Option<PolyVector>)> {
    if h.rows() + 1 > h.cols() {
        return Err(Error::TooFewColumns {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let b = bound_eq1(h)?;
    Ok((b.value, b.witness))
}
