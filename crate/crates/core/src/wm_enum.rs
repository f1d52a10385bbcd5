//! Enumeration of regular weight matrices up to row and column permutation,
//! ranked by the weight-matrix distance bound.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::bounds::bound_eq2;
use crate::{Error, Extended, Result, WeightMatrix};

pub const MAX_CANON_ROWS: usize = 6;
pub const MAX_CANON_COLS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WmClass {
    pub canonical: WeightMatrix,
    /// Weight-matrix bound of the class; `inf` when the shape has no `J+1` column subsets.
    pub bound: Extended,
}

/// Lexicographically smallest row-major form over all row and column permutations.
///
/// For a fixed row order the best column order sorts the columns by their
/// top-to-bottom tuples, so only the `J!` row orders are tried.
pub fn canonicalize_wm(a: &WeightMatrix) -> Result<WeightMatrix> {
    if a.rows() > MAX_CANON_ROWS {
        return Err(Error::SizeGuard {
            what: "weight matrix rows for canonical form",
            size: a.rows(),
            limit: MAX_CANON_ROWS,
        });
    }
    if a.cols() > MAX_CANON_COLS {
        return Err(Error::SizeGuard {
            what: "weight matrix columns for canonical form",
            size: a.cols(),
            limit: MAX_CANON_COLS,
        });
    }
    let best = (0..a.rows())
        .permutations(a.rows())
        .map(|rows| {
            let mut cols: Vec<usize> = (0..a.cols()).collect();
            cols.sort_by_key(|&i| rows.iter().map(|&j| a.get(j, i)).collect::<Vec<_>>());
            a.permuted(&rows, &cols)
        })
        .min()
        .expect("at least one row order");
    Ok(best)
}

fn class_bound(a: &WeightMatrix) -> Result<Extended> {
    if a.rows() + 1 > a.cols() {
        return Ok(Extended::Infinite);
    }
    Ok(bound_eq2(a)?.value)
}

/// All `J x L` matrices with entries in `0..=max_entry`, column sums `col_sum`
/// and row sums `row_sum`, one per permutation class, sorted by descending
/// bound and then by canonical form. Inconsistent sums give an empty list.
pub fn enumerate_wm(
    j: usize,
    l: usize,
    col_sum: u64,
    row_sum: u64,
    max_entry: u64,
) -> Result<Vec<WmClass>> {
    if j > MAX_CANON_ROWS || l > MAX_CANON_COLS {
        return Err(Error::SizeGuard {
            what: "weight matrix shape for enumeration",
            size: j.max(l),
            limit: if j > MAX_CANON_ROWS {
                MAX_CANON_ROWS
            } else {
                MAX_CANON_COLS
            },
        });
    }
    if j == 0 || l == 0 || j as u64 * row_sum != l as u64 * col_sum {
        return Ok(Vec::new());
    }
    let mut seen = BTreeSet::new();
    let mut fill = Fill {
        j,
        l,
        max_entry,
        row_left: vec![row_sum; j],
        col_left: vec![col_sum; l],
        entries: vec![0; j * l],
    };
    let mut err = None;
    fill.run(0, &mut |m| match canonicalize_wm(&m) {
        Ok(c) => {
            seen.insert(c);
        }
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut classes = seen
        .into_iter()
        .map(|canonical| {
            Ok(WmClass {
                bound: class_bound(&canonical)?,
                canonical,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    classes.sort_by(|a, b| {
        b.bound
            .cmp(&a.bound)
            .then_with(|| a.canonical.cmp(&b.canonical))
    });
    Ok(classes)
}

struct Fill {
    j: usize,
    l: usize,
    max_entry: u64,
    row_left: Vec<u64>,
    col_left: Vec<u64>,
    entries: Vec<u64>,
}

impl Fill {
    fn run(&mut self, pos: usize, emit: &mut dyn FnMut(WeightMatrix)) {
        if pos == self.j * self.l {
            emit(WeightMatrix::from_flat(
                self.j,
                self.l,
                self.entries.clone(),
            ));
            return;
        }
        let (row, col) = (pos / self.l, pos % self.l);
        let last_col = col + 1 == self.l;
        let last_row = row + 1 == self.j;
        let hi = self
            .max_entry
            .min(self.row_left[row])
            .min(self.col_left[col]);
        for v in 0..=hi {
            // the last entry of a row or column is forced
            if last_col && v != self.row_left[row] {
                continue;
            }
            if last_row && v != self.col_left[col] {
                continue;
            }
            self.row_left[row] -= v;
            self.col_left[col] -= v;
            self.entries[pos] = v;
            self.run(pos + 1, emit);
            self.row_left[row] += v;
            self.col_left[col] += v;
        }
        self.entries[pos] = 0;
    }
}

/// Previously tabulated class counts for `(J, L, col_sum, row_sum, max_entry)`,
/// used to flag enumerations that disagree with them.
pub fn reference_class_count(
    j: usize,
    l: usize,
    col_sum: u64,
    row_sum: u64,
    max_entry: u64,
) -> Option<usize> {
    match (j, l, col_sum, row_sum, max_entry) {
        (3, 4, 3, 4, 1) => Some(1),
        (3, 4, 3, 4, 2) => Some(5),
        (3, 4, 3, 4, 3) => Some(8),
        _ => None,
    }
}
