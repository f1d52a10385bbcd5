//! Polynomial parity-check matrices, weight matrices and the expanded
//! (scalar) GF(2) matrices built from `r x r` circulant blocks.
//!
//! Matrix file format (QCPM), `#` starts a comment:
//!
//! ```text
//! r 3
//! 0,1 0 - 2
//! 2   0 1 2
//! -   1 0,2 1
//! ```
//!
//! The first line gives `r`; each further line is one row of entries, where
//! an entry is `-` (zero) or a strictly increasing comma-separated exponent list.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::{Error, Result, RingPoly};

/// A `J x L` matrix over `F2[x]/(x^r - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    modulus: u32,
    rows: usize,
    cols: usize,
    entries: Vec<RingPoly>,
}

impl PolyMatrix {
    pub fn new(modulus: u32, grid: Vec<Vec<RingPoly>>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ZeroModulus);
        }
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(
                "matrix must have at least one row and column".into(),
            ));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for (j, row) in grid.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {j} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for p in row {
                if p.modulus() != modulus {
                    return Err(Error::ModulusMismatch {
                        left: modulus,
                        right: p.modulus(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    /// Convenience constructor from exponent lists; an empty list is the zero entry.
    pub fn from_supports(modulus: u32, grid: &[Vec<Vec<u32>>]) -> Result<Self> {
        let grid = grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| RingPoly::new(modulus, s.clone()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, grid)
    }

    /// All-zero `rows x cols` matrix.
    pub fn zeros(modulus: u32, rows: usize, cols: usize) -> Result<Self> {
        let grid = vec![vec![RingPoly::zero(modulus.max(1)); cols]; rows];
        Self::new(modulus, grid)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Block length `n = L * r`.
    pub fn code_length(&self) -> usize {
        self.cols * self.modulus as usize
    }

    pub fn get(&self, row: usize, col: usize) -> &RingPoly {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[RingPoly] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn weight_matrix(&self) -> WeightMatrix {
        WeightMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.weight() as u64).collect(),
        }
    }

    /// Largest entry weight (the `M` of "type M").
    pub fn type_m(&self) -> usize {
        self.entries.iter().map(RingPoly::weight).max().unwrap_or(0)
    }

    pub fn classify(&self) -> Classification {
        let a = self.weight_matrix();
        Classification {
            type_m: self.type_m(),
            regularity: a.regularity(),
        }
    }

    /// Fails with the first entry whose weight exceeds `max`.
    pub fn ensure_type_at_most(&self, max: usize) -> Result<()> {
        for j in 0..self.rows {
            for i in 0..self.cols {
                let w = self.get(j, i).weight();
                if w > max {
                    return Err(Error::TypeTooHigh {
                        row: j,
                        col: i,
                        weight: w,
                        max,
                    });
                }
            }
        }
        Ok(())
    }

    /// Rows `row_set` and columns `col_set`, each taken in ascending order.
    pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Result<PolyMatrix> {
        let row_set = sorted_checked(row_set, self.rows)?;
        let col_set = sorted_checked(col_set, self.cols)?;
        let grid = row_set
            .iter()
            .map(|&j| col_set.iter().map(|&i| self.get(j, i).clone()).collect())
            .collect();
        PolyMatrix::new(self.modulus, grid)
    }

    /// All rows, columns `col_set` (the `M_S` shorthand).
    pub fn columns(&self, col_set: &[usize]) -> Result<PolyMatrix> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, col_set)
    }

    /// The `Jr x Lr` scalar matrix. Block `(j, i)` has bit `(u, v)` set iff
    /// `(u - v) mod r` is in the support of `h_{j,i}`.
    pub fn expand_scalar(&self) -> ScalarMatrix {
        let r = self.modulus as usize;
        let mut m = ScalarMatrix::zeros(self.rows * r, self.cols * r);
        for j in 0..self.rows {
            for i in 0..self.cols {
                for &e in self.get(j, i).support() {
                    let e = e as usize;
                    for u in 0..r {
                        let v = (u + r - e) % r;
                        m.set(j * r + u, i * r + v, true);
                    }
                }
            }
        }
        m
    }

    /// `H(x) c(x)^T` over the ring.
    pub fn syndrome(&self, c: &[RingPoly]) -> Result<Vec<RingPoly>> {
        if c.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                c.len(),
                self.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for j in 0..self.rows {
            let mut acc = RingPoly::zero(self.modulus);
            for (h, ci) in self.row(j).iter().zip(c) {
                acc = acc.try_add(&h.try_mul(ci)?)?;
            }
            out.push(acc);
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<PolyMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input, expected 'r <modulus>'".into(),
        })?;
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut head = header.split_whitespace();
        let modulus: u32 = match (head.next(), head.next(), head.next()) {
            (Some("r"), Some(v), None) => v
                .parse()
                .ok()
                .filter(|&r| r > 0)
                .ok_or_else(|| parse_err(line_no, format!("invalid modulus '{v}'")))?,
            _ => {
                return Err(parse_err(
                    line_no,
                    format!("expected 'r <modulus>', found '{header}'"),
                ))
            }
        };

        let mut grid: Vec<Vec<RingPoly>> = Vec::new();
        for (line_no, line) in lines {
            let row = line
                .split_whitespace()
                .map(|tok| RingPoly::parse_entry(modulus, tok))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|m| parse_err(line_no, m))?;
            if let Some(first) = grid.first() {
                if first.len() != row.len() {
                    return Err(parse_err(
                        line_no,
                        format!("row has {} entries, expected {}", row.len(), first.len()),
                    ));
                }
            }
            grid.push(row);
        }
        if grid.is_empty() {
            return Err(parse_err(line_no, "matrix has no rows".into()));
        }
        PolyMatrix::new(modulus, grid)
    }

    /// Canonical QCPM text; `parse(m.to_qcpm()) == m`.
    pub fn to_qcpm(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r {}", self.modulus)?;
        for j in 0..self.rows {
            let row: Vec<String> = self.row(j).iter().map(|p| p.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn sorted_checked(set: &[usize], len: usize) -> Result<Vec<usize>> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    if let Some(&bad) = v.iter().find(|&&x| x >= len) {
        return Err(Error::IndexOutOfRange { index: bad, len });
    }
    Ok(v)
}

/// Type and degree structure of a polynomial matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub type_m: usize,
    /// `(variable degree, check degree)` when all column sums and all row
    /// sums of the weight matrix agree.
    pub regularity: Option<(u64, u64)>,
}

/// Non-negative integer `J x L` matrix, e.g. the entrywise weights of `H(x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl WeightMatrix {
    pub fn new(grid: Vec<Vec<u64>>) -> Result<Self> {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        if grid.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged weight matrix".into()));
        }
        Ok(WeightMatrix {
            rows,
            cols,
            entries: grid.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        WeightMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.cols + col]
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[u64] {
        &self.entries
    }

    pub fn to_grid(&self) -> Vec<Vec<u64>> {
        self.entries
            .chunks(self.cols.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }

    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.rows)
            .map(|j| (0..self.cols).map(|i| self.get(j, i)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|i| (0..self.rows).map(|j| self.get(j, i)).sum())
            .collect()
    }

    pub fn max_entry(&self) -> u64 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    pub fn regularity(&self) -> Option<(u64, u64)> {
        let cs = self.col_sums();
        let rs = self.row_sums();
        let var_deg = *cs.first()?;
        let chk_deg = *rs.first()?;
        (cs.iter().all(|&c| c == var_deg) && rs.iter().all(|&r| r == chk_deg))
            .then_some((var_deg, chk_deg))
    }

    pub fn submatrix(&self, row_set: &[usize], col_set: &[usize]) -> Result<WeightMatrix> {
        let row_set = sorted_checked(row_set, self.rows)?;
        let col_set = sorted_checked(col_set, self.cols)?;
        let mut entries = Vec::with_capacity(row_set.len() * col_set.len());
        for &j in &row_set {
            for &i in &col_set {
                entries.push(self.get(j, i));
            }
        }
        Ok(WeightMatrix::from_flat(
            row_set.len(),
            col_set.len(),
            entries,
        ))
    }

    pub fn columns(&self, col_set: &[usize]) -> Result<WeightMatrix> {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, col_set)
    }

    /// Entry `(j, i)` of the result is `self[row_perm[j]][col_perm[i]]`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> WeightMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &j in row_perm {
            for &i in col_perm {
                entries.push(self.get(j, i));
            }
        }
        WeightMatrix::from_flat(self.rows, self.cols, entries)
    }

    pub fn transpose(&self) -> WeightMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.cols {
            for j in 0..self.rows {
                entries.push(self.get(j, i));
            }
        }
        WeightMatrix::from_flat(self.cols, self.rows, entries)
    }
}

impl Serialize for WeightMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows))?;
        for row in self.to_grid() {
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_grid() {
            let row: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Dense GF(2) matrix with bit-packed rows (bit `v` of a row lives in word
/// `v / 64` at position `v % 64`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    n_rows: usize,
    n_cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl ScalarMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let words_per_row = n_cols.div_ceil(64);
        ScalarMatrix {
            n_rows,
            n_cols,
            words_per_row,
            data: vec![0; n_rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, true);
        }
        m
    }

    /// Builds from `0`/`1` rows; used by fixtures and the text format.
    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let n_cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), n_cols);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::ShapeMismatch(format!("row {u} has wrong length")));
            }
            for (v, ch) in row.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(u, v, true),
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unexpected character '{other}' in bit row"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn words_per_row(&self) -> usize {
        self.words_per_row
    }

    pub fn get(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n_rows && v < self.n_cols);
        self.data[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn set(&mut self, u: usize, v: usize, value: bool) {
        debug_assert!(u < self.n_rows && v < self.n_cols);
        let w = &mut self.data[u * self.words_per_row + v / 64];
        if value {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn toggle(&mut self, u: usize, v: usize) {
        self.data[u * self.words_per_row + v / 64] ^= 1 << (v % 64);
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.data[u * self.words_per_row..(u + 1) * self.words_per_row]
    }

    pub fn row_weight(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, v: usize) -> usize {
        (0..self.n_rows).filter(|&u| self.get(u, v)).count()
    }

    /// Column indices of the set bits in row `u`, ascending.
    pub fn row_support(&self, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &word) in self.row(u).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                out.push(k * 64 + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// True iff `self * c^T = 0`, with `c` packed like a row.
    pub fn annihilates(&self, c: &[u64]) -> bool {
        (0..self.n_rows).all(|u| {
            self.row(u)
                .iter()
                .zip(c)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
                % 2
                == 0
        })
    }

    /// One line of `0`/`1` characters per row.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n_rows * (self.n_cols + 1));
        for line in self.to_row_strings() {
            s.push_str(&line);
            s.push('\n');
        }
        s
    }

    pub fn to_row_strings(&self) -> Vec<String> {
        (0..self.n_rows)
            .map(|u| {
                (0..self.n_cols)
                    .map(|v| if self.get(u, v) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}
