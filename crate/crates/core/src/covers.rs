//! Double covers from a split `H(x) = H1(x) + H2(x)` with disjoint supports.
//!
//! Two equivalent layouts are built:
//! - block: `[[H1, H2], [H2, H1]]`;
//! - interleaved: each entry `h` becomes `[[h1, h2], [h2, h1]]` in place.
//!
//! The perfect shuffle relates them: block row/column `t*J + j` (resp.
//! `t*L + i`) is interleaved row/column `2j + t` (resp. `2i + t`).

use serde::Serialize;

use crate::cycles::build_tanner;
use crate::{Error, PolyMatrix, Result, RingPoly, ScalarMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSplit {
    part1: PolyMatrix,
    part2: PolyMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverLayout {
    Block,
    Interleaved,
}

impl CoverSplit {
    /// Checks shapes, moduli and disjointness of supports.
    pub fn new(part1: PolyMatrix, part2: PolyMatrix) -> Result<Self> {
        if part1.modulus() != part2.modulus() {
            return Err(Error::ModulusMismatch {
                left: part1.modulus(),
                right: part2.modulus(),
            });
        }
        if (part1.rows(), part1.cols()) != (part2.rows(), part2.cols()) {
            return Err(Error::ShapeMismatch(format!(
                "split parts are {}x{} and {}x{}",
                part1.rows(),
                part1.cols(),
                part2.rows(),
                part2.cols()
            )));
        }
        for j in 0..part1.rows() {
            for i in 0..part1.cols() {
                let a = part1.get(j, i).support();
                if let Some(e) = part2.get(j, i).support().iter().find(|e| a.contains(e)) {
                    return Err(Error::InvalidSplit {
                        row: j,
                        col: i,
                        message: format!("x^{e} appears in both parts"),
                    });
                }
            }
        }
        Ok(CoverSplit { part1, part2 })
    }

    /// Uses `part1` as given and puts the remaining terms of `h` in part 2.
    pub fn from_part1(h: &PolyMatrix, part1: &PolyMatrix) -> Result<Self> {
        if part1.modulus() != h.modulus() {
            return Err(Error::ModulusMismatch {
                left: h.modulus(),
                right: part1.modulus(),
            });
        }
        if (part1.rows(), part1.cols()) != (h.rows(), h.cols()) {
            return Err(Error::ShapeMismatch(format!(
                "split file is {}x{}, matrix is {}x{}",
                part1.rows(),
                part1.cols(),
                h.rows(),
                h.cols()
            )));
        }
        let mut grid = Vec::with_capacity(h.rows());
        for j in 0..h.rows() {
            let mut row = Vec::with_capacity(h.cols());
            for i in 0..h.cols() {
                let full = h.get(j, i).support();
                let p1 = part1.get(j, i).support();
                if let Some(e) = p1.iter().find(|e| !full.contains(e)) {
                    return Err(Error::InvalidSplit {
                        row: j,
                        col: i,
                        message: format!("x^{e} is not a term of the entry"),
                    });
                }
                let rest: Vec<u32> = full.iter().copied().filter(|e| !p1.contains(e)).collect();
                row.push(RingPoly::new(h.modulus(), rest)?);
            }
            grid.push(row);
        }
        CoverSplit::new(part1.clone(), PolyMatrix::new(h.modulus(), grid)?)
    }

    pub fn part1(&self) -> &PolyMatrix {
        &self.part1
    }

    pub fn part2(&self) -> &PolyMatrix {
        &self.part2
    }

    /// `part1 + part2`.
    pub fn base(&self) -> PolyMatrix {
        let grid = (0..self.part1.rows())
            .map(|j| {
                (0..self.part1.cols())
                    .map(|i| self.part1.get(j, i).add_same_modulus(self.part2.get(j, i)))
                    .collect()
            })
            .collect();
        PolyMatrix::new(self.part1.modulus(), grid).expect("parts share shape and modulus")
    }
}

/// Lower exponent of each binomial to part 1, monomials entirely to part 1.
pub fn split_auto(h: &PolyMatrix) -> Result<CoverSplit> {
    h.ensure_type_at_most(2).map_err(|e| match e {
        Error::TypeTooHigh {
            row, col, weight, ..
        } => Error::InvalidSplit {
            row,
            col,
            message: format!("weight-{weight} entry has no automatic split; supply a split file"),
        },
        other => other,
    })?;
    let r = h.modulus();
    let grid = |take_first: bool| -> Vec<Vec<RingPoly>> {
        (0..h.rows())
            .map(|j| {
                (0..h.cols())
                    .map(|i| {
                        let s = h.get(j, i).support();
                        let part: Vec<u32> = if take_first {
                            s.iter().take(1).copied().collect()
                        } else {
                            s.iter().skip(1).copied().collect()
                        };
                        RingPoly::new(r, part).expect("subset of a valid support")
                    })
                    .collect()
            })
            .collect()
    };
    CoverSplit::new(
        PolyMatrix::new(r, grid(true))?,
        PolyMatrix::new(r, grid(false))?,
    )
}

/// `[[H1, H2], [H2, H1]]`.
pub fn build_cover_block(s: &CoverSplit) -> PolyMatrix {
    let (jj, ll) = (s.part1.rows(), s.part1.cols());
    let grid = (0..2 * jj)
        .map(|row| {
            (0..2 * ll)
                .map(|col| {
                    let same = (row / jj) == (col / ll);
                    let part = if same { &s.part1 } else { &s.part2 };
                    part.get(row % jj, col % ll).clone()
                })
                .collect()
        })
        .collect();
    PolyMatrix::new(s.part1.modulus(), grid).expect("parts share shape and modulus")
}

/// Each entry replaced in place by `[[h1, h2], [h2, h1]]`.
pub fn build_cover_interleaved(s: &CoverSplit) -> PolyMatrix {
    let (jj, ll) = (s.part1.rows(), s.part1.cols());
    let grid = (0..2 * jj)
        .map(|row| {
            (0..2 * ll)
                .map(|col| {
                    let part = if row % 2 == col % 2 {
                        &s.part1
                    } else {
                        &s.part2
                    };
                    part.get(row / 2, col / 2).clone()
                })
                .collect()
        })
        .collect();
    let m = PolyMatrix::new(s.part1.modulus(), grid).expect("parts share shape and modulus");
    debug_assert_eq!(shuffle_block(&build_cover_block(s)), m);
    m
}

/// Block index `t*n + i` maps to interleaved index `2i + t`, for a dimension of size `2n`.
pub fn block_to_interleaved(index: usize, n: usize) -> usize {
    2 * (index % n) + index / n
}

/// Reorders a block-layout cover into the interleaved layout.
pub fn shuffle_block(block: &PolyMatrix) -> PolyMatrix {
    let (jj, ll) = (block.rows() / 2, block.cols() / 2);
    let mut grid = vec![vec![RingPoly::zero(block.modulus()); block.cols()]; block.rows()];
    for row in 0..block.rows() {
        for col in 0..block.cols() {
            grid[block_to_interleaved(row, jj)][block_to_interleaved(col, ll)] =
                block.get(row, col).clone();
        }
    }
    PolyMatrix::new(block.modulus(), grid).expect("same shape")
}

/// Checks that `row_map`/`col_map` (cover scalar index to base scalar index)
/// define a covering map of Tanner graphs: every fibre has the same size and
/// each cover vertex's neighbourhood maps bijectively onto its image's.
pub fn verify_scalar_cover(
    cover: &ScalarMatrix,
    base: &ScalarMatrix,
    row_map: &[usize],
    col_map: &[usize],
) -> bool {
    if row_map.len() != cover.n_rows() || col_map.len() != cover.n_cols() {
        return false;
    }
    if row_map.iter().any(|&u| u >= base.n_rows()) || col_map.iter().any(|&v| v >= base.n_cols()) {
        return false;
    }
    let fibres_even = |map: &[usize], n: usize| {
        let mut count = vec![0usize; n];
        for &x in map {
            count[x] += 1;
        }
        count.iter().all(|&c| c * n == map.len())
    };
    if !fibres_even(row_map, base.n_rows()) || !fibres_even(col_map, base.n_cols()) {
        return false;
    }
    let gc = build_tanner(cover);
    let gb = build_tanner(base);
    let maps_onto = |image: Vec<usize>, target: &[usize]| {
        let mut image = image;
        image.sort_unstable();
        image == target
    };
    (0..cover.n_rows()).all(|u| {
        maps_onto(
            gc.check_neighbors(u).iter().map(|&v| col_map[v]).collect(),
            gb.check_neighbors(row_map[u]),
        )
    }) && (0..cover.n_cols()).all(|v| {
        maps_onto(
            gc.variable_neighbors(v)
                .iter()
                .map(|&u| row_map[u])
                .collect(),
            gb.variable_neighbors(col_map[v]),
        )
    })
}

/// Checks that the Tanner graph of `cover` (a `2J x 2L` matrix in `layout`)
/// double-covers the Tanner graph of `base`.
pub fn verify_cover_projection(
    cover: &PolyMatrix,
    base: &PolyMatrix,
    layout: CoverLayout,
) -> Result<bool> {
    if cover.modulus() != base.modulus() {
        return Err(Error::ModulusMismatch {
            left: cover.modulus(),
            right: base.modulus(),
        });
    }
    if (cover.rows(), cover.cols()) != (2 * base.rows(), 2 * base.cols()) {
        return Err(Error::ShapeMismatch(format!(
            "cover is {}x{}, expected {}x{}",
            cover.rows(),
            cover.cols(),
            2 * base.rows(),
            2 * base.cols()
        )));
    }
    let r = cover.modulus() as usize;
    let project = |n: usize| {
        move |x: usize| {
            let (blk, s) = (x / r, x % r);
            let b = match layout {
                CoverLayout::Block => blk % n,
                CoverLayout::Interleaved => blk / 2,
            };
            b * r + s
        }
    };
    let row_map: Vec<usize> = (0..cover.rows() * r).map(project(base.rows())).collect();
    let col_map: Vec<usize> = (0..cover.cols() * r).map(project(base.cols())).collect();
    Ok(verify_scalar_cover(
        &cover.expand_scalar(),
        &base.expand_scalar(),
        &row_map,
        &col_map,
    ))
}

/// `dmin(C) <= dmin(cover) <= 2 dmin(C)`.
pub fn cover_distance_bounds(base_dmin: u64) -> Result<(u64, u64)> {
    if base_dmin == 0 {
        return Err(Error::InvalidArgument(
            "base minimum distance must be positive".into(),
        ));
    }
    let upper = base_dmin
        .checked_mul(2)
        .ok_or(Error::Overflow("cover distance bound"))?;
    Ok((base_dmin, upper))
}
