//! Permanents of small square matrices.
//!
//! Over `F2[x]/(x^r - 1)` the permanent equals the determinant. Both
//! versions use cofactor expansion along the last row, memoized over the
//! set of columns already consumed, so the cost is `O(2^m * m)` ring
//! operations instead of `m!`.

use crate::{Error, PolyMatrix, Result, RingPoly, WeightMatrix};

/// Largest side length accepted by the permanent routines.
pub const MAX_PERMANENT_SIZE: usize = 12;

pub fn perm_poly(b: &PolyMatrix) -> Result<RingPoly> {
    check_square(b.rows(), b.cols())?;
    let rows: Vec<usize> = (0..b.rows()).collect();
    Ok(perm_poly_of(b, &rows, &rows))
}

pub fn perm_int(b: &WeightMatrix) -> Result<u64> {
    check_square(b.rows(), b.cols())?;
    let rows: Vec<usize> = (0..b.rows()).collect();
    perm_int_of(b, &rows, &rows)
}

fn check_square(rows: usize, cols: usize) -> Result<()> {
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows > MAX_PERMANENT_SIZE {
        return Err(Error::SizeGuard {
            what: "permanent matrix side",
            size: rows,
            limit: MAX_PERMANENT_SIZE,
        });
    }
    Ok(())
}

/// Permanent of `h[rows, cols]` without materializing the submatrix.
/// The empty matrix has permanent 1.
pub(crate) fn perm_poly_of(h: &PolyMatrix, rows: &[usize], cols: &[usize]) -> RingPoly {
    debug_assert_eq!(rows.len(), cols.len());
    let m = rows.len();
    let r = h.modulus();
    match m {
        0 => return RingPoly::one(r),
        1 => return h.get(rows[0], cols[0]).clone(),
        2 => {
            let a = h
                .get(rows[0], cols[0])
                .mul_same_modulus(h.get(rows[1], cols[1]));
            let b = h
                .get(rows[0], cols[1])
                .mul_same_modulus(h.get(rows[1], cols[0]));
            return a.add_same_modulus(&b);
        }
        _ => {}
    }
    let mut dp: Vec<RingPoly> = vec![RingPoly::zero(r); 1 << m];
    dp[0] = RingPoly::one(r);
    for mask in 1usize..(1 << m) {
        let row = rows[mask.count_ones() as usize - 1];
        let mut acc = RingPoly::zero(r);
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = h.get(row, cols[c]);
            let rest = &dp[mask & !(1 << c)];
            if !entry.is_zero() && !rest.is_zero() {
                acc = acc.add_same_modulus(&entry.mul_same_modulus(rest));
            }
        }
        dp[mask] = acc;
    }
    dp.pop().unwrap_or_else(|| RingPoly::one(r))
}

pub(crate) fn perm_int_of(a: &WeightMatrix, rows: &[usize], cols: &[usize]) -> Result<u64> {
    debug_assert_eq!(rows.len(), cols.len());
    let m = rows.len();
    if m == 0 {
        return Ok(1);
    }
    let mut dp = vec![0u64; 1 << m];
    dp[0] = 1;
    for mask in 1usize..(1 << m) {
        let row = rows[mask.count_ones() as usize - 1];
        let mut acc = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = a.get(row, cols[c]);
            let rest = dp[mask & !(1 << c)];
            if entry != 0 && rest != 0 {
                let term = entry
                    .checked_mul(rest)
                    .ok_or(Error::Overflow("integer permanent"))?;
                acc = acc
                    .checked_add(term)
                    .ok_or(Error::Overflow("integer permanent"))?;
            }
        }
        dp[mask] = acc;
    }
    Ok(dp[(1 << m) - 1])
}
