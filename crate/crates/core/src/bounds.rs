//! Minimum-distance upper bounds built from permanents.
//!
//! For any column set `S` of size `J+1`, the vector with entry
//! `perm(H_{S \ i})` at each `i in S` (and zero elsewhere) is a codeword.
//! Minimizing its nonzero Hamming weight over all `S` bounds `d_min`; replacing
//! ring weights by integer permanents of the weight matrix gives a weaker
//! bound that only depends on the proto-graph.

use itertools::Itertools;
use serde::Serialize;

use crate::cycles::{equal_products, CycleWitness, MAX_EQUAL_PRODUCTS_SIZE};
use crate::permanent::{perm_int_of, perm_poly_of};
use crate::{Error, Extended, PolyMatrix, Result, RingPoly, WeightMatrix};

/// A length-`L` vector over `F2[x]/(x^r - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVector {
    modulus: u32,
    entries: Vec<RingPoly>,
}

impl PolyVector {
    pub fn new(modulus: u32, entries: Vec<RingPoly>) -> Result<Self> {
        if let Some(p) = entries.iter().find(|p| p.modulus() != modulus) {
            return Err(Error::ModulusMismatch {
                left: modulus,
                right: p.modulus(),
            });
        }
        Ok(PolyVector { modulus, entries })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn entries(&self) -> &[RingPoly] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of the entry weights.
    pub fn hamming_weight(&self) -> u64 {
        self.entries.iter().map(|p| p.weight() as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingPoly::is_zero)
    }

    /// Scalar vector of length `L*r`: bit `i*r + s` is the coefficient of `x^s` in entry `i`.
    pub fn to_bits(&self) -> Vec<u64> {
        let r = self.modulus as usize;
        let mut bits = vec![0u64; (self.entries.len() * r).div_ceil(64)];
        for (i, p) in self.entries.iter().enumerate() {
            for &s in p.support() {
                let pos = i * r + s as usize;
                bits[pos / 64] |= 1 << (pos % 64);
            }
        }
        bits
    }

    pub fn is_codeword_of(&self, h: &PolyMatrix) -> Result<bool> {
        Ok(h.syndrome(&self.entries)?.iter().all(RingPoly::is_zero))
    }
}

impl Serialize for PolyVector {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(|p| p.support()))
    }
}

/// Value of a bound together with the column set and codeword achieving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub value: Extended,
    pub achieving_subset: Option<Vec<usize>>,
    pub witness: Option<PolyVector>,
}

impl BoundReport {
    fn unbounded() -> Self {
        BoundReport {
            value: Extended::Infinite,
            achieving_subset: None,
            witness: None,
        }
    }
}

/// Per-subset terms of both bounds, in lexicographic subset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetTerm {
    pub subset: Vec<usize>,
    /// Hamming weight of the permanent codeword for this subset.
    pub codeword_weight: u64,
    /// `sum_{i in S} perm(A_{S \ i})`.
    pub weight_matrix_sum: u64,
}

fn ensure_enough_columns(rows: usize, cols: usize) -> Result<()> {
    if rows + 1 > cols {
        return Err(Error::TooFewColumns { rows, cols });
    }
    Ok(())
}

fn validate_subset(h: &PolyMatrix, subset: &[usize]) -> Result<Vec<usize>> {
    ensure_enough_columns(h.rows(), h.cols())?;
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != h.rows() + 1 || subset.len() != s.len() {
        return Err(Error::SubsetSize {
            expected: h.rows() + 1,
            got: subset.len(),
        });
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= h.cols()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            len: h.cols(),
        });
    }
    Ok(s)
}

/// Codeword with `c_i = perm(H_{S \ i})` for `i in S`, zero elsewhere.
pub fn construct_codeword(h: &PolyMatrix, subset: &[usize]) -> Result<PolyVector> {
    let s = validate_subset(h, subset)?;
    Ok(codeword_for(h, &s))
}

fn codeword_for(h: &PolyMatrix, s: &[usize]) -> PolyVector {
    let r = h.modulus();
    let rows: Vec<usize> = (0..h.rows()).collect();
    let mut entries = vec![RingPoly::zero(r); h.cols()];
    for (k, &i) in s.iter().enumerate() {
        let rest: Vec<usize> = s
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, &c)| c)
            .collect();
        entries[i] = perm_poly_of(h, &rows, &rest);
    }
    let c = PolyVector {
        modulus: r,
        entries,
    };
    debug_assert!(c.is_codeword_of(h).unwrap_or(false));
    c
}

fn weight_matrix_sum(a: &WeightMatrix, s: &[usize]) -> Result<u64> {
    let rows: Vec<usize> = (0..a.rows()).collect();
    let mut total = 0u64;
    for k in 0..s.len() {
        let rest: Vec<usize> = s
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, &c)| c)
            .collect();
        total = total
            .checked_add(perm_int_of(a, &rows, &rest)?)
            .ok_or(Error::Overflow("weight-matrix bound"))?;
    }
    Ok(total)
}

fn check_perm_size(rows: usize) -> Result<()> {
    if rows > crate::permanent::MAX_PERMANENT_SIZE {
        return Err(Error::SizeGuard {
            what: "permanent matrix side",
            size: rows,
            limit: crate::permanent::MAX_PERMANENT_SIZE,
        });
    }
    Ok(())
}

/// `min*` over all `(J+1)`-subsets of the permanent-codeword weights.
/// Ties go to the lexicographically first subset.
pub fn bound_eq1(h: &PolyMatrix) -> Result<BoundReport> {
    ensure_enough_columns(h.rows(), h.cols())?;
    check_perm_size(h.rows())?;
    let mut best = BoundReport::unbounded();
    for s in (0..h.cols()).combinations(h.rows() + 1) {
        let c = codeword_for(h, &s);
        let w = c.hamming_weight();
        if w > 0 && Extended::Finite(w) < best.value {
            best = BoundReport {
                value: Extended::Finite(w),
                achieving_subset: Some(s),
                witness: Some(c),
            };
        }
    }
    Ok(best)
}

/// `min*` over all `(J+1)`-subsets of `sum_{i in S} perm(A_{S \ i})`.
pub fn bound_eq2(a: &WeightMatrix) -> Result<BoundReport> {
    ensure_enough_columns(a.rows(), a.cols())?;
    check_perm_size(a.rows())?;
    let mut best = BoundReport::unbounded();
    for s in (0..a.cols()).combinations(a.rows() + 1) {
        let v = weight_matrix_sum(a, &s)?;
        if v > 0 && Extended::Finite(v) < best.value {
            best = BoundReport {
                value: Extended::Finite(v),
                achieving_subset: Some(s),
                witness: None,
            };
        }
    }
    Ok(best)
}

/// Both bound terms for every subset.
pub fn subset_terms(h: &PolyMatrix) -> Result<Vec<SubsetTerm>> {
    ensure_enough_columns(h.rows(), h.cols())?;
    check_perm_size(h.rows())?;
    let a = h.weight_matrix();
    (0..h.cols())
        .combinations(h.rows() + 1)
        .map(|s| {
            Ok(SubsetTerm {
                codeword_weight: codeword_for(h, &s).hamming_weight(),
                weight_matrix_sum: weight_matrix_sum(&a, &s)?,
                subset: s,
            })
        })
        .collect()
}

fn factorial(n: u64) -> Result<u64> {
    (1..=n).try_fold(1u64, |acc, k| {
        acc.checked_mul(k).ok_or(Error::Overflow("factorial"))
    })
}

/// `(J+1)!`, the cap for type-I matrices.
pub fn bound_factorial(j: usize) -> Result<u64> {
    if j == 0 {
        return Err(Error::InvalidArgument("J must be at least 1".into()));
    }
    factorial(j as u64 + 1)
}

/// Girth-aware refinement of `(J+1)!` for type-I matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GirthAdjustedReport {
    pub value: Extended,
    /// The equal-products configuration behind the refinement, if any.
    pub refinement: Option<CycleWitness>,
}

/// `(J+1)! - 2 (J-R+1)!` for the smallest `R` admitting two derangement-related
/// bijections with equal nonzero products; `(J+1)!` when none exists.
pub fn bound_girth_adjusted(h: &PolyMatrix) -> Result<GirthAdjustedReport> {
    h.ensure_type_at_most(1)?;
    ensure_enough_columns(h.rows(), h.cols())?;
    let j = h.rows();
    let top = bound_factorial(j)?;
    let max_r = j.min(h.cols()).min(MAX_EQUAL_PRODUCTS_SIZE);
    for size in 2..=max_r {
        if let Some(w) = equal_products(h, size)? {
            let cut = 2 * factorial((j - size + 1) as u64)?;
            return Ok(GirthAdjustedReport {
                value: Extended::Finite(top - cut),
                refinement: Some(w),
            });
        }
    }
    Ok(GirthAdjustedReport {
        value: Extended::Finite(top),
        refinement: None,
    })
}
