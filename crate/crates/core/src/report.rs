//! One-shot structural report on a polynomial parity-check matrix.

use serde::Serialize;

use crate::bounds::{bound_eq1, bound_eq2, bound_factorial, bound_girth_adjusted};
use crate::cycles::{build_tanner, diameter, girth, type2_4cycle_free, wm_girth_caps};
use crate::distance::gf2_rank;
use crate::permanent::MAX_PERMANENT_SIZE;
use crate::{Error, Extended, PolyMatrix, Result, WeightMatrix};

/// Field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeReport {
    pub r: u32,
    pub rows: usize,
    pub cols: usize,
    pub n: usize,
    pub k: usize,
    pub type_m: usize,
    /// `(column sum, row sum)` of the weight matrix when regular.
    pub regularity: Option<(u64, u64)>,
    pub weight_matrix: WeightMatrix,
    /// Permanent-codeword bound; absent when `J + 1 > L`.
    pub bound_eq1: Option<Extended>,
    /// Weight-matrix bound; absent when `J + 1 > L`.
    pub bound_eq2: Option<Extended>,
    /// `(J+1)!`, reported for type-I matrices only.
    pub bound_factorial: Option<u64>,
    /// Girth-aware refinement, reported for type-I matrices only.
    pub bound_girth_adjusted: Option<Extended>,
    pub girth: Extended,
    pub diameter: Extended,
    /// Girth cap implied by weight-matrix patterns.
    pub girth_cap: Extended,
    /// Exact four-cycle test, for entries of weight at most two.
    pub four_cycle_free: Option<bool>,
    pub warnings: Vec<String>,
}

impl CodeReport {
    /// Smallest of the reported upper bounds on the minimum distance.
    pub fn best_upper_bound(&self) -> Extended {
        [
            self.bound_eq1,
            self.bound_eq2,
            self.bound_factorial.map(Extended::Finite),
            self.bound_girth_adjusted,
        ]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(Extended::Infinite)
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<Extended>| v.map_or("n/a".to_string(), |x| x.to_string());
        let mut out = String::new();
        out += &format!(
            "shape       {} x {}, r = {}\n",
            self.rows, self.cols, self.r
        );
        out += &format!("code        n = {}, k = {}\n", self.n, self.k);
        out += &format!("type        {}\n", self.type_m);
        out += &format!(
            "regularity  {}\n",
            self.regularity
                .map_or("irregular".to_string(), |(c, r)| format!("({c}, {r})"))
        );
        out += "weight matrix\n";
        for line in self.weight_matrix.to_string().lines() {
            out += &format!("  {line}\n");
        }
        out += &format!("bound eq1   {}\n", opt(self.bound_eq1));
        out += &format!("bound eq2   {}\n", opt(self.bound_eq2));
        out += &format!(
            "(J+1)!      {}\n",
            opt(self.bound_factorial.map(Extended::Finite))
        );
        out += &format!("girth adj.  {}\n", opt(self.bound_girth_adjusted));
        out += &format!("girth       {}\n", self.girth);
        out += &format!("diameter    {}\n", self.diameter);
        out += &format!("girth cap   {}\n", self.girth_cap);
        out += &format!(
            "4-cycle free {}\n",
            self.four_cycle_free
                .map_or("n/a".to_string(), |b| b.to_string())
        );
        for w in &self.warnings {
            out += &format!("warning: {w}\n");
        }
        out
    }
}

/// Rank, bounds and graph statistics. Exhaustive distance is not run here.
pub fn analyze(h: &PolyMatrix) -> Result<CodeReport> {
    let a = h.weight_matrix();
    let cls = h.classify();
    let hs = h.expand_scalar();
    let n = hs.n_cols();
    let k = n - gf2_rank(&hs);
    let has_subsets = h.rows() < h.cols();
    if has_subsets && h.rows() > MAX_PERMANENT_SIZE {
        return Err(Error::SizeGuard {
            what: "row count for permanent bounds",
            size: h.rows(),
            limit: MAX_PERMANENT_SIZE,
        });
    }
    let (eq1, eq2) = if has_subsets {
        (Some(bound_eq1(h)?.value), Some(bound_eq2(&a)?.value))
    } else {
        (None, None)
    };
    let type_one = cls.type_m <= 1;
    let (factorial, adjusted) = if type_one && has_subsets {
        (
            Some(bound_factorial(h.rows())?),
            Some(bound_girth_adjusted(h)?.value),
        )
    } else {
        (None, None)
    };
    let g = build_tanner(&hs);
    let measured_girth = girth(&g);
    let cap = wm_girth_caps(&a);
    let four_cycle_free = if cls.type_m <= 2 {
        Some(type2_4cycle_free(h)?.free)
    } else {
        None
    };

    let mut warnings = Vec::new();
    if let (Some(Extended::Finite(x)), Some(Extended::Finite(y))) = (eq1, eq2) {
        if x > y {
            warnings.push(format!("bound eq1 = {x} exceeds bound eq2 = {y}"));
        }
    }
    if let (Some(Extended::Infinite), Some(Extended::Finite(_))) = (eq1, eq2) {
        warnings.push("every permanent codeword vanishes; bound eq1 is unbounded".into());
    }
    if let (Some(f), Some(Extended::Finite(y))) = (factorial, eq2) {
        if y > f {
            warnings.push(format!("bound eq2 = {y} exceeds (J+1)! = {f}"));
        }
    }
    if measured_girth > cap {
        warnings.push(format!(
            "measured girth {measured_girth} exceeds pattern cap {cap}"
        ));
    }
    if let Some(free) = four_cycle_free {
        if free != (measured_girth > 4) {
            warnings.push("four-cycle test disagrees with the measured girth".into());
        }
    }

    Ok(CodeReport {
        r: h.modulus(),
        rows: h.rows(),
        cols: h.cols(),
        n,
        k,
        type_m: cls.type_m,
        regularity: cls.regularity,
        weight_matrix: a,
        bound_eq1: eq1,
        bound_eq2: eq2,
        bound_factorial: factorial,
        bound_girth_adjusted: adjusted,
        girth: measured_girth,
        diameter: diameter(&g),
        girth_cap: cap,
        four_cycle_free,
        warnings,
    })
}
