//! Tanner graphs, girth and diameter, and algebraic short-cycle detection
//! working directly on the polynomial matrix.

use std::collections::VecDeque;

use itertools::Itertools;
use serde::Serialize;

use crate::{Error, Extended, PolyMatrix, Result, ScalarMatrix, WeightMatrix};

/// Largest `R` accepted by [`equal_products`].
pub const MAX_EQUAL_PRODUCTS_SIZE: usize = 5;

/// Bipartite graph with one check node per row and one variable node per column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerGraph {
    n_var: usize,
    n_chk: usize,
    chk_adj: Vec<Vec<usize>>,
    var_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn n_var(&self) -> usize {
        self.n_var
    }

    pub fn n_chk(&self) -> usize {
        self.n_chk
    }

    /// Variables attached to check `c`, ascending.
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    /// Checks attached to variable `v`, ascending.
    pub fn variable_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    pub fn n_edges(&self) -> usize {
        self.chk_adj.iter().map(Vec::len).sum()
    }

    pub fn n_vertices(&self) -> usize {
        self.n_chk + self.n_var
    }

    /// Neighbors in the unified numbering: checks are `0..n_chk`, variables follow.
    fn neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let (list, offset) = if x < self.n_chk {
            (&self.chk_adj[x], self.n_chk)
        } else {
            (&self.var_adj[x - self.n_chk], 0)
        };
        list.iter().map(move |&y| y + offset)
    }

    /// Adjacency lists in the unified numbering (checks first).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.n_vertices())
            .map(|x| self.neighbors(x).collect())
            .collect()
    }
}

pub fn build_tanner(hs: &ScalarMatrix) -> TannerGraph {
    let chk_adj: Vec<Vec<usize>> = (0..hs.n_rows()).map(|u| hs.row_support(u)).collect();
    let mut var_adj = vec![Vec::new(); hs.n_cols()];
    for (u, vars) in chk_adj.iter().enumerate() {
        for &v in vars {
            var_adj[v].push(u);
        }
    }
    TannerGraph {
        n_var: hs.n_cols(),
        n_chk: hs.n_rows(),
        chk_adj,
        var_adj,
    }
}

/// Length of the shortest cycle.
pub fn girth(g: &TannerGraph) -> Extended {
    let n = g.n_vertices();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // any cycle closed from here is at least 2*dist[u] long
            if 2 * dist[u] >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 4 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 4 {
            break;
        }
    }
    if best == usize::MAX {
        Extended::Infinite
    } else {
        Extended::Finite(best as u64)
    }
}

/// Largest shortest-path distance over all vertex pairs.
pub fn diameter(g: &TannerGraph) -> Extended {
    let n = g.n_vertices();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut worst = 0usize;
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        let mut seen = 1;
        while let Some(u) = queue.pop_front() {
            for w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    worst = worst.max(dist[w]);
                    seen += 1;
                    queue.push_back(w);
                }
            }
        }
        if seen < n {
            return Extended::Infinite;
        }
    }
    Extended::Finite(worst as u64)
}

/// Two bijections from `row_set` onto `col_set` that differ on every row and
/// whose monomial products coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    /// `R`, the number of rows and columns involved.
    pub size: usize,
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
    /// `sigma[k]` is the column matched with `row_set[k]`.
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    /// Common exponent of both products.
    pub product_exponent: u32,
    /// Whether `sigma^-1 o tau` is a single `R`-cycle, which certifies a `2R`-cycle.
    pub single_cycle: bool,
}

impl CycleWitness {
    /// Human-readable exponent equation, e.g. `h[0,0]+h[1,1] = h[0,1]+h[1,0] = 7 (mod 15)`.
    pub fn equation(&self, h: &PolyMatrix) -> String {
        let side = |map: &[usize]| {
            self.row_set
                .iter()
                .zip(map)
                .map(|(&j, &i)| format!("{}", h.get(j, i).support().first().copied().unwrap_or(0)))
                .join(" + ")
        };
        format!(
            "{} = {} = {} (mod {})",
            side(&self.sigma),
            side(&self.tau),
            self.product_exponent,
            h.modulus()
        )
    }
}

fn exponent(h: &PolyMatrix, j: usize, i: usize) -> Option<u32> {
    h.get(j, i).support().first().copied()
}

fn is_single_cycle(sigma: &[usize], tau: &[usize]) -> bool {
    // follow k -> position of tau[k] in sigma
    let pos = |c: usize| sigma.iter().position(|&s| s == c).unwrap();
    let mut k = 0;
    let mut len = 0;
    loop {
        k = pos(tau[k]);
        len += 1;
        if k == 0 {
            break;
        }
    }
    len == sigma.len()
}

/// First 2x2 all-monomial submatrix with `a + d = b + c (mod r)`.
pub fn detect_4cycle_type1(h: &PolyMatrix) -> Result<Option<CycleWitness>> {
    h.ensure_type_at_most(1)?;
    let r = h.modulus();
    for (j1, j2) in (0..h.rows()).tuple_combinations() {
        for (i1, i2) in (0..h.cols()).tuple_combinations() {
            let (Some(a), Some(b), Some(c), Some(d)) = (
                exponent(h, j1, i1),
                exponent(h, j1, i2),
                exponent(h, j2, i1),
                exponent(h, j2, i2),
            ) else {
                continue;
            };
            if (a + d) % r == (b + c) % r {
                return Ok(Some(CycleWitness {
                    size: 2,
                    row_set: vec![j1, j2],
                    col_set: vec![i1, i2],
                    sigma: vec![i1, i2],
                    tau: vec![i2, i1],
                    product_exponent: (a + d) % r,
                    single_cycle: true,
                }));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShortCycleKind {
    SixCycle,
    FourCycle,
}

/// A 3x3 submatrix whose permanent loses weight, with the cycle it exhibits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortCycle {
    pub kind: ShortCycleKind,
    /// The three rows and columns scanned.
    pub row_set: Vec<usize>,
    pub col_set: Vec<usize>,
    /// Size-3 witness for a six-cycle, or the size-2 witness inside the block for a four-cycle.
    pub witness: CycleWitness,
}

/// Scans 3x3 submatrices for `wt(perm(B)) < perm(wt(B))`. A six-cycle
/// explanation anywhere in the matrix is preferred over a four-cycle one.
pub fn detect_6cycle_type1(h: &PolyMatrix) -> Result<Option<ShortCycle>> {
    h.ensure_type_at_most(1)?;
    let mut four = None;
    for rows in (0..h.rows()).combinations(3) {
        for cols in (0..h.cols()).combinations(3) {
            let products = products(h, &rows, &cols);
            for (x, y) in products.iter().tuple_combinations() {
                let (Some(ex), Some(ey)) = (x.1, y.1) else {
                    continue;
                };
                if ex != ey {
                    continue;
                }
                let differ: Vec<usize> = (0..3).filter(|&k| x.0[k] != y.0[k]).collect();
                if differ.len() == 3 {
                    return Ok(Some(ShortCycle {
                        kind: ShortCycleKind::SixCycle,
                        row_set: rows.clone(),
                        col_set: cols.clone(),
                        witness: CycleWitness {
                            size: 3,
                            row_set: rows.clone(),
                            col_set: cols.clone(),
                            sigma: x.0.clone(),
                            tau: y.0.clone(),
                            product_exponent: ex,
                            single_cycle: true,
                        },
                    }));
                }
                if four.is_none() {
                    let sigma: Vec<usize> = differ.iter().map(|&k| x.0[k]).collect();
                    let tau: Vec<usize> = differ.iter().map(|&k| y.0[k]).collect();
                    let sub_rows: Vec<usize> = differ.iter().map(|&k| rows[k]).collect();
                    let mut sub_cols = sigma.clone();
                    sub_cols.sort_unstable();
                    let r = h.modulus();
                    let exp = sub_rows
                        .iter()
                        .zip(&sigma)
                        .map(|(&j, &i)| exponent(h, j, i).unwrap())
                        .fold(0, |acc, e| (acc + e) % r);
                    four = Some(ShortCycle {
                        kind: ShortCycleKind::FourCycle,
                        row_set: rows.clone(),
                        col_set: cols.clone(),
                        witness: CycleWitness {
                            size: 2,
                            row_set: sub_rows,
                            col_set: sub_cols,
                            sigma,
                            tau,
                            product_exponent: exp,
                            single_cycle: true,
                        },
                    });
                }
            }
        }
    }
    Ok(four)
}

/// All bijections `rows -> cols` with the exponent of their product (None if an entry is zero).
fn products(h: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Vec<(Vec<usize>, Option<u32>)> {
    let r = h.modulus();
    cols.iter()
        .copied()
        .permutations(cols.len())
        .map(|map| {
            let e = rows.iter().zip(&map).try_fold(0u32, |acc, (&j, &i)| {
                exponent(h, j, i).map(|e| (acc + e) % r)
            });
            (map, e)
        })
        .collect()
}

/// Searches `R x R` submatrices for two everywhere-different bijections with
/// equal nonzero products. A witness whose `sigma^-1 o tau` is a single cycle
/// is preferred; otherwise the first one found is returned.
pub fn equal_products(h: &PolyMatrix, size: usize) -> Result<Option<CycleWitness>> {
    h.ensure_type_at_most(1)?;
    if size > MAX_EQUAL_PRODUCTS_SIZE {
        return Err(Error::SizeGuard {
            what: "equal-products order R",
            size,
            limit: MAX_EQUAL_PRODUCTS_SIZE,
        });
    }
    if size < 2 || size > h.rows().min(h.cols()) {
        return Err(Error::InvalidArgument(format!(
            "R = {size} outside 2..={}",
            h.rows().min(h.cols())
        )));
    }
    let mut fallback = None;
    for rows in (0..h.rows()).combinations(size) {
        for cols in (0..h.cols()).combinations(size) {
            let products = products(h, &rows, &cols);
            for (x, y) in products.iter().tuple_combinations() {
                let (Some(ex), Some(ey)) = (x.1, y.1) else {
                    continue;
                };
                if ex != ey || x.0.iter().zip(&y.0).any(|(a, b)| a == b) {
                    continue;
                }
                let single = is_single_cycle(&x.0, &y.0);
                let w = CycleWitness {
                    size,
                    row_set: rows.clone(),
                    col_set: cols.clone(),
                    sigma: x.0.clone(),
                    tau: y.0.clone(),
                    product_exponent: ex,
                    single_cycle: single,
                };
                if single {
                    return Ok(Some(w));
                }
                fallback.get_or_insert(w);
            }
        }
    }
    Ok(fallback)
}

/// Tightest girth cap implied by small patterns in the weight matrix, up to
/// row/column permutation and transposition. Larger entries dominate smaller
/// ones, since the pattern only needs to be present as a subgraph.
pub fn wm_girth_caps(a: &WeightMatrix) -> Extended {
    if a.max_entry() >= 3 {
        return Extended::Finite(6);
    }
    let t = a.transpose();
    if two_large_in_a_row(a) || two_large_in_a_row(&t) {
        return Extended::Finite(8);
    }
    if square_with_large_entry(a) {
        return Extended::Finite(10);
    }
    if full_two_by_three(a) || full_two_by_three(&t) {
        return Extended::Finite(12);
    }
    Extended::Infinite
}

fn two_large_in_a_row(a: &WeightMatrix) -> bool {
    (0..a.rows()).any(|j| (0..a.cols()).filter(|&i| a.get(j, i) >= 2).count() >= 2)
}

fn square_with_large_entry(a: &WeightMatrix) -> bool {
    (0..a.rows()).tuple_combinations().any(|(j1, j2)| {
        (0..a.cols()).tuple_combinations().any(|(i1, i2)| {
            let e = [a.get(j1, i1), a.get(j1, i2), a.get(j2, i1), a.get(j2, i2)];
            e.iter().all(|&x| x >= 1) && e.iter().any(|&x| x >= 2)
        })
    })
}

fn full_two_by_three(a: &WeightMatrix) -> bool {
    (0..a.rows()).tuple_combinations().any(|(j1, j2)| {
        (0..a.cols())
            .filter(|&i| a.get(j1, i) >= 1 && a.get(j2, i) >= 1)
            .count()
            >= 3
    })
}

/// One violated condition of the type-II four-cycle test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// 1: a single binomial; 2: two binomials in one row; 3: two binomials in
    /// one column; 4: a 2x2 block with exactly one binomial; 5: any other 2x2 block.
    pub condition: u8,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FourCycleCheck {
    pub free: bool,
    pub violations: Vec<Violation>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Differences `p - q (mod r)` over ordered pairs of distinct exponents.
fn differences(s: &[u32], r: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for &p in s {
        for &q in s {
            if p != q {
                out.push((p + r - q) % r);
            }
        }
    }
    out
}

/// Exact four-cycle test for matrices with entries of weight at most two.
/// Every four-cycle of the expanded graph falls into exactly one of the five
/// reported configurations, so `free` holds iff the girth exceeds four.
pub fn type2_4cycle_free(h: &PolyMatrix) -> Result<FourCycleCheck> {
    h.ensure_type_at_most(2)?;
    let r = h.modulus();
    let mut violations = Vec::new();
    let binomial = |j, i| h.get(j, i).weight() == 2;

    for j in 0..h.rows() {
        for i in 0..h.cols() {
            if let [a, b] = *h.get(j, i).support() {
                // gcd(x^a + x^b, x^r + 1) = x^min * (1 + x^gcd(b - a, r))
                if r.is_multiple_of(2) && gcd(b - a, r) == r / 2 {
                    violations.push(Violation {
                        condition: 1,
                        rows: vec![j],
                        cols: vec![i],
                        description: format!("x^{a} + x^{b}: gcd({}, {r}) = {}", b - a, r / 2),
                    });
                }
            }
        }
    }

    let mut pair_check = |cond: u8, rows: Vec<usize>, cols: Vec<usize>, p: &[u32], q: &[u32]| {
        let dq = differences(q, r);
        if let Some(d) = differences(p, r).into_iter().find(|d| dq.contains(d)) {
            violations.push(Violation {
                condition: cond,
                rows,
                cols,
                description: format!("both binomials contain the difference {d} (mod {r})"),
            });
        }
    };
    for j in 0..h.rows() {
        for (i1, i2) in (0..h.cols()).tuple_combinations() {
            if binomial(j, i1) && binomial(j, i2) {
                pair_check(
                    2,
                    vec![j],
                    vec![i1, i2],
                    h.get(j, i1).support(),
                    h.get(j, i2).support(),
                );
            }
        }
    }
    for i in 0..h.cols() {
        for (j1, j2) in (0..h.rows()).tuple_combinations() {
            if binomial(j1, i) && binomial(j2, i) {
                pair_check(
                    3,
                    vec![j1, j2],
                    vec![i],
                    h.get(j1, i).support(),
                    h.get(j2, i).support(),
                );
            }
        }
    }

    for (j1, j2) in (0..h.rows()).tuple_combinations() {
        for (i1, i2) in (0..h.cols()).tuple_combinations() {
            let e = [h.get(j1, i1), h.get(j1, i2), h.get(j2, i1), h.get(j2, i2)];
            if e.iter().any(|p| p.is_zero()) {
                continue;
            }
            let diag: Vec<u32> = e[0]
                .support()
                .iter()
                .cartesian_product(e[3].support())
                .map(|(a, d)| (a + d) % r)
                .collect();
            let hit = e[1]
                .support()
                .iter()
                .cartesian_product(e[2].support())
                .map(|(b, c)| (b + c) % r)
                .find(|s| diag.contains(s));
            if let Some(s) = hit {
                let binomials = e.iter().filter(|p| p.weight() == 2).count();
                violations.push(Violation {
                    condition: if binomials == 1 { 4 } else { 5 },
                    rows: vec![j1, j2],
                    cols: vec![i1, i2],
                    description: format!(
                        "h[{j1},{i1}]*h[{j2},{i2}] and h[{j1},{i2}]*h[{j2},{i1}] share x^{s}"
                    ),
                });
            }
        }
    }

    Ok(FourCycleCheck {
        free: violations.is_empty(),
        violations,
    })
}
