//! Seeded generators and brute-force oracles shared by the integration suites.
#![allow(dead_code)]

use qcldpc::bounds::{bound_eq1, bound_eq2, bound_factorial, bound_girth_adjusted};
use qcldpc::covers::{build_cover_block, CoverSplit};
use qcldpc::cycles::{build_tanner, detect_4cycle_type1, girth, type2_4cycle_free};
use qcldpc::distance::{dmin_exhaustive, gf2_rank};
use qcldpc::{Extended, PolyMatrix, ScalarMatrix};
use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entry with a uniformly random support of the given weight.
pub fn random_entry(rng: &mut ChaCha8Rng, r: u32, weight: usize) -> Vec<u32> {
    let mut s: Vec<u32> = sample(rng, r as usize, weight.min(r as usize))
        .into_iter()
        .map(|e| e as u32)
        .collect();
    s.sort_unstable();
    s
}

/// Random matrix whose entries have weight 0 with probability `p_zero`,
/// otherwise a weight drawn uniformly from `1..=max_weight`.
pub fn random_matrix(
    rng: &mut ChaCha8Rng,
    j: usize,
    l: usize,
    r: u32,
    max_weight: usize,
    p_zero: f64,
) -> PolyMatrix {
    let grid: Vec<Vec<Vec<u32>>> = (0..j)
        .map(|_| {
            (0..l)
                .map(|_| {
                    if rng.gen_bool(p_zero) {
                        vec![]
                    } else {
                        let w = rng.gen_range(1..=max_weight);
                        random_entry(rng, r, w)
                    }
                })
                .collect()
        })
        .collect();
    PolyMatrix::from_supports(r, &grid).unwrap()
}

pub fn code_dimension(h: &PolyMatrix) -> usize {
    let hs = h.expand_scalar();
    hs.n_cols() - gf2_rank(&hs)
}

/// Smallest number of columns of `m` that sum to zero, trying sizes in
/// increasing order. Needs at most 64 rows.
pub fn naive_dmin(m: &ScalarMatrix) -> Option<u64> {
    assert!(m.n_rows() <= 64);
    let cols: Vec<u64> = (0..m.n_cols())
        .map(|v| {
            (0..m.n_rows())
                .filter(|&u| m.get(u, v))
                .fold(0u64, |acc, u| acc | 1 << u)
        })
        .collect();
    fn search(cols: &[u64], start: usize, left: usize, acc: u64) -> bool {
        if left == 0 {
            return acc == 0;
        }
        (start..=cols.len() - left).any(|v| search(cols, v + 1, left - 1, acc ^ cols[v]))
    }
    (1..=cols.len())
        .find(|&w| search(&cols, 0, w, 0))
        .map(|w| w as u64)
}

/// Shortest cycle by depth-first enumeration of simple paths, pruned at the
/// best length found so far. Exponential; for graphs of at most ~30 vertices.
pub fn girth_by_simple_cycles(adj: &[Vec<usize>]) -> Extended {
    fn extend(
        adj: &[Vec<usize>],
        start: usize,
        v: usize,
        len: usize,
        on_path: &mut [bool],
        best: &mut usize,
    ) {
        for &w in &adj[v] {
            if w == start && len >= 3 {
                *best = (*best).min(len);
            } else if w > start && !on_path[w] && len + 1 < *best {
                on_path[w] = true;
                extend(adj, start, w, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = usize::MAX;
    let mut on_path = vec![false; adj.len()];
    for s in 0..adj.len() {
        on_path[s] = true;
        extend(adj, s, s, 1, &mut on_path, &mut best);
        on_path[s] = false;
    }
    if best == usize::MAX {
        Extended::Infinite
    } else {
        Extended::Finite(best as u64)
    }
}

pub fn graph_girth(h: &PolyMatrix) -> Extended {
    girth(&build_tanner(&h.expand_scalar()))
}

/// Counterexamples to: four-cycle witness present iff the expanded graph has girth 4.
pub fn four_cycle_agreement_type1(samples: usize, seed: u64) -> (usize, usize, Vec<String>) {
    let mut rng = rng(seed);
    let (mut with_cycle, mut bad) = (0, Vec::new());
    for _ in 0..samples {
        let j = rng.gen_range(2..=4);
        let l = rng.gen_range(2..=4);
        let r = rng.gen_range(2..=32);
        let h = random_matrix(&mut rng, j, l, r, 1, 0.15);
        let algebraic = detect_4cycle_type1(&h).unwrap().is_some();
        let measured = graph_girth(&h) == 4;
        with_cycle += measured as usize;
        if algebraic != measured {
            bad.push(h.to_qcpm());
        }
    }
    (samples, with_cycle, bad)
}

/// Counterexamples to: type-II four-cycle test passes iff girth exceeds four.
pub fn four_cycle_agreement_type2(samples: usize, seed: u64) -> (usize, usize, Vec<String>) {
    let mut rng = rng(seed);
    let (mut free_count, mut bad) = (0, Vec::new());
    for _ in 0..samples {
        let j = rng.gen_range(1..=3);
        let l = rng.gen_range(2..=4);
        let r = rng.gen_range(3..=40);
        let h = random_matrix(&mut rng, j, l, r, 2, 0.2);
        let claimed = type2_4cycle_free(&h).unwrap().free;
        let measured = graph_girth(&h) > 4;
        free_count += measured as usize;
        if claimed != measured {
            bad.push(h.to_qcpm());
        }
    }
    (samples, free_count, bad)
}

/// Random bipartite graphs with at most 30 vertices: BFS girth vs cycle enumeration.
pub fn girth_oracle(samples: usize, seed: u64) -> Vec<String> {
    let mut rng = rng(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let rows = rng.gen_range(1..=12);
        let cols = rng.gen_range(1..=(30 - rows).min(16));
        let density = rng.gen_range(0.08..0.35);
        let mut m = ScalarMatrix::zeros(rows, cols);
        for u in 0..rows {
            for v in 0..cols {
                if rng.gen_bool(density) {
                    m.set(u, v, true);
                }
            }
        }
        let g = build_tanner(&m);
        if girth(&g) != girth_by_simple_cycles(&g.adjacency()) {
            bad.push(m.to_text());
        }
    }
    bad
}

/// Random small codes with `k <= max_k` and at most 64 check rows.
pub fn small_codes(count: usize, seed: u64, max_k: usize, max_n: usize) -> Vec<PolyMatrix> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let j = rng.gen_range(1..=3);
        let l = rng.gen_range(j + 1..=5);
        let r = rng.gen_range(2..=9);
        let h = random_matrix(&mut rng, j, l, r, 2, 0.2);
        if h.code_length() <= max_n && (j as u32 * r) <= 64 && code_dimension(&h) <= max_k {
            out.push(h);
        }
    }
    out
}

/// Gray-code distance vs the naive column-subset search.
pub fn dmin_oracle(count: usize, seed: u64) -> Vec<String> {
    small_codes(count, seed, 14, 24)
        .into_iter()
        .filter(|h| dmin_exhaustive(h, 20, 1).dmin != naive_dmin(&h.expand_scalar()))
        .map(|h| h.to_qcpm())
        .collect()
}

#[derive(Debug, Default)]
pub struct ChainTally {
    pub codes: usize,
    pub type_one: usize,
    pub with_codewords: usize,
    pub violations: Vec<String>,
    /// Violations whose larger side is infinite, i.e. every term of that min* was zero.
    pub infinite_side: usize,
}

/// `dmin <= eq1 <= eq2`, and `eq2 <= (J+1)!` plus the girth-adjusted bound for type-I inputs.
pub fn bound_chain(count: usize, seed: u64) -> ChainTally {
    let mut t = ChainTally::default();
    let mut rng = rng(seed);
    while t.codes < count {
        let j = rng.gen_range(1..=3);
        let l = rng.gen_range(j + 1..=5);
        let r = rng.gen_range(2..=9);
        let max_weight = if rng.gen_bool(0.4) { 1 } else { 2 };
        let h = random_matrix(&mut rng, j, l, r, max_weight, 0.2);
        let params = dmin_exhaustive(&h, 20, 1);
        if params.k == 0 || params.k > 20 {
            continue;
        }
        t.codes += 1;
        let d = params.dmin.unwrap();
        let eq1 = bound_eq1(&h).unwrap().value;
        let eq2 = bound_eq2(&h.weight_matrix()).unwrap().value;
        let mut why = Vec::new();
        if eq1 < d {
            why.push(format!("dmin {d} > eq1 {eq1}"));
        }
        if eq1.is_finite() {
            t.with_codewords += 1;
        }
        if eq1 > eq2 {
            why.push(format!("eq1 {eq1} > eq2 {eq2}"));
        }
        if h.type_m() <= 1 {
            t.type_one += 1;
            let f = bound_factorial(j).unwrap();
            if eq2 > f {
                why.push(format!("eq2 {eq2} > (J+1)! {f}"));
            }
            let adj = bound_girth_adjusted(&h).unwrap().value;
            if adj < d {
                why.push(format!("dmin {d} > girth-adjusted {adj}"));
            }
        }
        if !why.is_empty() {
            if (eq1 > eq2 && !eq1.is_finite()) || (h.type_m() <= 1 && !eq2.is_finite()) {
                t.infinite_side += 1;
            }
            t.violations.push(format!(
                "{}: {}",
                why.join(", "),
                h.to_qcpm().replace('\n', " | ")
            ));
        }
    }
    t
}

/// Random splits with both codes small enough for exact distance.
pub fn sandwich(count: usize, seed: u64) -> (usize, Vec<String>) {
    let mut rng = rng(seed);
    let (mut done, mut bad) = (0, Vec::new());
    while done < count {
        let j = rng.gen_range(1..=2);
        let l = rng.gen_range(j + 1..=4);
        let r = rng.gen_range(2..=6);
        let h = random_matrix(&mut rng, j, l, r, 2, 0.2);
        let part1: Vec<Vec<Vec<u32>>> = (0..j)
            .map(|a| {
                (0..l)
                    .map(|b| {
                        h.get(a, b)
                            .support()
                            .iter()
                            .copied()
                            .filter(|_| rng.gen_bool(0.5))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let split =
            CoverSplit::from_part1(&h, &PolyMatrix::from_supports(r, &part1).unwrap()).unwrap();
        let cover = build_cover_block(&split);
        let base = dmin_exhaustive(&h, 20, 1);
        let lifted = dmin_exhaustive(&cover, 20, 1);
        if base.k == 0 || lifted.k > 20 {
            continue;
        }
        done += 1;
        let (d, dc) = (base.dmin.unwrap(), lifted.dmin.unwrap());
        if !(d <= dc && dc <= 2 * d) {
            bad.push(format!(
                "base {d}, cover {dc}: {}",
                h.to_qcpm().replace('\n', " | ")
            ));
        }
    }
    (done, bad)
}
