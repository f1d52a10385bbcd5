use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qcldpc::covers::{
    build_cover_block, build_cover_interleaved, cover_distance_bounds, split_auto,
    verify_cover_projection, CoverLayout, CoverSplit,
};
use qcldpc::cycles::{
    build_tanner, detect_4cycle_type1, detect_6cycle_type1, diameter, equal_products, girth,
    type2_4cycle_free, wm_girth_caps, CycleWitness, FourCycleCheck, ShortCycle,
    MAX_EQUAL_PRODUCTS_SIZE,
};
use qcldpc::distance::{dmin_exhaustive_with_progress, gf2_rank, CodeParams, DEFAULT_MAX_DIM};
use qcldpc::report::analyze;
use qcldpc::wm_enum::{enumerate_wm, reference_class_count, WmClass};
use qcldpc::{Error, Extended, PolyMatrix};

/// Analysis tools for quasi-cyclic LDPC codes given as polynomial parity-check matrices.
#[derive(Parser)]
#[command(name = "qcldpc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, distance bounds, girth and diameter.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact minimum distance by exhaustive codeword enumeration.
    Dmin {
        file: PathBuf,
        /// Largest dimension to enumerate; larger codes get an upper bound only.
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Report progress on stderr.
        #[arg(long)]
        progress: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print the scalar parity-check matrix.
    Expand {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a double cover from a split of the matrix.
    Cover {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Block)]
        mode: Mode,
        /// Matrix file listing the first part of every entry; the rest forms the second part.
        #[arg(long)]
        split_file: Option<PathBuf>,
        /// Minimum distance of the base code, for the cover distance bounds.
        #[arg(long)]
        base_dmin: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Girth, diameter and algebraic cycle witnesses.
    Cycles {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate regular weight matrices up to row and column permutation.
    EnumWm {
        #[arg(short = 'J')]
        rows: usize,
        #[arg(short = 'L')]
        cols: usize,
        #[arg(long)]
        col_sum: u64,
        #[arg(long)]
        row_sum: u64,
        #[arg(long)]
        max_entry: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Block,
    Interleaved,
}

enum Failure {
    Input(String),
    Guard(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_matrix(path: &Path) -> std::result::Result<PolyMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    PolyMatrix::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("report types serialize")
    );
}

fn cmd_analyze(file: &Path, json: bool) -> Outcome {
    let h = read_matrix(file)?;
    let rep = analyze(&h)?;
    for w in &rep.warnings {
        eprintln!("warning: {w}");
    }
    if json {
        print_json(&rep);
    } else {
        print!("{}", rep.to_text());
    }
    Ok(())
}

#[derive(Serialize)]
struct DminOutput<'a> {
    #[serde(flatten)]
    params: &'a CodeParams,
    summary: String,
}

fn cmd_dmin(file: &Path, max_dim: usize, jobs: usize, progress: bool, json: bool) -> Outcome {
    let h = read_matrix(file)?;
    let report = |done: u64, total: u64| {
        if progress {
            eprintln!("{done} / {total} codewords");
        }
        true
    };
    let p = dmin_exhaustive_with_progress(&h, max_dim, jobs, &report);
    let summary = match p.dmin {
        Some(d) => format!("[{}, {}, {}]", p.n, p.k, d),
        None => format!("[{}, {}, d ≤ {}]", p.n, p.k, p.dmin_upper),
    };
    if json {
        print_json(&DminOutput {
            params: &p,
            summary,
        });
    } else {
        println!("{summary}");
    }
    Ok(())
}

#[derive(Serialize)]
struct ExpandOutput {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<String>,
}

fn cmd_expand(file: &Path, json: bool) -> Outcome {
    let hs = read_matrix(file)?.expand_scalar();
    if json {
        print_json(&ExpandOutput {
            n_rows: hs.n_rows(),
            n_cols: hs.n_cols(),
            rows: hs.to_row_strings(),
        });
    } else {
        print!("{}", hs.to_text());
    }
    Ok(())
}

#[derive(Serialize)]
struct CoverOutput {
    layout: CoverLayout,
    matrix: String,
    regularity: Option<(u64, u64)>,
    n: usize,
    rank: usize,
    k: usize,
    covers_base: bool,
    dmin_bounds: Option<(u64, u64)>,
}

fn cmd_cover(
    file: &Path,
    mode: Mode,
    split_file: Option<&Path>,
    base_dmin: Option<u64>,
    json: bool,
) -> Outcome {
    let h = read_matrix(file)?;
    let split = match split_file {
        Some(p) => CoverSplit::from_part1(&h, &read_matrix(p)?)?,
        None => split_auto(&h)?,
    };
    let (layout, cover) = match mode {
        Mode::Block => (CoverLayout::Block, build_cover_block(&split)),
        Mode::Interleaved => (CoverLayout::Interleaved, build_cover_interleaved(&split)),
    };
    let hs = cover.expand_scalar();
    let rank = gf2_rank(&hs);
    let out = CoverOutput {
        layout,
        matrix: cover.to_qcpm(),
        regularity: cover.classify().regularity,
        n: hs.n_cols(),
        rank,
        k: hs.n_cols() - rank,
        covers_base: verify_cover_projection(&cover, &h, layout)?,
        dmin_bounds: base_dmin.map(cover_distance_bounds).transpose()?,
    };
    if json {
        print_json(&out);
        return Ok(());
    }
    print!("{}", out.matrix);
    println!(
        "# regularity {}",
        out.regularity
            .map_or("irregular".into(), |(c, r)| format!("({c}, {r})"))
    );
    println!("# n = {}, rank = {}, k = {}", out.n, out.rank, out.k);
    println!("# double cover of the base graph: {}", out.covers_base);
    if let Some((lo, hi)) = out.dmin_bounds {
        println!("# {lo} <= dmin <= {hi}");
    }
    Ok(())
}

#[derive(Serialize)]
struct CyclesOutput {
    girth: Extended,
    diameter: Extended,
    girth_cap: Extended,
    four_cycle: Option<CycleWitness>,
    six_cycle: Option<ShortCycle>,
    equal_products: Vec<CycleWitness>,
    four_cycle_check: Option<FourCycleCheck>,
}

fn cmd_cycles(file: &Path, json: bool) -> Outcome {
    let h = read_matrix(file)?;
    let g = build_tanner(&h.expand_scalar());
    let type_m = h.type_m();
    let mut out = CyclesOutput {
        girth: girth(&g),
        diameter: diameter(&g),
        girth_cap: wm_girth_caps(&h.weight_matrix()),
        four_cycle: None,
        six_cycle: None,
        equal_products: Vec::new(),
        four_cycle_check: None,
    };
    if type_m <= 1 {
        out.four_cycle = detect_4cycle_type1(&h)?;
        out.six_cycle = detect_6cycle_type1(&h)?;
        for size in 2..=h.rows().min(h.cols()).min(MAX_EQUAL_PRODUCTS_SIZE) {
            out.equal_products.extend(equal_products(&h, size)?);
        }
    }
    if type_m <= 2 {
        out.four_cycle_check = Some(type2_4cycle_free(&h)?);
    }
    if json {
        print_json(&out);
        return Ok(());
    }
    println!("girth      {}", out.girth);
    println!("diameter   {}", out.diameter);
    println!("girth cap  {}", out.girth_cap);
    if type_m <= 1 {
        match &out.four_cycle {
            Some(w) => println!(
                "4-cycle    rows {:?} cols {:?}: {}",
                w.row_set,
                w.col_set,
                w.equation(&h)
            ),
            None => println!("4-cycle    none"),
        }
        match &out.six_cycle {
            Some(s) => println!(
                "6x6 scan   {:?} in rows {:?} cols {:?}: {}",
                s.kind,
                s.row_set,
                s.col_set,
                s.witness.equation(&h)
            ),
            None => println!("6x6 scan   none"),
        }
        for w in &out.equal_products {
            println!(
                "R = {}      rows {:?} cols {:?}: {}{}",
                w.size,
                w.row_set,
                w.col_set,
                w.equation(&h),
                if w.single_cycle {
                    format!(" ({}-cycle)", 2 * w.size)
                } else {
                    String::new()
                }
            );
        }
    }
    if let Some(c) = &out.four_cycle_check {
        println!("4-cycle free {}", c.free);
        for v in &c.violations {
            println!(
                "  condition {} rows {:?} cols {:?}: {}",
                v.condition, v.rows, v.cols, v.description
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct EnumOutput<'a> {
    count: usize,
    reference_count: Option<usize>,
    classes: &'a [WmClass],
}

fn cmd_enum_wm(
    j: usize,
    l: usize,
    col_sum: u64,
    row_sum: u64,
    max_entry: u64,
    json: bool,
) -> Outcome {
    let classes = enumerate_wm(j, l, col_sum, row_sum, max_entry)?;
    let reference = reference_class_count(j, l, col_sum, row_sum, max_entry);
    if let Some(expected) = reference.filter(|&e| e != classes.len()) {
        eprintln!(
            "warning: found {} classes, the tabulated count is {expected}; listing the enumeration",
            classes.len()
        );
    }
    if json {
        print_json(&EnumOutput {
            count: classes.len(),
            reference_count: reference,
            classes: &classes,
        });
        return Ok(());
    }
    println!("{} classes", classes.len());
    for c in &classes {
        println!();
        print!("{}", c.canonical);
        println!("bound {}", c.bound);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Analyze { file, json } => cmd_analyze(file, *json),
        Command::Dmin {
            file,
            max_dim,
            jobs,
            progress,
            json,
        } => cmd_dmin(file, *max_dim, *jobs, *progress, *json),
        Command::Expand { file, json } => cmd_expand(file, *json),
        Command::Cover {
            file,
            mode,
            split_file,
            base_dmin,
            json,
        } => cmd_cover(file, *mode, split_file.as_deref(), *base_dmin, *json),
        Command::Cycles { file, json } => cmd_cycles(file, *json),
        Command::EnumWm {
            rows,
            cols,
            col_sum,
            row_sum,
            max_entry,
            json,
        } => cmd_enum_wm(*rows, *cols, *col_sum, *row_sum, *max_entry, *json),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
