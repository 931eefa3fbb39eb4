//! Command-line interface to the orthogonal-array catalog.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;

use oacat::jchar::{BoundViolation, ParityRequirement};
use oacat::subsets::MAX_N;
use oacat::{
    build, canonicalize, check_pair_bound, check_parity, class_count, isomorphic, j_full, j_scale,
    jstars, n_vector, oracle_jstars, read_design_file, render_design, short_j, solutions, strength,
    write_design_file, ArrayParams, Error, JShort, JStar, Result, SubsetIndex,
};

#[derive(Parser)]
#[command(
    name = "oacat",
    version,
    about = "Catalogs of two-level orthogonal arrays with two more columns than their strength",
    long_about = "Enumerates, builds, verifies, and compares two-level orthogonal arrays \
                  OA(n, d+2, 2, d). Classes are counted up to row order, column order, and \
                  column sign switching; each class is identified by a canonical J-vector."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of isomorphism classes for one strength/index pair
    #[command(group(clap::ArgGroup::new("family").required(true).args(["d", "n"])))]
    Count {
        /// Strength d (the arrays have d + 2 columns)
        #[arg(long, requires = "lambda", conflicts_with_all = ["n", "m"])]
        d: Option<u32>,
        /// Index λ; the run count is λ·2^d
        #[arg(long, requires = "d")]
        lambda: Option<u32>,
        /// Run count; alternative to --d/--lambda, paired with --m
        #[arg(long, requires = "m")]
        n: Option<u64>,
        /// Column count; the strength is inferred as m − 2
        #[arg(long, requires = "n")]
        m: Option<u32>,
        /// Recompute by brute force instead of the enumeration engine
        /// (small cases only)
        #[arg(long)]
        oracle: bool,
    },
    /// Class counts for every run count up to a ceiling
    Table {
        /// Strength d
        #[arg(long)]
        d: u32,
        /// Keep only odd or even indices
        #[arg(long, value_enum, default_value = "all")]
        parity: ParityFilter,
        /// Largest run count to include (clamped to the supported ceiling)
        #[arg(long)]
        max_n: u64,
    },
    /// The solution tuples u(1) … u(m+1) k, one class per line
    Solutions {
        /// Strength d
        #[arg(long)]
        d: u32,
        /// Index λ
        #[arg(long)]
        lambda: u32,
        /// Recompute by brute force (small cases only); output is sorted
        /// lexicographically instead of generation order
        #[arg(long)]
        oracle: bool,
    },
    /// Build explicit arrays, one per class
    Build {
        /// Strength d
        #[arg(long)]
        d: u32,
        /// Index λ
        #[arg(long)]
        lambda: u32,
        /// Build only the class with this zero-based position in
        /// generation order
        #[arg(long)]
        index: Option<usize>,
        /// Write one file per class into this directory instead of
        /// printing to stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical J-vector of an array read from a file
    Canon {
        /// Array file (see the README for the format)
        file: PathBuf,
    },
    /// Check an array: strength, parity laws, pairwise bounds
    Verify {
        /// Array file
        file: PathBuf,
        /// Required strength; defaults to the strength declared in the file
        #[arg(long)]
        d: Option<u32>,
    },
    /// Decide whether two arrays are isomorphic
    Iso {
        /// First array file
        a: PathBuf,
        /// Second array file
        b: PathBuf,
        /// Strength to compare at; defaults to the declared strength when
        /// both files agree
        #[arg(long)]
        d: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityFilter {
    Odd,
    Even,
    All,
}

impl ParityFilter {
    fn admits(self, lambda: u64) -> bool {
        match self {
            ParityFilter::Odd => lambda % 2 == 1,
            ParityFilter::Even => lambda.is_multiple_of(2),
            ParityFilter::All => true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InsufficientStrength { .. } | Error::InfeasibleJ { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Count {
            d,
            lambda,
            n,
            m,
            oracle,
        } => cmd_count(d, lambda, n, m, oracle),
        Command::Table { d, parity, max_n } => cmd_table(d, parity, max_n),
        Command::Solutions { d, lambda, oracle } => cmd_solutions(d, lambda, oracle),
        Command::Build {
            d,
            lambda,
            index,
            out,
        } => cmd_build(d, lambda, index, out),
        Command::Canon { file } => cmd_canon(&file),
        Command::Verify { file, d } => cmd_verify(&file, d),
        Command::Iso { a, b, d } => cmd_iso(&a, &b, d),
    }
}

fn cmd_count(
    d: Option<u32>,
    lambda: Option<u32>,
    n: Option<u64>,
    m: Option<u32>,
    oracle: bool,
) -> Result<ExitCode> {
    let params = match (d, lambda, n, m) {
        (Some(d), Some(lambda), None, None) => ArrayParams::new(d, lambda)?,
        (None, None, Some(n), Some(m)) => ArrayParams::from_n_m(n, m)?,
        _ => unreachable!("argument pairing is enforced by the parser"),
    };
    let count = if oracle {
        oacat::oracle_class_count(&params)?
    } else {
        class_count(&params)
    };
    println!(
        "f({}) = {} ({})",
        params.n(),
        count,
        params.parity_class().label()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(d: u32, parity: ParityFilter, max_n: u64) -> Result<ExitCode> {
    let _ = ArrayParams::new(d, 1)?;
    let lambda_max = max_n.min(MAX_N) >> d;
    for lambda in 1..=lambda_max {
        if !parity.admits(lambda) {
            continue;
        }
        let params = ArrayParams::new(d, lambda as u32)?;
        let f = class_count(&params);
        if f > 0 {
            println!("{} {}", params.n(), f);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_solutions(d: u32, lambda: u32, oracle: bool) -> Result<ExitCode> {
    let params = ArrayParams::new(d, lambda)?;
    if oracle {
        let scale = j_scale(&params);
        let budget = if params.lambda() % 2 == 1 {
            i64::from(params.lambda())
        } else {
            i64::from(params.lambda()) / 2
        };
        let step = if params.lambda() % 2 == 1 { 4 } else { 2 };
        for star in oracle_jstars(&params)? {
            let u: Vec<i64> = star.entries().iter().map(|&e| e / scale).collect();
            let k = (budget + u.iter().sum::<i64>()) / step;
            println!("{} {}", u.iter().join(" "), k);
        }
    } else {
        for tuple in solutions(&params) {
            println!("{} {}", tuple.u().iter().join(" "), tuple.k());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(d: u32, lambda: u32, index: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode> {
    let params = ArrayParams::new(d, lambda)?;
    let stars = jstars(&params);
    let total = stars.len();
    let selected: Vec<(usize, &JStar)> = match index {
        Some(i) => {
            if i >= total {
                return Err(Error::InvalidParams(format!(
                    "class index {i} out of range: {total} classes exist for d={d} lambda={lambda}"
                )));
            }
            vec![(i, &stars[i])]
        }
        None => stars.iter().enumerate().collect(),
    };
    if total == 0 {
        println!("# no arrays exist for d={d} lambda={lambda}");
        return Ok(ExitCode::SUCCESS);
    }
    if let Some(dir) = out {
        fs::create_dir_all(&dir)?;
        for (i, star) in selected {
            let design = build(star, &params)?;
            let path = dir.join(format!("class-{i}.oa"));
            write_design_file(&path, &design, d)?;
            println!("{}", path.display());
        }
    } else {
        for (i, star) in selected {
            let design = build(star, &params)?;
            println!(
                "# class {i} of {total}: J* = {}",
                star.entries().iter().join(" ")
            );
            print!("{}", render_design(&design, d));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_canon(file: &Path) -> Result<ExitCode> {
    let (design, d) = read_design_file(file)?;
    let star = canonicalize(&short_j(&design, d)?);
    println!("{}", star.entries().iter().join(" "));
    Ok(ExitCode::SUCCESS)
}

fn subset_label(s: SubsetIndex) -> String {
    format!("{{{}}}", s.labels().join(","))
}

fn cmd_verify(file: &Path, d_override: Option<u32>) -> Result<ExitCode> {
    let (design, declared) = read_design_file(file)?;
    let d = d_override.unwrap_or(declared);
    let actual = strength(&design);
    println!("n={}", design.n());
    println!("m={}", design.m());
    println!("required_strength={d}");
    println!("strength={actual}");
    if actual < d {
        println!("verdict=FAIL");
        return Ok(ExitCode::from(1));
    }
    let j = j_full(&n_vector(&design));
    let mut verdict_ok = true;
    if d >= 2 {
        // Strength ≥ d forces the run count to be a multiple of 2^d.
        let lambda = (design.n() >> d) as u32;
        let params = ArrayParams::new(d, lambda)?;
        let parity = check_parity(&j, &params);
        if parity.is_clean() {
            println!("parity=clean");
        } else {
            verdict_ok = false;
            println!("parity=violated({})", parity.violations.len());
            for v in &parity.violations {
                let quantity = match v.requirement {
                    ParityRequirement::MultipleOfStrengthPower => "J",
                    _ => "mu",
                };
                println!(
                    "# parity: {quantity}({}) = {} ({})",
                    subset_label(v.subset),
                    v.value,
                    v.requirement
                );
            }
        }
    }
    let bounds = check_pair_bound(&j, d)?;
    if bounds.is_empty() {
        println!("pair_bound=clean");
    } else {
        verdict_ok = false;
        println!("pair_bound=violated({})", bounds.len());
        for v in &bounds {
            match v {
                BoundViolation::PairSum { t1, t2, sum, limit } => println!(
                    "# bound: |J({})| + |J({})| = {sum} exceeds {limit}",
                    subset_label(*t1),
                    subset_label(*t2)
                ),
                BoundViolation::ProperSubsetCap { t, value, limit } => println!(
                    "# bound: |J({})| = {value} exceeds the proper-subset cap {limit}",
                    subset_label(*t)
                ),
            }
        }
    }
    if d >= 2 && design.m() == d + 2 {
        let star = canonicalize(&JShort::from_full(&j));
        println!("jstar={}", star.entries().iter().join(" "));
    }
    if verdict_ok {
        println!("verdict=PASS");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict=FAIL");
        Ok(ExitCode::from(1))
    }
}

fn cmd_iso(a: &Path, b: &Path, d_override: Option<u32>) -> Result<ExitCode> {
    let (design_a, da) = read_design_file(a)?;
    let (design_b, db) = read_design_file(b)?;
    let d = match d_override {
        Some(d) => d,
        None if da == db => da,
        None => {
            return Err(Error::InvalidParams(format!(
                "the files declare different strengths ({da} and {db}); pass --d"
            )));
        }
    };
    if isomorphic(&design_a, &design_b, d)? {
        println!("isomorphic");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("not isomorphic");
        Ok(ExitCode::from(1))
    }
}
