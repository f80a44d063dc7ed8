use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use simplexvol::arith::{parse_rational, to_canonical_json};
use simplexvol::bounds::{bounds_report, BoundsReport};
use simplexvol::prodsum::{check_generalized, check_product_sum, improve_point};
use simplexvol::simplex::LatticeSimplex;
use simplexvol::sylvester::{sylvester_upto, zpw_simplex};
use simplexvol::tau::{default_tolerance, grid_oracle, tau_lower_bound};
use simplexvol::verify::{verify_all, VerifyConfig};

#[derive(Parser)]
#[command(name = "simplexvol", version, about = "Exact volume bounds for lattice simplices with interior points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print s_1, ..., s_N of the Sylvester sequence.
    Sylvester {
        #[arg(long)]
        upto: usize,
    },
    /// Print the Zaks-Perles-Wills simplex S_{d,k}.
    Zpw {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: u64,
        /// Enumerate interior points and require exactly K of them.
        #[arg(long)]
        verify: bool,
    },
    /// List interior lattice points of a simplex.
    Enumerate {
        #[arg(long)]
        simplex: PathBuf,
    },
    /// Evaluate both product-sum families at a point (default: max-min point).
    CheckPs {
        #[arg(long)]
        simplex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// One improvement step from an interior point.
    Improve {
        #[arg(long)]
        simplex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Certified lower bound on tau_d.
    Tau {
        #[arg(long)]
        dim: usize,
        /// Enclosure width for irrational minimizers, as P/Q.
        #[arg(long)]
        tolerance: Option<String>,
        /// Also run the grid oracle with N steps.
        #[arg(long)]
        grid: Option<u64>,
    },
    /// All bounds on s(d,k) and p(d,k).
    Bounds {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the invariant suite on fixed inputs and a seeded corpus.
    VerifyAll {
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Total bounding-box cells the corpus may scan.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        corpus_size: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn load_simplex(path: &Path) -> Result<LatticeSimplex> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing simplex from {}", path.display()))
}

fn parse_point(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(|c| c.trim().parse::<BigInt>().with_context(|| format!("bad coordinate {c:?}")))
        .collect()
}

fn point_value(x: &[BigInt]) -> serde_json::Value {
    x.iter()
        .map(|c| match i64::try_from(c) {
            Ok(v) => json!(v),
            Err(_) => json!(c.to_string()),
        })
        .collect()
}

fn emit<T: serde::Serialize>(value: &T) {
    println!("{}", to_canonical_json(value));
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sylvester { upto } => {
            let values: Vec<String> = sylvester_upto(upto).iter().map(ToString::to_string).collect();
            emit(&values);
        }
        Command::Zpw { dim, k, verify } => {
            let s = zpw_simplex(dim, k)?;
            if verify {
                let n = s.interior_points()?.len();
                if n as u64 != k {
                    bail!("S_{{{dim},{k}}} has {n} interior points, expected {k}");
                }
                log::info!("verified {n} interior points");
            }
            emit(&s);
        }
        Command::Enumerate { simplex } => {
            let s = load_simplex(&simplex)?;
            let pts: Vec<_> = s.interior_points()?.iter().map(|p| point_value(p)).collect();
            emit(&pts);
        }
        Command::CheckPs { simplex, point } => {
            let s = load_simplex(&simplex)?;
            let x = match point {
                Some(p) => parse_point(&p)?,
                None => s.maxmin_point()?.point,
            };
            let beta = s.barycentric_int(&x)?;
            if !beta.all_positive() {
                bail!("point {x:?} is not an interior point");
            }
            let sorted = beta.sorted().beta;
            emit(&json!({
                "point": point_value(&x),
                "beta": sorted,
                "product_sum": check_product_sum(&sorted)?,
                "generalized": check_generalized(&sorted)?,
            }));
        }
        Command::Improve { simplex, point } => {
            let s = load_simplex(&simplex)?;
            match improve_point(&s, &parse_point(&point)?)? {
                Some(w) => emit(&w),
                None => println!("already-satisfies"),
            }
        }
        Command::Tau { dim, tolerance, grid } => {
            let tol = match tolerance {
                Some(t) => parse_rational(&t)?,
                None => default_tolerance(),
            };
            let mut r = tau_lower_bound(dim, &tol)?;
            if let Some(n) = grid {
                r.grid_upper = Some(grid_oracle(dim, n)?.value);
            }
            emit(&r);
        }
        Command::Bounds { dim, k, format } => {
            let r = bounds_report(dim, k)?;
            match format {
                Format::Json => emit(&r),
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(std::io::stdout());
                    w.write_record(BoundsReport::CSV_HEADER)?;
                    w.write_record(r.csv_record())?;
                    w.flush()?;
                }
            }
        }
        Command::VerifyAll {
            max_dim,
            seed,
            budget,
            corpus_size,
        } => {
            let d = VerifyConfig::default();
            let cfg = VerifyConfig {
                max_dim: max_dim.unwrap_or(d.max_dim),
                seed: seed.unwrap_or(d.seed),
                cell_budget: budget.unwrap_or(d.cell_budget),
                corpus_size: corpus_size.unwrap_or(d.corpus_size),
                corrupt_oracle: false,
            };
            let report = verify_all(&cfg);
            emit(&report);
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
            if report.incomplete {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
