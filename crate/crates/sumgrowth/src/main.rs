//! File-driven command line for the sumset-growth toolkit. One verb per
//! library capability; all logic lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sumgrowth::body::{build_extremal_body, convergence_experiment, domination_harness};
use sumgrowth::decompose::structural_decompose;
use sumgrowth::error::{Error, Result};
use sumgrowth::gap::{bounded_combination, Gap};
use sumgrowth::heights::{
    h_circ_of_operator_tol, h_of_operator_tol, height_poly_tol, minimizing_invariant_subspace_tol,
};
use sumgrowth::matrix::LatticeOperator;
use sumgrowth::points::PointSet;
use sumgrowth::poly::IntPolynomial;
use sumgrowth::report::{
    self, body_report, convergence_table, decomposition_report, domination_report_text,
    interval_report, invariant_subspace_report, ratio_report_text,
};
use sumgrowth::sumset::{brute_force_min, ratio_report, t_sumset};

#[derive(Parser)]
#[command(
    name = "sumgrowth",
    version,
    about = "Exact sumset-growth invariants: heights, sumsets, progressions, decompositions, extremal bodies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = CliFormat::Plain)]
    format: CliFormat,

    /// Target width for certified height intervals.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Worker threads (0 = all available).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Enumeration budget for expansions and exhaustive searches.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,

    /// Seed for randomized test-data generators (reserved; current
    /// subcommands are fully deterministic).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CliFormat {
    Plain,
    Csv,
    Json,
}

impl From<CliFormat> for report::Format {
    fn from(f: CliFormat) -> Self {
        match f {
            CliFormat::Plain => report::Format::Plain,
            CliFormat::Csv => report::Format::Csv,
            CliFormat::Json => report::Format::Json,
        }
    }
}

#[derive(Args)]
struct MatrixArg {
    /// Matrix file: one row per line, space-separated integers.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// H(f) of an integer polynomial, e.g. `height "x^2-2"`.
    Height { poly: String },
    /// H°(T) = H(char_poly(T)) of a lattice operator.
    Hcirc(MatrixArg),
    /// H(T), the product of 1 + |λ| over all eigenvalues.
    Hop(MatrixArg),
    /// Invariant subspace realizing H°(T).
    Invmin(MatrixArg),
    /// Exact sumset A + T·A as a point-set file.
    Sumset {
        /// Point-set file: one point per line.
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Growth ratio |A+TA| / |A| compared against H°(T).
    Ratio {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Exhaustive minimum of |A+TA| over n-subsets of a box.
    Brutemin {
        #[arg(long)]
        n: usize,
        /// Point-set file holding the candidate box.
        #[arg(long = "box")]
        box_file: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Generalized arithmetic progressions.
    Gap {
        #[command(subcommand)]
        action: GapAction,
    },
    /// Bounded integer combination s·v = Σ s_j v_j.
    Combine {
        /// Target vector, space-separated integers, e.g. "5 7".
        #[arg(long)]
        vector: String,
        /// File of generating vectors, one per line.
        #[arg(long)]
        vectors: PathBuf,
    },
    /// Dense-subset structural decomposition of A ⊆ [0,N)^d.
    Decompose {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        n: u64,
        /// Density ε, e.g. `1/10` or `0.1`.
        #[arg(long)]
        eps: String,
        /// δ as a unit fraction, e.g. `1/4`.
        #[arg(long)]
        delta: String,
    },
    /// Near-extremal spectral product bodies.
    Extremal {
        #[command(subcommand)]
        action: ExtremalAction,
    },
    /// Grid-function inequality harness on (Ω, Ω+TΩ) rasterizations.
    VerifyContinuous {
        #[arg(long)]
        matrix: PathBuf,
        /// Rasterization cell size.
        #[arg(long, default_value_t = 0.05)]
        cell: f64,
    },
}

#[derive(Subcommand)]
enum GapAction {
    /// Enumerate k·P (offset) or k★P (centered) as a point set.
    Expand {
        /// GAP description file.
        #[arg(long)]
        gap: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
    /// k-properness certificate with a collision witness when improper.
    Proper {
        #[arg(long)]
        gap: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: u64,
    },
}

#[derive(Subcommand)]
enum ExtremalAction {
    /// Build the extremal body and report basis, components, and ratio.
    Body(MatrixArg),
    /// Integer points of the M-dilate of the body.
    Realize {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        m: u64,
    },
    /// Ratio table |Ω_M + TΩ_M| / |Ω_M| over a list of M values.
    Converge {
        #[arg(long)]
        matrix: PathBuf,
        /// Comma-separated dilation factors, e.g. `10,100`.
        #[arg(long)]
        ms: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // ignore failure: the global pool can only be set once
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(report) => {
            let out = match &cli.output {
                Some(path) => std::fs::write(path, report).map_err(Error::from),
                None => {
                    print!("{report}");
                    Ok(())
                }
            };
            match out {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}", error_json(&e));
                    ExitCode::FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::FAILURE
        }
    }
}

fn error_json(e: &Error) -> String {
    serde_json::json!({"error": e.code(), "message": e.to_string()}).to_string()
}

fn read_matrix(path: &PathBuf) -> Result<LatticeOperator> {
    LatticeOperator::from_str(&std::fs::read_to_string(path)?)
}

fn read_points(path: &PathBuf) -> Result<PointSet> {
    PointSet::from_str(&std::fs::read_to_string(path)?)
}

fn run(cli: &Cli) -> Result<String> {
    let format: report::Format = cli.format.into();
    match &cli.command {
        Command::Height { poly } => {
            let f = IntPolynomial::from_str(poly)?;
            let h = height_poly_tol(&f, cli.tol)?;
            Ok(interval_report(&format!("H({f})"), &h, format))
        }
        Command::Hcirc(m) => {
            let t = read_matrix(&m.matrix)?;
            let h = h_circ_of_operator_tol(&t, cli.tol)?;
            Ok(interval_report("H°(T)", &h, format))
        }
        Command::Hop(m) => {
            let t = read_matrix(&m.matrix)?;
            let h = h_of_operator_tol(&t, cli.tol)?;
            Ok(interval_report("H(T)", &h, format))
        }
        Command::Invmin(m) => {
            let t = read_matrix(&m.matrix)?;
            let r = minimizing_invariant_subspace_tol(&t, cli.tol)?;
            Ok(invariant_subspace_report(&r, format))
        }
        Command::Sumset { set, matrix } => {
            let a = read_points(set)?;
            let t = read_matrix(matrix)?;
            let s = t_sumset(&a, &t)?;
            Ok(s.to_string())
        }
        Command::Ratio { set, matrix } => {
            let a = read_points(set)?;
            let t = read_matrix(matrix)?;
            let r = ratio_report(&a, &t, cli.tol)?;
            Ok(ratio_report_text(&r, format))
        }
        Command::Brutemin {
            n,
            box_file,
            matrix,
        } => {
            let box_set = read_points(box_file)?;
            let t = read_matrix(matrix)?;
            let (min_size, witness) = brute_force_min(*n, &box_set, &t, cli.budget)?;
            match format {
                report::Format::Json => {
                    let pts: Vec<Vec<String>> = witness
                        .iter()
                        .map(|p| p.iter().map(ToString::to_string).collect())
                        .collect();
                    Ok(format!(
                        "{}\n",
                        serde_json::json!({"min_size": min_size, "witness": pts})
                    ))
                }
                report::Format::Csv => Ok(format!("min_size\n{min_size}\n")),
                report::Format::Plain => Ok(format!("min |A+TA| = {min_size}\nwitness:\n{witness}")),
            }
        }
        Command::Gap { action } => match action {
            GapAction::Expand { gap, k } => {
                let p = Gap::from_str(&std::fs::read_to_string(gap)?)?;
                let s = p.expand(*k, cli.budget)?;
                Ok(s.to_string())
            }
            GapAction::Proper { gap, k } => {
                let p = Gap::from_str(&std::fs::read_to_string(gap)?)?;
                let cert = p.is_k_proper(*k, cli.budget)?;
                match format {
                    report::Format::Json => {
                        let collision = cert.collision.as_ref().map(|(later, earlier)| {
                            serde_json::json!({"later": later, "earlier": earlier})
                        });
                        Ok(format!(
                            "{}\n",
                            serde_json::json!({
                                "k": cert.k,
                                "proper": cert.proper,
                                "collision": collision,
                            })
                        ))
                    }
                    _ => {
                        let mut out = format!("{}-proper: {}\n", cert.k, cert.proper);
                        if let Some((later, earlier)) = &cert.collision {
                            out.push_str(&format!(
                                "collision: {later:?} and {earlier:?} map to the same point\n"
                            ));
                        }
                        Ok(out)
                    }
                }
            }
        },
        Command::Combine { vector, vectors } => {
            let v: Vec<num_bigint::BigInt> = vector
                .split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|_| Error::InvalidInput(format!("bad integer `{tok}`")))
                })
                .collect::<Result<_>>()?;
            let vs: Vec<Vec<num_bigint::BigInt>> = std::fs::read_to_string(vectors)?
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                .filter(|l| !l.is_empty())
                .map(|l| {
                    l.split_whitespace()
                        .map(|tok| {
                            tok.parse()
                                .map_err(|_| Error::InvalidInput(format!("bad integer `{tok}`")))
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let r = bounded_combination(&v, &vs)?;
            match format {
                report::Format::Json => {
                    let coeffs: Vec<String> = r.coefficients.iter().map(ToString::to_string).collect();
                    Ok(format!(
                        "{}\n",
                        serde_json::json!({
                            "scale": r.scale.to_string(),
                            "coefficients": coeffs,
                            "entry_bound": r.entry_bound.to_string(),
                            "denominator_bound": r.denominator_bound.to_string(),
                        })
                    ))
                }
                _ => {
                    let coeffs: Vec<String> = r.coefficients.iter().map(ToString::to_string).collect();
                    Ok(format!(
                        "scale s = {}\ncoefficients = {}\nentry bound C = {}\ndenominator bound D(C,n) = {}\n",
                        r.scale,
                        coeffs.join(" "),
                        r.entry_bound,
                        r.denominator_bound
                    ))
                }
            }
        }
        Command::Decompose { set, n, eps, delta } => {
            let a = read_points(set)?;
            let eps = report::parse_rational(eps)?;
            let delta = report::parse_rational(delta)?;
            let r = structural_decompose(&a, *n, &eps, &delta)?;
            Ok(decomposition_report(&r, format))
        }
        Command::Extremal { action } => match action {
            ExtremalAction::Body(m) => {
                let t = read_matrix(&m.matrix)?;
                let body = build_extremal_body(&t)?;
                let ratio = body.exact_measure_ratio(&t)?;
                Ok(body_report(&body, ratio, format))
            }
            ExtremalAction::Realize { matrix, m } => {
                let t = read_matrix(matrix)?;
                let body = build_extremal_body(&t)?;
                let omega = body.lattice_realization(*m)?;
                Ok(omega.to_string())
            }
            ExtremalAction::Converge { matrix, ms } => {
                let t = read_matrix(matrix)?;
                let ms: Vec<u64> = ms
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::InvalidInput(format!("bad M value `{s}`")))
                    })
                    .collect::<Result<_>>()?;
                let rows = convergence_experiment(&t, &ms, cli.tol)?;
                Ok(convergence_table(&rows, format))
            }
        },
        Command::VerifyContinuous { matrix, cell } => {
            let t = read_matrix(matrix)?;
            let rep = domination_harness(&t, *cell)?;
            Ok(domination_report_text(&rep, format))
        }
    }
}
