use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use mirror_count::matrices::{parse_matrices, parse_table, parse_weights, require_integral};
use mirror_count::model::{parse_model, ModelConfig, ModelError};
use mirror_count::output::{matrix_lines, predictions_pretty, predictions_tsv, rays_listing};
use mirror_count_core::cone::{subdivide_cone, WallQuadratic};
use mirror_count_core::matrix::RatMatrix;
use mirror_count_core::mirror::predict;
use mirror_count_core::monodromy::{is_unipotent, mum_classify, nilpotent_log, verify_table_row};
use mirror_count_core::rat::{format_rat, rat, Rat};

const QUINTIC_PRESET: &str = include_str!("../fixtures/quintic.model");
const ENV_TRUNCATION: &str = "MIRROR_COUNT_TRUNCATION";

#[derive(Parser)]
#[command(
    name = "mirror-count",
    version,
    about = "Enumerative predictions and boundary monodromy checks for one-parameter families",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Predict rational curve counts from a model file.
    Predict {
        /// Model file path, or the built-in preset name "quintic".
        #[arg(long)]
        model: String,
        /// Highest degree to report (overrides the model file).
        #[arg(long)]
        degrees: Option<u32>,
        /// Series truncation order (overrides model file and environment).
        #[arg(long)]
        truncation: Option<usize>,
        /// Fail with a nonzero status when a predicted count is not an integer.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Verify monodromy normal forms and invariants from a table file.
    Monodromy {
        #[arg(long)]
        table: PathBuf,
    },
    /// Classify a boundary point from its monodromy matrices.
    Mum {
        /// File of matrix blocks: unipotent integer monodromies, or
        /// their nilpotent rational logarithms.
        #[arg(long)]
        matrices: PathBuf,
        /// Positive rational weights a_j, comma separated (default: all 1).
        #[arg(long)]
        weights: Option<String>,
    },
    /// Subdivide the cone cut out by an irrational-slope quadratic.
    Cone {
        /// Coefficients a,b,c of a y^2 + b xy + c x^2.
        #[arg(long)]
        quadratic: String,
        /// Rays to emit on each side of the central ray.
        #[arg(long)]
        count: usize,
        /// Append the slope y/x to each ray.
        #[arg(long)]
        slopes: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Pretty,
}

/// A failed run, bucketed by exit status: 1 for usage and parse
/// problems, 2 for mathematically meaningful failures.
enum Failure {
    Usage(String),
    Math(String),
}

impl Failure {
    fn code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(1),
            Failure::Math(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn math(msg: impl Into<String>) -> Failure {
    Failure::Math(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.cmd {
        Cmd::Predict { model, degrees, truncation, strict, format } => {
            run_predict(&model, degrees, truncation, strict, format)
        }
        Cmd::Monodromy { table } => run_monodromy(&table),
        Cmd::Mum { matrices, weights } => run_mum(&matrices, weights.as_deref()),
        Cmd::Cone { quadratic, count, slopes } => run_cone(&quadratic, count, slopes),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            f.code()
        }
    }
}

fn load_model(source: &str) -> Result<ModelConfig, Failure> {
    let text = if source == "quintic" {
        QUINTIC_PRESET.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| usage(format!("cannot read model '{source}': {e}")))?
    };
    parse_model(&text).map_err(|e| match e {
        ModelError::Parse { .. } => usage(format!("{source}: {e}")),
        ModelError::Semantic { .. } => usage(format!("{source}: {e}")),
    })
}

fn env_truncation() -> Result<Option<usize>, Failure> {
    match std::env::var(ENV_TRUNCATION) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| usage(format!("invalid {ENV_TRUNCATION} value '{v}'"))),
        Err(_) => Ok(None),
    }
}

fn run_predict(
    model: &str,
    degrees: Option<u32>,
    truncation: Option<usize>,
    strict: bool,
    format: Format,
) -> Result<(), Failure> {
    let mut cfg = load_model(model)?;
    if let Some(d) = degrees {
        cfg.max_degree = d;
    }
    let env = env_truncation()?;
    let trunc = cfg
        .resolve_truncation(truncation, env)
        .map_err(|e| usage(format!("{model}: {e}")))?;
    let op = cfg.scaled_operator();
    let prediction = predict(&op, &cfg.kappa, trunc, cfg.max_degree)
        .map_err(|e| math(e.to_string()))?;
    let offenders = prediction.non_integral();
    for (d, v) in &offenders {
        eprintln!("warning: n_{d} = {} is not an integer", format_rat(v));
    }
    if strict && !offenders.is_empty() {
        return Err(math(format!(
            "{} non-integral count(s); first at degree {}",
            offenders.len(),
            offenders[0].0
        )));
    }
    let text = match format {
        Format::Tsv => predictions_tsv(&cfg.kappa, trunc, &prediction.counts),
        Format::Pretty => predictions_pretty(&cfg.name, &cfg.kappa, trunc, &prediction.counts),
    };
    print!("{text}");
    Ok(())
}

fn run_monodromy(table: &PathBuf) -> Result<(), Failure> {
    let text = std::fs::read_to_string(table)
        .map_err(|e| usage(format!("cannot read table '{}': {e}", table.display())))?;
    let rows = parse_table(&text)
        .map_err(|e| usage(format!("{}: {e}", table.display())))?;
    if rows.is_empty() {
        eprintln!("warning: table '{}' holds no rows", table.display());
        println!("0 rows verified");
        return Ok(());
    }
    let mut failed = 0usize;
    for row in &rows {
        match verify_table_row(&row.a, &row.m_prime, &row.a_prime, row.lambda, row.mu) {
            Ok(()) => {
                println!("row {}: ok (lambda = {}, mu = {})", row.name, row.lambda, row.mu);
            }
            Err(f) => {
                failed += 1;
                println!("row {}: FAILED at {f}", row.name);
            }
        }
    }
    println!("{} of {} rows verified", rows.len() - failed, rows.len());
    if failed > 0 {
        return Err(math(format!("{failed} row(s) failed verification")));
    }
    Ok(())
}

fn run_mum(matrices: &PathBuf, weights: Option<&str>) -> Result<(), Failure> {
    let text = std::fs::read_to_string(matrices)
        .map_err(|e| usage(format!("cannot read matrices '{}': {e}", matrices.display())))?;
    let blocks = parse_matrices(&text)
        .map_err(|e| usage(format!("{}: {e}", matrices.display())))?;
    if blocks.is_empty() {
        return Err(usage(format!("'{}' holds no matrices", matrices.display())));
    }
    let weights: Vec<Rat> = match weights {
        Some(w) => parse_weights(w).map_err(usage)?,
        None => vec![rat(1); blocks.len()],
    };
    if weights.len() != blocks.len() {
        return Err(usage(format!(
            "{} weight(s) for {} matrices",
            weights.len(),
            blocks.len()
        )));
    }
    let nilpotents: Vec<RatMatrix> = blocks
        .iter()
        .enumerate()
        .map(|(k, m)| to_nilpotent(m, k))
        .collect::<Result<_, _>>()?;
    let report = mum_classify(&nilpotents, &weights)
        .map_err(|e| math(format!("classification failed: {e}")))?;
    println!(
        "weight filtration: dim W0 = {}, dim W1 = {}, dim W2 = {}",
        report.dim_w0, report.dim_w1, report.dim_w2
    );
    println!("coefficient matrix m:");
    print!("{}", matrix_lines(&report.m_matrix, "  "));
    println!("invertible over Q: {}", if report.invertible { "yes" } else { "no" });
    println!("invertible over Z: {}", if report.invertible_over_z { "yes" } else { "no" });
    println!(
        "verdict: {}",
        if report.is_mum { "maximally unipotent" } else { "not maximally unipotent" }
    );
    Ok(())
}

/// Accepts either a nilpotent matrix (used as is) or a unipotent
/// integer matrix (replaced by its logarithm).
fn to_nilpotent(m: &RatMatrix, index: usize) -> Result<RatMatrix, Failure> {
    if !m.is_square() {
        return Err(usage(format!("matrix {} is not square", index + 1)));
    }
    if m.pow(m.rows() as u32).is_zero() {
        return Ok(m.clone());
    }
    if let Ok(int) = require_integral(m, "matrix") {
        if is_unipotent(&int) {
            return nilpotent_log(&int)
                .map_err(|e| math(format!("matrix {}: {e}", index + 1)));
        }
    }
    Err(math(format!(
        "matrix {} is neither nilpotent nor a unipotent integer matrix",
        index + 1
    )))
}

fn run_cone(quadratic: &str, count: usize, slopes: bool) -> Result<(), Failure> {
    let parts: Vec<&str> = quadratic.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(usage(format!("--quadratic wants 'a,b,c', got '{quadratic}'")));
    }
    let nums: Vec<i64> = parts
        .iter()
        .map(|p| p.parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| usage(format!("--quadratic wants integers, got '{quadratic}'")))?;
    if count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let walls = WallQuadratic::new(nums[0], nums[1], nums[2])
        .map_err(|e| math(e.to_string()))?;
    let rays = subdivide_cone(&walls, count);
    print!("{}", rays_listing(&rays, slopes));
    Ok(())
}
