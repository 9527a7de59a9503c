//! Argument definitions and subcommand implementations.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gqd_core::discord::{closest_qc_state, discord_bounds, geometric_discord};
use gqd_core::frames::{
    catalog_frame, regular_simplex_frame, sign_pattern_frame, standard_span, validate_frame,
    FrameReport,
};
use gqd_core::oracle::{compare, OracleConfig};
use gqd_core::qstate::{
    ghz_state, product_state, random_local_with_rng, random_mixed, random_pure, random_qc_state,
    random_separable,
};
use gqd_core::{DensityMatrix, RVector};
use serde::Serialize;

use crate::error::CliError;
use crate::io::{load_state, write_state_file, Metadata, StateFile};
use crate::report::{
    BoundsSection, ClosestSection, DiscordSection, OracleSection, ReportFile, REPORT_SCHEMA,
    TOOL_VERSION,
};
use crate::sweep::{run_sweep, SweepConfig, SweepFamily};

/// Seed used by every randomized command when `--seed` is omitted.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Parser)]
#[command(
    name = "gqd",
    version,
    about = "Geometric quantum discord of bipartite qudit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a state file from a seeded family.
    Gen(GenArgs),
    /// Compute the discord of a state file, with optional diagnostics.
    Discord(DiscordArgs),
    /// Print a simplex frame and optionally validate it.
    Frame(FrameArgs),
    /// Tabulate formula, bounds and oracle over seeded random states.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Maximally entangled (1/√d) Σ|kk⟩ on d⊗d.
    Ghz,
    /// Haar-random pure state.
    Pure,
    /// Ginibre mixed state of the given rank.
    Mixed,
    /// Mixture of random product terms.
    Separable,
    /// Quantum-classical state in a random basis.
    Qc,
    /// Product of two full-rank random states.
    Product,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,
    /// Local dimension for both sides (GHZ requires it).
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub d1: Option<usize>,
    #[arg(long)]
    pub d2: Option<usize>,
    /// Rank of a mixed state (defaults to full rank).
    #[arg(long)]
    pub rank: Option<usize>,
    /// Number of product terms of a separable state.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    /// Use pure product terms for a separable state.
    #[arg(long)]
    pub pure_terms: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub label: Option<String>,
    /// Output path; the state is written to stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiscordArgs {
    pub input: PathBuf,
    /// Include every bound.
    #[arg(long)]
    pub bounds: bool,
    /// Include closest quantum-classical state diagnostics.
    #[arg(long)]
    pub closest: bool,
    /// Cross-check the value with the brute-force oracle.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, default_value_t = OracleConfig::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Emit the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Write the report to a file instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    /// Sign-pattern construction from Hadamard-type rows.
    SignPattern,
    /// Regular simplex in Helmert coordinates, any d.
    General,
    /// Printed example vectors (d = 2..6).
    Catalog,
}

#[derive(Debug, Args)]
pub struct FrameArgs {
    #[arg(long)]
    pub d: usize,
    /// Sign-pattern construction (exists only for some d).
    #[arg(long, conflicts_with_all = ["general", "catalog"])]
    pub paper: bool,
    /// Regular simplex in Helmert coordinates (default).
    #[arg(long, conflicts_with = "catalog")]
    pub general: bool,
    /// Printed example vectors, d = 2..6.
    #[arg(long)]
    pub catalog: bool,
    /// Validate the frame; exit 3 when it fails.
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub json: bool,
}

impl FrameArgs {
    pub fn kind(&self) -> FrameKind {
        if self.paper {
            FrameKind::SignPattern
        } else if self.catalog {
            FrameKind::Catalog
        } else {
            FrameKind::General
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated cells such as 2x2,2x3.
    #[arg(long, value_delimiter = ',', default_value = "2x2")]
    pub dims: Vec<String>,
    /// States per cell.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = SweepFamily::Mixed)]
    pub family: SweepFamily,
    /// Skip the oracle column.
    #[arg(long)]
    pub no_oracle: bool,
    #[arg(long, default_value_t = OracleConfig::default().restarts)]
    pub restarts: usize,
    #[arg(long, default_value_t = OracleConfig::default().grid_resolution)]
    pub grid: usize,
    #[arg(long, default_value_t = OracleConfig::default().max_iters)]
    pub max_iters: usize,
    /// Add a wall-clock runtime column (not reproducible).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(&a, out, err),
        Command::Discord(a) => cmd_discord(&a, out),
        Command::Frame(a) => cmd_frame(&a, out),
        Command::Sweep(a) => cmd_sweep(&a, out),
    }
}

fn sides(a: &GenArgs) -> Result<(usize, usize), CliError> {
    let d1 = a.d1.or(a.d);
    let d2 = a.d2.or(a.d);
    match (d1, d2) {
        (Some(d1), Some(d2)) => Ok((d1, d2)),
        _ => Err(CliError::InvalidInput(
            "give --d or both --d1 and --d2".into(),
        )),
    }
}

pub fn generate(a: &GenArgs) -> Result<DensityMatrix, CliError> {
    use rand::SeedableRng;
    Ok(match a.family {
        Family::Ghz => {
            let d =
                a.d.ok_or_else(|| CliError::InvalidInput("ghz requires --d".into()))?;
            ghz_state(d)?
        }
        Family::Pure => {
            let (d1, d2) = sides(a)?;
            random_pure(d1, d2, a.seed)?
        }
        Family::Mixed => {
            let (d1, d2) = sides(a)?;
            random_mixed(d1, d2, a.rank.unwrap_or(d1 * d2), a.seed)?
        }
        Family::Separable => {
            let (d1, d2) = sides(a)?;
            random_separable(d1, d2, a.terms, a.pure_terms, a.seed)?.1
        }
        Family::Qc => {
            let (d1, d2) = sides(a)?;
            random_qc_state(d1, d2, a.seed)?.0
        }
        Family::Product => {
            let (d1, d2) = sides(a)?;
            if d1 < 2 || d2 < 2 {
                return Err(CliError::InvalidInput(format!("invalid dims {d1}x{d2}")));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(a.seed);
            let x = random_local_with_rng(d1, d1, &mut rng)?;
            let y = random_local_with_rng(d2, d2, &mut rng)?;
            product_state(&x, &y)?
        }
    })
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let rho = generate(a)?;
    let family = a
        .family
        .to_possible_value()
        .expect("named")
        .get_name()
        .to_string();
    let seeded = !matches!(a.family, Family::Ghz);
    let meta = Metadata {
        label: a.label.clone(),
        seed: seeded.then_some(a.seed),
        generator: Some(family),
    };
    let file = StateFile::from_state(&rho, Some(meta))?;
    match &a.out {
        Some(path) => {
            write_state_file(path, &file)?;
            writeln!(out, "{}", file.digest())?;
        }
        None => {
            writeln!(out, "{}", file.to_json())?;
            writeln!(err, "{}", file.digest())?;
        }
    }
    Ok(())
}

pub fn build_report(
    rho: &DensityMatrix,
    file: &StateFile,
    a: &DiscordArgs,
) -> Result<ReportFile, CliError> {
    let (d1, d2) = rho.bipartite_dims()?;
    let discord = geometric_discord(rho)?;
    let bounds = if a.bounds {
        Some(BoundsSection::from(&discord_bounds(rho)?))
    } else {
        None
    };
    let closest = if a.closest {
        Some(ClosestSection::from(&closest_qc_state(rho)?))
    } else {
        None
    };
    let oracle = if a.oracle {
        let config = OracleConfig {
            restarts: a.restarts,
            seed: a.seed,
            ..OracleConfig::default()
        };
        Some(OracleSection::new(&compare(rho, &config)?, &config))
    } else {
        None
    };
    Ok(ReportFile {
        schema: REPORT_SCHEMA.into(),
        tool_version: TOOL_VERSION.into(),
        input_digest: file.digest(),
        dims: [d1, d2],
        discord: DiscordSection::from(&discord),
        bounds,
        closest,
        oracle,
    })
}

fn cmd_discord(a: &DiscordArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (rho, file) = load_state(&a.input)?;
    let report = build_report(&rho, &file, a)?;
    let text = if a.json {
        serde_json::to_string_pretty(&report).expect("serializable") + "\n"
    } else {
        report.to_text()
    };
    match &a.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    if let Some(o) = report.oracle.as_ref().filter(|o| !o.consistent) {
        return Err(CliError::Contract(format!(
            "formula exceeds oracle by {:.3e}",
            -o.gap
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct FrameJson<'a> {
    d: usize,
    construction: &'a str,
    vectors: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<FrameReportJson>,
}

#[derive(Debug, Serialize)]
struct FrameReportJson {
    sum_deviation: f64,
    norm_deviation: f64,
    pairwise_deviation: f64,
    worst_pair: Option<(usize, usize, f64)>,
    tolerance: f64,
    passes: bool,
}

impl From<&FrameReport> for FrameReportJson {
    fn from(r: &FrameReport) -> Self {
        Self {
            sum_deviation: r.sum_deviation,
            norm_deviation: r.norm_deviation,
            pairwise_deviation: r.pairwise_deviation,
            worst_pair: r.worst_pair.map(|(i, j, dot)| (i + 1, j + 1, dot)),
            tolerance: r.tolerance,
            passes: r.passes(),
        }
    }
}

pub fn frame_vectors(d: usize, kind: FrameKind) -> Result<Vec<RVector>, CliError> {
    if d < 2 {
        return Err(CliError::InvalidInput(format!(
            "frame dimension must be at least 2, got {d}"
        )));
    }
    match kind {
        FrameKind::General => Ok(regular_simplex_frame(d, &standard_span(d))?
            .vectors()
            .to_vec()),
        FrameKind::SignPattern => match sign_pattern_frame(d, &standard_span(d))? {
            Ok(frame) => Ok(frame.vectors().to_vec()),
            Err(report) => Err(CliError::Infeasible(report.to_string())),
        },
        FrameKind::Catalog => catalog_frame(d)
            .ok_or_else(|| CliError::InvalidInput(format!("no printed example for d = {d}"))),
    }
}

fn cmd_frame(a: &FrameArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let kind = a.kind();
    let vectors = frame_vectors(a.d, kind)?;
    let report = validate_frame(&vectors);
    let construction = match kind {
        FrameKind::SignPattern => "sign-pattern",
        FrameKind::General => "general",
        FrameKind::Catalog => "catalog",
    };
    if a.json {
        let doc = FrameJson {
            d: a.d,
            construction,
            vectors: vectors
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
            report: a.check.then(|| FrameReportJson::from(&report)),
        };
        writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        )?;
    } else {
        writeln!(
            out,
            "{construction} frame, d = {}, ambient dimension {}",
            a.d,
            a.d * a.d - 1
        )?;
        for (k, v) in vectors.iter().enumerate() {
            let coords: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
            writeln!(out, "y{} = [{}]", k + 1, coords.join(", "))?;
        }
        if a.check {
            writeln!(out, "{report}")?;
        }
    }
    if a.check && !report.passes() {
        return Err(CliError::Infeasible(format!(
            "frame relations violated: {report}"
        )));
    }
    Ok(())
}

pub fn parse_cell(s: &str) -> Result<[usize; 2], CliError> {
    let bad = || CliError::InvalidInput(format!("cell {s:?} is not of the form AxB"));
    let (a, b) = s.trim().split_once(['x', 'X']).ok_or_else(bad)?;
    Ok([a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?])
}

fn cmd_sweep(a: &SweepArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let config = SweepConfig {
        dims: a
            .dims
            .iter()
            .map(|s| parse_cell(s))
            .collect::<Result<_, _>>()?,
        count: a.count,
        seed: a.seed,
        family: a.family,
        oracle: !a.no_oracle,
        restarts: a.restarts,
        grid_resolution: a.grid,
        max_iters: a.max_iters,
        timing: a.timing,
    };
    let table = run_sweep(&config)?;
    let text = match a.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => table.to_json() + "\n",
    };
    match &a.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}
