//! Command-line interface.
//!
//! Three subcommands: `check` decides convertibility between two spectra
//! read from files, `verify-paper` re-certifies the built-in reference
//! counterexamples, and `search` runs the Monte Carlo search. Exit codes
//! are uniform across subcommands: 0 when the command ran and the property
//! it tests holds, 1 when the command ran and the property fails, 2 for
//! usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use thiserror::Error;

use crate::certify::{certify_reference_pairs, CertifyError};
use crate::copies::{embed, necessary_condition, CopiesError, CopyVerdicts};
use crate::report::{search_summary_csv, CheckReport, CopyCheck, ReportDocument};
use crate::sampler::SpectrumDistribution;
use crate::search::{run_search, SearchConfig, SearchError, SearchMode};
use crate::spectra::{Spectrum, SpectrumError, StatePair};
use crate::weight::Weight;

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: no spectrum line found (expected decimal entries, '#' starts a comment)", path.display())]
    NoSpectrum { path: PathBuf },
    #[error("{}: {source}", path.display())]
    BadSpectrum {
        path: PathBuf,
        source: SpectrumError,
    },
    #[error("spectra have dimensions {left} and {right}; pass --embed to zero-pad the smaller")]
    NeedsEmbed { left: usize, right: usize },
    #[error("--copies must list at least one copy count")]
    NoCopies,
    #[error(transparent)]
    Copies(#[from] CopiesError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
}

#[derive(Debug, Parser)]
#[command(
    name = "loccheck",
    version,
    about = "Exact LOCC convertibility of bipartite pure states, multi-copy checks, \
             and a reproducible search for copy-nonmonotone pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether copies of a source state convert to a target state by LOCC
    Check(CheckArgs),
    /// Re-certify the built-in reference counterexamples in exact arithmetic
    VerifyPaper,
    /// Monte Carlo search for pairs where extra copies help and then stop helping
    Search(SearchArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// File with the source spectrum: decimal entries on one line,
    /// whitespace- or comma-separated; '#' starts a comment
    source: PathBuf,
    /// File with the target spectrum
    target: PathBuf,
    /// Comma-separated copy counts to test
    #[arg(long, value_delimiter = ',', default_value = "1")]
    copies: Vec<u32>,
    /// Arithmetic backing the verdicts
    #[arg(long, value_enum, default_value_t = CheckModeArg::Rational)]
    mode: CheckModeArg,
    /// Zero-pad the smaller spectrum when dimensions differ
    #[arg(long)]
    embed: bool,
    #[arg(long, value_enum, default_value_t = CheckFormat::Text)]
    format: CheckFormat,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Spectrum dimension
    #[arg(long)]
    dim: usize,
    /// Number of sampled pairs
    #[arg(long)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Copy count that must succeed for event I
    #[arg(long, default_value_t = 2)]
    k_success: u32,
    /// Copy count that must fail again for event II
    #[arg(long, default_value_t = 3)]
    k_fail: u32,
    #[arg(long, value_enum, default_value_t = SearchModeArg::RationalConfirm)]
    mode: SearchModeArg,
    #[arg(long, value_enum, default_value_t = DistributionArg::UniformWeights)]
    distribution: DistributionArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SearchFormat::Json)]
    format: SearchFormat,
    /// Cap on counterexamples stored in the report (counts are unaffected)
    #[arg(long, default_value_t = 1000)]
    max_store: usize,
    /// Also write stored counterexamples to this file in the spectrum text
    /// format: a '#' header per pair, then the source and target lines
    #[arg(long)]
    counterexamples_out: Option<PathBuf>,
    /// Worker threads (default: one per CPU core)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckModeArg {
    Float,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchModeArg {
    Float,
    RationalConfirm,
}

impl From<SearchModeArg> for SearchMode {
    fn from(arg: SearchModeArg) -> Self {
        match arg {
            SearchModeArg::Float => SearchMode::Float,
            SearchModeArg::RationalConfirm => SearchMode::RationalConfirm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistributionArg {
    UniformWeights,
    FlatDirichlet,
}

impl From<DistributionArg> for SpectrumDistribution {
    fn from(arg: DistributionArg) -> Self {
        match arg {
            DistributionArg::UniformWeights => SpectrumDistribution::UniformWeights,
            DistributionArg::FlatDirichlet => SpectrumDistribution::FlatDirichlet,
        }
    }
}

/// Parses argv and runs the selected subcommand; returns the process exit
/// code. Usage errors detected by clap itself exit(2) before this returns.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::VerifyPaper => cmd_verify_paper(),
        Command::Search(args) => cmd_search(&args),
    };
    match result {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            EXIT_USAGE
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<i32, CliError> {
    if args.copies.is_empty() {
        return Err(CliError::NoCopies);
    }
    match args.mode {
        CheckModeArg::Float => check_with::<f64>(args),
        CheckModeArg::Rational => check_with::<BigRational>(args),
    }
}

fn check_with<W: Weight>(args: &CheckArgs) -> Result<i32, CliError> {
    let source: Spectrum<W> = read_spectrum(&args.source)?;
    let target: Spectrum<W> = read_spectrum(&args.target)?;
    let (source, target, embedded_to) = if source.dim() == target.dim() {
        (source, target, None)
    } else if args.embed {
        let dim = source.dim().max(target.dim());
        (embed(&source, dim)?, embed(&target, dim)?, Some(dim))
    } else {
        return Err(CliError::NeedsEmbed {
            left: source.dim(),
            right: target.dim(),
        });
    };
    let pair = StatePair::new(source, target).expect("dimensions were just equalized");
    let verdicts = CopyVerdicts::evaluate(&pair, &args.copies)?;
    let report = CheckReport {
        mode: W::MODE,
        dim: pair.dim(),
        embedded_to,
        source_entropy_bits: pair.psi().entropy_bits(),
        target_entropy_bits: pair.phi().entropy_bits(),
        necessary_condition: necessary_condition(&pair),
        per_copy: verdicts
            .iter()
            .map(|(copies, verdict)| CopyCheck::from_verdict(copies, *verdict))
            .collect(),
    };
    match args.format {
        CheckFormat::Json => print!("{}", ReportDocument::check(report.clone()).to_json()),
        CheckFormat::Text => print_check_text(&report),
    }
    Ok(if report.all_convertible() {
        EXIT_SUCCESS
    } else {
        EXIT_PROPERTY_FAILED
    })
}

fn print_check_text(report: &CheckReport) {
    println!("mode: {}", report.mode);
    match report.embedded_to {
        Some(dim) => println!("dimension: {dim} (zero-padded to match)"),
        None => println!("dimension: {}", report.dim),
    }
    println!("source entropy: {:.6} bits", report.source_entropy_bits);
    println!("target entropy: {:.6} bits", report.target_entropy_bits);
    println!(
        "extreme-entry necessary condition: {}",
        if report.necessary_condition { "holds" } else { "fails" }
    );
    for check in &report.per_copy {
        match (check.convertible, check.first_violation) {
            (true, _) => println!("copies {}: convertible", check.copies),
            (false, Some(m)) => println!(
                "copies {}: not convertible (first violation at prefix {m})",
                check.copies
            ),
            (false, None) => println!("copies {}: not convertible", check.copies),
        }
    }
    println!(
        "verdict: {}",
        if report.all_convertible() {
            "convertible at every requested copy count"
        } else {
            "not convertible"
        }
    );
}

fn cmd_verify_paper() -> Result<i32, CliError> {
    let certification = certify_reference_pairs()?;
    for check in &certification.checks {
        let status = if check.passed { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {}: {} ({})",
            check.pair_label, check.name, check.detail
        );
    }
    if certification.all_passed() {
        println!("certified: all {} checks passed", certification.checks.len());
        Ok(EXIT_SUCCESS)
    } else {
        println!(
            "certification failed: {} of {} checks",
            certification.failed().count(),
            certification.checks.len()
        );
        Ok(EXIT_PROPERTY_FAILED)
    }
}

fn cmd_search(args: &SearchArgs) -> Result<i32, CliError> {
    if let Some(threads) = args.threads {
        // a global pool may already exist; any pool yields identical reports
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let mut config = SearchConfig::new(args.dim, args.samples, args.seed);
    config.k_success = args.k_success;
    config.k_fail = args.k_fail;
    config.mode = args.mode.into();
    config.distribution = args.distribution.into();
    config.max_counterexamples_stored = args.max_store;
    config.validate()?;
    let report = run_search(&config)?;

    let rejected = if report.n_confirmation_rejected > 0 {
        format!(", {} rejected by exact confirmation", report.n_confirmation_rejected)
    } else {
        String::new()
    };
    eprintln!(
        "sampled {} pairs at dimension {} in {:.2}s: event I {} (fraction {:.4e} +- {:.1e}), event II {}{rejected}",
        report.n_sampled,
        config.dim,
        report.duration_seconds,
        report.n_event_i,
        report.fraction_i,
        report.stderr_i,
        report.n_event_ii_given_i,
    );

    let rendered = match args.format {
        SearchFormat::Json => ReportDocument::search(report.clone()).to_json(),
        SearchFormat::Csv => search_summary_csv(&report),
    };
    match &args.out {
        Some(path) => write_file(path, &rendered)?,
        None => print!("{rendered}"),
    }
    if let Some(path) = &args.counterexamples_out {
        write_file(path, &render_counterexample_pairs(&report))?;
    }
    Ok(EXIT_SUCCESS)
}

/// Spectrum text format, 17 significant digits per entry: one '#' header
/// per stored pair, then a source line and a target line. Each line reads
/// back with `check` or `Spectrum::parse_line` bit-exactly.
fn render_counterexample_pairs(report: &crate::search::SearchReport) -> String {
    let render = |s: &Spectrum<f64>| {
        s.values()
            .iter()
            .map(|v| v.render_exact())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = String::new();
    for hit in &report.counterexamples {
        text.push_str(&format!(
            "# seed {} sample {}: source then target\n{}\n{}\n",
            report.config.seed,
            hit.sample_index,
            render(&hit.psi),
            render(&hit.phi),
        ));
    }
    text
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchFormat {
    Json,
    Csv,
}

fn read_spectrum<W: Weight>(path: &Path) -> Result<Spectrum<W>, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        return Spectrum::parse_line(line).map_err(|source| CliError::BadSpectrum {
            path: path.to_owned(),
            source,
        });
    }
    Err(CliError::NoSpectrum {
        path: path.to_owned(),
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}
