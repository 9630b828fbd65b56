//! Command-line front end: aggregate ranking files into a consensus,
//! compare rankings, dump pair tallies, print ranking statistics, and
//! re-check the embedded survey results.

pub mod reproduce;

use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use goldrank::dataset::{load_dataset, load_dataset_from, Dataset, TopicName};
use goldrank::pairwise::centroid_relation;
use goldrank::ranking::{parse_ranking, parse_universe, Ranking, Universe};
use goldrank::{aggregate, compare, format_ranking, pair_tallies, ranking_stats, AgreementReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] goldrank::Error),
    #[error("failed to read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser)]
#[command(
    name = "goldrank",
    version,
    about = "Merge partial expert rankings into a consensus and measure agreement"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TopicFilter {
    Debian,
    Hibernate,
    All,
}

impl TopicFilter {
    pub fn topics(self) -> &'static [TopicName] {
        match self {
            TopicFilter::Debian => &[TopicName::Debian],
            TopicFilter::Hibernate => &[TopicName::Hibernate],
            TopicFilter::All => &TopicName::ALL,
        }
    }

    /// Feedback averages are survey-wide, so they are only checked when no
    /// topic filter is active.
    pub fn includes_feedback(self) -> bool {
        self == TopicFilter::All
    }
}

/// Where the universe comes from: an explicit file, or the union of every
/// participant seen in the ranking inputs.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct UniverseArgs {
    /// File listing the universe members (comma/whitespace separated)
    #[arg(long, value_name = "FILE")]
    pub universe: Option<PathBuf>,
    /// Use the union of all ranked participants as the universe
    #[arg(long)]
    pub universe_from_rankings: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Merge ranking files into one consensus ranking
    Aggregate {
        /// Ranking files, one ranking per file; `-` reads stdin
        #[arg(required = true, value_name = "RANKING_FILE")]
        rankings: Vec<PathBuf>,
        #[command(flatten)]
        universe: UniverseArgs,
        /// Write to this file instead of stdout
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compare two rankings pair by pair over a universe
    Compare {
        #[arg(value_name = "FILE_A")]
        file_a: PathBuf,
        #[arg(value_name = "FILE_B")]
        file_b: PathBuf,
        #[command(flatten)]
        universe: UniverseArgs,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print per-pair tallies and the consensus direction of each pair
    Pairs {
        /// Ranking files, one ranking per file; `-` reads stdin
        #[arg(required = true, value_name = "RANKING_FILE")]
        rankings: Vec<PathBuf>,
        #[command(flatten)]
        universe: UniverseArgs,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Print participants ranked, ranks used, and their percentage
    Stats {
        /// Ranking file; `-` reads stdin
        #[arg(value_name = "RANKING_FILE")]
        ranking: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Recompute the embedded survey results and diff them against the
    /// published tables
    Reproduce {
        /// Restrict checks to one topic
        #[arg(long, value_enum, default_value_t = TopicFilter::All)]
        topic: TopicFilter,
        /// Load the dataset TSVs from this directory instead of the
        /// embedded copies
        #[arg(long, value_name = "DIR")]
        data: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

/// Parses arguments and runs; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

/// Runs one parsed command: 0 on success, 1 when `reproduce` finds
/// mismatches. Everything else is an error (exit 2 in [`run`]).
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Aggregate {
            rankings,
            universe,
            out,
        } => {
            let rankings = read_rankings(&rankings)?;
            let u = resolve_universe(&universe, &rankings)?;
            let gs = aggregate(&rankings, &u)?;
            emit(out.as_deref(), &format!("{}\n", format_ranking(&gs)))?;
            Ok(0)
        }
        Command::Compare {
            file_a,
            file_b,
            universe,
            format,
            out,
        } => {
            let rankings = read_rankings(&[file_a, file_b])?;
            let u = resolve_universe(&universe, &rankings)?;
            let report = compare(&rankings[0], &rankings[1], &u)?;
            let rendered = match format {
                Format::Text => report.to_text(),
                Format::Csv => {
                    format!("{}\n{}\n", AgreementReport::CSV_HEADER, report.to_csv_row())
                }
            };
            emit(out.as_deref(), &rendered)?;
            Ok(0)
        }
        Command::Pairs {
            rankings,
            universe,
            out,
        } => {
            let rankings = read_rankings(&rankings)?;
            let u = resolve_universe(&universe, &rankings)?;
            let mut lines = String::new();
            for (key, tally) in pair_tallies(&rankings, &u)? {
                lines.push_str(&format!(
                    "{} {} {} {} {} {}\n",
                    key.a(),
                    key.b(),
                    tally.superior,
                    tally.inferior,
                    tally.unordered,
                    centroid_relation(&tally).glyph()
                ));
            }
            emit(out.as_deref(), &lines)?;
            Ok(0)
        }
        Command::Stats { ranking, out } => {
            let rankings = read_rankings(std::slice::from_ref(&ranking))?;
            let stats = ranking_stats(&rankings[0]);
            emit(
                out.as_deref(),
                &format!(
                    "{} {} {}\n",
                    stats.participants_ranked,
                    stats.ranks_used,
                    stats.ranks_pct()
                ),
            )?;
            Ok(0)
        }
        Command::Reproduce { topic, data, out } => {
            let dataset: Dataset = match data {
                Some(dir) => load_dataset_from(&dir)?,
                None => load_dataset(),
            };
            let report = reproduce::run_checks(&dataset, topic)?;
            emit(out.as_deref(), &report.render())?;
            Ok(if report.all_match() { 0 } else { 1 })
        }
    }
}

fn read_input(path: &Path, stdin_used: &mut bool) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        if *stdin_used {
            return Err(CliError::Usage(
                "`-` (stdin) may be used at most once per invocation".into(),
            ));
        }
        *stdin_used = true;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| CliError::Read {
                path: "<stdin>".into(),
                source,
            })?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Reads one ranking per input: blank lines and `#` comments are skipped,
/// and exactly one ranking line must remain.
fn read_rankings(paths: &[PathBuf]) -> Result<Vec<Ranking>, CliError> {
    let mut stdin_used = false;
    let mut rankings = Vec::with_capacity(paths.len());
    for path in paths {
        let content = read_input(path, &mut stdin_used)?;
        let mut lines = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let line = lines
            .next()
            .ok_or_else(|| CliError::Usage(format!("{}: no ranking found", path.display())))?;
        if lines.next().is_some() {
            return Err(CliError::Usage(format!(
                "{}: expected a single ranking line",
                path.display()
            )));
        }
        let ranking =
            parse_ranking(line).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        rankings.push(ranking);
    }
    Ok(rankings)
}

fn resolve_universe(args: &UniverseArgs, rankings: &[Ranking]) -> Result<Universe, CliError> {
    match &args.universe {
        Some(path) => {
            let content = std::fs::read_to_string(path).map_err(|source| CliError::Read {
                path: path.display().to_string(),
                source,
            })?;
            parse_universe(&content)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
        None => Ok(Universe::from_rankings(rankings)?),
    }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
