//! Command-line front end for the semigroup ring classifier.
//!
//! Exit codes: 0 success (and zero FAIL for `check`), 2 usage or parse
//! errors, 3 mathematically invalid input, 4 internal certification
//! failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use semigor::classify::{classify_document, ClassifyOptions};
use semigor::document::SemigroupDocument;
use semigor::error::Error;
use semigor::families::{
    corpus_generate, family_snk_document, fixture_catalog, CorpusBounds, FamilyParams,
};
use semigor::validate::{oracle_compare, run_check, CheckInstance, TheoremId};
use semigor::verdict::Verdict;

#[derive(Parser)]
#[command(
    name = "semigor",
    about = "Exact classification of graded affine semigroup rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a semigroup document and print the full report.
    Classify {
        /// Input JSON document.
        file: PathBuf,
        /// Hard staircase enumeration horizon; when omitted the horizon is
        /// derived from the socle degree and escalated automatically on
        /// certification failure.
        #[arg(long)]
        max_degree: Option<i64>,
        /// Bound for the semi-standardness multiple search.
        #[arg(long, default_value_t = 64)]
        multiple_bound: i64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write the input document of the built-in two-parameter family.
    Family {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        /// Output path.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run a consistency rule over the built-in fixtures and family grid,
    /// plus an optional corpus; exits 0 iff no instance FAILs.
    Check {
        /// Rule identifier: 3.5, 3.6, 3.7, 5.1, 6.1, 6.2 or 6.3.
        theorem_id: String,
        /// Directory of semigroup documents to include.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Generate a deterministic corpus from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Corpus size when --seed is given.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest ray coordinate in generated instances.
        #[arg(long, default_value_t = 12)]
        max_coord: i64,
        /// Extra generators per generated instance.
        #[arg(long, default_value_t = 5)]
        max_gens: usize,
        /// Largest degree of extra generators.
        #[arg(long, default_value_t = 3)]
        max_extra_degree: i64,
    },
    /// Compare staircase membership against the direct membership oracle
    /// on seeded random vectors; reports mismatches (must be zero).
    Oracle {
        /// Input JSON document.
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::UnknownTheorem(_) => 2,
        Error::DimensionMismatch { .. }
        | Error::EmptyInput
        | Error::NegativeCoordinate
        | Error::BadDegree
        | Error::InconsistentGrading(_)
        | Error::NotPointed
        | Error::BadParams(_)
        | Error::InvalidIdeal(_) => 3,
        _ => 4,
    }
}

fn load_document(path: &Path) -> Result<SemigroupDocument, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    SemigroupDocument::from_json(&text)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Classify {
            file,
            max_degree,
            multiple_bound,
            format,
        } => {
            let doc = load_document(&file)?;
            let opts = ClassifyOptions {
                max_degree,
                multiple_bound,
            };
            let classification = classify_document(&doc, &opts)?;
            match format {
                Format::Json => println!("{}", classification.report.to_json()),
                Format::Text => print!("{}", classification.report.to_text()),
            }
            if classification.certification_failures.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "error: certification failed: {}",
                    classification.certification_failures.join(", ")
                );
                Ok(ExitCode::from(4))
            }
        }
        Command::Family { n, k, out } => {
            let doc = family_snk_document(FamilyParams::new(n, k)?);
            fs::write(&out, doc.to_json())
                .map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Check {
            theorem_id,
            corpus,
            seed,
            count,
            max_coord,
            max_gens,
            max_extra_degree,
        } => {
            let id = TheoremId::parse(&theorem_id)?;
            let opts = ClassifyOptions::default();
            let mut instances = Vec::new();
            for fixture in fixture_catalog() {
                instances.push(CheckInstance::from_document(
                    &fixture.document,
                    &opts,
                    None,
                )?);
            }
            for n in 2..=4 {
                for k in 1..=(n + 1) {
                    let doc = family_snk_document(FamilyParams::new(n, k)?);
                    instances.push(CheckInstance::from_document(&doc, &opts, Some((n, k)))?);
                }
            }
            if let Some(dir) = corpus {
                let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
                    .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
                    .filter_map(|entry| entry.ok().map(|e| e.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                paths.sort();
                for path in paths {
                    let doc = load_document(&path)?;
                    instances.push(CheckInstance::from_document(&doc, &opts, None)?);
                }
            }
            if let Some(seed) = seed {
                let bounds = CorpusBounds {
                    count,
                    max_coord,
                    max_extra_gens: max_gens,
                    max_extra_degree,
                };
                // generated degree-2+ generators may need multiples up to
                // the product of the ray coordinates to certify
                // semi-standardness
                let corpus_opts = ClassifyOptions {
                    multiple_bound: (max_coord * max_coord).max(64),
                    ..Default::default()
                };
                for doc in corpus_generate(seed, &bounds) {
                    instances.push(CheckInstance::from_document(&doc, &corpus_opts, None)?);
                }
            }
            let rows = run_check(id, &instances);
            let mut counts = (0usize, 0usize, 0usize);
            for row in &rows {
                println!(
                    "{:<28} {:<8} {}",
                    row.instance,
                    row.verdict.as_str(),
                    row.detail
                );
                match row.verdict {
                    Verdict::Pass => counts.0 += 1,
                    Verdict::Fail => counts.1 += 1,
                    Verdict::Vacuous => counts.2 += 1,
                }
            }
            println!(
                "rule {}: {} PASS, {} FAIL, {} VACUOUS over {} instances",
                id.as_str(),
                counts.0,
                counts.1,
                counts.2,
                rows.len()
            );
            if counts.1 == 0 {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
        Command::Oracle {
            file,
            samples,
            seed,
        } => {
            let doc = load_document(&file)?;
            let classification = classify_document(&doc, &ClassifyOptions::default())?;
            if classification.staircase.is_none() {
                return Err(Error::NotCertified);
            }
            let mismatches = oracle_compare(&classification, samples, seed);
            println!(
                "{}: {} samples, {} mismatches",
                doc.name,
                samples,
                mismatches.len()
            );
            for v in &mismatches {
                println!("mismatch at {v}");
            }
            if mismatches.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::FAILURE)
            }
        }
    }
}
