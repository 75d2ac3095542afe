use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use pyramid_evidence::evidence::{combine_all, EvidenceError, MassFunction};
use pyramid_evidence::fixtures::{shutter_verification, table1_rows};
use pyramid_evidence::io::{read_pgm, render_report, write_overlay, IoError, ReportRow};
use pyramid_evidence::knowledge::{verify, KnowledgeSource};
use pyramid_evidence::pyramid::{
    build_pyramid, run_pipeline, run_pipeline_with_workers, GrayImage, PipelineConfig,
    PyramidError, StageKnowledge,
};

#[derive(Parser)]
#[command(
    name = "pyrev",
    version,
    about = "Evidential reasoning and window detection on image pyramids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combine mass files with Dempster's rule and print the result and conflict K.
    Combine {
        #[arg(required = true)]
        masses: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a hypothesis: belief from an evidence mass file and a knowledge file.
    Verify {
        evidence: PathBuf,
        #[arg(long)]
        knowledge: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the window pipeline on a PGM image.
    Pipeline {
        image: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Window knowledge, then sibling knowledge.
        #[arg(long)]
        knowledge: Vec<PathBuf>,
        /// Report path (TSV); stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overlay path (PPM).
        #[arg(long)]
        overlay: Option<PathBuf>,
        /// Micro-edge threshold in gray levels; overrides the config.
        #[arg(long)]
        threshold: Option<f64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Staged beliefs for the bundled house-image feature table.
    Table1 {
        #[arg(long)]
        knowledge: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Belief in the shutter hypothesis for the bundled evidence.
    Shutter {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Evidence {
        path: PathBuf,
        source: EvidenceError,
    },
    #[error(transparent)]
    Combine(#[from] EvidenceError),
    #[error(transparent)]
    Pyramid(#[from] PyramidError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("{0}")]
    Usage(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("pyrev: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Combine { masses, out } => {
            let ms = masses
                .iter()
                .map(|p| read_with(p, MassFunction::parse))
                .collect::<Result<Vec<_>, _>>()?;
            let outcome = combine_all(&ms)?;
            let text = format!(
                "{}# conflict {:.6}\n",
                outcome.result.to_text(),
                outcome.conflict
            );
            emit(&text, out.as_deref())
        }
        Command::Verify {
            evidence,
            knowledge,
            out,
        } => {
            let m = read_with(&evidence, MassFunction::parse)?;
            let ks = read_with(&knowledge, KnowledgeSource::parse)?;
            let v = verify(&m, &ks)?;
            let text = format!(
                "Bel({}) = {:.3}\nBel(THETA) = {:.3}\n",
                v.hypothesis, v.bel, v.theta
            );
            emit(&text, out.as_deref())
        }
        Command::Pipeline {
            image,
            config,
            knowledge,
            out,
            overlay,
            threshold,
            workers,
        } => {
            let img = read_pgm(&image).map_err(|e| match e {
                IoError::Io(source) => CliError::Read {
                    path: image.clone(),
                    source,
                },
                other => CliError::Usage(format!("{}: {other}", image.display())),
            })?;
            let mut cfg = match &config {
                Some(p) => PipelineConfig::parse(&read_text(p)?)?,
                None => PipelineConfig::default(),
            };
            if let Some(t) = threshold {
                if !(t.is_finite() && t >= 0.0 && t <= u32::MAX as f64) {
                    return Err(CliError::Usage(format!(
                        "--threshold {t} must be a non-negative number"
                    )));
                }
                // magnitudes are integers, so `>= t` and `>= ceil(t)` agree
                cfg.edge_threshold = t.ceil() as u32;
            }
            let ks = stage_knowledge(&knowledge)?;
            let output = match workers {
                Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
                Some(n) => run_pipeline_with_workers(&img, &cfg, &ks, n)?,
                None => run_pipeline(&img, &cfg, &ks)?,
            };
            if let Some(path) = overlay {
                let base = build_pyramid(&img)?;
                let grid = base.base();
                let base_img = GrayImage::new(grid.side(), grid.side(), grid.cells().to_vec());
                write_overlay(&base_img, &output.candidates, path)?;
            }
            let rows: Vec<ReportRow> = output
                .candidates
                .iter()
                .map(ReportRow::from_candidate)
                .collect();
            emit(&render_report(&rows)?, out.as_deref())
        }
        Command::Table1 { knowledge, out } => {
            let ks = stage_knowledge(&knowledge)?;
            emit(&render_report(&table1_rows(&ks)?)?, out.as_deref())
        }
        Command::Shutter { out } => {
            let v = shutter_verification()?;
            let text = format!(
                "Bel({}) = {:.3}\nBel(THETA) = {:.3}\n",
                v.hypothesis, v.bel, v.theta
            );
            emit(&text, out.as_deref())
        }
    }
}

fn stage_knowledge(paths: &[PathBuf]) -> Result<StageKnowledge, CliError> {
    match paths {
        [] => Ok(StageKnowledge::default()),
        [window, sibling] => {
            let w = read_with(window, KnowledgeSource::parse)?;
            let s = read_with(sibling, KnowledgeSource::parse)?;
            StageKnowledge::new(w, s).map_err(|source| CliError::Evidence {
                path: window.clone(),
                source,
            })
        }
        _ => Err(CliError::Usage(
            "--knowledge takes two files in stage order: window, then sibling".into(),
        )),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn read_with<T>(
    path: &Path,
    parse: impl Fn(&str) -> Result<T, EvidenceError>,
) -> Result<T, CliError> {
    parse(&read_text(path)?).map_err(|source| CliError::Evidence {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(IoError::Io(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
