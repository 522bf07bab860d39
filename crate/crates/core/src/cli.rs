//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 input
//! validation error, 3 insufficient evidence. Failures print one line on
//! stderr: `peepkit: error kind=<kind> exit=<code>: <message>`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::classifier::{Classifier, References, Thresholds};
use crate::defense::{
    evaluate_confusability, overhead_report, overhead_sweep, secure_transform, DefenseConfig,
    DEFAULT_SWEEP,
};
use crate::error::{ClassifyError, DefenseError, FingerprintError, SynthError, ZooError};
use crate::fingerprint::{ingest_profiler_csv, ingest_series_csv, Fingerprint, MetricSeries};
use crate::graph::ArchitectureSpec;
use crate::synth::{synth_fingerprint, HardwareProfile};
use crate::zoo;

#[derive(Debug, Parser)]
#[command(
    name = "peepkit",
    version,
    about = "Side-channel architecture fingerprinting for compact DNNs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parameters, activations and MACs of an architecture file.
    Stats {
        /// Architecture JSON, or a bundled model name or file stem.
        arch: String,
        /// Also print one row per parametric layer.
        #[arg(long)]
        layers: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a fingerprint from a profiler CSV export.
    Ingest {
        profile: PathBuf,
        /// Batch-indexed metrics CSV (batch_size, FPt_ms, ...).
        #[arg(long)]
        series: Option<PathBuf>,
        /// Hardware label stored in the fingerprint.
        #[arg(long)]
        hw: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the attack on a fingerprint.
    Classify {
        fingerprint: PathBuf,
        /// Directory with reference fingerprints (`<stem>.json`).
        #[arg(long)]
        reference_dir: Option<PathBuf>,
        /// Profile for synthesized references when no directory is given.
        #[arg(long)]
        hw: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Synthesize a fingerprint for an architecture.
    Synth {
        arch: String,
        /// p100, p4000 or a hardware profile JSON file.
        #[arg(long)]
        hw: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated batch sizes; defaults to the profile's sweep.
        #[arg(long, value_delimiter = ',')]
        batch: Option<Vec<u32>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply the group-convolution defense and report its overhead.
    Secure {
        arch: String,
        /// Channels per group.
        #[arg(long = "G", required_unless_present = "sweep")]
        g: Option<u32>,
        /// Report the overhead for G = 1, 2, 4, ..., 32 instead.
        #[arg(long)]
        sweep: bool,
        /// Write the secured architecture here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Attack a synthesized fingerprint of the secured network.
    Confuse {
        arch: String,
        #[arg(long = "G")]
        g: u32,
        #[arg(long, default_value = "p100")]
        hw: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Zoo(#[from] ZooError),
    #[error(transparent)]
    Fingerprint(#[from] FingerprintError),
    #[error(transparent)]
    Synth(#[from] SynthError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Defense(#[from] DefenseError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn insufficient(&self) -> bool {
        matches!(
            self,
            CliError::Classify(ClassifyError::InsufficientEvidence { .. })
                | CliError::Classify(ClassifyError::Fingerprint(FingerprintError::NoEvidence))
                | CliError::Fingerprint(FingerprintError::NoEvidence)
                | CliError::Defense(DefenseError::Classify(
                    ClassifyError::InsufficientEvidence { .. }
                ))
        )
    }

    fn kind(&self) -> &'static str {
        if self.insufficient() {
            "insufficient-evidence"
        } else {
            match self {
                CliError::Io { .. } => "io",
                _ => "validation",
            }
        }
    }

    fn exit_code(&self) -> i32 {
        if self.insufficient() {
            3
        } else {
            2
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A file path, or the name or stem of a bundled model when no such file
/// exists (`zoo/mobilenet_v1.json` resolves either way).
fn load_arch(arg: &str) -> Result<ArchitectureSpec, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(zoo::load_architecture(path)?);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    match zoo::bundled(arg).or_else(|_| zoo::bundled(stem)) {
        Ok(spec) => Ok(spec),
        Err(_) => Err(CliError::Zoo(ZooError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no such file or bundled model",
            ),
        })),
    }
}

fn emit(out: &mut dyn Write, output: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match output {
        Some(p) => write_file(p, text),
        None => {
            let _ = out.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Stats {
            arch,
            layers,
            format,
        } => {
            let spec = load_arch(&arch)?;
            let stats = spec.aggregate_stats().map_err(|source| ZooError::Arch {
                origin: arch.clone(),
                source,
            })?;
            match format {
                Format::Json => {
                    let v = serde_json::json!({
                        "name": spec.name(),
                        "params": stats.params,
                        "activations": stats.activations,
                        "layer_activations": stats.layer_activations,
                        "macs": stats.macs,
                    });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
                }
                Format::Text => {
                    let _ = writeln!(out, "{}", spec.name());
                    let _ = writeln!(out, "{stats}");
                    if layers {
                        let _ = writeln!(
                            out,
                            "{:<28} {:>16} {:>12} {:>14}",
                            "layer", "kind", "params", "macs"
                        );
                        for (id, l) in spec.layers() {
                            let _ = writeln!(
                                out,
                                "{:<28} {:>16} {:>12} {:>14}",
                                id,
                                l.kind().as_str(),
                                crate::arch::count_params(l),
                                crate::arch::count_macs(l)
                            );
                        }
                    }
                }
            }
        }
        Command::Ingest {
            profile,
            series,
            hw,
            output,
        } => {
            let ingested = ingest_profiler_csv(&profile)?;
            for w in &ingested.warnings {
                let _ = writeln!(err, "peepkit: warning: {w}");
            }
            let series = match series {
                Some(p) => ingest_series_csv(&p)?,
                None => MetricSeries::default(),
            };
            let fp = Fingerprint {
                kernel_mix: Some(ingested.mix),
                series,
                hardware: hw,
            };
            fp.validate()?;
            emit(out, &output, &fp.to_json())?;
        }
        Command::Classify {
            fingerprint,
            reference_dir,
            hw,
            format,
            output,
        } => {
            let fp = Fingerprint::load(&fingerprint)?;
            let classifier = Classifier::new(Thresholds::from_env()?);
            let refs = match reference_dir {
                Some(dir) => References::load_dir(dir)?,
                None => {
                    let id = hw
                        .or_else(|| fp.hardware.clone())
                        .unwrap_or_else(|| "p100".into());
                    let profile = HardwareProfile::resolve(&id)?;
                    let batches = if fp.series.batch_sizes.is_empty() {
                        profile.default_batch_sizes()
                    } else {
                        fp.series.batch_sizes.clone()
                    };
                    References::synthesized(&profile, &batches)?
                }
            };
            let report = classifier.classify(&fp, &refs)?;
            if let Some(p) = &output {
                write_file(p, &report.to_json())?;
            }
            let _ = match format {
                Format::Text => write!(out, "{report}"),
                Format::Json => write!(out, "{}", report.to_json()),
            };
        }
        Command::Synth {
            arch,
            hw,
            seed,
            batch,
            output,
        } => {
            let spec = load_arch(&arch)?;
            let profile = HardwareProfile::resolve(&hw)?;
            let batches = batch.unwrap_or_else(|| profile.default_batch_sizes());
            let fp = synth_fingerprint(&spec, &profile, &batches, seed)?;
            emit(out, &output, &fp.to_json())?;
        }
        Command::Secure {
            arch,
            g,
            sweep,
            output,
            format,
        } => {
            let spec = load_arch(&arch)?;
            if sweep {
                let rows = overhead_sweep(&spec, &DEFAULT_SWEEP)?;
                match format {
                    Format::Json => {
                        let v: Vec<_> = rows
                            .iter()
                            .map(|(g, r)| serde_json::json!({"G": g, "delta_Mc_pct": r.delta_mc_pct, "delta_P_pct": r.delta_p_pct}))
                            .collect();
                        let _ =
                            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
                    }
                    Format::Text => {
                        let _ = writeln!(out, "{:>4} {:>9} {:>9}", "G", "ΔMc %", "ΔP %");
                        for (g, r) in &rows {
                            let _ = writeln!(
                                out,
                                "{g:>4} {:>9.1} {:>9.1}",
                                r.delta_mc_pct, r.delta_p_pct
                            );
                        }
                    }
                }
                return Ok(());
            }
            let cfg = DefenseConfig::new(g.expect("clap enforces --G without --sweep"))?;
            let secured = secure_transform(&spec, cfg)?;
            let report = overhead_report(&spec, &secured)?;
            if let Some(p) = &output {
                write_file(p, &zoo::to_json(&secured))?;
            }
            let _ = match format {
                Format::Text => write!(out, "{report}"),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("json")
                ),
            };
        }
        Command::Confuse {
            arch,
            g,
            hw,
            seed,
            format,
        } => {
            let spec = load_arch(&arch)?;
            let profile = HardwareProfile::resolve(&hw)?;
            let secured = secure_transform(&spec, DefenseConfig::new(g)?)?;
            let classifier = Classifier::new(Thresholds::from_env()?);
            let report = evaluate_confusability(&spec, &secured, &profile, &classifier, seed)?;
            let _ = match format {
                Format::Text => write!(out, "{report}"),
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&report).expect("json")
                ),
            };
        }
    }
    Ok(())
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("usage error");
            let first = first.trim_start_matches("error: ");
            let _ = writeln!(err, "peepkit: error kind=usage exit=1: {}", one_line(first));
            return 1;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(
                err,
                "peepkit: error kind={} exit={}: {}",
                e.kind(),
                e.exit_code(),
                one_line(&e.to_string())
            );
            e.exit_code()
        }
    }
}
