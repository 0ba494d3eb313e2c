use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use mha_cli::pipeline::{self, Outcome};
use mha_cli::report;
use mha_core::report::CertificateReport;

#[derive(Parser)]
#[command(
    name = "mha",
    version,
    about = "Exact verification of group-cograded multiplier Hopf algebras and their doubles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(clap::Args)]
struct Output {
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full axiom suite on a spec file or `builtin:<name>`.
    Verify {
        spec: String,
        /// `lo..hi` for the integers, or comma-separated element names.
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Build and verify the double of a pairing twisted by an action.
    Double {
        /// Builtin pairing name or a spec file with a pairing section.
        #[arg(long)]
        pair: String,
        /// `trivial`, `adjoint` or a JSON action file.
        #[arg(long)]
        action: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write the reduced dual together with its evaluation pairing.
    Dual {
        spec: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Deform a cograded structure by an admissible action and verify the result.
    Deform {
        spec: String,
        #[arg(long)]
        action: String,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Write the canonical rendering of a spec or builtin.
    Export {
        spec: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn emit(r: &CertificateReport, output: &Output) -> Result<bool> {
    let rendered = match output.format {
        Format::Text => report::text(r),
        Format::Structured => report::structured(r),
    };
    print!("{rendered}");
    if let Some(path) = &output.report {
        std::fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(r.passed())
}

fn write_outcome(o: Outcome, out: &PathBuf, output: &Output) -> Result<bool> {
    if let Some(spec) = &o.spec {
        std::fs::write(out, spec.to_json())
            .with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(emit(&o.report, output)? && o.spec.is_some())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            spec,
            window,
            output,
        } => {
            let loaded = pipeline::load(&spec)?;
            emit(&pipeline::verify(&loaded, window.as_deref())?, &output)
        }
        Command::Double {
            pair,
            action,
            out,
            output,
        } => write_outcome(pipeline::double(&pair, &action)?, &out, &output),
        Command::Dual { spec, out, output } => write_outcome(pipeline::dual(&spec)?, &out, &output),
        Command::Deform {
            spec,
            action,
            out,
            output,
        } => write_outcome(pipeline::deform_cmd(&spec, &action)?, &out, &output),
        Command::Export { spec, out } => {
            let s = pipeline::export(&spec)?;
            std::fs::write(&out, s.to_json())
                .with_context(|| format!("writing {}", out.display()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
