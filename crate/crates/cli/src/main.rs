use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use twocx::commands::{self, Outcome, RealizeInputs, Status};
use twocx_core::group::DEFAULT_MAX_COSETS;

#[derive(Parser)]
#[command(name = "twocx", version, about = "Build and certify algebraic 2-complexes over finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Rendering of the run report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file: the interchange document for `cayley` and `realize`, the
    /// report otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a presentation and build its Cayley complex.
    Cayley {
        presentation: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Check that a complex file is an algebraic 2-complex (or just a complex).
    Verify { complex: PathBuf },
    /// Homology of the complex of underlying abelian groups.
    Homology {
        complex: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Verify a chain homotopy equivalence certificate.
    CertVerify { certificate: PathBuf },
    /// Realize an algebraic 2-complex by a 3-complex built on the Cayley complex.
    Realize {
        presentation: PathBuf,
        complex: PathBuf,
        certificate: Option<PathBuf>,
        /// Rank of the extra free summand added on both sides.
        #[arg(long, default_value_t = 0)]
        extra_rank: usize,
        /// Search for the stable equivalence instead of reading one.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn run(command: &Command) -> Result<(Outcome, bool), String> {
    Ok(match command {
        Command::Cayley {
            presentation,
            max_cosets,
        } => (commands::cayley(&read(presentation)?, *max_cosets), true),
        Command::Verify { complex } => (commands::verify(&read(complex)?), false),
        Command::Homology { complex, degree } => (commands::homology_command(&read(complex)?, *degree), false),
        Command::CertVerify { certificate } => (commands::cert_verify(&read(certificate)?), false),
        Command::Realize {
            presentation,
            complex,
            certificate,
            extra_rank,
            search,
            max_cosets,
        } => {
            let certificate = certificate.as_deref().map(read).transpose()?;
            let inputs = RealizeInputs {
                presentation: &read(presentation)?,
                complex: &read(complex)?,
                certificate: certificate.as_deref(),
                extra_rank: *extra_rank,
                search: *search,
                max_cosets: *max_cosets,
            };
            (commands::realize(&inputs), true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (outcome, has_artifact) = match run(&cli.command) {
        Ok(x) => x,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(Status::Usage.code());
        }
    };
    let rendered = match cli.format {
        Format::Json => outcome.report.to_json(),
        Format::Text => outcome.report.to_text(),
    };
    print!("{rendered}");
    if let Some(path) = &cli.out {
        let contents = if has_artifact { outcome.artifact.as_deref() } else { Some(rendered.as_str()) };
        if let Some(contents) = contents {
            if let Err(e) = fs::write(path, contents) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::Usage.code());
            }
        }
    }
    if let Some(failure) = outcome.report.first_failure() {
        eprintln!("first failure: {failure}");
    }
    eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(outcome.status.code())
}
