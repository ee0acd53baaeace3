//! `homlie`: exact computer algebra for multiplicative Hom-Lie algebras
//! over GF(p) from the command line.
//!
//! Exit codes: 0 = the command ran (answers are in the report), 2 = input or
//! parse error, 3 = precondition violation, 4 = internal obstruction.

use clap::{Parser, Subcommand};
use homlie::algebra::Limits;
use homlie_cli::commands::{self, output_path, CliError};
use homlie_cli::report;
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact Hom-Lie algebra over GF(p)")]
struct Cli {
    /// Emit the report as JSON instead of key/value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Omit timing fields for golden-file comparisons.
    #[arg(long, global = true)]
    stable: bool,
    /// Lift the desk-scale caps on p and the dimension.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an algebra file.
    Validate { file: PathBuf },
    /// Full axiom, series and center report.
    Props { file: PathBuf },
    /// Twisted center by default; plain with --ordinary.
    Center {
        file: PathBuf,
        #[arg(long)]
        ordinary: bool,
    },
    /// Decide whether a p-structure exists; optionally write the witness.
    Restrictable {
        file: PathBuf,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Solve the basis systems for a p-structure.
    Synthesize {
        file: PathBuf,
        /// Partial targets file (`pmap name = expr` lines).
        #[arg(long)]
        targets: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify the file's pmap section (basis mode; --exhaustive adds the
    /// element sweep and the independent audit).
    VerifyPmap {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Count all p-structures (|C(L)|^dim when any exist).
    CountPmaps {
        file: PathBuf,
        #[arg(long, default_value_t = 1 << 16)]
        limit: u64,
    },
    /// Additivity correction terms for a pair of elements.
    STerms {
        file: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Evaluate the file's pmap at an element.
    Peval {
        file: PathBuf,
        #[arg(long)]
        x: String,
    },
    /// Block-diagonal sum of two algebra files (canonical file to stdout or
    /// -o).
    Directsum {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quotient by the span of the given ideal generators.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Smallest subspace containing the generators closed under bracket,
    /// twist and pmap.
    Pclosure {
        file: PathBuf,
        #[arg(long)]
        gens: String,
    },
    /// Morphism-file operations.
    Morphism {
        #[command(subcommand)]
        sub: MorphismCommand,
    },
    /// Transport the source pmap onto the image subalgebra.
    Push { mapfile: PathBuf },
    /// Pull the structure on a target subalgebra back to its preimage.
    Pull {
        mapfile: PathBuf,
        #[arg(long)]
        sub: String,
    },
    /// Check a symmetric bilinear form for associativity and nondegeneracy.
    Form { file: PathBuf, formfile: PathBuf },
    /// Envelope-file operations.
    Envelope {
        #[command(subcommand)]
        sub: EnvelopeCommand,
    },
    /// Brute-force ground truth for one file; --suite all runs the full
    /// property suite.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        suite: Option<String>,
    },
    /// Deterministic generated instance (canonical file to stdout or -o).
    Random {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        construction: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum MorphismCommand {
    /// Twist and bracket compatibility; --restricted adds pmap commutation
    /// and the graph criterion.
    Check {
        mapfile: PathBuf,
        #[arg(long)]
        restricted: bool,
    },
}

#[derive(Subcommand)]
enum EnvelopeCommand {
    /// Injectivity, morphism and closure conditions.
    Check { envfile: PathBuf },
    /// Minimality criterion: the center sits inside the embedded image.
    Minimal { envfile: PathBuf },
    /// Quotient out central subspaces until minimal.
    Minimize { envfile: PathBuf },
    /// Split off a central ideal complementing a minimal sub-envelope.
    Decompose { envfile: PathBuf },
}

fn run(cli: &Cli) -> Result<Option<serde_json::Value>, CliError> {
    let limits = if cli.allow_large {
        Limits::unbounded()
    } else {
        Limits::default()
    };
    match &cli.command {
        Command::Validate { file } => commands::cmd_validate(file, limits).map(Some),
        Command::Props { file } => commands::cmd_props(file, limits).map(Some),
        Command::Center { file, ordinary } => {
            commands::cmd_center(file, *ordinary, limits).map(Some)
        }
        Command::Restrictable { file, witness } => {
            commands::cmd_restrictable(file, witness.as_deref(), limits).map(Some)
        }
        Command::Synthesize {
            file,
            targets,
            output,
        } => commands::cmd_synthesize(file, targets.as_deref(), output_path(output), limits)
            .map(Some),
        Command::VerifyPmap { file, exhaustive } => {
            commands::cmd_verify_pmap(file, *exhaustive, limits).map(Some)
        }
        Command::CountPmaps { file, limit } => {
            commands::cmd_count_pmaps(file, *limit, limits).map(Some)
        }
        Command::STerms { file, x, y } => commands::cmd_s_terms(file, x, y, limits).map(Some),
        Command::Peval { file, x } => commands::cmd_peval(file, x, limits).map(Some),
        Command::Directsum { a, b, output } => {
            commands::cmd_directsum(a, b, output_path(output), limits)
        }
        Command::Quotient {
            file,
            ideal,
            output,
        } => commands::cmd_quotient(file, ideal, output_path(output), limits),
        Command::Pclosure { file, gens } => commands::cmd_pclosure(file, gens, limits).map(Some),
        Command::Morphism { sub } => match sub {
            MorphismCommand::Check {
                mapfile,
                restricted,
            } => commands::cmd_morphism_check(mapfile, *restricted, limits).map(Some),
        },
        Command::Push { mapfile } => commands::cmd_push(mapfile, limits).map(Some),
        Command::Pull { mapfile, sub } => commands::cmd_pull(mapfile, sub, limits).map(Some),
        Command::Form { file, formfile } => commands::cmd_form(file, formfile, limits).map(Some),
        Command::Envelope { sub } => match sub {
            EnvelopeCommand::Check { envfile } => {
                commands::cmd_envelope_check(envfile, limits).map(Some)
            }
            EnvelopeCommand::Minimal { envfile } => {
                commands::cmd_envelope_minimal(envfile, limits).map(Some)
            }
            EnvelopeCommand::Minimize { envfile } => {
                commands::cmd_envelope_minimize(envfile, limits).map(Some)
            }
            EnvelopeCommand::Decompose { envfile } => {
                commands::cmd_envelope_decompose(envfile, limits).map(Some)
            }
        },
        Command::Oracle { file, suite } => {
            commands::cmd_oracle(file, suite.as_deref(), cli.stable, limits).map(Some)
        }
        Command::Random {
            p,
            dim,
            seed,
            construction,
            output,
        } => commands::cmd_random(*p, *dim, *seed, construction, output_path(output)),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Some(value)) => report::print(&value, cli.json),
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {}", e.message());
            std::process::exit(e.exit_code());
        }
    }
}
