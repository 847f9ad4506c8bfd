//! `gradext` — certificate-producing checks for graded ring extensions.
//!
//! Every subcommand reads JSON documents, runs an exact decision procedure,
//! and prints a report whose verdicts come with re-checkable evidence.
//! Reports are byte-identical across runs unless `--timing` is set.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gradext_cli::commands::{self, CliError, CommandOutcome, Output};
use gradext_core::gallery::FuzzConfig;

#[derive(Parser)]
#[command(name = "gradext", version, about = "Exact checks for graded ring extensions", max_term_width = 100)]
struct Cli {
    /// Report rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Include wall-clock timing in the report (off by default so reports
    /// are byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the action makes the extension Galois over the fixed
    /// subring, with an invertibility certificate either way.
    CheckGalois {
        /// Instance document (`-` for stdin); must carry a group action.
        instance: String,
    },
    /// Produce element pairs witnessing the Galois trace pairing.
    DualBasis {
        /// Instance document (`-` for stdin); must carry a group action.
        instance: String,
    },
    /// Decide separability and print the separability idempotent.
    CheckSeparable {
        /// Instance document (`-` for stdin).
        instance: String,
    },
    /// Try to push a separability idempotent into degree zero; report the
    /// concentrated idempotent or the zero-divisor obstruction.
    Concentrate {
        /// Instance document (`-` for stdin).
        instance: String,
    },
    /// Present the module of relative differentials with its universal
    /// derivation (commutative instances only).
    Kaehler {
        /// Instance document (`-` for stdin).
        instance: String,
    },
    /// Search for a homogeneous class proving the differentials module is
    /// nonzero (commutative instances only).
    Hh1 {
        /// Instance document (`-` for stdin).
        instance: String,
    },
    /// Compute `Tor_p(M, N)` for two module documents.
    Tor {
        /// Left module document (`-` for stdin).
        m: String,
        /// Right module document.
        n: String,
        /// Homological degree; bounded by GRADEXT_RESOLUTION_CAP.
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
    /// Compute `Tor_p` degree by degree for graded module documents.
    GradedTor {
        /// Left module document (`-` for stdin).
        m: String,
        /// Right module document.
        n: String,
        /// Homological degree; bounded by GRADEXT_RESOLUTION_CAP.
        #[arg(long, default_value_t = 1)]
        p: usize,
    },
    /// Compute `H^s(G, M)` from an instance with an action or a module
    /// document with `group`/`action` fields.
    #[command(name = "group-cohomology")]
    GroupCohomology {
        /// Instance or module document (`-` for stdin).
        input: String,
        /// Cohomological degree; bounded by GRADEXT_RESOLUTION_CAP.
        #[arg(long, default_value_t = 1)]
        s: usize,
    },
    /// Decide whether `M (x) M` is nonzero, with its invariant factors.
    TensorSelf {
        /// Module document (`-` for stdin).
        module: String,
    },
    /// Print a named example instance document.
    Gallery {
        /// One of: f4, f8, f9, axa, z4-c2, matrix-4-6, dual-numbers.
        name: String,
    },
    /// Property-test one theorem lane on seeded random instances.
    Fuzz {
        /// Lane token: thm-3.2, thm-4.2, rmk-4.3, lemma-5.3, lemma-5.8,
        /// or rmk-5.5.
        theorem: String,
        /// Number of random instances to generate.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Batch seed; per-trial seeds derive from it and are reported.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest basis rank to generate.
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        /// Degree window `lo,hi` for generated basis elements.
        #[arg(long, default_value = "-2,3", value_parser = commands::parse_degree_range)]
        degree_range: (i64, i64),
        /// Base ring pool: mixed, integers, mod:<n>, or fp:<p>.
        #[arg(long, default_value = "mixed", value_parser = commands::parse_base_choice)]
        base: gradext_core::gallery::BaseChoice,
        /// Largest group order for generated actions.
        #[arg(long, default_value_t = 4)]
        group_order: usize,
        /// Worker threads; the report is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Replay a single trial from its reported instance seed.
        #[arg(long)]
        instance_seed: Option<u64>,
    },
}

fn run(command: &Command) -> Result<CommandOutcome, CliError> {
    match command {
        Command::CheckGalois { instance } => {
            commands::cmd_check_galois(&commands::read_input(instance)?)
        }
        Command::DualBasis { instance } => {
            commands::cmd_dual_basis(&commands::read_input(instance)?)
        }
        Command::CheckSeparable { instance } => {
            commands::cmd_check_separable(&commands::read_input(instance)?)
        }
        Command::Concentrate { instance } => {
            commands::cmd_concentrate(&commands::read_input(instance)?)
        }
        Command::Kaehler { instance } => commands::cmd_kaehler(&commands::read_input(instance)?),
        Command::Hh1 { instance } => commands::cmd_hh1(&commands::read_input(instance)?),
        Command::Tor { m, n, p } => {
            commands::cmd_tor(&commands::read_input(m)?, &commands::read_input(n)?, *p)
        }
        Command::GradedTor { m, n, p } => {
            commands::cmd_graded_tor(&commands::read_input(m)?, &commands::read_input(n)?, *p)
        }
        Command::GroupCohomology { input, s } => {
            commands::cmd_group_cohomology(&commands::read_input(input)?, *s)
        }
        Command::TensorSelf { module } => {
            commands::cmd_tensor_self(&commands::read_input(module)?)
        }
        Command::Gallery { name } => commands::cmd_gallery(name),
        Command::Fuzz {
            theorem,
            trials,
            seed,
            max_rank,
            degree_range,
            base,
            group_order,
            jobs,
            instance_seed,
        } => {
            let cfg = FuzzConfig {
                trials: *trials,
                seed: *seed,
                max_rank: *max_rank,
                degree_range: *degree_range,
                base: base.clone(),
                group_order: *group_order,
                jobs: *jobs,
            };
            commands::cmd_fuzz(theorem, cfg, *instance_seed)
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    match out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok(outcome) => {
            let text = match outcome.output {
                Output::Report(mut report) => {
                    if cli.timing {
                        report.timing_ms =
                            Some(u64::try_from(started.elapsed().as_millis()).unwrap_or(u64::MAX));
                    }
                    match cli.format {
                        Format::Json => report.to_json(),
                        Format::Text => report.to_text(),
                    }
                }
                Output::Raw(text) => text,
            };
            if let Err(e) = emit(&text, &cli.out) {
                eprintln!("gradext: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(u8::try_from(outcome.exit).unwrap_or(1))
        }
        Err(e) => {
            eprintln!("gradext: {e}");
            ExitCode::from(u8::try_from(e.exit_code()).unwrap_or(1))
        }
    }
}
