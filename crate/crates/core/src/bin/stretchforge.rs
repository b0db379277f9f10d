use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stretchforge::commands::{self, PosetOp, Space, StretchOptions};
use stretchforge::report::CheckReport;
use stretchforge::Error;

#[derive(Parser, Debug)]
#[command(name = "stretchforge", version, about = "Checks stretched boundary actions of Lie groups")]
struct Cli {
    /// Truncation order of collar jets.
    #[arg(long, global = true, env = "STRETCHFORGE_ORDER", default_value_t = 8)]
    order: u32,
    /// Tolerance of numeric cross-validation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pull back the so(1,n) generators by y -> y^p and check regularity.
    Stretch {
        #[arg(short, long, default_value_t = 3)]
        n: usize,
        #[arg(short, long, default_value_t = 2)]
        p: u32,
        /// Number of numeric sample points.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Compare the Klein and Poincaré ball compactifications.
    KleinPoincare {
        #[arg(short, long, default_value_t = 2)]
        n: usize,
    },
    /// Test condition (A) at the Lie algebra level.
    ConditionA {
        /// Built-in name such as so(1,3), se(2), abelian(4), su(1,2), a
        /// product like so(1,2)*so(3), or a JSON file.
        algebra: String,
        /// Subalgebra name (0, all, the stabilizer name), a product of
        /// names, or a JSON file. Defaults to the stabilizer.
        subalgebra: Option<String>,
    },
    /// Stretch classes under the divisibility order.
    Poset {
        #[command(subcommand)]
        op: PosetCommand,
    },
    /// Eigenvalue multiplicities of a geodesic symmetry.
    Eigencheck {
        #[arg(value_enum)]
        space: SpaceArg,
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum PosetCommand {
    /// Is class A tighter than class B?
    Check { a: u32, b: u32 },
    /// Certificate for conjugacy or non-conjugacy of A and B.
    Certify {
        a: u32,
        b: u32,
        #[arg(long)]
        condition_a: bool,
    },
    /// Tightest class of a sample such as 1..12 or 2,3,6.
    Tightest { sample: String },
    /// The first K classes and their pairwise certificates.
    Enumerate { k: u32 },
    /// Partial-order axioms on 1..=N.
    Axioms { n: u32 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    Complex,
    Real,
}

fn run(cli: &Cli) -> Result<CheckReport, Error> {
    match &cli.command {
        Command::Stretch { n, p, samples } => commands::cmd_stretch(&StretchOptions {
            n: *n,
            p: *p,
            order: cli.order,
            samples: *samples,
            tol: cli.tol,
            seed: cli.seed,
        }),
        Command::KleinPoincare { n } => commands::cmd_klein_poincare(*n, cli.order),
        Command::ConditionA { algebra, subalgebra } => {
            commands::cmd_condition_a(algebra, subalgebra.as_deref())
        }
        Command::Poset { op } => {
            let op = match op {
                PosetCommand::Check { a, b } => PosetOp::Check { a: *a, b: *b },
                PosetCommand::Certify { a, b, condition_a } => PosetOp::Certify {
                    a: *a,
                    b: *b,
                    condition_a: *condition_a,
                },
                PosetCommand::Tightest { sample } => PosetOp::Tightest {
                    sample: commands::parse_sample(sample)?,
                },
                PosetCommand::Enumerate { k } => PosetOp::Enumerate { k: *k },
                PosetCommand::Axioms { n } => PosetOp::Axioms { n: *n },
            };
            commands::cmd_poset(&op)
        }
        Command::Eigencheck { space, m } => {
            let space = match space {
                SpaceArg::Complex => Space::Complex,
                SpaceArg::Real => Space::Real,
            };
            commands::cmd_eigencheck(space, *m)
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Precondition(_)
            | Error::Parse(_)
            | Error::Json(_)
            | Error::Io(_)
            | Error::Invalid(_)
            | Error::DimensionMismatch(_)
            | Error::LinearDependence
            | Error::NotClosed(_)
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_usage_error(&e) { 2 } else { 1 });
        }
    };
    let mut rendered = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &rendered),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.has_failures() {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
