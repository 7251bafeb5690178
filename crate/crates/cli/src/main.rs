mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gspace::structure::DEFAULT_BUDGET;
use gspace::{Error, Groupoid};

use report::{render, Format, GroupoidInfo, Output};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(s) => write!(f, "{s}"),
        }
    }
}

const EXIT_VERIFICATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Censuses and semigroup analyses of inclusion hyperspaces over finite groupoids.
#[derive(Debug, Parser)]
#[command(name = "gspace", version)]
struct Cli {
    /// `family:n` (cyclic, left-zero, right-zero, klein-4, symmetric-3) or `file:PATH`
    #[arg(long, global = true, default_value = "cyclic:3")]
    groupoid: String,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Node budget for the section search
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads; output does not depend on it
    #[arg(long, global = true)]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the members of a class in canonical order
    Enumerate {
        /// all, filters, ultrafilters, centered, shiftinv, linked:k, maxlinked:k
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        count_only: bool,
    },
    /// Class membership of one hyperspace
    Classify {
        /// A literal `<[a,b],[c]>`, a lattice term such as `0∧(1∨2)`, `min` or `max`
        hyperspace: String,
    },
    /// The extended product of two hyperspaces
    Product { left: String, right: String },
    /// Cayley table of a class or of an explicit list
    Table {
        #[arg(long, default_value = "all")]
        class: String,
        /// `;`-separated hyperspaces, instead of a class
        #[arg(long)]
        elements: Option<String>,
    },
    /// Special elements, ideals and center of a closed class
    Analyze {
        #[arg(long, default_value = "all")]
        class: String,
        #[arg(long)]
        elements: Option<String>,
    },
    /// Orbits under right shifts by a group, with the quotient table
    Orbits {
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// Sub-semigroups meeting every orbit exactly once
    Sections {
        #[arg(long, default_value = "all")]
        within: String,
    },
    /// Replay the built-in suite of published results
    VerifyPaper,
}

fn load_groupoid(spec: &str) -> Result<Groupoid, CliError> {
    if let Some(path) = spec.strip_prefix("file:") {
        let path = PathBuf::from(path);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        return Ok(Groupoid::parse(&text)?);
    }
    let (family, n) = spec.split_once(':').ok_or_else(|| {
        CliError::Input(format!("expected `family:n` or `file:PATH`, got `{spec}`"))
    })?;
    let n = n
        .parse()
        .map_err(|_| CliError::Input(format!("`{n}` is not a carrier size")))?;
    Ok(Groupoid::builtin(family, n)?)
}

fn run(cli: &Cli) -> Result<(Option<GroupoidInfo>, Output), CliError> {
    if let Command::VerifyPaper = cli.command {
        return Ok((None, verify::run_suite()?));
    }
    let g = load_groupoid(&cli.groupoid)?;
    let out = match &cli.command {
        Command::Enumerate { class, count_only } => commands::enumerate(&g, class, *count_only)?,
        Command::Classify { hyperspace } => commands::classify_one(&g, hyperspace)?,
        Command::Product { left, right } => commands::product_of(&g, left, right)?,
        Command::Table { class, elements } => {
            commands::table(&g, commands::select(&g, class, elements.as_deref())?)?
        }
        Command::Analyze { class, elements } => {
            commands::analyze(&g, commands::select(&g, class, elements.as_deref())?)?
        }
        Command::Orbits { class } => {
            commands::orbit_report(&g, commands::select(&g, class, None)?)?
        }
        Command::Sections { within } => {
            commands::sections(&g, commands::select(&g, within, None)?, cli.budget)?
        }
        Command::VerifyPaper => unreachable!("handled above"),
    };
    Ok((Some(GroupoidInfo::new(&g)), out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.parallel.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let result = pool.install(|| run(&cli));
    eprintln!("elapsed: {:.3?}", start.elapsed());
    match result {
        Ok((info, out)) => match render(cli.format, &echo, info.as_ref(), &out) {
            Ok(text) => {
                print!("{text}");
                if out.verdict == Some(false) {
                    ExitCode::from(EXIT_VERIFICATION)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(message) => {
                eprintln!("error: {message}");
                ExitCode::from(EXIT_INPUT)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Core(Error::BudgetExceeded { .. }) => ExitCode::from(EXIT_BUDGET),
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}
