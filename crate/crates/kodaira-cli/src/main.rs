//! Batch front end: reads a scene file, runs one operation and prints a report.
//!
//! Exit codes: 0 on success, 1 when the mathematics rejects the input (a lift
//! that does not descend, a missing numeric embedding, ...), 2 when the scene
//! or the command line is malformed.

mod commands;
mod render;
mod scene;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kodaira::par::Exec;

use crate::commands::{CohomologyParts, Pi1Op};
use crate::scene::{Format, Scene, SceneFile};

#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Schema(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Domain(m) => write!(f, "error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "kodaira", version, about = "Exact computations on primary Kodaira surfaces")]
struct Cli {
    /// Scene file (JSON).
    #[arg(long, global = true)]
    scene: Option<PathBuf>,
    /// Output format; overrides the scene's option.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Digits for numeric display; overrides the scene's option.
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Lift to operate on; required when the scene names more than one.
    #[arg(long, global = true)]
    lift: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Print the scene in canonical form.
    Canonical,
    /// Move to delta = 0, then rescale the fibre so that c = m.
    Normalize,
    /// Decide whether this scene and another describe isomorphic surfaces.
    Iso {
        #[arg(long)]
        other: PathBuf,
    },
    /// Numeric moduli coordinates j(tau_B) and exp(2 pi i tau_E).
    Moduli,
    /// Deck group arithmetic on exponent vectors m1,m2,m3,m4.
    Pi1 {
        #[command(subcommand)]
        op: Pi1Command,
    },
    /// Descent conditions, induced base map and generator images of a lift.
    CheckLift,
    /// The composite outer ∘ inner of two named lifts.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// The m-th power of a lift, with closed forms for automorphisms.
    Power {
        #[arg(long)]
        exponent: u32,
    },
    /// The canonical rotation of maximal order and its lift.
    OrderN,
    /// Split an automorphism into a base-translation part and a rotation power.
    Semidirect,
    /// How an automorphism sits relative to the kernel of the base action.
    KernelClass,
    /// Invariants of the group of induced base translations.
    Nk,
    /// Action on Dolbeault cohomology; with no selector flags, everything.
    Cohomology(CohomologyArgs),
    /// Fixed locus of an automorphism.
    FixedLocus {
        #[arg(long)]
        sequential: bool,
    },
    /// Check the invariant-form identities for the scene's surface.
    VerifyForms,
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        criterion: Option<u32>,
    },
}

#[derive(Subcommand)]
enum Pi1Command {
    Abelianization,
    Star {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    Inverse {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    Commutator {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Args)]
struct CohomologyArgs {
    #[arg(long)]
    action: bool,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    det: bool,
    #[arg(long)]
    lefschetz: bool,
    #[arg(long)]
    symplectic: bool,
    #[arg(long)]
    trivial: bool,
}

fn exponent_vector(text: &str) -> Result<[i64; 4], CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Schema(format!("expected four comma-separated integers, got `{text}`"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut out = [0i64; 4];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p.parse().map_err(|_| bad())?;
    }
    Ok(out)
}

fn load(path: &Option<PathBuf>) -> Result<Scene, CliError> {
    let path = path.as_ref().ok_or_else(|| CliError::Schema("this command needs --scene".into()))?;
    SceneFile::load(path)?.validate()
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

/// Runs the command; the flag says whether every check it ran passed.
fn run(cli: &Cli) -> Result<(serde_json::Value, Format, bool), CliError> {
    if let Command::Selftest { sequential, criterion } = &cli.command {
        let (v, passed) = commands::selftest(exec(*sequential), *criterion)?;
        let format = match cli.format {
            Some(FormatArg::Table) => Format::Table,
            _ => Format::Json,
        };
        return Ok((v, format, passed));
    }
    let scene = load(&cli.scene)?;
    let format = match cli.format {
        Some(FormatArg::Json) => Format::Json,
        Some(FormatArg::Table) => Format::Table,
        None => scene.file.options.format.unwrap_or_default(),
    };
    let precision = cli.precision.or(scene.file.options.precision).unwrap_or(12);
    let lift = cli.lift.as_deref();
    let value = match &cli.command {
        // A canonical scene is itself a scene file, so it is always JSON.
        Command::Canonical => return Ok((commands::canonical(&scene), Format::Json, true)),
        Command::Normalize => commands::normalize(&scene)?,
        Command::Iso { other } => commands::iso(&scene, &load(&Some(other.clone()))?)?,
        Command::Moduli => commands::moduli(&scene, precision)?,
        Command::Pi1 { op } => {
            let op = match op {
                Pi1Command::Abelianization => Pi1Op::Abelianization,
                Pi1Command::Star { a, b } => Pi1Op::Star(exponent_vector(a)?, exponent_vector(b)?),
                Pi1Command::Inverse { a } => Pi1Op::Inverse(exponent_vector(a)?),
                Pi1Command::Commutator { a, b } => Pi1Op::Commutator(exponent_vector(a)?, exponent_vector(b)?),
            };
            commands::pi1(&scene, op)?
        }
        Command::CheckLift => commands::check_lift(&scene, lift)?,
        Command::Compose { outer, inner } => commands::compose(&scene, outer, inner)?,
        Command::Power { exponent } => commands::power(&scene, lift, *exponent)?,
        Command::OrderN => commands::order_n(&scene)?,
        Command::Semidirect => commands::semidirect(&scene, lift)?,
        Command::KernelClass => commands::kernel_class(&scene, lift)?,
        Command::Nk => commands::nk(&scene)?,
        Command::Cohomology(a) => {
            let parts = CohomologyParts {
                action: a.action,
                trace: a.trace,
                det: a.det,
                lefschetz: a.lefschetz,
                symplectic: a.symplectic,
                trivial: a.trivial,
            };
            commands::cohomology(&scene, lift, parts)?
        }
        Command::FixedLocus { sequential } => commands::fixed_locus(&scene, lift, exec(*sequential))?,
        Command::VerifyForms => {
            let v = commands::verify_forms(&scene)?;
            let ok = v["all_hold"].as_bool().unwrap_or(false);
            return Ok((v, format, ok));
        }
        Command::Selftest { .. } => unreachable!("handled above"),
    };
    Ok((value, format, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, format, passed)) => {
            print!("{}", render::render(&value, format));
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code())
        }
    }
}
