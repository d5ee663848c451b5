//! `kummerlab`: rational quadratic-form invariants, embedding verdicts,
//! Clifford algebra bookkeeping and torsion-level fixed-locus checks.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kummerlab::clifford::{self, CliffordError};
use kummerlab::kummer::{self, KummerError, Suite};
use kummerlab::lattice::{self, LatticeError};
use kummerlab::quadform::{self, QuadSpace};
use kummerlab::BigRational;

use render::{Document, Format};

/// Exit statuses: 0 affirmative or passing, 1 a well-formed negative
/// verdict, 2 bad usage or input, 3 a failed verification check.
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "kummerlab", version, about)]
struct Cli {
    /// Output style: human-readable text or a JSON document with the same content.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, signature, discriminant and Hasse symbols of a lattice.
    Invariants(Input),
    /// Whether a lattice embeds isometrically into a twisted target over ℚ.
    Eligibility {
        #[command(flatten)]
        input: Input,
        /// Catalogue name of the target lattice.
        #[arg(long, default_value = "Lambda_Kum3")]
        target: String,
        /// Rational twist applied to the target form.
        #[arg(long, default_value = "2")]
        twist: String,
    },
    /// Torsion-level checks of the fixed loci on the generalized Kummer.
    VerifyFixedLocus {
        /// Torsion level, a multiple of 4.
        #[arg(long, default_value_t = 4)]
        level: u32,
        /// Suite to run.
        #[arg(long, default_value = "all", value_parser = ["all", "2.2", "2.4", "2.5", "2.7", "2.8"])]
        lemma: String,
    },
    /// Dimensions of the Clifford algebra, its even part and the Kuga–Satake variety.
    Clifford {
        #[command(flatten)]
        input: Input,
        /// Print every dimension and the generator squares (default).
        #[arg(long, conflicts_with = "ks_dim")]
        info: bool,
        /// Print only the Kuga–Satake dimension 2^(rank-2).
        #[arg(long)]
        ks_dim: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Lattice file (JSON with a `gram` matrix of rational strings).
    file: Option<PathBuf>,
    /// Catalogue lattice: U, Lambda_Kum3, Paranjape, ILP or rank1:<n>.
    #[arg(long)]
    builtin: Option<String>,
}

/// A command failure together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::input(e)
    }
}

impl From<CliffordError> for Failure {
    fn from(e: CliffordError) -> Self {
        Failure::input(e)
    }
}

impl From<KummerError> for Failure {
    fn from(e: KummerError) -> Self {
        Failure::input(e)
    }
}

fn load(input: &Input) -> Result<(String, QuadSpace), Failure> {
    if let Some(name) = &input.builtin {
        let named = lattice::builtin(name)?;
        return Ok((named.name, named.space));
    }
    let path = input.file.as_ref().expect("clap requires an input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let space = lattice::parse_lattice(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let name = space
        .label()
        .map(str::to_owned)
        .unwrap_or_else(|| path.display().to_string());
    Ok((name, space))
}

fn invariants(input: &Input) -> Result<(Document, u8), Failure> {
    let (name, space) = load(input)?;
    let profile = quadform::invariant_profile(&space);
    Ok((render::invariants(&name, &profile), 0))
}

fn eligibility(input: &Input, target: &str, twist: &str) -> Result<(Document, u8), Failure> {
    let (name, space) = load(input)?;
    let k: BigRational = lattice::parse_rational(twist)
        .ok_or_else(|| Failure::input(format!("twist `{twist}` is not a rational number")))?;
    let target_space = lattice::builtin(target)?.space;
    let twisted = quadform::scale(&target_space, &k).map_err(Failure::input)?;
    let verdict = quadform::embeds(&space, &twisted);
    let target_label = format!("{target}({k})");
    let code = if verdict.embeds { 0 } else { EXIT_NEGATIVE };
    let profile = quadform::invariant_profile(&space);
    Ok((
        render::eligibility(&name, &profile, &target_label, &verdict),
        code,
    ))
}

fn verify_fixed_locus(level: u32, lemma: &str) -> Result<(Document, u8), Failure> {
    let only = match lemma {
        "all" => None,
        id => Some(id.parse::<Suite>()?),
    };
    let reports = kummer::verify(level, only)?;
    let code = if reports.iter().all(|r| r.passed()) {
        0
    } else {
        EXIT_CHECK_FAILED
    };
    Ok((render::fixed_locus(level, &reports), code))
}

fn clifford_report(input: &Input, ks_only: bool) -> Result<(Document, u8), Failure> {
    let (name, space) = load(input)?;
    let algebra = clifford::build(&space)?;
    if ks_only {
        let ks = clifford::ks_dimension(algebra.rank())?;
        return Ok((render::ks_dimension(&name, algebra.rank(), &ks), 0));
    }
    let ks = clifford::ks_dimension(algebra.rank()).ok();
    Ok((render::clifford_info(&name, &algebra, ks.as_ref()), 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants(input) => invariants(input),
        Command::Eligibility {
            input,
            target,
            twist,
        } => eligibility(input, target, twist),
        Command::VerifyFixedLocus { level, lemma } => verify_fixed_locus(*level, lemma),
        Command::Clifford {
            input,
            info: _,
            ks_dim,
        } => clifford_report(input, *ks_dim),
    };
    match result {
        Ok((doc, code)) => {
            print!("{}", doc.render(cli.format));
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
