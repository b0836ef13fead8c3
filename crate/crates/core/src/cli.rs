//! Command-line front end: file-to-file extraction and parameter queries.
//!
//! Exit codes: 0 success, 1 insufficient entropy, 2 malformed input or
//! inconsistent flags, 3 degenerate input to the Dodis extractor.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::bits::{pad_seed, parse_bits, serialize_bits, shorten_input, BitFormat, BitString};
use crate::error::Error;
use crate::ntt::{ModulusChoice, ModulusSelection};
use crate::params::exact::format_rational;
use crate::params::{
    calc_output_length, calc_seed_length, parse_rational, satisfies_output_bound, suggest_extractor, Adversary,
    Answers, Epsilon, ExtractorKind, ExtractorSpec, SecondSource, SecurityModel, SeedEntropy,
};
use crate::primes::{na_search, Direction};
use crate::{circulant, dodis, toeplitz, trevisan, vonneumann};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INSUFFICIENT_ENTROPY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "randext", version, about = "Randomness extraction from weak sources")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract near-uniform bits from an input file and a seed file.
    Extract(ExtractArgs),
    /// Parameter calculations.
    #[command(subcommand)]
    Params(ParamsCommand),
}

#[derive(Args, Debug)]
struct ExtractArgs {
    #[arg(long, value_parser = parse_kind)]
    extractor: ExtractorKind,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    seed: Option<PathBuf>,
    #[arg(long, value_parser = parse_format, default_value = "raw")]
    format: BitFormat,
    /// Input bits to read; defaults to the whole file.
    #[arg(long)]
    n1: Option<usize>,
    /// Input min-entropy in bits.
    #[arg(long, value_parser = parse_rational_arg)]
    k1: Option<BigRational>,
    /// Seed min-entropy in bits; defaults to the seed length.
    #[arg(long, value_parser = parse_rational_arg, conflicts_with = "seed_rate")]
    k2: Option<BigRational>,
    /// Seed min-entropy per bit.
    #[arg(long, value_parser = parse_rational_arg)]
    seed_rate: Option<BigRational>,
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: Option<Epsilon>,
    #[arg(long, value_parser = parse_model, default_value = "quantum-seeded")]
    model: SecurityModel,
    /// Output bits; defaults to the largest length the model allows.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    output: PathBuf,
    /// How to reach an admissible prime length for circulant and dodis.
    #[arg(long, value_enum, default_value_t = Adjust::Up)]
    adjust: Adjust,
    #[arg(long)]
    force_big_modulus: bool,
    /// Zero-pad a short seed and treat it as a weak seed.
    #[arg(long)]
    pad_seed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Adjust {
    /// Zero-pad the input up to the next admissible length.
    Up,
    /// Use the closest admissible length, trimming the input if it is below.
    Closest,
}

#[derive(Subcommand, Debug)]
enum ParamsCommand {
    /// Largest output length for an extractor and security model.
    OutputLength(OutputLengthArgs),
    /// Seed length for an extractor.
    SeedLength(SeedLengthArgs),
    /// Recommend an extractor.
    Suggest(SuggestArgs),
    /// Primes with 2 as a primitive root.
    NaPrime {
        #[arg(value_parser = parse_direction)]
        direction: Direction,
        n: u64,
    },
}

#[derive(Args, Debug)]
struct OutputLengthArgs {
    #[arg(long, value_parser = parse_kind)]
    extractor: ExtractorKind,
    #[arg(long)]
    n1: u64,
    #[arg(long, value_parser = parse_rational_arg)]
    k1: BigRational,
    #[arg(long, value_parser = parse_rational_arg, conflicts_with = "seed_rate")]
    k2: Option<BigRational>,
    #[arg(long, value_parser = parse_rational_arg)]
    seed_rate: Option<BigRational>,
    #[arg(long, value_parser = parse_epsilon)]
    epsilon: Epsilon,
    #[arg(long, value_parser = parse_model, default_value = "quantum-seeded")]
    model: SecurityModel,
}

#[derive(Args, Debug)]
struct SeedLengthArgs {
    #[arg(long, value_parser = parse_kind)]
    extractor: ExtractorKind,
    #[arg(long)]
    n1: u64,
    #[arg(long, default_value_t = 1)]
    m: u64,
    #[arg(long, value_parser = parse_epsilon, default_value = "2^-32")]
    epsilon: Epsilon,
}

#[derive(Args, Debug)]
struct SuggestArgs {
    /// The input bits form an exchangeable sequence.
    #[arg(long)]
    exchangeable: bool,
    #[arg(long, value_enum, default_value_t = SecondSourceArg::None)]
    second_source: SecondSourceArg,
    #[arg(long, value_enum, default_value_t = AdversaryArg::Quantum)]
    adversary: AdversaryArg,
    #[arg(long)]
    seed_budget: Option<u64>,
    #[arg(long, default_value_t = 1024)]
    n1: u64,
    #[arg(long, default_value_t = 1)]
    m: u64,
    #[arg(long, value_parser = parse_epsilon, default_value = "2^-32")]
    epsilon: Epsilon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SecondSourceArg {
    None,
    Perfect,
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AdversaryArg {
    Classical,
    Quantum,
}

fn parse_kind(s: &str) -> Result<ExtractorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_model(s: &str) -> Result<SecurityModel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<BitFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_direction(s: &str) -> Result<Direction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<Epsilon, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_rational_arg(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// A failure carrying its exit status.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateInput => EXIT_DEGENERATE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Extract(args) => extract(&args),
        Command::Params(cmd) => params(cmd),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn seed_entropy(k2: &Option<BigRational>, rate: &Option<BigRational>) -> SeedEntropy {
    match (k2, rate) {
        (Some(k), _) => SeedEntropy::Absolute(k.clone()),
        (None, Some(r)) => SeedEntropy::Rate(r.clone()),
        (None, None) => SeedEntropy::Full,
    }
}

/// Input after length adjustment, with the bookkeeping for the report.
struct Shaped {
    x: BitString,
    k1: BigRational,
    note: String,
}

// Circulant needs |x| = p - 1 and Dodis |x| = p for an admissible prime p.
fn shape_input(kind: ExtractorKind, x: BitString, k1: BigRational, adjust: Adjust) -> Result<Shaped, Failure> {
    let offset = match kind {
        ExtractorKind::Circulant => 1,
        ExtractorKind::Dodis => 0,
        _ => {
            return Ok(Shaped {
                x,
                k1,
                note: "none".into(),
            })
        }
    };
    let n1 = x.len() as u64;
    let direction = match adjust {
        Adjust::Up => Direction::Next,
        Adjust::Closest => Direction::Closest,
    };
    let prime = na_search((n1 + offset).max(3), direction)?;
    let target = (prime - offset) as usize;
    if target >= x.len() {
        let added = target - x.len();
        let mut x = x;
        x.pad_zeros(added);
        Ok(Shaped {
            x,
            k1,
            note: format!("padded {added} zero bits to reach prime {prime}"),
        })
    } else {
        let removed = x.len() - target;
        let (x, k1) = shorten_input(&x, &k1, removed)?;
        Ok(Shaped {
            x,
            k1,
            note: format!("trimmed {removed} bits (entropy reduced by {removed}) to reach prime {prime}"),
        })
    }
}

fn extract(args: &ExtractArgs) -> Result<i32, Failure> {
    let data = read(&args.input)?;
    let x = parse_bits(&data, args.format, args.n1)?;
    let modulus = if args.force_big_modulus {
        ModulusSelection::Force(ModulusChoice::Big)
    } else {
        ModulusSelection::Auto
    };

    if args.extractor == ExtractorKind::VonNeumann {
        let out = vonneumann::vn_extract(&x);
        if out.is_empty() {
            eprintln!("warning: no unequal bit pairs; the output is empty");
        }
        fs::write(&args.output, serialize_bits(&out, args.format))
            .map_err(|e| usage(format!("cannot write {}: {e}", args.output.display())))?;
        eprintln!("extractor: von-neumann");
        eprintln!("n1: {}", x.len());
        eprintln!("m: {}", out.len());
        return Ok(EXIT_OK);
    }

    let k1 = args.k1.clone().ok_or_else(|| usage("--k1 is required for seeded extractors"))?;
    let epsilon = args.epsilon.clone().ok_or_else(|| usage("--epsilon is required for seeded extractors"))?;
    let seed_path = args
        .seed
        .as_ref()
        .ok_or_else(|| usage(format!("the {} extractor needs --seed", args.extractor)))?;
    let seed_data = read(seed_path)?;
    let seed_available = parse_bits(&seed_data, args.format, None)?.len();

    let input_bits = x.len();
    let Shaped { x, k1, note } = shape_input(args.extractor, x, k1, args.adjust)?;
    let n1 = x.len() as u64;
    let mut k2 = seed_entropy(&args.k2, &args.seed_rate);

    let mut spec = ExtractorSpec::new(args.extractor, n1, k1.clone(), epsilon.clone(), args.model);
    let required = |m: u64| calc_seed_length(args.extractor, n1, m.max(1), &epsilon);

    // A short seed can be zero-padded into a weak seed whose entropy is its
    // original length; the seed length depends on m for toeplitz and trevisan.
    let padding = args.pad_seed && seed_available < required(args.m.unwrap_or(1) as u64)? as usize;
    if padding {
        if args.model.is_seeded() {
            return Err(usage("a zero-padded seed needs a two-source --model"));
        }
        let short = BigRational::from_integer(seed_available.into());
        let declared = match &k2 {
            SeedEntropy::Absolute(k) => k.clone().min(short.clone()),
            SeedEntropy::Rate(r) => r * &short,
            SeedEntropy::Full => short,
        };
        k2 = SeedEntropy::Absolute(declared);
    }
    spec = spec.with_seed_entropy(k2.clone());

    let m = match args.m {
        Some(m) => {
            if !satisfies_output_bound(&spec, m as u64)? {
                eprintln!("warning: m = {m} exceeds the bound for the {} model", args.model);
            }
            m as u64
        }
        None => {
            let out = calc_output_length(&spec)?;
            if out.insufficient_entropy {
                eprintln!("error: insufficient entropy: no positive output length satisfies the bound");
                report(args, n1, input_bits, &k1, out.n2, &out.k2, 0, &epsilon, &note);
                return Ok(EXIT_INSUFFICIENT_ENTROPY);
            }
            out.m
        }
    };
    if m == 0 {
        return Err(usage("--m must be positive"));
    }
    let n2 = required(m)? as usize;
    let y = if seed_available >= n2 {
        parse_bits(&seed_data, args.format, Some(n2))?
    } else if padding {
        pad_seed(&parse_bits(&seed_data, args.format, None)?, n2)?
    } else {
        return Err(usage(format!(
            "seed has {seed_available} bits but {n2} are required (see --pad-seed)"
        )));
    };
    let k2_bits = k2.resolve(n2 as u64);

    let m_usize = m as usize;
    let out = match args.extractor {
        ExtractorKind::Circulant => circulant::circulant_extract_with(&x, &y, m_usize, modulus)?,
        ExtractorKind::Dodis => dodis::dodis_extract_with(&x, &y, m_usize, modulus)?,
        ExtractorKind::Toeplitz => toeplitz::toeplitz_extract_with(&x, &y, m_usize, modulus)?,
        ExtractorKind::Trevisan => {
            let params = trevisan::compute_params(n1, m, &epsilon)?;
            trevisan::trevisan_extract(&x, &y, &params)?
        }
        ExtractorKind::VonNeumann => unreachable!("handled above"),
    };
    fs::write(&args.output, serialize_bits(&out, args.format))
        .map_err(|e| usage(format!("cannot write {}: {e}", args.output.display())))?;
    report(args, n1, input_bits, &k1, n2 as u64, &k2_bits, m, &epsilon, &note);
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn report(
    args: &ExtractArgs,
    n1: u64,
    input_bits: usize,
    k1: &BigRational,
    n2: u64,
    k2: &BigRational,
    m: u64,
    epsilon: &Epsilon,
    note: &str,
) {
    eprintln!("extractor: {}", args.extractor);
    eprintln!("model: {}", args.model);
    eprintln!("n1: {n1} (read {input_bits})");
    eprintln!("adjustment: {note}");
    eprintln!("k1: {}", format_rational(k1));
    eprintln!("n2: {n2}");
    eprintln!("k2: {}", format_rational(k2));
    eprintln!("m: {m}");
    eprintln!("epsilon: {epsilon}");
}

fn params(cmd: ParamsCommand) -> Result<i32, Failure> {
    match cmd {
        ParamsCommand::OutputLength(a) => {
            let spec = ExtractorSpec::new(a.extractor, a.n1, a.k1, a.epsilon, a.model)
                .with_seed_entropy(seed_entropy(&a.k2, &a.seed_rate));
            let out = calc_output_length(&spec)?;
            println!("{}", out.m);
            eprintln!("n2: {}", out.n2);
            eprintln!("k2: {}", format_rational(&out.k2));
            if out.insufficient_entropy {
                eprintln!("warning: insufficient entropy for any output");
            }
            Ok(EXIT_OK)
        }
        ParamsCommand::SeedLength(a) => {
            println!("{}", calc_seed_length(a.extractor, a.n1, a.m, &a.epsilon)?);
            Ok(EXIT_OK)
        }
        ParamsCommand::Suggest(a) => {
            let answers = Answers {
                exchangeable: a.exchangeable,
                second_source: match a.second_source {
                    SecondSourceArg::None => SecondSource::None,
                    SecondSourceArg::Perfect => SecondSource::PerfectSeed,
                    SecondSourceArg::Weak => SecondSource::WeakSeed,
                },
                adversary: match a.adversary {
                    AdversaryArg::Classical => Adversary::Classical,
                    AdversaryArg::Quantum => Adversary::Quantum,
                },
                seed_budget: a.seed_budget,
                n1: a.n1,
                m: a.m,
                epsilon: a.epsilon,
            };
            println!("{}", suggest_extractor(&answers)?);
            Ok(EXIT_OK)
        }
        ParamsCommand::NaPrime { direction, n } => {
            println!("{}", na_search(n, direction)?);
            Ok(EXIT_OK)
        }
    }
}
