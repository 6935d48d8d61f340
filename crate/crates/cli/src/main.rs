//! Command line driver for the verification suites.
//!
//! Every subcommand resolves its parameters the same way: built-in default,
//! overridden by the `--config` file, overridden by explicit flags. The
//! rendered report goes to `--out` or stdout; timing goes to stderr only,
//! so captured reports stay byte-reproducible. Exit codes: 0 when every
//! check passed, 1 when a check failed, 2 for configuration or setup
//! errors.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use lieform_core::embedding::DeformSign;
use lieform_core::presets::Signature;
use lieform_core::suite::{
    self, parse_rational, parse_sign, ConfigError, ConventionChoice, SuiteKind, SuiteParams,
};

#[derive(Parser)]
#[command(
    name = "lieform",
    version,
    about = "Exact verification suites for flat-to-curved symmetry deformations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bracket closure of the deformed translations.
    #[command(name = "verify-closure")]
    VerifyClosure(SuiteArgs),
    /// Reconstruction identities at the reference signature.
    #[command(name = "verify-theorem41")]
    VerifyTheorem41(SuiteArgs),
    /// Quartic scalar relation and its spinless factorization.
    #[command(name = "verify-quartic")]
    VerifyQuartic(SuiteArgs),
    /// Time-translation reconstruction in the exact jet oracle.
    #[command(name = "verify-lemma31")]
    VerifyLemma31(SuiteArgs),
    /// Mode-basis round trip of the deformed plane algebra.
    #[command(name = "verify-qdeform")]
    VerifyQdeform(SuiteArgs),
    /// Defining-representation cross-check of the bracket tables.
    #[command(name = "verify-fundamental")]
    VerifyFundamental(SuiteArgs),
    /// Exact spectral arithmetic and the mass assignment.
    #[command(name = "spectra")]
    Spectra(SuiteArgs),
}

impl Cmd {
    fn kind(&self) -> SuiteKind {
        match self {
            Cmd::VerifyClosure(_) => SuiteKind::Closure,
            Cmd::VerifyTheorem41(_) => SuiteKind::Theorem41,
            Cmd::VerifyQuartic(_) => SuiteKind::Quartic,
            Cmd::VerifyLemma31(_) => SuiteKind::Lemma31Numeric,
            Cmd::VerifyQdeform(_) => SuiteKind::QdeformRoundtrip,
            Cmd::VerifyFundamental(_) => SuiteKind::Fundamental,
            Cmd::Spectra(_) => SuiteKind::Spectra,
        }
    }

    fn args(&self) -> &SuiteArgs {
        match self {
            Cmd::VerifyClosure(a)
            | Cmd::VerifyTheorem41(a)
            | Cmd::VerifyQuartic(a)
            | Cmd::VerifyLemma31(a)
            | Cmd::VerifyQdeform(a)
            | Cmd::VerifyFundamental(a)
            | Cmd::Spectra(a) => a,
        }
    }
}

#[derive(Args)]
struct SuiteArgs {
    /// Configuration file with key=value lines mirroring these flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// First label of the flat signature.
    #[arg(long)]
    p: Option<u8>,
    /// Second label of the flat signature.
    #[arg(long)]
    q: Option<u8>,
    /// Deformation branch: plus or minus.
    #[arg(long)]
    sign: Option<String>,
    /// Half width of the mode window.
    #[arg(long)]
    window: Option<i64>,
    /// Truncation order of the jet oracle.
    #[arg(long = "jet-order")]
    jet_order: Option<u32>,
    /// Numeric deformation parameter, repeatable; omit to run the formal
    /// parameter only.
    #[arg(long = "q-value")]
    q_value: Vec<String>,
    /// Seed for every sampled random input.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Term-count guard for the straightening engine.
    #[arg(long = "max-terms")]
    max_terms: Option<usize>,
    /// auto, or a fixed label like eps=+,q4=root,y=+,c2p=+.
    #[arg(long)]
    convention: Option<String>,
    /// Directory for memoized elements; omitting it disables the cache.
    #[arg(long = "cache-dir")]
    cache_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let kind = cli.cmd.kind();
    match run(kind, cli.cmd.args()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(kind: SuiteKind, args: &SuiteArgs) -> anyhow::Result<ExitCode> {
    let (params, out) = resolve(args)?;
    let started = Instant::now();
    let report = suite::run(kind, &params)?;
    eprintln!(
        "suite {} finished in {:.2?}",
        kind.as_str(),
        started.elapsed()
    );
    let doc = report.render();
    match out {
        Some(path) => {
            std::fs::write(&path, &doc)?;
            eprintln!("report written to {}", path.display());
        }
        None => print!("{doc}"),
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}

/// Default, then file value, then flag; parsing file text with the same
/// parser the flag uses.
fn pick<T: Clone, E: Into<anyhow::Error>>(
    flag: Option<T>,
    file: Option<&str>,
    parse: impl Fn(&str) -> Result<T, E>,
    default: T,
) -> anyhow::Result<T> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match file {
        Some(text) => parse(text).map_err(Into::into),
        None => Ok(default),
    }
}

fn parse_plain<T: FromStr>(key: &'static str) -> impl Fn(&str) -> Result<T, ConfigError> {
    move |text| {
        text.parse().map_err(|_| ConfigError::BadValue {
            key: key.to_string(),
            value: text.to_string(),
        })
    }
}

fn resolve(args: &SuiteArgs) -> anyhow::Result<(SuiteParams, Option<PathBuf>)> {
    let file = match &args.config {
        Some(path) => config::load(path)?,
        None => config::FileValues::default(),
    };

    let p = pick(args.p, file.get("p"), parse_plain::<u8>("p"), 0)?;
    let q = pick(args.q, file.get("q"), parse_plain::<u8>("q"), 3)?;
    let sig = Signature::new(p, q).map_err(|_| ConfigError::BadSignature { p, q })?;
    let sign = match args
        .sign
        .clone()
        .or_else(|| file.get("sign").map(str::to_string))
    {
        Some(text) => parse_sign(&text)?,
        None => DeformSign::Plus,
    };

    let mut params = SuiteParams::new(sig, sign);
    params.window = pick(
        args.window,
        file.get("window"),
        parse_plain::<i64>("window"),
        params.window,
    )?;
    params.jet_order = pick(
        args.jet_order,
        file.get("jet-order"),
        parse_plain::<u32>("jet-order"),
        params.jet_order,
    )?;
    params.max_terms = pick(
        args.max_terms,
        file.get("max-terms"),
        parse_plain::<usize>("max-terms"),
        params.max_terms,
    )?;
    params.seed = pick(args.seed, file.get("seed"), parse_plain::<u64>("seed"), 0)?;
    params.convention = match args
        .convention
        .clone()
        .or_else(|| file.get("convention").map(str::to_string))
    {
        Some(text) => ConventionChoice::parse(&text)?,
        None => ConventionChoice::Auto,
    };

    let raw_t: Vec<String> = if args.q_value.is_empty() {
        file.q_values().to_vec()
    } else {
        args.q_value.clone()
    };
    params.t_values = raw_t
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<_, _>>()?;

    params.cache_dir = args
        .cache_dir
        .clone()
        .or_else(|| file.get("cache-dir").map(PathBuf::from));

    let out = args
        .out
        .clone()
        .or_else(|| file.get("out").map(PathBuf::from));
    Ok((params, out))
}
