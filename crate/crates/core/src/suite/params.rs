//! Run configuration shared by every suite, plus the parsers the command
//! line and the configuration file both go through. Keeping the parsing
//! here means a flag and its file key can never drift apart.

use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::DEFAULT_TERM_LIMIT;
use crate::cache::ElementCache;
use crate::embedding::{Convention, DeformSign};
use crate::exact::Rational;
use crate::presets::Signature;
use crate::qdeform::DEFAULT_HALF_WIDTH;
use crate::shell::DEFAULT_JET_ORDER;

/// A configuration problem: distinct from a failing check, and mapped to
/// its own process exit code by the driver.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("sign must be plus or minus, got {0:?}")]
    BadSign(String),
    #[error("cannot parse {0:?} as a rational number")]
    BadRational(String),
    #[error("convention must be auto or a label like eps=+,q4=root,y=+,c2p=+, got {0:?}")]
    BadConvention(String),
    #[error("cannot parse {value:?} as a value for {key}")]
    BadValue { key: String, value: String },
    #[error("duplicate key {0} in the configuration file")]
    DuplicateKey(String),
    #[error("unknown configuration key {0:?}")]
    UnknownKey(String),
    #[error("configuration file {path}: {detail}")]
    File { path: String, detail: String },
    #[error("invalid signature: p={p}, q={q}")]
    BadSignature { p: u8, q: u8 },
}

/// Either derive the convention by sweeping all readings, or pin one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConventionChoice {
    Auto,
    Fixed(Convention),
}

impl ConventionChoice {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        if s == "auto" {
            return Ok(ConventionChoice::Auto);
        }
        Convention::from_label(s)
            .map(ConventionChoice::Fixed)
            .ok_or_else(|| ConfigError::BadConvention(s.to_string()))
    }

    pub fn label(&self) -> String {
        match self {
            ConventionChoice::Auto => "auto".to_string(),
            ConventionChoice::Fixed(conv) => conv.label(),
        }
    }
}

pub fn parse_sign(s: &str) -> Result<DeformSign, ConfigError> {
    match s {
        "plus" => Ok(DeformSign::Plus),
        "minus" => Ok(DeformSign::Minus),
        other => Err(ConfigError::BadSign(other.to_string())),
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ConfigError> {
    Rational::from_str(s.trim()).map_err(|_| ConfigError::BadRational(s.to_string()))
}

/// Everything a suite run depends on. All fields are plain data so two runs
/// with equal parameters are bitwise-identical computations.
#[derive(Debug, Clone)]
pub struct SuiteParams {
    pub sig: Signature,
    pub sign: DeformSign,
    /// Half width of the mode window for banded-operator suites.
    pub window: i64,
    /// Truncation order of the jet oracle.
    pub jet_order: u32,
    /// Numeric deformation parameters to sample on top of the formal one.
    pub t_values: Vec<Rational>,
    pub convention: ConventionChoice,
    /// Term-count guard handed to the straightening engine.
    pub max_terms: usize,
    pub seed: u64,
    /// Cache directory for memoized elements; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl SuiteParams {
    pub fn new(sig: Signature, sign: DeformSign) -> Self {
        SuiteParams {
            sig,
            sign,
            window: DEFAULT_HALF_WIDTH,
            jet_order: DEFAULT_JET_ORDER,
            t_values: Vec::new(),
            convention: ConventionChoice::Auto,
            max_terms: DEFAULT_TERM_LIMIT,
            seed: 0,
            cache_dir: None,
        }
    }

    pub(crate) fn open_cache(&self) -> Result<Option<ElementCache>, std::io::Error> {
        self.cache_dir
            .as_ref()
            .map(ElementCache::new)
            .transpose()
    }
}
