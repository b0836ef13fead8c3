//! Parameter engine: output and seed lengths for every extractor and
//! security model, error lifts, and extractor selection.
//!
//! Every output-length bound has the shape `D·m - A(m) <= Σ c_i·log2 r_i`
//! with rational `A` and `c_i`. Bounds are decided exactly by
//! [`exact::le_log_sum`], so the returned `m` is the true integer maximum.

pub mod exact;
pub mod lifts;
pub mod suggest;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::primes::{na_search, Direction};
use crate::trevisan;

pub use crate::primes::is_na_prime;
pub use exact::{int, le_log_sum, parse_rational, Epsilon, LogTerm};
pub use lifts::{compose_errors, lift_markov, lift_two_source_error, ComposeMode, ComposedError, MarkovLift};
pub use suggest::{suggest_extractor, Adversary, Answers, Recommendation, SecondSource};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtractorKind {
    Circulant,
    Dodis,
    Toeplitz,
    Trevisan,
    VonNeumann,
}

impl ExtractorKind {
    pub const ALL: [ExtractorKind; 5] = [
        ExtractorKind::Circulant,
        ExtractorKind::Dodis,
        ExtractorKind::Toeplitz,
        ExtractorKind::Trevisan,
        ExtractorKind::VonNeumann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExtractorKind::Circulant => "circulant",
            ExtractorKind::Dodis => "dodis",
            ExtractorKind::Toeplitz => "toeplitz",
            ExtractorKind::Trevisan => "trevisan",
            ExtractorKind::VonNeumann => "von-neumann",
        }
    }
}

impl fmt::Display for ExtractorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtractorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExtractorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .or((s == "vonneumann" || s == "von_neumann").then_some(ExtractorKind::VonNeumann))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown extractor `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecurityModel {
    ClassicalSeeded,
    QuantumSeeded,
    ProductTwoSource,
    MarkovClassical,
    MarkovQuantum,
}

impl SecurityModel {
    pub const ALL: [SecurityModel; 5] = [
        SecurityModel::ClassicalSeeded,
        SecurityModel::QuantumSeeded,
        SecurityModel::ProductTwoSource,
        SecurityModel::MarkovClassical,
        SecurityModel::MarkovQuantum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SecurityModel::ClassicalSeeded => "classical-seeded",
            SecurityModel::QuantumSeeded => "quantum-seeded",
            SecurityModel::ProductTwoSource => "product-two-source",
            SecurityModel::MarkovClassical => "markov-two-source-classical",
            SecurityModel::MarkovQuantum => "markov-two-source-quantum",
        }
    }

    pub fn is_seeded(self) -> bool {
        matches!(self, SecurityModel::ClassicalSeeded | SecurityModel::QuantumSeeded)
    }
}

impl fmt::Display for SecurityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SecurityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let model = match s {
            "product" => SecurityModel::ProductTwoSource,
            "markov-classical" => SecurityModel::MarkovClassical,
            "markov-quantum" => SecurityModel::MarkovQuantum,
            _ => {
                return SecurityModel::ALL
                    .into_iter()
                    .find(|m| m.name() == s)
                    .ok_or_else(|| Error::InvalidParameter(format!("unknown security model `{s}`")))
            }
        };
        Ok(model)
    }
}

/// Min-entropy promise on the seed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedEntropy {
    /// Uniform seed, `k2 = n2`.
    Full,
    /// `k2` bits, capped at `n2`.
    Absolute(BigRational),
    /// `k2 = rate · n2`.
    Rate(BigRational),
}

impl SeedEntropy {
    /// `k2` for a seed of `n2` bits.
    pub fn resolve(&self, n2: u64) -> BigRational {
        let n2r = BigRational::from_integer(n2.into());
        let k2 = match self {
            SeedEntropy::Full => n2r.clone(),
            SeedEntropy::Absolute(k) => k.clone(),
            SeedEntropy::Rate(r) => r * &n2r,
        };
        if k2 > n2r {
            n2r
        } else if k2.is_negative() {
            BigRational::zero()
        } else {
            k2
        }
    }
}

/// The inputs of a parameter calculation. `m` is only read by operations
/// that need a fixed output length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractorSpec {
    pub kind: ExtractorKind,
    pub n1: u64,
    pub k1: BigRational,
    pub k2: SeedEntropy,
    pub m: Option<u64>,
    pub epsilon: Epsilon,
    pub model: SecurityModel,
}

impl ExtractorSpec {
    pub fn new(kind: ExtractorKind, n1: u64, k1: BigRational, epsilon: Epsilon, model: SecurityModel) -> Self {
        Self {
            kind,
            n1,
            k1,
            k2: SeedEntropy::Full,
            m: None,
            epsilon,
            model,
        }
    }

    pub fn with_seed_entropy(mut self, k2: SeedEntropy) -> Self {
        self.k2 = k2;
        self
    }

    pub fn with_m(mut self, m: u64) -> Self {
        self.m = Some(m);
        self
    }

    fn validate(&self) -> Result<()> {
        let n1 = BigRational::from_integer(self.n1.into());
        if self.k1.is_negative() || self.k1 > n1 {
            return Err(Error::InvalidParameter(format!(
                "input entropy {} outside [0, {}]",
                self.k1, self.n1
            )));
        }
        if let SeedEntropy::Rate(r) = &self.k2 {
            if r.is_negative() || *r > BigRational::from_integer(1.into()) {
                return Err(Error::InvalidParameter(format!("seed entropy rate {r} outside [0, 1]")));
            }
        }
        if self.model.is_seeded() && self.k2 != SeedEntropy::Full {
            return Err(Error::InvalidParameter(format!(
                "the {} model requires a uniform seed",
                self.model
            )));
        }
        Ok(())
    }
}

/// Result of [`calc_output_length`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputLength {
    pub m: u64,
    /// Seed length at that `m` (at `m = 1` when `m = 0`).
    pub n2: u64,
    pub k2: BigRational,
    /// No positive `m` satisfies the bound.
    pub insufficient_entropy: bool,
}

/// Seed length for extracting `m` bits from `n1`.
pub fn calc_seed_length(kind: ExtractorKind, n1: u64, m: u64, epsilon: &Epsilon) -> Result<u64> {
    match kind {
        ExtractorKind::Circulant => na_search(n1 + 1, Direction::Next),
        ExtractorKind::Dodis => na_search(n1, Direction::Next),
        ExtractorKind::Toeplitz => Ok((n1 + m).saturating_sub(1)),
        ExtractorKind::Trevisan => trevisan::seed_length(n1, m, epsilon),
        ExtractorKind::VonNeumann => Ok(0),
    }
}

fn log_eps(spec: &ExtractorSpec, coef: i64) -> LogTerm {
    LogTerm::new(int(coef), spec.epsilon.value().clone())
}

fn log_eps_over_3(spec: &ExtractorSpec, coef: i64) -> LogTerm {
    LogTerm::new(int(coef), spec.epsilon.value() / int(3))
}

/// The bound for output length `m >= 1` as `(lhs, terms)` meaning
/// `lhs <= Σ terms`.
fn bound(spec: &ExtractorSpec, m: u64, delta: &BigRational) -> Result<(BigRational, Vec<LogTerm>)> {
    use ExtractorKind as K;
    use SecurityModel as M;
    let k1 = &spec.k1;
    let mr = int(m as i64);
    let unsupported = || Error::UnsupportedModel {
        kind: spec.kind,
        model: spec.model,
    };
    // D·m - (k1 - w·δ + c) <= terms
    let make = |d: i64, w: i64, c: i64, terms: Vec<LogTerm>| {
        let lhs = int(d) * &mr - (k1 - int(w) * delta + int(c));
        (lhs, terms)
    };
    let log_m = |coef: i64| LogTerm::new(int(coef), mr.clone());
    Ok(match (spec.kind, spec.model) {
        (K::VonNeumann, _) => return Err(unsupported()),
        (K::Circulant | K::Toeplitz, M::ClassicalSeeded | M::QuantumSeeded) => {
            make(1, 0, 0, vec![log_eps(spec, 2)])
        }
        (K::Circulant | K::Toeplitz, _) => make(1, 1, 0, vec![log_eps(spec, 2)]),
        (K::Dodis, M::ClassicalSeeded) => make(1, 0, 1, vec![log_eps(spec, 2)]),
        (K::Dodis, M::ProductTwoSource) => make(1, 1, 1, vec![log_eps(spec, 2)]),
        (K::Dodis, M::QuantumSeeded | M::MarkovQuantum) => {
            let w = if spec.model == M::MarkovQuantum { 1 } else { 0 };
            make(5, w, 9, vec![log_eps(spec, 8), LogTerm::new(int(-4), int(3))])
        }
        (K::Dodis, M::MarkovClassical) => make(1, 1, 1, vec![log_eps_over_3(spec, 4)]),
        (K::Trevisan, M::ClassicalSeeded | M::QuantumSeeded) => {
            make(1, 0, -6, vec![log_eps(spec, 4), log_m(-4)])
        }
        (K::Trevisan, M::ProductTwoSource) => make(1, 4, -6, vec![log_eps(spec, 4), log_m(-4)]),
        (K::Trevisan, M::MarkovQuantum) => make(
            10,
            4,
            -6,
            vec![
                log_eps(spec, 18),
                LogTerm::new(int(9), BigRational::new(4.into(), 3.into())),
                log_m(-4),
            ],
        ),
        (K::Trevisan, M::MarkovClassical) => make(1, 4, -6, vec![log_eps_over_3(spec, 9), log_m(-4)]),
    })
}

/// `(n2, k2, δ = n2 - k2)` at output length `m`.
fn seed_at(spec: &ExtractorSpec, m: u64) -> Result<(u64, BigRational, BigRational)> {
    let n2 = calc_seed_length(spec.kind, spec.n1, m, &spec.epsilon)?;
    let k2 = spec.k2.resolve(n2);
    let delta = BigRational::from_integer(n2.into()) - &k2;
    Ok((n2, k2, delta))
}

/// Whether `m` satisfies the output-length bound of `spec`'s extractor and
/// model. `m = 0` always does.
pub fn satisfies_output_bound(spec: &ExtractorSpec, m: u64) -> Result<bool> {
    spec.validate()?;
    if m == 0 {
        bound(spec, 1, &BigRational::zero())?;
        return Ok(true);
    }
    let (_, _, delta) = seed_at(spec, m)?;
    let (lhs, terms) = bound(spec, m, &delta)?;
    Ok(le_log_sum(&lhs, &terms))
}

/// Largest `m` allowed by the bound for `spec`'s extractor and model. Zero
/// is returned, with `insufficient_entropy` set, when no positive `m` is.
pub fn calc_output_length(spec: &ExtractorSpec) -> Result<OutputLength> {
    spec.validate()?;
    bound(spec, 1, &BigRational::zero())?;
    // every bound implies m <= k1 + 1
    let mut hi = spec.k1.floor().to_integer().to_u64().unwrap_or(0) + 1;
    let mut lo = 0u64;
    if spec.kind == ExtractorKind::Trevisan && spec.n1 < 2 {
        hi = 0;
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if satisfies_output_bound(spec, mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let (n2, k2, _) = seed_at(spec, lo.max(1))?;
    Ok(OutputLength {
        m: lo,
        n2,
        k2,
        insufficient_entropy: lo == 0,
    })
}
