//! Choosing an extractor from a few yes/no answers about the sources.

use std::fmt;

use super::{calc_seed_length, Epsilon, ExtractorKind, SecurityModel};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SecondSource {
    None,
    PerfectSeed,
    WeakSeed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adversary {
    Classical,
    Quantum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Answers {
    /// The input bits form an exchangeable sequence.
    pub exchangeable: bool,
    pub second_source: SecondSource,
    pub adversary: Adversary,
    /// Seed bits available; `None` means unconstrained.
    pub seed_budget: Option<u64>,
    pub n1: u64,
    /// Output length and error used to size a Trevisan seed.
    pub m: u64,
    pub epsilon: Epsilon,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recommendation {
    Extractor {
        kind: ExtractorKind,
        model: Option<SecurityModel>,
        /// Seed bits the extractor consumes.
        seed_length: u64,
        /// A short uniform seed must be zero-padded to `seed_length`.
        pad_seed: bool,
    },
    Impossible,
}

impl fmt::Display for Recommendation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recommendation::Impossible => {
                f.write_str("no extraction possible: a second independent source or structure is needed")
            }
            Recommendation::Extractor {
                kind,
                model,
                seed_length,
                pad_seed,
            } => {
                write!(f, "{kind}")?;
                if let Some(model) = model {
                    write!(f, " ({model})")?;
                }
                write!(f, ", seed length {seed_length}")?;
                if *pad_seed {
                    f.write_str(", zero-pad the uniform seed")?;
                }
                Ok(())
            }
        }
    }
}

pub fn suggest_extractor(answers: &Answers) -> Result<Recommendation> {
    use Recommendation::Extractor;
    if answers.exchangeable {
        return Ok(Extractor {
            kind: ExtractorKind::VonNeumann,
            model: None,
            seed_length: 0,
            pad_seed: false,
        });
    }
    let seeded_model = match answers.adversary {
        Adversary::Classical => SecurityModel::ClassicalSeeded,
        Adversary::Quantum => SecurityModel::QuantumSeeded,
    };
    let fits = |bits: u64| answers.seed_budget.is_none_or(|b| b >= bits);
    let n1 = answers.n1;
    match answers.second_source {
        SecondSource::None => Ok(Recommendation::Impossible),
        SecondSource::PerfectSeed => {
            let circulant = calc_seed_length(ExtractorKind::Circulant, n1, answers.m, &answers.epsilon)?;
            if fits(circulant) {
                return Ok(Extractor {
                    kind: ExtractorKind::Circulant,
                    model: Some(seeded_model),
                    seed_length: circulant,
                    pad_seed: false,
                });
            }
            let trevisan = calc_seed_length(ExtractorKind::Trevisan, n1.max(2), answers.m.max(1), &answers.epsilon)?;
            if fits(trevisan) {
                return Ok(Extractor {
                    kind: ExtractorKind::Trevisan,
                    model: Some(seeded_model),
                    seed_length: trevisan,
                    pad_seed: false,
                });
            }
            Ok(Extractor {
                kind: ExtractorKind::Circulant,
                model: Some(SecurityModel::ProductTwoSource),
                seed_length: circulant,
                pad_seed: true,
            })
        }
        SecondSource::WeakSeed => Ok(match answers.adversary {
            Adversary::Classical => Extractor {
                kind: ExtractorKind::Dodis,
                model: Some(SecurityModel::ProductTwoSource),
                seed_length: calc_seed_length(ExtractorKind::Dodis, n1, answers.m, &answers.epsilon)?,
                pad_seed: false,
            },
            Adversary::Quantum => Extractor {
                kind: ExtractorKind::Circulant,
                model: Some(SecurityModel::MarkovQuantum),
                seed_length: calc_seed_length(ExtractorKind::Circulant, n1, answers.m, &answers.epsilon)?,
                pad_seed: false,
            },
        }),
    }
}
