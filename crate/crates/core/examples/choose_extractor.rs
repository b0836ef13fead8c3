//! Picking an extractor from a few questions about the setting.
//!
//! `cargo run --release --example choose_extractor`

use randext::params::suggest::{suggest_extractor, Adversary, Answers, SecondSource};
use randext::Epsilon;

fn main() -> randext::Result<()> {
    let base = Answers {
        exchangeable: false,
        second_source: SecondSource::PerfectSeed,
        adversary: Adversary::Quantum,
        seed_budget: None,
        n1: 1_000_000,
        m: 1000,
        epsilon: Epsilon::pow2(32),
    };
    let cases = [
        ("independent identical coin flips", Answers { exchangeable: true, ..base.clone() }),
        ("uniform seed, no budget", base.clone()),
        ("uniform seed of at most 500000 bits", Answers { seed_budget: Some(500_000), ..base.clone() }),
        ("uniform seed of at most 1000 bits", Answers { seed_budget: Some(1000), ..base.clone() }),
        ("weak second source", Answers { second_source: SecondSource::WeakSeed, ..base.clone() }),
        ("no second source", Answers { second_source: SecondSource::None, ..base.clone() }),
    ];
    for (situation, answers) in cases {
        println!("{situation:>36}: {}", suggest_extractor(&answers)?);
    }
    Ok(())
}
