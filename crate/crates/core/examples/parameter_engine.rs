//! Output lengths for every extractor and security model, and error
//! bookkeeping when a seed is reused.
//!
//! `cargo run --release --example parameter_engine`

use num_rational::BigRational;
use randext::params::{compose_errors, lift_markov, ComposeMode};
use randext::{calc_output_length, Epsilon, ExtractorKind, ExtractorSpec, SecurityModel, SeedEntropy};

fn main() -> randext::Result<()> {
    let n1 = 100_000u64;
    let k1 = BigRational::from_integer(80_000.into());
    let epsilon = Epsilon::pow2(32);
    let seed_rate = SeedEntropy::Rate(BigRational::new(99.into(), 100.into()));

    print!("{:>12}", "");
    for model in SecurityModel::ALL {
        print!("{:>30}", model.name());
    }
    println!();
    for kind in ExtractorKind::ALL.into_iter().filter(|k| *k != ExtractorKind::VonNeumann) {
        print!("{:>12}", kind.name());
        for model in SecurityModel::ALL {
            let k2 = if model.is_seeded() { SeedEntropy::Full } else { seed_rate.clone() };
            let spec = ExtractorSpec::new(kind, n1, k1.clone(), epsilon.clone(), model).with_seed_entropy(k2);
            print!("{:>30}", calc_output_length(&spec)?.m);
        }
        println!();
    }

    let reuse = compose_errors(ComposeMode::SeedReuse {
        t: 1000,
        epsilon: 2f64.powi(-32),
        epsilon_seed: 0.0,
    });
    println!("one seed for 1000 blocks: total error {:.3e}", reuse.epsilon);
    let markov = lift_markov(2f64.powi(-80), 16, 80_000.0, 90_000.0, true);
    println!(
        "quantum markov lift of a 2^-80 product extractor, m = 16: k1 {:.0}, k2 {:.0}, error {:.3e}",
        markov.k1, markov.k2, markov.epsilon
    );
    Ok(())
}
