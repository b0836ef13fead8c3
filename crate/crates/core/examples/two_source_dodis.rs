//! Two weak sources and no uniform seed: the Dodis et al. extractor in the
//! Markov model.
//!
//! `cargo run --release --example two_source_dodis`

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use randext::params::lift_two_source_error;
use randext::{
    calc_output_length, dodis_extract, na_search, BitString, Direction, Epsilon, ExtractorKind, ExtractorSpec,
    SecurityModel, SeedEntropy,
};

fn main() -> randext::Result<()> {
    let n = na_search(10_000, Direction::Next)?;
    let rate = |p: f64| -p.log2();
    let k1 = (n as f64 * rate(0.6)).floor() as i64;
    let seed_rate = BigRational::new(95.into(), 100.into());

    for model in [SecurityModel::ProductTwoSource, SecurityModel::MarkovClassical, SecurityModel::MarkovQuantum] {
        let spec = ExtractorSpec::new(
            ExtractorKind::Dodis,
            n,
            BigRational::from_integer(k1.into()),
            Epsilon::pow2(20),
            model,
        )
        .with_seed_entropy(SeedEntropy::Rate(seed_rate.clone()));
        let out = calc_output_length(&spec)?;
        println!("{model:>28}: m = {}", out.m);
    }

    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let x: BitString = (0..n).map(|_| rng.random_bool(0.6)).collect();
    let y: BitString = (0..n).map(|_| rng.random_bool(0.52)).collect();
    let z = dodis_extract(&x, &y, 64)?;
    println!("64 output bits: {}", String::from_utf8(randext::serialize_bits(&z, randext::BitFormat::Ascii01)).unwrap().trim());

    // the price of a weak seed for a seeded two-universal family
    let lifted = lift_two_source_error(2f64.powi(-40), 1000.0, 990.0, true);
    println!("seeded error 2^-40 with 10 missing seed bits becomes {lifted:.3e}");
    Ok(())
}
