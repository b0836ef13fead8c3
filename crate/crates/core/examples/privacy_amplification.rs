//! Privacy amplification of a raw key with the Toeplitz extractor.
//!
//! `cargo run --release --example privacy_amplification`

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use randext::{
    calc_output_length, calc_seed_length, toeplitz_extract, BitString, Epsilon, ExtractorKind, ExtractorSpec,
    SecurityModel,
};

fn main() -> randext::Result<()> {
    let n1 = 200_000u64;
    // after error correction the adversary knows at most 40% of the key
    let k1 = BigRational::new((6 * n1).into(), 10.into());
    let epsilon: Epsilon = "2^-64".parse()?;

    let spec = ExtractorSpec::new(ExtractorKind::Toeplitz, n1, k1, epsilon.clone(), SecurityModel::QuantumSeeded);
    let m = calc_output_length(&spec)?.m;
    let d = calc_seed_length(ExtractorKind::Toeplitz, n1, m, &epsilon)?;
    println!("raw key {n1} bits, secret key {m} bits, seed {d} bits, error {epsilon}");

    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let raw_key: BitString = (0..n1).map(|_| rng.random_bool(0.5)).collect();
    let seed: BitString = (0..d).map(|_| rng.random_bool(0.5)).collect();
    let key = toeplitz_extract(&raw_key, &seed, m as usize)?;
    println!("first bytes of the key: {:02x?}", &randext::serialize_bits(&key, randext::BitFormat::Raw)[..8]);

    // the same computation at the scale of a long-distance link
    let big = ExtractorSpec::new(
        ExtractorKind::Toeplitz,
        1_738_000_000,
        BigRational::from_integer(581_295_000.into()),
        "1e-10".parse()?,
        SecurityModel::QuantumSeeded,
    );
    println!("k1 = 581295000, epsilon = 1e-10: m = {}", calc_output_length(&big)?.m);
    Ok(())
}
