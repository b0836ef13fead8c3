//! Conditioning the output of a physical random number generator with the
//! Circulant extractor, padding the input to an admissible prime length.
//!
//! `cargo run --release --example qrng_conditioning`

use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use randext::{
    calc_output_length, circulant_extract, na_search, BitString, Direction, Epsilon, ExtractorKind, ExtractorSpec,
    SecurityModel,
};

fn main() -> randext::Result<()> {
    let raw_bits = 1_000_000u64;
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    // a detector with a 0.55 bias on each bit
    let mut x: BitString = (0..raw_bits).map(|_| rng.random_bool(0.55)).collect();
    let per_bit = -(0.55f64.log2());
    let k1 = (raw_bits as f64 * per_bit).floor() as i64;

    let prime = na_search(raw_bits + 1, Direction::Next)?;
    x.pad_zeros((prime - 1 - raw_bits) as usize);
    let n1 = x.len() as u64;
    println!("input padded from {raw_bits} to {n1} bits (seed length {prime})");

    let spec = ExtractorSpec::new(
        ExtractorKind::Circulant,
        n1,
        BigRational::from_integer(k1.into()),
        Epsilon::pow2(40),
        SecurityModel::QuantumSeeded,
    );
    let m = calc_output_length(&spec)?.m as usize;
    let y: BitString = (0..prime).map(|_| rng.random_bool(0.5)).collect();

    let start = Instant::now();
    let out = circulant_extract(&x, &y, m)?;
    let secs = start.elapsed().as_secs_f64();
    println!("k1 = {k1}, extracted {m} bits in {secs:.3} s ({:.2} Mbit/s of input)", n1 as f64 / secs / 1e6);
    println!("ones in the output: {:.4}", out.count_ones() as f64 / m as f64);
    Ok(())
}
