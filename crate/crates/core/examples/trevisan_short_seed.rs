//! Trevisan's extractor needs a seed far shorter than the input.
//!
//! `cargo run --release --example trevisan_short_seed`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use randext::trevisan::gf2::format_poly;
use randext::{calc_seed_length, compute_params, trevisan_extract, BitString, Epsilon, ExtractorKind};

fn main() -> randext::Result<()> {
    let epsilon = Epsilon::pow2(16);
    for n1 in [1_000u64, 100_000, 10_000_000] {
        let m = 64;
        let trevisan = calc_seed_length(ExtractorKind::Trevisan, n1, m, &epsilon)?;
        let toeplitz = calc_seed_length(ExtractorKind::Toeplitz, n1, m, &epsilon)?;
        println!("n1 = {n1:>10}: trevisan seed {trevisan:>6} bits, toeplitz seed {toeplitz:>9} bits");
    }

    let params = compute_params(4096, 32, &epsilon)?;
    println!(
        "n = 4096, m = 32: l = {}, t = {}, a = {}, d = {}, field modulus {}",
        params.l,
        params.t,
        params.a,
        params.d,
        format_poly(params.field.modulus())
    );
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let x: BitString = (0..params.n).map(|_| rng.random_bool(0.7)).collect();
    let y: BitString = (0..params.d).map(|_| rng.random_bool(0.5)).collect();
    let out = trevisan_extract(&x, &y, &params)?;
    println!("output: {}", String::from_utf8(randext::serialize_bits(&out, randext::BitFormat::Ascii01)).unwrap().trim());
    Ok(())
}
