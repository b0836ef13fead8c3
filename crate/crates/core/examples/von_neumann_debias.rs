//! Debiasing independent coin flips without any seed.
//!
//! `cargo run --release --example von_neumann_debias`

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use randext::{vn_extract, BitString};

fn main() {
    let n = 1_000_000;
    let p = 0.3;
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let flips: BitString = (0..n).map(|_| rng.random_bool(p)).collect();
    let out = vn_extract(&flips);
    println!("input ones: {:.4}", flips.count_ones() as f64 / n as f64);
    println!("output length {} (p(1-p)n = {:.0})", out.len(), p * (1.0 - p) * n as f64);
    println!("output ones: {:.4}", out.count_ones() as f64 / out.len() as f64);
}
