//! Exact cyclic convolution through the number-theoretic transform.
//!
//! `cargo run --release --example ntt_convolution`

use randext::ntt::{build_plan, convolution_size, cyclic_convolve_mod2, ntt_forward, ntt_inverse, ModulusChoice};
use randext::BitString;

fn main() -> randext::Result<()> {
    let plan = build_plan(8, ModulusChoice::Small)?;
    println!("p = {}, L = 8, generator {}, root {}", plan.modulus(), plan.generator(), plan.root());
    let v = vec![1, 2, 3, 4, 0, 0, 0, 0];
    let spectrum = ntt_forward(&v, &plan)?;
    println!("forward {v:?} = {spectrum:?}");
    println!("inverse gives back {:?}", ntt_inverse(&spectrum, &plan)?);

    let u = BitString::from_bits(&[1, 1, 0]);
    let w = BitString::from_bits(&[1, 0, 1]);
    println!("[1,1,0] ⊛ [1,0,1] mod 2 = {:?}", cyclic_convolve_mod2(&u, &w)?.to_bits());
    for n in [3usize, 1_000_003, 536_870_909] {
        println!(
            "n = {n}: transform size {}, modulus {}",
            convolution_size(n),
            ModulusChoice::for_length(n as u64).map(|c| c.to_string()).unwrap_or_else(|| "none".into())
        );
    }
    Ok(())
}
