//! Trevisan's extractor: a block weak design spreads the seed over `m`
//! one-bit extractions, each a Reed–Solomon polynomial evaluation over
//! GF(2^l) followed by a Hadamard inner product.

pub mod design;
pub mod gf2;

use std::f64::consts::E;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::params::Epsilon;
use crate::primes::next_prime;

pub use design::{basic_weak_design, block_sizes, block_weak_design, Overlap, WeakDesign};
pub use gf2::{find_irreducible, Gf2Field};

/// Every derived size for one `(n, m, ε)` triple.
#[derive(Debug, Clone)]
pub struct TrevisanParams {
    pub n: u64,
    pub m: u64,
    pub epsilon: Epsilon,
    /// Per-bit error `ε / m`.
    pub epsilon_1: BigRational,
    pub q: u64,
    pub t: u64,
    pub a: u64,
    pub l: u64,
    pub d: u64,
    /// Number of `l`-bit input chunks.
    pub s: u64,
    pub field: Gf2Field,
}

/// Shape parameters without the field polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrevisanShape {
    pub l: u64,
    pub q: u64,
    pub t: u64,
    pub a: u64,
    pub d: u64,
}

fn check_inputs(n: u64, m: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("trevisan input length {n} is below 2")));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("trevisan output length must be positive".into()));
    }
    Ok(())
}

/// Smallest `l` with `l >= log2 n + 2·log2(2m/ε)`, decided exactly as
/// `2^l·ε² >= 4·n·m²`.
pub fn field_degree(n: u64, m: u64, epsilon: &Epsilon) -> u64 {
    let e = epsilon.value();
    let target = BigInt::from(4u32) * BigInt::from(n) * BigInt::from(m) * BigInt::from(m) * e.denom() * e.denom();
    let numer_sq = e.numer() * e.numer();
    let estimate = ((n as f64).log2() + 2.0 * (2.0 * m as f64).log2() - 2.0 * epsilon.log2()).ceil();
    let mut l = (estimate.max(1.0) as u64).saturating_sub(2).max(1);
    while (&numer_sq << l) < target {
        l += 1;
    }
    l
}

/// `max{1, ⌈(log2(m-2e) - log2(t-2e)) / (log2(2e) - log2(2e-1))⌉}`, taken as
/// 1 when `m <= 2e`.
pub fn block_count_formula(m: u64, t: u64) -> u64 {
    let two_e = 2.0 * E;
    let m = m as f64;
    let t = t as f64;
    if m <= two_e || t <= two_e {
        return 1;
    }
    let ratio = ((m - two_e).log2() - (t - two_e).log2()) / (two_e.log2() - (two_e - 1.0).log2());
    if ratio <= 0.0 {
        1
    } else {
        (ratio.ceil() as u64).max(1)
    }
}

/// Sizes for `(n, m, ε)` with `a` large enough for the block design.
pub fn shape(n: u64, m: u64, epsilon: &Epsilon) -> Result<TrevisanShape> {
    check_inputs(n, m)?;
    let l = field_degree(n, m, epsilon);
    let q = 2 * l;
    let t = next_prime(q);
    let a = block_count_formula(m, t).max(block_sizes(m, t).len() as u64);
    Ok(TrevisanShape {
        l,
        q,
        t,
        a,
        d: a * t * t,
    })
}

/// Seed length `d = a·t²`.
pub fn seed_length(n: u64, m: u64, epsilon: &Epsilon) -> Result<u64> {
    Ok(shape(n, m, epsilon)?.d)
}

/// Parameters and field for extracting `m` bits from `n` bits with error ε.
pub fn compute_params(n: u64, m: u64, epsilon: &Epsilon) -> Result<TrevisanParams> {
    let TrevisanShape { l, q, t, a, d } = shape(n, m, epsilon)?;
    Ok(TrevisanParams {
        n,
        m,
        epsilon: epsilon.clone(),
        epsilon_1: epsilon.value() / BigRational::from_integer(m.into()),
        q,
        t,
        a,
        l,
        d,
        s: n.div_ceil(l),
        field: Gf2Field::new(l as usize),
    })
}

impl TrevisanParams {
    /// The `s` chunks of `x` as field elements, the last one zero-padded.
    fn chunks(&self, x: &BitString) -> Vec<gf2::Element> {
        let l = self.l as usize;
        (0..self.s as usize)
            .map(|c| {
                let start = c * l;
                let end = (start + l).min(x.len());
                self.field.from_msb_bits((start..end).map(|i| x.get(i)))
            })
            .collect()
    }

    fn one_bit(&self, chunks: &[gf2::Element], seed: impl Iterator<Item = bool>) -> bool {
        let l = self.l as usize;
        let mut seed = seed.take(2 * l);
        let alpha_1 = self.field.from_msb_bits(seed.by_ref().take(l));
        let alpha_2 = self.field.from_msb_bits(seed);
        let mut acc = self.field.zero();
        let mut scratch = self.field.zero();
        for chunk in chunks {
            self.field.mul_into(&acc, &alpha_1, &mut scratch);
            for ((a, s), c) in acc.iter_mut().zip(&scratch).zip(chunk) {
                *a = s ^ c;
            }
        }
        gf2::inner_product(&alpha_2, &acc)
    }
}

/// One-bit extractor: `parity(α₂ AND Σ_i x_i·α₁^{s-i})`, where `α₁` and `α₂`
/// are the first two `l`-bit halves of `y_chunk`.
pub fn rsh_onebit(x: &BitString, y_chunk: &BitString, params: &TrevisanParams) -> Result<bool> {
    if x.len() as u64 != params.n {
        return Err(Error::LengthMismatch {
            what: "trevisan input",
            expected: params.n as usize,
            actual: x.len(),
        });
    }
    if y_chunk.len() as u64 != params.t {
        return Err(Error::LengthMismatch {
            what: "one-bit seed chunk",
            expected: params.t as usize,
            actual: y_chunk.len(),
        });
    }
    Ok(params.one_bit(&params.chunks(x), y_chunk.iter()))
}

/// Bit `i` is [`rsh_onebit`] on `y` restricted to the `i`-th set of the
/// block weak design.
pub fn trevisan_extract(x: &BitString, y: &BitString, params: &TrevisanParams) -> Result<BitString> {
    if x.len() as u64 != params.n {
        return Err(Error::LengthMismatch {
            what: "trevisan input",
            expected: params.n as usize,
            actual: x.len(),
        });
    }
    if y.len() as u64 != params.d {
        return Err(Error::LengthMismatch {
            what: "trevisan seed",
            expected: params.d as usize,
            actual: y.len(),
        });
    }
    let design = block_weak_design(params.m, params.t, params.a)?;
    let chunks = params.chunks(x);
    Ok(design
        .sets
        .iter()
        .map(|set| params.one_bit(&chunks, set.iter().map(|&p| y.get(p as usize))))
        .collect())
}

impl TrevisanParams {
    /// `ε₁` as a float, for reports.
    pub fn epsilon_1_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.epsilon_1.to_f64().unwrap_or(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn bs(bits: &[u8]) -> BitString {
        BitString::from_bits(bits)
    }

    #[test]
    fn derived_parameters() {
        let p = compute_params(1024, 8, &Epsilon::pow2(8)).unwrap();
        assert_eq!((p.q, p.t, p.a, p.d, p.l), (68, 71, 1, 5041, 34));
        assert_eq!(p.epsilon_1, BigRational::new(1.into(), 2048.into()));
        let p = compute_params(2, 1, &Epsilon::pow2(1)).unwrap();
        assert_eq!((p.q, p.t, p.a, p.d), (10, 11, 1, 121));
        let p = compute_params(64, 4, &Epsilon::pow2(4)).unwrap();
        assert_eq!((p.l, p.t, p.a, p.d), (20, 41, 1, 1681));
        assert_eq!(p.s, 4);
    }

    #[test]
    fn degree_is_exact_at_powers_of_two() {
        // log2 n + 2 log2(2m/ε) is an integer here, so no rounding slack
        for k in 1..60 {
            assert_eq!(field_degree(1 << 10, 1, &Epsilon::pow2(k)), 10 + 2 * (k as u64 + 1));
        }
        let eps: Epsilon = "0.001".parse().unwrap();
        let exact = (1000f64.log2() + 2.0 * (2000f64 / 0.001).log2()).ceil() as u64;
        assert_eq!(field_degree(1000, 1000, &eps), exact);
    }

    #[test]
    fn single_block_when_m_small() {
        for m in 1..=71 {
            assert_eq!(shape(1024, m, &Epsilon::pow2(8)).unwrap().a, 1);
        }
        assert!(shape(1 << 20, 4000, &Epsilon::pow2(8)).unwrap().a > 1);
    }

    #[test]
    fn gf4_worked_example() {
        // n = 4, l = 2 with x^2 + x + 1; drive the one-bit step directly
        let mut p = compute_params(4, 1, &Epsilon::pow2(1)).unwrap();
        p.l = 2;
        p.s = 2;
        p.field = Gf2Field::new(2);
        let chunks = p.chunks(&bs(&[1, 0, 1, 1]));
        assert_eq!(chunks, vec![vec![2], vec![3]]);
        assert!(!p.one_bit(&chunks, [false, true, true, false].into_iter()));
        // α₁ = 0 leaves the last chunk
        assert!(p.one_bit(&chunks, [false, false, true, false].into_iter()));
        // α₂ = 0 masks everything
        assert!(!p.one_bit(&chunks, [true, true, false, false].into_iter()));
    }

    #[test]
    fn horner_equals_power_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = compute_params(300, 3, &Epsilon::pow2(6)).unwrap();
        let f = &p.field;
        for _ in 0..20 {
            let x: BitString = (0..300).map(|_| rng.random_bool(0.5)).collect();
            let y: BitString = (0..p.t).map(|_| rng.random_bool(0.5)).collect();
            let chunks = p.chunks(&x);
            let l = p.l as usize;
            let alpha_1 = f.from_msb_bits((0..l).map(|i| y.get(i)));
            let alpha_2 = f.from_msb_bits((l..2 * l).map(|i| y.get(i)));
            let s = chunks.len();
            let mut sum = f.zero();
            for (i, c) in chunks.iter().enumerate() {
                let term = f.mul(c, &f.pow(&alpha_1, (s - 1 - i) as u128));
                sum = f.add(&sum, &term);
            }
            assert_eq!(rsh_onebit(&x, &y, &p).unwrap(), gf2::inner_product(&alpha_2, &sum));
        }
    }

    #[test]
    fn extract_shapes_and_trivial_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = compute_params(64, 4, &Epsilon::pow2(4)).unwrap();
        let x: BitString = (0..64).map(|_| rng.random_bool(0.5)).collect();
        let y: BitString = (0..p.d).map(|_| rng.random_bool(0.5)).collect();
        let out = trevisan_extract(&x, &y, &p).unwrap();
        assert_eq!(out.len(), 4);
        assert!(trevisan_extract(&BitString::zeros(64), &y, &p).unwrap().is_all_zeros());
        assert!(trevisan_extract(&x, &y.prefix(10), &p).is_err());

        let p1 = compute_params(64, 1, &Epsilon::pow2(4)).unwrap();
        let y1: BitString = (0..p1.d).map(|_| rng.random_bool(0.5)).collect();
        let first: BitString = basic_weak_design(1, p1.t).unwrap().sets[0]
            .iter()
            .map(|&i| y1.get(i as usize))
            .collect();
        assert_eq!(
            trevisan_extract(&x, &y1, &p1).unwrap().get(0),
            rsh_onebit(&x, &first, &p1).unwrap()
        );
    }

    #[test]
    fn rejects_bad_params() {
        assert!(compute_params(1, 1, &Epsilon::pow2(1)).is_err());
        assert!(compute_params(4, 0, &Epsilon::pow2(1)).is_err());
    }
}
