//! A slow Trevisan extractor over GF(2^l) with `l <= 63`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::{OracleError, OracleResult};

const TWO_E: f64 = 2.0 * std::f64::consts::E;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn degree(p: u128) -> u32 {
    127 - p.leading_zeros()
}

fn poly_rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b);
    while a != 0 && degree(a) >= db {
        a ^= b << (degree(a) - db);
    }
    a
}

/// No factor of degree `1..=deg/2` divides `f`.
pub fn irreducible_by_trial_division(f: u128) -> bool {
    let d = degree(f);
    (2u128..1 << (d / 2 + 1)).all(|g| poly_rem(f, g) != 0)
}

/// Irreducible polynomial of degree `l` with the smallest value among those
/// with constant term 1.
pub fn smallest_irreducible(l: u32) -> u128 {
    ((1u128 << l) + 1..1u128 << (l + 1))
        .step_by(2)
        .find(|&f| irreducible_by_trial_division(f))
        .expect("an irreducible polynomial exists in every degree")
}

fn gf_mul(a: u128, b: u128, f: u128) -> u128 {
    let l = degree(f);
    let mut product = 0u128;
    for i in 0..l {
        if (b >> i) & 1 == 1 {
            product ^= a << i;
        }
    }
    poly_rem(product, f)
}

fn gf_pow(a: u128, e: u64, f: u128) -> u128 {
    (0..e).fold(1, |acc, _| gf_mul(acc, a, f))
}

/// Field element from bits with the first bit as the top coefficient.
fn element(bits: &[u8]) -> u128 {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as u128)
}

#[derive(Debug, Clone)]
pub struct NaiveTrevisan {
    pub n: usize,
    pub m: usize,
    pub l: u32,
    pub t: u64,
    pub a: u64,
    pub d: u64,
    pub poly: u128,
    pub sets: Vec<Vec<u64>>,
}

impl NaiveTrevisan {
    pub fn new(n: usize, m: usize, epsilon: &BigRational) -> OracleResult<Self> {
        if n < 2 || m == 0 || !epsilon.is_positive() || *epsilon >= BigRational::from_integer(1.into()) {
            return Err(OracleError::Shape(format!("no trevisan instance for n = {n}, m = {m}")));
        }
        // smallest l with 2^l >= 4·n·m²/ε²
        let target = BigRational::from_integer(BigInt::from(4 * n as u64 * (m * m) as u64)) / (epsilon * epsilon);
        let mut l = 0u32;
        while BigRational::from_integer(BigInt::from(1) << l) < target {
            l += 1;
        }
        if l > 63 {
            return Err(OracleError::Shape(format!("field degree {l} exceeds 63")));
        }
        let q = 2 * l as u64;
        let t = (q..).find(|&c| is_prime(c)).unwrap();

        let mut sizes = Vec::new();
        let mut left = m as u64;
        while left > t {
            let take = (left as f64 / TWO_E).ceil() as u64;
            sizes.push(take);
            left -= take;
        }
        if left > 0 {
            sizes.push(left);
        }
        let formula = if (m as f64) <= TWO_E || (t as f64) <= TWO_E {
            1
        } else {
            let r = (((m as f64) - TWO_E).log2() - ((t as f64) - TWO_E).log2())
                / (TWO_E.log2() - (TWO_E - 1.0).log2());
            if r <= 0.0 {
                1
            } else {
                (r.ceil() as u64).max(1)
            }
        };
        let a = formula.max(sizes.len() as u64);

        let mut sets = Vec::with_capacity(m);
        for (b, &size) in sizes.iter().enumerate() {
            let mut c = 1u32;
            while (t as u128).pow(c) < size as u128 {
                c += 1;
            }
            for i in 0..size {
                let coeffs: Vec<u64> = (0..c).map(|k| (i / t.pow(k)) % t).collect();
                let set = (0..t)
                    .map(|alpha| {
                        let value = coeffs
                            .iter()
                            .enumerate()
                            .map(|(k, &ck)| ck * alpha.pow(k as u32) % t)
                            .sum::<u64>()
                            % t;
                        b as u64 * t * t + alpha * t + value
                    })
                    .collect();
                sets.push(set);
            }
        }

        Ok(Self {
            n,
            m,
            l,
            t,
            a,
            d: a * t * t,
            poly: smallest_irreducible(l),
            sets,
        })
    }

    /// `parity(α₂ AND Σ_{i=1..s} x_i·α₁^{s-i})` from the first `2l` bits of
    /// `chunk`.
    pub fn one_bit(&self, x: &[u8], chunk: &[u8]) -> u8 {
        let l = self.l as usize;
        let alpha_1 = element(&chunk[..l]);
        let alpha_2 = element(&chunk[l..2 * l]);
        let s = self.n.div_ceil(l);
        let mut sum = 0u128;
        for i in 0..s {
            let mut bits = x[i * l..((i + 1) * l).min(self.n)].to_vec();
            bits.resize(l, 0);
            let term = gf_mul(element(&bits), gf_pow(alpha_1, (s - 1 - i) as u64, self.poly), self.poly);
            sum ^= term;
        }
        ((alpha_2 & sum).count_ones() % 2) as u8
    }

    pub fn extract(&self, x: &[u8], y: &[u8]) -> OracleResult<Vec<u8>> {
        if x.len() != self.n {
            return Err(OracleError::LengthMismatch {
                what: "trevisan input",
                expected: self.n,
                actual: x.len(),
            });
        }
        if y.len() as u64 != self.d {
            return Err(OracleError::LengthMismatch {
                what: "trevisan seed",
                expected: self.d as usize,
                actual: y.len(),
            });
        }
        Ok(self
            .sets
            .iter()
            .map(|set| {
                let chunk: Vec<u8> = set.iter().map(|&p| y[p as usize]).collect();
                self.one_bit(x, &chunk)
            })
            .collect())
    }
}
