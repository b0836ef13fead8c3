//! Exact distances and collision probabilities by full enumeration.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::linear::{naive_extract, LinearKind};
use crate::{OracleError, OracleResult, ENUMERATION_LIMIT_BITS};

/// A distribution over `{0,1}^n` given by integer weights. Index `i` stands
/// for the string whose bit `j` is `(i >> j) & 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Source {
    n: usize,
    weights: Vec<u64>,
}

impl Source {
    pub fn from_weights(n: usize, weights: Vec<u64>) -> OracleResult<Self> {
        guard(n)?;
        if weights.len() != 1 << n {
            return Err(OracleError::LengthMismatch {
                what: "weight table",
                expected: 1 << n,
                actual: weights.len(),
            });
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(OracleError::Shape("source has no mass".into()));
        }
        Ok(Self { n, weights })
    }

    pub fn uniform(n: usize) -> OracleResult<Self> {
        guard(n)?;
        Self::from_weights(n, vec![1; 1 << n])
    }

    /// Uniform on `support`, which must hold distinct indices.
    pub fn flat(n: usize, support: &[u64]) -> OracleResult<Self> {
        guard(n)?;
        let mut weights = vec![0; 1 << n];
        for &i in support {
            let slot = weights
                .get_mut(i as usize)
                .ok_or_else(|| OracleError::Shape(format!("index {i} outside {{0,1}}^{n}")))?;
            if *slot != 0 {
                return Err(OracleError::Shape(format!("index {i} repeated in support")));
            }
            *slot = 1;
        }
        Self::from_weights(n, weights)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `-log2 max_x P(x)` as a float.
    pub fn min_entropy(&self) -> f64 {
        let total: u64 = self.weights.iter().sum();
        let max = *self.weights.iter().max().unwrap_or(&1);
        (total as f64 / max as f64).log2()
    }
}

fn guard(bits: usize) -> OracleResult<()> {
    if bits > ENUMERATION_LIMIT_BITS {
        Err(OracleError::EnumerationTooLarge { bits })
    } else {
        Ok(())
    }
}

pub fn index_to_bits(i: u64, n: usize) -> Vec<u8> {
    (0..n).map(|j| ((i >> j) & 1) as u8).collect()
}

fn bits_to_index(bits: &[u8]) -> u64 {
    bits.iter().enumerate().map(|(j, &b)| (b as u64) << j).sum()
}

/// Output index of every input for seed `y`, from the columns
/// `Ext(e_k, y)` and linearity in `x`.
fn outputs_for_seed(kind: LinearKind, n1: usize, y: &[u8], m: usize) -> OracleResult<Vec<u64>> {
    let mut columns = Vec::with_capacity(n1);
    for k in 0..n1 {
        let mut e = vec![0u8; n1];
        e[k] = 1;
        columns.push(bits_to_index(&naive_extract(kind, &e, y, m)?));
    }
    let mut out = vec![0u64; 1 << n1];
    for i in 1..out.len() {
        let low = i.trailing_zeros() as usize;
        out[i] = out[i & (i - 1)] ^ columns[low];
    }
    Ok(out)
}

/// `Δ([Ext(X, Y), Y], [U_m, Y])` for uniform `Y` on `n2` bits, exactly.
pub fn statistical_distance_strong(kind: LinearKind, source: &Source, n2: usize, m: usize) -> OracleResult<BigRational> {
    let n1 = source.n;
    guard(n1 + n2)?;
    if m > 63 {
        return Err(OracleError::Shape(format!("output length {m} too long to enumerate")));
    }
    if m == 0 {
        return Ok(BigRational::from_integer(0.into()));
    }
    if n2 != kind.seed_len(n1, m) {
        return Err(OracleError::LengthMismatch {
            what: "seed",
            expected: kind.seed_len(n1, m),
            actual: n2,
        });
    }
    let total: u128 = source.weights.iter().map(|&w| w as u128).sum();
    let mut numerator = BigInt::from(0);
    let mut counts = vec![0u128; 1 << m];
    for seed in 0..1u64 << n2 {
        let y = index_to_bits(seed, n2);
        let outputs = outputs_for_seed(kind, n1, &y, m)?;
        counts.iter_mut().for_each(|c| *c = 0);
        for (x, &w) in source.weights.iter().enumerate() {
            counts[outputs[x] as usize] += w as u128;
        }
        // Σ_z |P(z)·2^m - 1| scaled by the total weight
        let per_seed: u128 = counts.iter().map(|&c| (c << m).abs_diff(total)).sum();
        numerator += per_seed;
    }
    let denominator = BigInt::from(total) << (1 + n2 + m);
    Ok(BigRational::new(numerator, denominator))
}

/// `Pr_Y[Ext(x, Y) = Ext(x̃, Y)]` over uniform seeds of the length implied
/// by `kind`, `x.len()` and `m`.
pub fn collision_probability(kind: LinearKind, x: &[u8], x_tilde: &[u8], m: usize) -> OracleResult<BigRational> {
    if x == x_tilde {
        return Err(OracleError::IdenticalInputs);
    }
    if x.len() != x_tilde.len() {
        return Err(OracleError::LengthMismatch {
            what: "second input",
            expected: x.len(),
            actual: x_tilde.len(),
        });
    }
    if m == 0 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let n2 = kind.seed_len(x.len(), m);
    guard(n2)?;
    let mut hits = 0u64;
    for seed in 0..1u64 << n2 {
        let y = index_to_bits(seed, n2);
        if naive_extract(kind, x, &y, m)? == naive_extract(kind, x_tilde, &y, m)? {
            hits += 1;
        }
    }
    Ok(BigRational::new(hits.into(), BigInt::from(1) << n2))
}
