//! Literal matrix constructions.

use crate::{OracleError, OracleResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearKind {
    Circulant,
    Dodis,
    Toeplitz,
}

impl LinearKind {
    pub const ALL: [LinearKind; 3] = [LinearKind::Circulant, LinearKind::Dodis, LinearKind::Toeplitz];

    /// Seed length for input length `n1` and output length `m`, given that
    /// `n1` already has an admissible shape.
    pub fn seed_len(self, n1: usize, m: usize) -> usize {
        match self {
            LinearKind::Circulant => n1 + 1,
            LinearKind::Dodis => n1,
            LinearKind::Toeplitz => n1 + m - 1,
        }
    }
}

/// `w_i = Σ_j u_{(i-j) mod n}·v_j` over the integers.
pub fn naive_convolve(u: &[u64], v: &[u64]) -> OracleResult<Vec<u64>> {
    if u.len() != v.len() {
        return Err(OracleError::LengthMismatch {
            what: "convolution operand",
            expected: u.len(),
            actual: v.len(),
        });
    }
    let n = u.len();
    Ok((0..n)
        .map(|i| {
            let low: u64 = u[..=i].iter().rev().zip(&v[..=i]).map(|(a, b)| a * b).sum();
            let high: u64 = u[i + 1..].iter().rev().zip(&v[i + 1..]).map(|(a, b)| a * b).sum();
            low + high
        })
        .collect())
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime `n` for which the powers of 2 reach every nonzero residue.
pub fn is_admissible(n: usize) -> bool {
    if n < 3 || !is_prime(n) {
        return false;
    }
    let mut seen = vec![false; n];
    let mut p = 1;
    for _ in 0..n - 1 {
        if seen[p] {
            return false;
        }
        seen[p] = true;
        p = 2 * p % n;
    }
    true
}

fn check_bits(what: &'static str, bits: &[u8]) -> OracleResult<()> {
    if bits.iter().any(|&b| b > 1) {
        return Err(OracleError::Shape(format!("{what} contains a value other than 0 or 1")));
    }
    Ok(())
}

/// The matrix `M` with `Ext(x, y) = M·v mod 2`, together with `v`.
fn literal_matrix(kind: LinearKind, x: &[u8], y: &[u8], m: usize) -> OracleResult<(Vec<Vec<u8>>, Vec<u8>)> {
    check_bits("input", x)?;
    check_bits("seed", y)?;
    let shape = |msg: String| Err(OracleError::Shape(msg));
    match kind {
        LinearKind::Circulant | LinearKind::Dodis => {
            let n = y.len();
            let xp: Vec<u8> = if kind == LinearKind::Circulant {
                if x.len() + 1 != n {
                    return Err(OracleError::LengthMismatch {
                        what: "circulant input",
                        expected: n.saturating_sub(1),
                        actual: x.len(),
                    });
                }
                x.iter().copied().chain([0]).collect()
            } else {
                if x.len() != n {
                    return Err(OracleError::LengthMismatch {
                        what: "dodis input",
                        expected: n,
                        actual: x.len(),
                    });
                }
                if x.iter().all(|&b| b == 0) || x.iter().all(|&b| b == 1) {
                    return shape("dodis input is constant".into());
                }
                x.to_vec()
            };
            if !is_admissible(n) {
                return shape(format!("seed length {n} is not an admissible prime"));
            }
            let max = if kind == LinearKind::Circulant { n - 1 } else { n };
            if m == 0 || m > max {
                return shape(format!("output length {m} outside 1..={max}"));
            }
            // row i is x' shifted right by i
            let rows = (0..m).map(|i| (0..n).map(|j| xp[(j + n - i) % n]).collect()).collect();
            Ok((rows, y.to_vec()))
        }
        LinearKind::Toeplitz => {
            let n = x.len();
            if n == 0 || m == 0 {
                return shape("toeplitz needs n >= 1 and m >= 1".into());
            }
            let len = n + m - 1;
            if y.len() != len {
                return Err(OracleError::LengthMismatch {
                    what: "toeplitz seed",
                    expected: len,
                    actual: y.len(),
                });
            }
            let rows = (0..m).map(|i| (0..n).map(|j| y[(i + len - j) % len]).collect()).collect();
            Ok((rows, x.to_vec()))
        }
    }
}

/// Builds the extractor matrix entry by entry and multiplies it mod 2.
///
/// Circulant: `x` has `n-1` bits and `y` has `n` bits with `n` admissible;
/// the matrix is `circ([x, 0])` with entry `(i, j) = x'_{(j-i) mod n}`.
/// Dodis: the same with `x` of `n` bits. Toeplitz: `y` has `n+m-1` bits and
/// entry `(i, j) = y_{(i-j) mod (n+m-1)}` multiplies `x`.
pub fn naive_extract(kind: LinearKind, x: &[u8], y: &[u8], m: usize) -> OracleResult<Vec<u8>> {
    let (rows, v) = literal_matrix(kind, x, y, m)?;
    Ok(rows
        .iter()
        .map(|row| row.iter().zip(&v).map(|(a, b)| a & b).fold(0, |acc, p| acc ^ p))
        .collect())
}

/// Keeps the first bit of every unequal pair.
pub fn naive_von_neumann(x: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    let mut j = 0;
    while j + 1 < x.len() {
        if x[j] != x[j + 1] {
            out.push(x[j]);
        }
        j += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_examples() {
        assert_eq!(naive_convolve(&[1, 0, 0], &[4, 5, 6]).unwrap(), vec![4, 5, 6]);
        assert_eq!(naive_convolve(&[1, 1, 0], &[1, 0, 1]).unwrap(), vec![2, 1, 1]);
        assert_eq!(naive_convolve(&[0, 0], &[0, 0]).unwrap(), vec![0, 0]);
        assert_eq!(naive_convolve(&[3], &[5]).unwrap(), vec![15]);
        assert!(naive_convolve(&[1], &[1, 2]).is_err());
    }

    #[test]
    fn admissible_primes() {
        let small: Vec<usize> = (0..60).filter(|&n| is_admissible(n)).collect();
        assert_eq!(small, vec![3, 5, 11, 13, 19, 29, 37, 53, 59]);
    }

    #[test]
    fn extractor_examples() {
        use LinearKind::*;
        assert_eq!(naive_extract(Dodis, &[1, 1, 0], &[1, 0, 1], 2).unwrap(), vec![1, 1]);
        assert_eq!(naive_extract(Circulant, &[1, 0], &[1, 0, 1], 2).unwrap(), vec![1, 0]);
        assert_eq!(naive_extract(Circulant, &[0, 1], &[1, 0, 1], 2).unwrap(), vec![0, 1]);
        assert_eq!(naive_extract(Circulant, &[0, 0], &[1, 1, 1], 2).unwrap(), vec![0, 0]);
        assert_eq!(naive_extract(Toeplitz, &[1, 1], &[1, 1, 0], 2).unwrap(), vec![1, 0]);
        assert_eq!(naive_extract(Toeplitz, &[0, 0, 0], &[1, 1, 1, 1], 2).unwrap(), vec![0, 0]);
        assert_eq!(naive_extract(Toeplitz, &[1], &[1], 1).unwrap(), vec![1]);
        assert!(naive_extract(Dodis, &[1, 1, 1], &[1, 0, 1], 2).is_err());
        assert!(naive_extract(Circulant, &[1, 0, 0], &[1, 0, 1, 1], 2).is_err());
        assert!(naive_extract(Toeplitz, &[1, 0], &[1, 0], 2).is_err());
    }

    #[test]
    fn von_neumann_rule() {
        assert_eq!(naive_von_neumann(&[0, 1, 1, 0]), vec![0, 1]);
        assert_eq!(naive_von_neumann(&[0, 0, 1, 1]), Vec::<u8>::new());
        assert_eq!(naive_von_neumann(&[1, 0, 0, 1, 0]), vec![1, 0]);
    }
}
