//! Two-source extractor from cyclic-shift matrices.
//!
//! Row `i` of the matrix is `x` rotated right by `i`, so entry `(i, j)` is
//! `x_{(j-i) mod n}`. The product with `y` is the cyclic convolution of the
//! reversal `R(x) = (x_0, x_{n-1}, ..., x_1)` with `y`.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::ntt::{cyclic_convolve_mod2_with, ModulusSelection};
use crate::primes::is_na_prime;

/// First `m` bits of the cyclic-shift matrix of `x` applied to `y`.
///
/// `x` and `y` share a length `n` that must be a prime with primitive root 2,
/// `x` must not be constant, and `1 <= m <= n`.
pub fn dodis_extract(x: &BitString, y: &BitString, m: usize) -> Result<BitString> {
    dodis_extract_with(x, y, m, ModulusSelection::Auto)
}

pub fn dodis_extract_with(
    x: &BitString,
    y: &BitString,
    m: usize,
    modulus: ModulusSelection,
) -> Result<BitString> {
    let n = x.len();
    check_admissible(n)?;
    if y.len() != n {
        return Err(Error::LengthMismatch {
            what: "dodis seed",
            expected: n,
            actual: y.len(),
        });
    }
    if m == 0 || m > n {
        return Err(Error::OutputLengthOutOfRange { m, max: n });
    }
    if x.is_all_zeros() || x.is_all_ones() {
        return Err(Error::DegenerateInput);
    }
    shift_matrix_product(x, y, m, modulus)
}

pub(crate) fn check_admissible(n: usize) -> Result<()> {
    if is_na_prime(n as u64) {
        Ok(())
    } else {
        Err(Error::InadmissibleLength(n as u64))
    }
}

/// `(x_0, x_{n-1}, ..., x_1)`.
pub(crate) fn reversal(x: &BitString) -> BitString {
    let n = x.len();
    (0..n).map(|k| x.get((n - k) % n)).collect()
}

pub(crate) fn shift_matrix_product(
    x: &BitString,
    y: &BitString,
    m: usize,
    modulus: ModulusSelection,
) -> Result<BitString> {
    let full = cyclic_convolve_mod2_with(&reversal(x), y, modulus)?;
    Ok(full.prefix(m))
}
