//! Toeplitz hashing through its circulant embedding.
//!
//! The `m × n` matrix has entry `(i, j) = y_{(i-j) mod (n+m-1)}`: first column
//! `y_0 .. y_{m-1}`, first row `y_0, y_{n+m-2}, .., y_m`.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::ntt::{cyclic_convolve_mod2_with, ModulusSelection};

/// `toep(y) · x` over GF(2), with `y` of length `n + m - 1`.
pub fn toeplitz_extract(x: &BitString, y: &BitString, m: usize) -> Result<BitString> {
    toeplitz_extract_with(x, y, m, ModulusSelection::Auto)
}

pub fn toeplitz_extract_with(
    x: &BitString,
    y: &BitString,
    m: usize,
    modulus: ModulusSelection,
) -> Result<BitString> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidParameter("toeplitz input is empty".into()));
    }
    if m == 0 {
        return Err(Error::OutputLengthOutOfRange { m, max: y.len().saturating_sub(n - 1) });
    }
    let size = n + m - 1;
    if y.len() != size {
        return Err(Error::LengthMismatch {
            what: "toeplitz seed",
            expected: size,
            actual: y.len(),
        });
    }
    let mut padded = x.clone();
    padded.pad_zeros(m - 1);
    Ok(cyclic_convolve_mod2_with(y, &padded, modulus)?.prefix(m))
}
