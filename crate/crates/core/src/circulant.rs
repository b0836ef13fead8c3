//! Strong seeded extractor built from the circulant matrix of the padded
//! input `x' = [x, 0]`.

use crate::bits::BitString;
use crate::dodis::{check_admissible, shift_matrix_product};
use crate::error::{Error, Result};
use crate::ntt::ModulusSelection;

/// First `m` bits of `circ([x, 0]) · y` over GF(2).
///
/// `y` has length `n`, a prime with primitive root 2, `x` has length `n - 1`,
/// and `1 <= m <= n - 1`.
pub fn circulant_extract(x: &BitString, y: &BitString, m: usize) -> Result<BitString> {
    circulant_extract_with(x, y, m, ModulusSelection::Auto)
}

pub fn circulant_extract_with(
    x: &BitString,
    y: &BitString,
    m: usize,
    modulus: ModulusSelection,
) -> Result<BitString> {
    let n = y.len();
    check_admissible(n)?;
    if x.len() + 1 != n {
        return Err(Error::LengthMismatch {
            what: "circulant input",
            expected: n - 1,
            actual: x.len(),
        });
    }
    if m == 0 || m > n - 1 {
        return Err(Error::OutputLengthOutOfRange { m, max: n - 1 });
    }
    let mut padded = x.clone();
    padded.push(false);
    shift_matrix_product(&padded, y, m, modulus)
}
