//! Von Neumann debiasing for exchangeable bit pairs.

use crate::bits::BitString;

/// Emits `x_{2j}` for every pair with `x_{2j} != x_{2j+1}`. A trailing odd
/// bit is ignored and an input with no unequal pair yields an empty string.
pub fn vn_extract(x: &BitString) -> BitString {
    let mut out = BitString::new();
    let mut bits = x.iter();
    while let (Some(a), Some(b)) = (bits.next(), bits.next()) {
        if a != b {
            out.push(a);
        }
    }
    out
}
