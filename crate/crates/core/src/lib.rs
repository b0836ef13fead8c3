//! Randomness extractors over packed bit strings.
//!
//! * [`circulant`], [`dodis`] and [`toeplitz`]: linear hashing computed by
//!   exact number-theoretic-transform convolution ([`ntt`]).
//! * [`trevisan`]: short-seed extraction from weak designs and one-bit
//!   polynomial hashing over GF(2^l).
//! * [`vonneumann`]: deterministic debiasing of exchangeable bit pairs.
//! * [`params`]: output and seed lengths for every security model, error
//!   lifts and extractor selection.
//!
//! ```
//! use randext::{circulant_extract, BitString};
//!
//! let x = BitString::from_bits(&[0, 1]);
//! let y = BitString::from_bits(&[1, 0, 1]);
//! assert_eq!(circulant_extract(&x, &y, 2).unwrap(), BitString::from_bits(&[0, 1]));
//! ```

pub mod bits;
pub mod circulant;
pub mod cli;
pub mod dodis;
pub mod error;
pub mod ntt;
pub mod params;
pub mod primes;
pub mod toeplitz;
pub mod trevisan;
pub mod vonneumann;

pub use bits::{pad_seed, parse_bits, serialize_bits, shorten_input, BitFormat, BitString};
pub use circulant::{circulant_extract, circulant_extract_with};
pub use dodis::{dodis_extract, dodis_extract_with};
pub use error::{Error, Result};
pub use ntt::{cyclic_convolve_mod2, ModulusChoice, ModulusSelection};
pub use params::{
    calc_output_length, calc_seed_length, Epsilon, ExtractorKind, ExtractorSpec, SecurityModel, SeedEntropy,
};
pub use primes::{is_na_prime, na_search, Direction};
pub use toeplitz::{toeplitz_extract, toeplitz_extract_with};
pub use trevisan::{compute_params, trevisan_extract, TrevisanParams};
pub use vonneumann::vn_extract;
