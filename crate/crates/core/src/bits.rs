//! Packed bit strings, the on-disk encodings, and the two input-shaping
//! helpers (zero-padding a short seed, dropping trailing input bits).
//!
//! Three encodings are supported:
//!
//! * `raw`: bit `i` is bit `i mod 8` (least significant first) of byte `i / 8`;
//!   the last byte is zero-padded.
//! * `ascii01`: one `'0'`/`'1'` character per bit.
//! * `hex`: one hex digit per four bits, most significant bit of the nibble
//!   first; the last nibble is zero-padded.
//!
//! ASCII whitespace is ignored when parsing the two text formats so that
//! files ending in a newline are accepted.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A packed sequence of bits with an explicit length.
///
/// Bits past `len` are kept at zero so that equality and hashing only see
/// addressable bits.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(WORD)),
            len: 0,
        }
    }

    /// Builds a bit string from a slice of `0`/`1` values; any non-zero byte
    /// counts as a one.
    pub fn from_bits(bits: &[u8]) -> Self {
        bits.iter().map(|&b| b != 0).collect()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn push(&mut self, value: bool) {
        if self.len.is_multiple_of(WORD) {
            self.words.push(0);
        }
        self.len += 1;
        if value {
            self.words[(self.len - 1) / WORD] |= 1 << ((self.len - 1) % WORD);
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { bits: self, pos: 0 }
    }

    /// The bits as a vector of `0`/`1` bytes.
    pub fn to_bits(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// The first `len` bits (or all of them, if shorter).
    pub fn prefix(&self, len: usize) -> Self {
        let len = len.min(self.len);
        let mut words = self.words[..len.div_ceil(WORD)].to_vec();
        if !len.is_multiple_of(WORD) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % WORD)) - 1;
            }
        }
        Self { words, len }
    }

    pub fn extend_from(&mut self, other: &BitString) {
        if self.len.is_multiple_of(WORD) {
            self.words.extend_from_slice(&other.words);
            self.len += other.len;
        } else {
            for bit in other.iter() {
                self.push(bit);
            }
        }
    }

    /// `[self, other]`.
    pub fn concat(&self, other: &BitString) -> Self {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    /// Appends `count` zero bits.
    pub fn pad_zeros(&mut self, count: usize) {
        let new_len = self.len + count;
        self.words.resize(new_len.div_ceil(WORD), 0);
        self.len = new_len;
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_all_zeros(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_all_ones(&self) -> bool {
        self.count_ones() == self.len
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({}: ", self.len)?;
        for bit in self.iter().take(256) {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        if self.len > 256 {
            f.write_str("...")?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let iter = iter.into_iter();
        let mut out = BitString::with_capacity(iter.size_hint().0);
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

impl BitXor for &BitString {
    type Output = BitString;

    fn bitxor(self, rhs: &BitString) -> BitString {
        assert_eq!(self.len, rhs.len, "xor of bit strings with different lengths");
        BitString {
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a ^ b).collect(),
            len: self.len,
        }
    }
}

pub struct Iter<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl Iterator for Iter<'_> {
    type Item = bool;

    #[inline]
    fn next(&mut self) -> Option<bool> {
        if self.pos >= self.bits.len {
            return None;
        }
        let bit = (self.bits.words[self.pos / WORD] >> (self.pos % WORD)) & 1 == 1;
        self.pos += 1;
        Some(bit)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = self.bits.len - self.pos;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for Iter<'_> {}

/// On-disk bit encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitFormat {
    Raw,
    Ascii01,
    Hex,
}

impl BitFormat {
    pub fn name(self) -> &'static str {
        match self {
            BitFormat::Raw => "raw",
            BitFormat::Ascii01 => "ascii01",
            BitFormat::Hex => "hex",
        }
    }
}

impl fmt::Display for BitFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BitFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" | "raw-binary" | "binary" => Ok(BitFormat::Raw),
            "ascii01" | "ascii" => Ok(BitFormat::Ascii01),
            "hex" => Ok(BitFormat::Hex),
            other => Err(Error::InvalidParameter(format!("unknown bit format `{other}`"))),
        }
    }
}

/// Decodes `data` in the given format, keeping exactly `length` bits when a
/// length is supplied.
pub fn parse_bits(data: &[u8], format: BitFormat, length: Option<usize>) -> Result<BitString> {
    let mut bits = match format {
        BitFormat::Raw => {
            let mut out = BitString::with_capacity(data.len() * 8);
            out.words = data
                .chunks(8)
                .map(|chunk| {
                    let mut word = [0u8; 8];
                    word[..chunk.len()].copy_from_slice(chunk);
                    u64::from_le_bytes(word)
                })
                .collect();
            out.len = data.len() * 8;
            out
        }
        BitFormat::Ascii01 => {
            let mut out = BitString::with_capacity(data.len());
            for (offset, &byte) in data.iter().enumerate() {
                match byte {
                    b'0' => out.push(false),
                    b'1' => out.push(true),
                    b if b.is_ascii_whitespace() => {}
                    byte => return Err(malformed(format, offset, byte)),
                }
            }
            out
        }
        BitFormat::Hex => {
            let mut out = BitString::with_capacity(data.len() * 4);
            for (offset, &byte) in data.iter().enumerate() {
                if byte.is_ascii_whitespace() {
                    continue;
                }
                let nibble = (byte as char)
                    .to_digit(16)
                    .ok_or_else(|| malformed(format, offset, byte))?;
                for shift in (0..4).rev() {
                    out.push((nibble >> shift) & 1 == 1);
                }
            }
            out
        }
    };
    if let Some(length) = length {
        if length > bits.len() {
            return Err(Error::InsufficientData {
                needed: length,
                available: bits.len(),
            });
        }
        bits = bits.prefix(length);
    }
    Ok(bits)
}

fn malformed(format: BitFormat, offset: usize, byte: u8) -> Error {
    Error::MalformedData {
        format: format.name(),
        offset,
        byte,
    }
}

/// Encodes `bits` in the given format. Text formats carry no trailing newline.
pub fn serialize_bits(bits: &BitString, format: BitFormat) -> Vec<u8> {
    match format {
        BitFormat::Raw => {
            let nbytes = bits.len().div_ceil(8);
            bits.words
                .iter()
                .flat_map(|w| w.to_le_bytes())
                .take(nbytes)
                .collect()
        }
        BitFormat::Ascii01 => bits.iter().map(|b| if b { b'1' } else { b'0' }).collect(),
        BitFormat::Hex => {
            const DIGITS: &[u8; 16] = b"0123456789ABCDEF";
            let mut out = Vec::with_capacity(bits.len().div_ceil(4));
            let mut nibble = 0u8;
            for (i, bit) in bits.iter().enumerate() {
                nibble = (nibble << 1) | u8::from(bit);
                if i % 4 == 3 {
                    out.push(DIGITS[nibble as usize]);
                    nibble = 0;
                }
            }
            let rem = bits.len() % 4;
            if rem != 0 {
                out.push(DIGITS[(nibble << (4 - rem)) as usize]);
            }
            out
        }
    }
}

/// `[y, 0^(target - |y|)]`: turns a short uniform seed into a longer weak
/// seed whose min-entropy is still `|y|`.
pub fn pad_seed(seed: &BitString, target_len: usize) -> Result<BitString> {
    if target_len < seed.len() {
        return Err(Error::TargetTooShort {
            target: target_len,
            current: seed.len(),
        });
    }
    let mut out = seed.clone();
    out.pad_zeros(target_len - seed.len());
    Ok(out)
}

/// Drops the last `remove` bits of `input`; a source with min-entropy `k`
/// keeps at least `max(k - remove, 0)`.
pub fn shorten_input(
    input: &BitString,
    entropy: &BigRational,
    remove: usize,
) -> Result<(BitString, BigRational)> {
    if remove > input.len() {
        return Err(Error::RemoveTooMany {
            remove,
            len: input.len(),
        });
    }
    let left = entropy - BigRational::from_integer(remove.into());
    let left = if left.is_negative() { BigRational::zero() } else { left };
    Ok((input.prefix(input.len() - remove), left))
}
