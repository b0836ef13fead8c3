//! Exact rationals for errors and entropies, and an exact decision procedure
//! for inequalities of the form `q <= Σ c_i·log2(r_i)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

fn invalid(s: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse `{s}` as a number"))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let digits = s.strip_prefix('+').unwrap_or(s);
    if digits.is_empty() || digits.starts_with(['+']) {
        return Err(invalid(s));
    }
    digits.parse().map_err(|_| invalid(s))
}

fn pow_rational(base: &BigRational, exp: i64) -> BigRational {
    let p = base.pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

fn parse_decimal(s: &str) -> Result<BigRational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], parse_int(&s[i + 1..])?),
        None => (s, BigInt::zero()),
    };
    let (negative, unsigned) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if (int_part.is_empty() && frac_part.is_empty()) || !all_digits(int_part) || !all_digits(frac_part)
    {
        return Err(invalid(s));
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| invalid(s))?;
    let digits = digits / 10;
    let scale = exponent.to_i64().ok_or_else(|| invalid(s))? - frac_part.len() as i64;
    if scale.abs() > 100_000 {
        return Err(invalid(s));
    }
    let value = BigRational::from_integer(digits) * pow_rational(&BigRational::from_integer(10.into()), scale);
    Ok(if negative { -value } else { value })
}

/// Parses `12`, `-0.5`, `1e-10`, `2^-32`, `10^-10` or `1/1024` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let base = parse_decimal(base.trim())?;
        let exp = parse_int(exp.trim())?.to_i64().filter(|e| e.abs() <= 100_000).ok_or_else(|| invalid(s))?;
        if base.is_zero() && exp < 0 {
            return Err(invalid(s));
        }
        return Ok(pow_rational(&base, exp));
    }
    if let Some((num, den)) = s.split_once('/') {
        let den = parse_decimal(den.trim())?;
        if den.is_zero() {
            return Err(invalid(s));
        }
        return Ok(parse_decimal(num.trim())? / den);
    }
    parse_decimal(s)
}

/// `log2` of a positive big integer, accurate to f64 precision at any size.
pub fn log2_int(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    (n >> shift).to_f64().unwrap_or(0.0).log2() + shift as f64
}

/// `log2` of a positive rational.
pub fn log2_rational(r: &BigRational) -> f64 {
    debug_assert!(r.is_positive());
    log2_int(r.numer().magnitude()) - log2_int(r.denom().magnitude())
}

/// An extractor error `0 < ε < 1`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Epsilon(BigRational);

impl Epsilon {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_positive() && value < BigRational::one() {
            Ok(Self(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "error {value} is outside the open interval (0, 1)"
            )))
        }
    }

    /// `2^-k` for `k >= 1`.
    pub fn pow2(k: u32) -> Self {
        assert!(k >= 1, "2^-0 is not a valid error");
        Self(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    /// `log2 ε`, exact whenever ε is a power of two.
    pub fn log2(&self) -> f64 {
        log2_rational(&self.0)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Epsilon::new(parse_rational(s)?)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// `2^-k` when the rational is a power of two, `p/q` otherwise.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let (n, d) = (r.numer(), r.denom());
    if n.is_one() && d.magnitude().count_ones() == 1 {
        return format!("2^-{}", d.magnitude().bits() - 1);
    }
    format!("{n}/{d}")
}

/// `coef · log2(arg)` with `arg > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTerm {
    pub coef: BigRational,
    pub arg: BigRational,
}

impl LogTerm {
    pub fn new(coef: impl Into<BigRational>, arg: impl Into<BigRational>) -> Self {
        let arg = arg.into();
        assert!(arg.is_positive(), "logarithm of a non-positive number");
        Self {
            coef: coef.into(),
            arg,
        }
    }

    fn approx(&self) -> f64 {
        self.coef.to_f64().unwrap_or(0.0) * log2_rational(&self.arg)
    }
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

// Beyond this many bits the exact comparison is not attempted.
const EXACT_BITS_LIMIT: u64 = 1 << 26;

/// Decides `q <= Σ c_i·log2(r_i)` exactly.
///
/// A floating-point estimate settles clear cases. Near-ties are settled by
/// scaling with the common denominator `L` of `q` and the `c_i` and
/// comparing `2^(L·q)` with `Π r_i^(L·c_i)` in integer arithmetic.
pub fn le_log_sum(q: &BigRational, terms: &[LogTerm]) -> bool {
    let lhs = q.to_f64().unwrap_or(0.0);
    let rhs: f64 = terms.iter().map(LogTerm::approx).sum();
    let scale = 1.0 + lhs.abs() + terms.iter().map(|t| t.approx().abs()).sum::<f64>();
    let tol = 1e-9 * scale;
    if lhs < rhs - tol {
        return true;
    }
    if lhs > rhs + tol {
        return false;
    }
    exact_le_log_sum(q, terms).unwrap_or(lhs <= rhs)
}

fn exact_le_log_sum(q: &BigRational, terms: &[LogTerm]) -> Option<bool> {
    let l = terms
        .iter()
        .map(|t| t.coef.denom().clone())
        .fold(q.denom().clone(), |acc, d| acc.lcm(&d));
    let u = (q * BigRational::from_integer(l.clone())).to_integer();
    let mut cost = u.magnitude().to_u64()?;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in terms {
        let c = (&t.coef * BigRational::from_integer(l.clone())).to_integer();
        let e = c.magnitude().to_u64()?;
        let (a, b) = (t.arg.numer(), t.arg.denom());
        cost = cost.checked_add(e.checked_mul(a.bits().max(b.bits()))?)?;
        if cost > EXACT_BITS_LIMIT {
            return None;
        }
        let e = e as u32;
        if c.sign() == Sign::Minus {
            num *= b.pow(e);
            den *= a.pow(e);
        } else {
            num *= a.pow(e);
            den *= b.pow(e);
        }
    }
    // 2^u <= num/den
    let shift = u.magnitude().to_u64()? as usize;
    Some(if u.is_negative() {
        den <= num << shift
    } else {
        den << shift <= num
    })
}
