//! Modular arithmetic helpers, deterministic primality, factorisation and
//! the set of primes with 2 as a primitive root (the lengths accepted by the
//! Circulant and Dodis constructions).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; the fixed witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Distinct prime factors of `n`, ascending. Trial division by small primes,
/// then Pollard–Brent on what is left.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n && p < 1 << 16 {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    let mut stack = vec![n];
    while let Some(r) = stack.pop() {
        if r == 1 {
            continue;
        }
        if is_prime(r) {
            out.push(r);
            continue;
        }
        let d = pollard_brent(r);
        stack.push(d);
        stack.push(r / d);
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Non-trivial factor of an odd composite with no factor below 2^16.
fn pollard_brent(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Whether `g` generates the multiplicative group of the prime `p`.
pub fn is_primitive_root(g: u64, p: u64) -> bool {
    !g.is_multiple_of(p)
        && distinct_prime_factors(p - 1)
            .into_iter()
            .all(|q| pow_mod(g, (p - 1) / q, p) != 1)
}

/// Smallest primitive root of the prime `p`.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// `n` is prime and 2 has multiplicative order `n - 1` modulo `n`.
pub fn is_na_prime(n: u64) -> bool {
    n >= 3 && is_prime(n) && is_primitive_root(2, n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Next,
    Previous,
    Closest,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Next => "next",
            Direction::Previous => "previous",
            Direction::Closest => "closest",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "next" => Ok(Direction::Next),
            "previous" | "prev" => Ok(Direction::Previous),
            "closest" => Ok(Direction::Closest),
            other => Err(Error::InvalidParameter(format!("unknown direction `{other}`"))),
        }
    }
}

fn next_na(n: u64) -> u64 {
    let mut c = n.max(3);
    while !is_na_prime(c) {
        c += 1;
    }
    c
}

fn previous_na(n: u64) -> Option<u64> {
    (3..=n).rev().find(|&c| is_na_prime(c))
}

/// Nearest prime with primitive root 2 in the requested direction. `next`
/// and `previous` include `n` itself; `closest` breaks ties upwards.
pub fn na_search(n: u64, direction: Direction) -> Result<u64> {
    match direction {
        Direction::Next => Ok(next_na(n)),
        Direction::Previous => previous_na(n).ok_or(Error::NoAdmissiblePrime(n)),
        Direction::Closest => {
            let up = next_na(n);
            match previous_na(n) {
                Some(down) if n - down < up - n => Ok(down),
                _ => Ok(up),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Order of 2 modulo a prime by repeated doubling.
    fn order_of_two(p: u64) -> u64 {
        let mut x = 2 % p;
        let mut k = 1;
        while x != 1 {
            x = x * 2 % p;
            k += 1;
        }
        k
    }

    fn naive_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), naive_is_prime(n), "{n}");
        }
        assert!(is_prime(3 * (1 << 30) + 1));
        assert!(is_prime(9 * (1 << 42) + 1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn na_membership_matches_order_oracle() {
        for n in 3..5000 {
            let expected = naive_is_prime(n) && order_of_two(n) == n - 1;
            assert_eq!(is_na_prime(n), expected, "{n}");
        }
        assert!(is_na_prime(3));
        assert!(is_na_prime(5));
        assert!(!is_na_prime(7));
        assert!(!is_na_prime(4));
        assert!(!is_na_prime(2));
    }

    #[test]
    fn search_examples() {
        assert_eq!(na_search(4, Direction::Next).unwrap(), 5);
        assert_eq!(na_search(5, Direction::Next).unwrap(), 5);
        assert_eq!(na_search(6_500_000_001, Direction::Next).unwrap(), 6_500_000_069);
        assert_eq!(na_search(10, Direction::Previous).unwrap(), 5);
        assert_eq!(na_search(2, Direction::Previous), Err(Error::NoAdmissiblePrime(2)));
        // 8 is equidistant from 5 and 11.
        assert_eq!(na_search(8, Direction::Closest).unwrap(), 11);
        assert_eq!(na_search(7, Direction::Closest).unwrap(), 5);
        assert_eq!(na_search(2, Direction::Closest).unwrap(), 3);
    }

    #[test]
    fn factorisation_recovers_n() {
        for &n in &[
            2u64,
            3 * (1 << 30),
            9 * (1 << 42),
            6_500_000_068,
            999_983 * 1_000_003,
            (1 << 40) - 1,
            600_851_475_143,
        ] {
            let fs = distinct_prime_factors(n);
            assert!(fs.iter().all(|&f| is_prime(f) && n % f == 0));
            let mut rest = n;
            for f in &fs {
                while rest % f == 0 {
                    rest /= f;
                }
            }
            assert_eq!(rest, 1, "{n}");
        }
        assert_eq!(distinct_prime_factors(3 * (1 << 30)), vec![2, 3]);
    }

    #[test]
    fn primitive_roots_of_transform_moduli() {
        let g = smallest_primitive_root(3 * (1 << 30) + 1);
        assert!(is_primitive_root(g, 3 * (1 << 30) + 1));
        assert!((2..g).all(|h| !is_primitive_root(h, 3 * (1 << 30) + 1)));
        assert_eq!(smallest_primitive_root(7), 3);
    }
}
