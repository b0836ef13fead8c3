//! Binary polynomials and the field GF(2^l) for arbitrary `l`.
//!
//! Polynomials are little-endian `u64` limbs; bit `k` is the coefficient of
//! `x^k`.

use std::fmt;

use crate::primes::distinct_prime_factors;

fn degree(p: &[u64]) -> Option<usize> {
    p.iter()
        .rposition(|&w| w != 0)
        .map(|i| i * 64 + 63 - p[i].leading_zeros() as usize)
}

fn bit(p: &[u64], k: usize) -> bool {
    p.get(k / 64).is_some_and(|w| w >> (k % 64) & 1 == 1)
}

// a ^= b << shift, growing `a` as needed.
fn xor_shifted(a: &mut Vec<u64>, b: &[u64], shift: usize) {
    let (limbs, bits) = (shift / 64, shift % 64);
    let need = b.len() + limbs + 1;
    if a.len() < need {
        a.resize(need, 0);
    }
    for (i, &w) in b.iter().enumerate() {
        a[i + limbs] ^= w << bits;
        if bits != 0 {
            a[i + limbs + 1] ^= w >> (64 - bits);
        }
    }
}

fn trim(p: &mut Vec<u64>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = degree(b).expect("division by the zero polynomial");
    while let Some(da) = degree(&a) {
        if da < db {
            break;
        }
        xor_shifted(&mut a, b, da - db);
    }
    trim(&mut a);
    a
}

/// Greatest common divisor of two binary polynomials.
pub fn poly_gcd(a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

/// Degree-`l` polynomial with the given low coefficients, as limbs.
fn with_leading(l: usize, low: u64) -> Vec<u64> {
    let mut p = vec![0u64; l / 64 + 1];
    p[0] = low;
    p[l / 64] |= 1 << (l % 64);
    p
}

/// Whether the degree-`l` polynomial `f` is irreducible: `x^(2^l) ≡ x` and
/// `gcd(x^(2^(l/q)) - x, f) = 1` for every prime `q | l`.
pub fn is_irreducible(f: &[u64]) -> bool {
    let Some(l) = degree(f) else { return false };
    if l == 0 {
        return false;
    }
    let field = Gf2Field::from_modulus(f.to_vec());
    let x = field.x();
    let frobenius = |k: usize| {
        let mut e = x.clone();
        for _ in 0..k {
            e = field.mul(&e, &e);
        }
        e
    };
    if frobenius(l) != x {
        return false;
    }
    distinct_prime_factors(l as u64).into_iter().all(|q| {
        let mut h = frobenius(l / q as usize);
        for (w, &v) in h.iter_mut().zip(&x) {
            *w ^= v;
        }
        poly_gcd(&h, f) == [1]
    })
}

/// The irreducible degree-`l` polynomial with a non-zero constant term whose
/// coefficient vector, read as an integer, is smallest.
pub fn find_irreducible(l: usize) -> Vec<u64> {
    assert!(l >= 1, "field degree must be positive");
    let width = l.min(64);
    (0u64..)
        .map(|k| 2 * k + 1)
        .take_while(|&low| width == 64 || low < 1 << width)
        .map(|low| with_leading(l, low))
        // for l >= 2 an even number of terms means x + 1 divides f
        .filter(|f| l == 1 || f.iter().map(|w| w.count_ones()).sum::<u32>() % 2 == 1)
        .find(|f| is_irreducible(f))
        .expect("an irreducible polynomial exists for every degree")
}

/// GF(2^l) as binary polynomials reduced modulo an irreducible `f`.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Field {
    degree: usize,
    limbs: usize,
    modulus: Vec<u64>,
    // f - x^l, truncated to `limbs` words
    tail: Vec<u64>,
    top_mask: u64,
}

impl fmt::Debug for Gf2Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.degree, format_poly(&self.modulus))
    }
}

/// Renders a polynomial as `x^3 + x + 1`.
pub fn format_poly(p: &[u64]) -> String {
    let Some(d) = degree(p) else { return "0".into() };
    let terms: Vec<String> = (0..=d)
        .rev()
        .filter(|&k| bit(p, k))
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        })
        .collect();
    terms.join(" + ")
}

/// A field element: `limbs` words holding a polynomial of degree below `l`.
pub type Element = Vec<u64>;

impl Gf2Field {
    /// Field of degree `l` over the smallest admissible irreducible polynomial.
    pub fn new(l: usize) -> Self {
        Self::from_modulus(find_irreducible(l))
    }

    /// Uses `f` as the modulus without checking irreducibility.
    pub fn from_modulus(mut f: Vec<u64>) -> Self {
        trim(&mut f);
        let degree = degree(&f).expect("modulus must be non-zero");
        assert!(degree >= 1, "modulus must have positive degree");
        let limbs = degree.div_ceil(64);
        let mut tail = f.clone();
        tail.resize(limbs + 1, 0);
        tail[degree / 64] &= !(1 << (degree % 64));
        tail.truncate(limbs);
        let top_mask = match degree % 64 {
            0 => u64::MAX,
            r => (1 << r) - 1,
        };
        Self {
            degree,
            limbs,
            modulus: f,
            tail,
            top_mask,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Element {
        vec![0; self.limbs]
    }

    pub fn one(&self) -> Element {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// The class of `x`.
    pub fn x(&self) -> Element {
        if self.degree == 1 {
            self.tail.clone()
        } else {
            let mut e = self.zero();
            e[0] = 2;
            e
        }
    }

    /// Reduces an arbitrary polynomial into the field.
    pub fn reduce(&self, p: &[u64]) -> Element {
        let mut r = poly_rem(p.to_vec(), &self.modulus);
        r.resize(self.limbs, 0);
        r
    }

    /// Element whose coefficients are `bits`, the first bit being the
    /// coefficient of `x^(l-1)`. Shorter slices are zero-padded at the end.
    pub fn from_msb_bits(&self, bits: impl IntoIterator<Item = bool>) -> Element {
        let mut e = self.zero();
        for (j, b) in bits.into_iter().take(self.degree).enumerate() {
            if b {
                let k = self.degree - 1 - j;
                e[k / 64] |= 1 << (k % 64);
            }
        }
        e
    }

    #[inline]
    fn times_x(&self, e: &mut [u64]) {
        let top = self.degree - 1;
        let overflow = e[top / 64] >> (top % 64) & 1 == 1;
        let mut carry = 0;
        for w in e.iter_mut() {
            let next = *w >> 63;
            *w = *w << 1 | carry;
            carry = next;
        }
        e[self.limbs - 1] &= self.top_mask;
        if overflow {
            for (w, &t) in e.iter_mut().zip(&self.tail) {
                *w ^= t;
            }
        }
    }

    /// `out = a · b`.
    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        out.fill(0);
        for k in (0..self.degree).rev() {
            self.times_x(out);
            if b[k / 64] >> (k % 64) & 1 == 1 {
                for (o, &v) in out.iter_mut().zip(a) {
                    *o ^= v;
                }
            }
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Element {
        let mut out = self.zero();
        self.mul_into(a, b, &mut out);
        out
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Element {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    pub fn pow(&self, a: &[u64], mut exp: u128) -> Element {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// `a^(2^l - 2)`, the inverse of a non-zero element.
    pub fn inverse(&self, a: &[u64]) -> Element {
        // the exponent is l-1 ones followed by a zero in binary
        let mut acc = self.one();
        for _ in 1..self.degree {
            acc = self.mul(&acc, &acc);
            acc = self.mul(&acc, a);
        }
        self.mul(&acc, &acc)
    }
}

/// Parity of the bitwise AND of two elements.
pub fn inner_product(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum::<u32>() % 2 == 1
}
