//! Exact cyclic convolution of bit strings over prime fields.
//!
//! Two NTT-friendly primes are used: `3·2^30 + 1` for operands up to `2^29`
//! bits and `9·2^42 + 1` up to `2^40` bits. Every coefficient of a 0/1
//! convolution of length `n` is an integer in `[0, n]`, strictly below either
//! modulus in its range, so reducing the field result mod 2 gives the true
//! parity.
//!
//! Arithmetic is Montgomery form with `R = 2^64`; both primes are below
//! `2^62`, which keeps `t + m·p` inside a `u128` during reduction.

use std::fmt;

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::primes::{pow_mod, smallest_primitive_root};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModulusChoice {
    /// `p = 3·2^30 + 1`.
    Small,
    /// `p' = 9·2^42 + 1`.
    Big,
}

impl ModulusChoice {
    pub const fn prime(self) -> u64 {
        match self {
            ModulusChoice::Small => 3 * (1 << 30) + 1,
            ModulusChoice::Big => 9 * (1 << 42) + 1,
        }
    }

    /// `log2` of the largest power of two dividing `p - 1`.
    pub const fn max_log_size(self) -> u32 {
        match self {
            ModulusChoice::Small => 30,
            ModulusChoice::Big => 42,
        }
    }

    /// Largest operand length this modulus convolves exactly.
    pub const fn max_operand_len(self) -> u64 {
        match self {
            ModulusChoice::Small => 1 << 29,
            ModulusChoice::Big => 1 << 40,
        }
    }

    /// The modulus picked for operands of length `n`.
    pub fn for_length(n: u64) -> Option<Self> {
        if n <= ModulusChoice::Small.max_operand_len() {
            Some(ModulusChoice::Small)
        } else if n <= ModulusChoice::Big.max_operand_len() {
            Some(ModulusChoice::Big)
        } else {
            None
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            ModulusChoice::Small => "small",
            ModulusChoice::Big => "big",
        }
    }
}

impl fmt::Display for ModulusChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a convolution picks its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModulusSelection {
    /// Small modulus up to `2^29` bits, big modulus above.
    #[default]
    Auto,
    Force(ModulusChoice),
}

impl ModulusSelection {
    fn resolve(self, n: u64) -> Result<ModulusChoice> {
        let choice = match self {
            ModulusSelection::Auto => ModulusChoice::for_length(n),
            ModulusSelection::Force(c) => Some(c).filter(|c| n <= c.max_operand_len()),
        };
        choice.ok_or(Error::UnsupportedSize {
            size: n,
            modulus: match self {
                ModulusSelection::Force(c) => c.name(),
                ModulusSelection::Auto => "largest",
            },
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Montgomery {
    p: u64,
    // -p^{-1} mod 2^64
    neg_inv: u64,
    // 2^128 mod p
    r2: u64,
}

impl Montgomery {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < 1 << 62);
        let mut inv = 1u64;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = (r as u128 * r as u128 % p as u128) as u64;
        Self {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    #[inline(always)]
    fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        u.min(u.wrapping_sub(self.p))
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        s.min(s.wrapping_sub(self.p))
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        let d = a.wrapping_sub(b);
        d.min(d.wrapping_add(self.p))
    }

    fn encode(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    fn decode(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    fn one(&self) -> u64 {
        self.encode(1)
    }
}

// Elements per cache-resident block of butterfly stages.
const CACHE_BLOCK: usize = 1 << 14;

/// Precomputed data for length-`L` transforms modulo one of the two primes.
#[derive(Clone)]
pub struct NttPlan {
    choice: ModulusChoice,
    size: usize,
    generator: u64,
    root: u64,
    inv_root: u64,
    inv_size: u64,
    arith: Montgomery,
    // Stage tables in Montgomery form: entries [h, 2h) hold w_{2h}^j for j < h.
    twiddles: Vec<u64>,
    inv_twiddles: Vec<u64>,
}

impl fmt::Debug for NttPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NttPlan")
            .field("modulus", &self.modulus())
            .field("size", &self.size)
            .field("generator", &self.generator)
            .field("root", &self.root)
            .field("inv_root", &self.inv_root)
            .field("inv_size", &self.inv_size)
            .finish()
    }
}

/// Builds a plan for transforms of length `size` (a power of two).
pub fn build_plan(size: usize, choice: ModulusChoice) -> Result<NttPlan> {
    if !size.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "transform size {size} is not a power of two"
        )));
    }
    let log = size.trailing_zeros();
    if log > choice.max_log_size() {
        return Err(Error::UnsupportedSize {
            size: size as u64,
            modulus: choice.name(),
        });
    }
    let p = choice.prime();
    let generator = smallest_primitive_root(p);
    let root = pow_mod(generator, (p - 1) / size as u64, p);
    assert_eq!(pow_mod(root, size as u64, p), 1, "root order does not divide L");
    if size > 1 {
        assert_ne!(pow_mod(root, size as u64 / 2, p), 1, "root order below L");
    }
    let inv_root = pow_mod(root, p - 2, p);
    let inv_size = pow_mod(size as u64, p - 2, p);
    let arith = Montgomery::new(p);
    let twiddles = stage_table(&arith, root, size);
    let inv_twiddles = stage_table(&arith, inv_root, size);
    Ok(NttPlan {
        choice,
        size,
        generator,
        root,
        inv_root,
        inv_size,
        arith,
        twiddles,
        inv_twiddles,
    })
}

fn stage_table(arith: &Montgomery, root: u64, size: usize) -> Vec<u64> {
    let p = arith.p;
    let mut table = vec![0u64; size.max(1)];
    let mut half = 1;
    while half < size {
        // w is a primitive (2·half)-th root of unity
        let w = arith.encode(pow_mod(root, (size / (2 * half)) as u64, p));
        let mut acc = arith.one();
        for j in 0..half {
            table[half + j] = acc;
            acc = arith.mul(acc, w);
        }
        half *= 2;
    }
    table
}

impl NttPlan {
    pub fn choice(&self) -> ModulusChoice {
        self.choice
    }

    pub fn modulus(&self) -> u64 {
        self.arith.p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn inv_root(&self) -> u64 {
        self.inv_root
    }

    pub fn inv_size(&self) -> u64 {
        self.inv_size
    }

    fn forward_stage(&self, a: &mut [u64], half: usize) {
        let ar = &self.arith;
        let tw = &self.twiddles[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let (u, v) = (*x, *y);
                *x = ar.add(u, v);
                *y = ar.mul(ar.sub(u, v), w);
            }
        }
    }

    fn inverse_stage(&self, a: &mut [u64], half: usize) {
        let ar = &self.arith;
        let tw = &self.inv_twiddles[half..2 * half];
        for block in a.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for ((x, y), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(tw) {
                let u = *x;
                let v = ar.mul(*y, w);
                *x = ar.add(u, v);
                *y = ar.sub(u, v);
            }
        }
    }

    // Gentleman–Sande: natural order in, bit-reversed order out. Stages
    // narrower than a cache block run block by block.
    fn forward_to_bitrev(&self, a: &mut [u64]) {
        let block = CACHE_BLOCK.min(self.size);
        let mut half = self.size / 2;
        while half >= 1 && 2 * half > block {
            self.forward_stage(a, half);
            half /= 2;
        }
        for chunk in a.chunks_exact_mut(block) {
            let mut h = half;
            while h >= 1 {
                self.forward_stage(chunk, h);
                h /= 2;
            }
        }
    }

    // Cooley–Tukey with inverse twiddles: bit-reversed in, natural out.
    // The 1/L factor is not applied.
    fn inverse_from_bitrev(&self, a: &mut [u64]) {
        let block = CACHE_BLOCK.min(self.size);
        for chunk in a.chunks_exact_mut(block) {
            let mut h = 1;
            while h < block {
                self.inverse_stage(chunk, h);
                h *= 2;
            }
        }
        let mut half = block;
        while half < self.size {
            self.inverse_stage(a, half);
            half *= 2;
        }
    }

    fn check_input(&self, v: &[u64]) -> Result<()> {
        if v.len() != self.size {
            return Err(Error::LengthMismatch {
                what: "transform input",
                expected: self.size,
                actual: v.len(),
            });
        }
        if let Some(&bad) = v.iter().find(|&&x| x >= self.arith.p) {
            return Err(Error::InvalidParameter(format!(
                "residue {bad} is not reduced modulo {}",
                self.arith.p
            )));
        }
        Ok(())
    }
}

fn bit_reverse_permute(a: &mut [u64]) {
    let n = a.len();
    if n <= 2 {
        return;
    }
    let shift = usize::BITS - n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> shift;
        if i < j {
            a.swap(i, j);
        }
    }
}

/// `out_k = Σ_j v_j ω^{jk} mod p`.
pub fn ntt_forward(v: &[u64], plan: &NttPlan) -> Result<Vec<u64>> {
    plan.check_input(v)?;
    let ar = &plan.arith;
    let mut a: Vec<u64> = v.iter().map(|&x| ar.encode(x)).collect();
    plan.forward_to_bitrev(&mut a);
    bit_reverse_permute(&mut a);
    Ok(a.into_iter().map(|x| ar.decode(x)).collect())
}

/// Inverse of [`ntt_forward`], including the `1/L` factor.
pub fn ntt_inverse(v: &[u64], plan: &NttPlan) -> Result<Vec<u64>> {
    plan.check_input(v)?;
    let ar = &plan.arith;
    let mut a: Vec<u64> = v.iter().map(|&x| ar.encode(x)).collect();
    bit_reverse_permute(&mut a);
    plan.inverse_from_bitrev(&mut a);
    // mont(x) * inv_size reduces to x * inv_size in plain form
    Ok(a.into_iter().map(|x| ar.mul(x, plan.inv_size)).collect())
}

/// Transform size used for a length-`n` cyclic convolution: the smallest
/// power of two holding the `2n - 1` linear-convolution coefficients.
pub fn convolution_size(n: usize) -> usize {
    (2 * n).saturating_sub(1).max(1).next_power_of_two()
}

/// `w_i = Σ_j u_{(i-j) mod n} v_j mod 2`, modulus chosen by operand length.
pub fn cyclic_convolve_mod2(u: &BitString, v: &BitString) -> Result<BitString> {
    cyclic_convolve_mod2_with(u, v, ModulusSelection::Auto)
}

/// [`cyclic_convolve_mod2`] with an explicit modulus policy.
pub fn cyclic_convolve_mod2_with(
    u: &BitString,
    v: &BitString,
    selection: ModulusSelection,
) -> Result<BitString> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::LengthMismatch {
            what: "convolution operand",
            expected: n,
            actual: v.len(),
        });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("empty convolution operands".into()));
    }
    let choice = selection.resolve(n as u64)?;
    let size = convolution_size(n);
    let plan = build_plan(size, choice)?;
    Ok(convolve_with_plan(u, v, &plan))
}

fn convolve_with_plan(u: &BitString, v: &BitString, plan: &NttPlan) -> BitString {
    let n = u.len();
    debug_assert!(2 * n - 1 <= plan.size);
    debug_assert!((n as u64) < plan.modulus());
    let ar = &plan.arith;
    let one = ar.one();
    let load = |bits: &BitString| {
        let mut a = vec![0u64; plan.size];
        for (slot, bit) in a.iter_mut().zip(bits.iter()) {
            if bit {
                *slot = one;
            }
        }
        a
    };

    let mut a = load(u);
    plan.forward_to_bitrev(&mut a);
    let mut b = load(v);
    plan.forward_to_bitrev(&mut b);
    for (x, &y) in a.iter_mut().zip(&b) {
        *x = ar.mul(*x, y);
    }
    drop(b);
    plan.inverse_from_bitrev(&mut a);

    let coeff = |i: usize| ar.mul(a[i], plan.inv_size);
    (0..n)
        .map(|i| {
            let high = if i + n < 2 * n - 1 { coeff(i + n) } else { 0 };
            (coeff(i) + high) & 1 == 1
        })
        .collect()
}
