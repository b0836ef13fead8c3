//! Weak designs: families of `t`-element seed-index sets with bounded
//! pairwise overlap.

use std::f64::consts::E;

use crate::error::{Error, Result};

/// Overlap parameter `r` of a design.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Overlap {
    /// `r = 2e`, met by a single polynomial design.
    TwoE,
    /// `r = 1`, met by the block construction.
    One,
}

impl Overlap {
    pub fn value(self) -> f64 {
        match self {
            Overlap::TwoE => 2.0 * E,
            Overlap::One => 1.0,
        }
    }
}

/// Sets `S_1 .. S_m`, each of `t` positions in `[0, d)` listed in ascending
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakDesign {
    pub t: u64,
    pub d: u64,
    pub r: Overlap,
    pub sets: Vec<Vec<u64>>,
}

impl WeakDesign {
    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// `max_i Σ_{j<i} 2^{|S_j ∩ S_i|}`, saturating at `u128::MAX`.
    pub fn max_overlap_sum(&self) -> u128 {
        overlap_sums(&self.sets, self.d).into_iter().max().unwrap_or(0)
    }

    /// Whether every set has `t` distinct positions below `d` and
    /// `Σ_{j<i} 2^{|S_j ∩ S_i|} <= r·m` holds for every `i`.
    pub fn satisfies_contract(&self) -> bool {
        let sizes_ok = self.sets.iter().all(|s| {
            s.len() as u64 == self.t
                && s.windows(2).all(|w| w[0] < w[1])
                && s.last().is_none_or(|&p| p < self.d)
        });
        let bound = (self.r.value() * self.m() as f64).floor() as u128;
        sizes_ok && self.max_overlap_sum() <= bound
    }
}

// For each i, Σ_{j<i} 2^{|S_j ∩ S_i|}, via a position → sets index.
fn overlap_sums(sets: &[Vec<u64>], d: u64) -> Vec<u128> {
    let mut owners: Vec<Vec<u32>> = vec![Vec::new(); d as usize];
    let mut counts = vec![0u32; sets.len()];
    let mut touched = Vec::new();
    let mut out = Vec::with_capacity(sets.len());
    for (i, set) in sets.iter().enumerate() {
        for &p in set {
            for &j in &owners[p as usize] {
                if counts[j as usize] == 0 {
                    touched.push(j);
                }
                counts[j as usize] += 1;
            }
        }
        let mut sum = (i - touched.len()) as u128;
        for &j in &touched {
            let c = std::mem::take(&mut counts[j as usize]);
            sum = sum.saturating_add(1u128.checked_shl(c).unwrap_or(u128::MAX));
        }
        touched.clear();
        out.push(sum);
        for &p in set {
            owners[p as usize].push(i as u32);
        }
    }
    out
}

/// Smallest `c >= 1` with `t^c >= m`.
fn degree_bound(m: u64, t: u64) -> u32 {
    let mut c = 1;
    let mut reach = t as u128;
    while reach < m as u128 {
        reach *= t as u128;
        c += 1;
    }
    c
}

/// Polynomial design over GF(t)^2: position `α·t + β` belongs to `S_i` iff
/// `β = p_i(α)`, where the coefficients of `p_i` are the base-`t` digits of
/// `i` and `deg p_i < c` with `c` minimal such that `t^c >= m_b`.
pub fn basic_weak_design(m_b: u64, t: u64) -> Result<WeakDesign> {
    if t < 2 || !crate::primes::is_prime(t) {
        return Err(Error::InvalidParameter(format!("design size {t} is not prime")));
    }
    if m_b == 0 {
        return Err(Error::InvalidParameter("a design needs at least one set".into()));
    }
    let c = degree_bound(m_b, t);
    if c as u64 > t {
        return Err(Error::InvalidParameter(format!(
            "{m_b} sets exceed the capacity of a design over GF({t})"
        )));
    }
    let sets = (0..m_b)
        .map(|i| {
            let mut digits = Vec::with_capacity(c as usize);
            let mut rest = i;
            for _ in 0..c {
                digits.push(rest % t);
                rest /= t;
            }
            (0..t)
                .map(|alpha| {
                    let beta = digits.iter().rev().fold(0, |acc, &d| (acc * alpha + d) % t);
                    alpha * t + beta
                })
                .collect()
        })
        .collect();
    Ok(WeakDesign {
        t,
        d: t * t,
        r: Overlap::TwoE,
        sets,
    })
}

/// Sizes of the blocks used for `m` sets: each block takes `⌈v/2e⌉` of the
/// `v` sets still unassigned until at most `t` remain, which form the last
/// block.
pub fn block_sizes(m: u64, t: u64) -> Vec<u64> {
    let mut sizes = Vec::new();
    let mut left = m;
    while left > t {
        let take = (left as f64 / (2.0 * E)).ceil() as u64;
        sizes.push(take);
        left -= take;
    }
    if left > 0 {
        sizes.push(left);
    }
    sizes
}

/// Disjoint polynomial designs on consecutive `t²`-position segments, one per
/// entry of [`block_sizes`]. The seed has `blocks·t²` positions where
/// `blocks` is at least the number of segments used.
pub fn block_weak_design(m: u64, t: u64, blocks: u64) -> Result<WeakDesign> {
    let sizes = block_sizes(m, t);
    if (sizes.len() as u64) > blocks {
        return Err(Error::InvalidParameter(format!(
            "{m} sets need {} blocks but only {blocks} were allotted",
            sizes.len()
        )));
    }
    let mut sets = Vec::with_capacity(m as usize);
    for (b, &size) in sizes.iter().enumerate() {
        let offset = b as u64 * t * t;
        let basic = basic_weak_design(size, t)?;
        sets.extend(
            basic
                .sets
                .into_iter()
                .map(|s| s.into_iter().map(|p| p + offset).collect::<Vec<_>>()),
        );
    }
    let design = WeakDesign {
        t,
        d: blocks * t * t,
        r: Overlap::One,
        sets,
    };
    if m <= 1 << 12 && !design.satisfies_contract() {
        return Err(Error::InvalidParameter(format!(
            "block design for m = {m}, t = {t} violates its overlap bound"
        )));
    }
    Ok(design)
}
