//! Error bookkeeping for weak seeds, the Markov model, seed reuse and
//! smoothing. These are reporting aids and work in `f64`.

/// Error of a seeded extractor used with a seed of min-entropy `k2 <= n2`:
/// `2^((n2-k2)/2)·ε` for two-universal families, `2^(n2-k2)·ε` otherwise.
pub fn lift_two_source_error(epsilon: f64, n2: f64, k2: f64, two_universal: bool) -> f64 {
    let gap = (n2 - k2).max(0.0);
    let exponent = if two_universal { gap / 2.0 } else { gap };
    epsilon * exponent.exp2()
}

/// Entropy requirements and error of a product-source extractor run in the
/// Markov model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovLift {
    pub k1: f64,
    pub k2: f64,
    pub epsilon: f64,
    /// `epsilon >= 1`: the bound says nothing.
    pub vacuous: bool,
}

/// Classical: `(k1 - log2(1/ε), k2 - log2(1/ε), 3ε)`.
/// Quantum: `(k1 - log2(1/ε), k2 - log2(1/ε), sqrt(3ε·2^(m-2)))`.
pub fn lift_markov(epsilon: f64, m: u64, k1: f64, k2: f64, quantum: bool) -> MarkovLift {
    let penalty = -epsilon.log2();
    let lifted = if quantum {
        (3.0 * epsilon * (m as f64 - 2.0).exp2()).sqrt()
    } else {
        3.0 * epsilon
    };
    MarkovLift {
        k1: k1 - penalty,
        k2: k2 - penalty,
        epsilon: lifted,
        vacuous: lifted >= 1.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ComposeMode {
    /// One seed reused across `t` extractions, seed itself `ε_s`-close to uniform.
    SeedReuse { t: u64, epsilon: f64, epsilon_seed: f64 },
    /// Seeded extractor against smooth min-entropy with smoothing `δ`.
    SmoothSeeded { epsilon: f64, delta: f64 },
    /// Two-source extractor against smooth min-entropies. `k1`, `k2` are the
    /// smooth entropies `k'_i`; the reported requirements subtract `log2(1/ε_i)`.
    SmoothTwoSource {
        epsilon: f64,
        delta_1: f64,
        delta_2: f64,
        epsilon_1: f64,
        epsilon_2: f64,
        k1: f64,
        k2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComposedError {
    pub epsilon: f64,
    /// Entropies to plug into the extractor's bound, when they change.
    pub entropies: Option<(f64, f64)>,
}

pub fn compose_errors(mode: ComposeMode) -> ComposedError {
    match mode {
        ComposeMode::SeedReuse {
            t,
            epsilon,
            epsilon_seed,
        } => ComposedError {
            epsilon: t as f64 * epsilon + epsilon_seed,
            entropies: None,
        },
        ComposeMode::SmoothSeeded { epsilon, delta } => ComposedError {
            epsilon: epsilon + delta,
            entropies: None,
        },
        ComposeMode::SmoothTwoSource {
            epsilon,
            delta_1,
            delta_2,
            epsilon_1,
            epsilon_2,
            k1,
            k2,
        } => ComposedError {
            epsilon: 2.0 * epsilon + 6.0 * (delta_1 + delta_2) + 2.0 * (epsilon_1 + epsilon_2),
            entropies: Some((k1 + epsilon_1.log2(), k2 + epsilon_2.log2())),
        },
    }
}
