//! Finite-alphabet distributions, empirical types, and exact type-class
//! probabilities.
//!
//! This module is the measure-theoretic substrate for everything else: it
//! owns the Kullback-Leibler divergence with its zero conventions and the
//! method-of-types machinery used to compute exact error probabilities.

use serde::Serialize;

use crate::error::Error;
use crate::num::{ExtReal, LogBase};

/// Sum tolerance accepted by the [`Distribution`] constructor before
/// renormalizing. Vectors outside this band are rejected.
pub const NORMALIZATION_BAND: f64 = 1e-9;

/// A probability distribution on the alphabet `{0, 1, ..., size-1}`.
///
/// Entries are nonnegative and sum to 1 after construction; vectors whose sum
/// falls within [`NORMALIZATION_BAND`] of 1 are renormalized, anything else is
/// rejected. Zero-mass symbols are allowed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Distribution, Error> {
        if probs.len() < 2 {
            return Err(Error::AlphabetTooSmall { size: probs.len() });
        }
        for (symbol, &p) in probs.iter().enumerate() {
            if !(p.is_finite() && p >= 0.0) {
                return Err(Error::NegativeProbability { symbol, value: p });
            }
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_BAND {
            return Err(Error::NotNormalized { sum });
        }
        let probs = probs.into_iter().map(|p| p / sum).collect();
        Ok(Distribution { probs })
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, symbol: usize) -> f64 {
        self.probs[symbol]
    }

    /// Largest pointwise difference to another distribution.
    pub fn linf_distance(&self, other: &Distribution) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn same_alphabet(&self, other: &Distribution) -> Result<(), Error> {
        if self.alphabet_size() != other.alphabet_size() {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet_size(),
                right: other.alphabet_size(),
            });
        }
        Ok(())
    }
}

/// An observed sequence of alphabet indices.
///
/// Symbols are validated against a concrete alphabet size when the empirical
/// type is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    symbols: Vec<usize>,
}

impl Sample {
    pub fn new(symbols: Vec<usize>) -> Result<Sample, Error> {
        if symbols.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Sample { symbols })
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// The histogram of a length-N sample: counts per symbol, summing to N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmpiricalType {
    counts: Vec<u64>,
}

impl EmpiricalType {
    pub fn new(counts: Vec<u64>) -> Result<EmpiricalType, Error> {
        if counts.len() < 2 {
            return Err(Error::AlphabetTooSmall { size: counts.len() });
        }
        if counts.iter().sum::<u64>() == 0 {
            return Err(Error::EmptySample);
        }
        Ok(EmpiricalType { counts })
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn alphabet_size(&self) -> usize {
        self.counts.len()
    }

    /// The induced distribution counts/N.
    pub fn distribution(&self) -> Distribution {
        let n = self.n() as f64;
        Distribution {
            probs: self.counts.iter().map(|&c| c as f64 / n).collect(),
        }
    }
}

/// Kullback-Leibler divergence D(Q || G) in the given log base.
///
/// Conventions: `0 * log(0/g) = 0` and `q * log(q/0) = +inf` for `q > 0`.
/// Nonnegative, zero exactly when Q = G.
pub fn kl_divergence(q: &Distribution, g: &Distribution, base: LogBase) -> Result<ExtReal, Error> {
    q.same_alphabet(g)?;
    let mut nats = 0.0;
    for (&qi, &gi) in q.probs.iter().zip(&g.probs) {
        if qi == 0.0 {
            continue;
        }
        if gi == 0.0 {
            return Ok(ExtReal::Inf);
        }
        nats += qi * (qi / gi).ln();
    }
    // Rounding can leave a tiny negative residue when Q == G.
    Ok(ExtReal::finite(base.from_nats(nats).max(0.0)))
}

/// Counts symbol occurrences of a sample over `{0, ..., alphabet_size-1}`.
pub fn empirical_type(x: &Sample, alphabet_size: usize) -> Result<EmpiricalType, Error> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall {
            size: alphabet_size,
        });
    }
    let mut counts = vec![0u64; alphabet_size];
    for &s in x.symbols() {
        if s >= alphabet_size {
            return Err(Error::SymbolOutOfRange {
                symbol: s,
                alphabet_size,
            });
        }
        counts[s] += 1;
    }
    EmpiricalType::new(counts)
}

/// Number of types of length-`n` samples: C(n + a - 1, a - 1).
pub fn type_count(n: u64, alphabet_size: usize) -> u128 {
    let a = alphabet_size as u128;
    let n = n as u128;
    // product form of the binomial coefficient, exact in u128 for our sizes
    let mut num = 1u128;
    for i in 0..(a - 1) {
        num = num * (n + a - 1 - i) / (i + 1);
    }
    num
}

/// Visits every composition of `n` into `alphabet_size` nonnegative parts in
/// lexicographic order, reusing one counts buffer.
pub(crate) fn for_each_type<F: FnMut(&[u64])>(n: u64, alphabet_size: usize, mut f: F) {
    let mut counts = vec![0u64; alphabet_size];
    fill_types(n, 0, &mut counts, &mut f);
}

fn fill_types<F: FnMut(&[u64])>(remaining: u64, pos: usize, counts: &mut [u64], f: &mut F) {
    if pos == counts.len() - 1 {
        counts[pos] = remaining;
        f(counts);
        return;
    }
    for c in 0..=remaining {
        counts[pos] = c;
        fill_types(remaining - c, pos + 1, counts, f);
    }
}

/// Enumerates every empirical type of length-`n` samples exactly once, in
/// deterministic lexicographic order.
///
/// The caller is responsible for the combinatorial size
/// (`type_count(n, alphabet_size)` entries).
pub fn enumerate_types(n: u64, alphabet_size: usize) -> Result<Vec<EmpiricalType>, Error> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall {
            size: alphabet_size,
        });
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let mut out = Vec::with_capacity(type_count(n, alphabet_size) as usize);
    for_each_type(n, alphabet_size, |counts| {
        out.push(EmpiricalType {
            counts: counts.to_vec(),
        });
    });
    Ok(out)
}

/// Table of `ln(k!)` for `k = 0..=n`, shared across many multinomial
/// evaluations.
pub struct LogFactorials {
    table: Vec<f64>,
}

impl LogFactorials {
    pub fn up_to(n: u64) -> LogFactorials {
        let mut table = Vec::with_capacity(n as usize + 1);
        table.push(0.0);
        let mut acc = 0.0;
        for k in 1..=n {
            acc += (k as f64).ln();
            table.push(acc);
        }
        LogFactorials { table }
    }

    pub fn ln_factorial(&self, k: u64) -> f64 {
        self.table[k as usize]
    }

    /// ln of the multinomial coefficient N! / (c_1! ... c_a!).
    pub fn ln_multinomial(&self, counts: &[u64]) -> f64 {
        let n: u64 = counts.iter().sum();
        let mut v = self.ln_factorial(n);
        for &c in counts {
            v -= self.ln_factorial(c);
        }
        v
    }
}

/// Natural log of the exact probability of the type class of `t` under
/// `g^N`: `ln multinomial(N; counts) + sum_a counts[a] ln g(a)`.
///
/// Returns `None` when the class has probability exactly zero (a counted
/// symbol that `g` never emits).
pub fn type_class_log_probability(t: &EmpiricalType, g: &Distribution) -> Result<Option<f64>, Error> {
    if t.alphabet_size() != g.alphabet_size() {
        return Err(Error::AlphabetMismatch {
            left: t.alphabet_size(),
            right: g.alphabet_size(),
        });
    }
    let facts = LogFactorials::up_to(t.n());
    Ok(log_prob_with(&facts, t.counts(), g))
}

/// Same as [`type_class_log_probability`] with a caller-provided factorial
/// table; the hot path for exact error sums.
pub(crate) fn log_prob_with(facts: &LogFactorials, counts: &[u64], g: &Distribution) -> Option<f64> {
    let mut v = facts.ln_multinomial(counts);
    for (&c, &gi) in counts.iter().zip(g.probs()) {
        if c == 0 {
            continue;
        }
        if gi == 0.0 {
            return None;
        }
        v += c as f64 * gi.ln();
    }
    Some(v)
}
