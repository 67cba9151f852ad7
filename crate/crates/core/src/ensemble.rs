//! Shift-XOR ensembles and their occupation histograms.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitstring::{BitString, Rotator};
use crate::error::{Error, Result};

/// Default ceiling on `lcm(M_A, M_B)` for pair ensembles: 2^26 bits.
pub const DEFAULT_PAIR_CAP_BITS: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnsembleMode {
    /// One string against its own rotations.
    #[serde(rename = "self")]
    SelfShift,
    /// String A against rotations of string B, both cyclically extended to
    /// `lcm(M_A, M_B)` bits.
    Pair,
}

impl std::fmt::Display for EnsembleMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EnsembleMode::SelfShift => "self",
            EnsembleMode::Pair => "pair",
        })
    }
}

/// Whether a self ensemble starts at the trivial shift `n = 0`.
///
/// `C_0` is always zero, which puts it `C̄` away from every other
/// observation. Over a full ensemble it adds `(C̄/M)²/2` to the internal
/// energy, as much as the whole equilibrium value at density ½, so
/// thermodynamic analysis excludes it by default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroShift {
    Included,
    #[default]
    Excluded,
}

impl std::fmt::Display for ZeroShift {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ZeroShift::Included => "included",
            ZeroShift::Excluded => "excluded",
        })
    }
}

/// Measure values for a contiguous run of shifts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ensemble {
    values: Vec<u64>,
    first_shift: usize,
    bit_len: usize,
    k_min: usize,
    ones: usize,
    mode: EnsembleMode,
}

impl Ensemble {
    /// `values()[i]` is the measure at shift `first_shift() + i`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn first_shift(&self) -> usize {
        self.first_shift
    }

    /// Number of observations `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Particle mass `M`: the (possibly extended) string length.
    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    /// Half the largest attainable measure value.
    pub fn k_min(&self) -> usize {
        self.k_min
    }

    /// Set bits in the source string (self mode) or in the extended A and B
    /// combined (pair mode).
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn mode(&self) -> EnsembleMode {
        self.mode
    }

    /// Exact `Σ C_n`.
    pub fn sum(&self) -> u128 {
        self.values.iter().map(|&c| u128::from(c)).sum()
    }

    /// Whether the ensemble covers every shift in `1..M` (with or without
    /// the zero shift).
    pub fn covers_all_shifts(&self) -> bool {
        self.first_shift + self.len() == self.bit_len
    }

    /// For a self ensemble covering every shift, whether
    /// `Σ_{n<M} C_n = 2·k·(M−k)` holds exactly (equivalently
    /// `C̄ = 2·M·p·(1−p)` over all `M` shifts). `None` when it does not apply.
    pub fn mean_identity(&self) -> Option<bool> {
        if self.mode != EnsembleMode::SelfShift || !self.covers_all_shifts() {
            return None;
        }
        let k = self.ones as u128;
        let m = self.bit_len as u128;
        Some(self.sum() == 2 * k * (m - k))
    }

    pub fn histogram(&self) -> Histogram {
        histogram(self)
    }

    /// Replaces the values with a reordering of themselves. Used to check
    /// that nothing downstream depends on shift order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.values.len());
        Ensemble {
            values: order.iter().map(|&i| self.values[i]).collect(),
            ..self.clone()
        }
    }
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::InvalidEnsembleSize { requested: n, max });
    }
    Ok(())
}

fn self_ensemble(b: &BitString, first: usize, n: usize) -> Ensemble {
    let m = b.len();
    let end = first + n;
    let rotator = Rotator::new(b);
    // C_s = C_{M-s}: only shifts up to M/2 need the kernel.
    let direct_end = end.min(m / 2 + 1).max(first);
    let mut values: Vec<u64> = (first..direct_end)
        .into_par_iter()
        .map(|shift| rotator.xor_distance(b, shift))
        .collect();
    values.reserve(end - direct_end);
    for shift in direct_end..end {
        values.push(values[m - shift - first]);
    }
    Ensemble {
        values,
        first_shift: first,
        bit_len: m,
        k_min: b.minority(),
        ones: b.ones(),
        mode: EnsembleMode::SelfShift,
    }
}

/// `C_n` for `n = 0 .. N-1` over a single string.
pub fn build_self_ensemble(b: &BitString, n: usize) -> Result<Ensemble> {
    check_size(n, b.len())?;
    Ok(self_ensemble(b, 0, n))
}

/// `C_n` for `n = 1 ..= N`, skipping the trivial zero shift. Requires
/// `1 <= N <= M - 1`.
pub fn build_nonzero_self_ensemble(b: &BitString, n: usize) -> Result<Ensemble> {
    check_size(n, b.len() - 1)?;
    Ok(self_ensemble(b, 1, n))
}

/// Self ensemble under a zero-shift policy; `n = None` takes every
/// available shift (`M` or `M − 1`).
pub fn build_self_ensemble_with(
    b: &BitString,
    n: Option<usize>,
    zero_shift: ZeroShift,
) -> Result<Ensemble> {
    match zero_shift {
        ZeroShift::Included => build_self_ensemble(b, n.unwrap_or(b.len())),
        ZeroShift::Excluded => build_nonzero_self_ensemble(b, n.unwrap_or(b.len() - 1)),
    }
}

/// Pair ensemble with the default extension cap.
pub fn build_pair_ensemble(a: &BitString, b: &BitString, n: usize) -> Result<Ensemble> {
    build_pair_ensemble_with_cap(a, b, n, DEFAULT_PAIR_CAP_BITS)
}

/// `values[n] = Σ_{i<M} A_{i mod M_A} ⊕ B_{(i+n) mod M_B}` with
/// `M = lcm(M_A, M_B)`.
pub fn build_pair_ensemble_with_cap(
    a: &BitString,
    b: &BitString,
    n: usize,
    cap_bits: usize,
) -> Result<Ensemble> {
    let (ma, mb) = (a.len() as u128, b.len() as u128);
    let lcm = ma / num_integer::gcd(ma, mb) * mb;
    if lcm > cap_bits as u128 {
        return Err(Error::PairTooLarge {
            lcm,
            cap: cap_bits,
        });
    }
    let m = lcm as usize;
    check_size(n, m)?;

    let a_ext = a.cycle_to(m);
    let b_ext = b.cycle_to(m);
    let rotator = Rotator::new(&b_ext);
    let values = (0..n)
        .into_par_iter()
        .map(|shift| rotator.xor_distance(&a_ext, shift))
        .collect();

    // |A ⊕ rot(B)| <= min(kA + kB, (M−kA) + (M−kB)).
    let ones = a_ext.ones() + b_ext.ones();
    let bound = ones.min(2 * m - ones);
    Ok(Ensemble {
        values,
        first_shift: 0,
        bit_len: m,
        k_min: bound.div_ceil(2),
        ones,
        mode: EnsembleMode::Pair,
    })
}

/// One occupied measure value `C_i` and its occupation number `N_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    #[serde(rename = "c")]
    pub value: u64,
    #[serde(rename = "n")]
    pub count: u64,
}

/// Occupation numbers `N_i` of the distinct measure values `C_i`, sorted by
/// value. Every count is at least one and the counts sum to `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    entries: Vec<HistogramEntry>,
    total: u64,
    bit_len: usize,
    k_min: usize,
}

impl Histogram {
    /// Builds a histogram from arbitrary `(value, count)` pairs. Duplicate
    /// values are merged and zero counts dropped.
    pub fn from_counts<I>(counts: I, bit_len: usize, k_min: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut merged = BTreeMap::new();
        for (value, count) in counts {
            if count > 0 {
                *merged.entry(value).or_insert(0u64) += count;
            }
        }
        let entries: Vec<_> = merged
            .into_iter()
            .map(|(value, count)| HistogramEntry { value, count })
            .collect();
        let total = entries.iter().map(|e| e.count).sum();
        if total == 0 {
            return Err(Error::EmptyInput);
        }
        if bit_len == 0 {
            return Err(Error::InvalidLength {
                requested: 0,
                available: 0,
            });
        }
        Ok(Histogram {
            entries,
            total,
            bit_len,
            k_min,
        })
    }

    pub fn entries(&self) -> &[HistogramEntry] {
        &self.entries
    }

    /// Total observations `N = Σ N_i`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn k_min(&self) -> usize {
        self.k_min
    }

    /// Largest value the measure can take for this source.
    pub fn measure_bound(&self) -> u64 {
        (2 * self.k_min).min(self.bit_len) as u64
    }
}

/// Groups equal measure values.
pub fn histogram(e: &Ensemble) -> Histogram {
    let mut counts = BTreeMap::new();
    for &c in &e.values {
        *counts.entry(c).or_insert(0u64) += 1;
    }
    Histogram {
        entries: counts
            .into_iter()
            .map(|(value, count)| HistogramEntry { value, count })
            .collect(),
        total: e.values.len() as u64,
        bit_len: e.bit_len,
        k_min: e.k_min,
    }
}

/// `C̄ = (1/N) Σ_i N_i C_i`.
pub fn ensemble_mean(h: &Histogram) -> f64 {
    let sum: u128 = h
        .entries
        .iter()
        .map(|e| u128::from(e.value) * u128::from(e.count))
        .sum();
    sum as f64 / h.total as f64
}
