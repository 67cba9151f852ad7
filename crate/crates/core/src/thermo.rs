//! Energy levels, observed internal energy and entropy, and the analytic
//! equilibrium quantities that follow from the partition function.
//!
//! The partition function is `Z = Σ exp(−E_i/T) = √(πMT/2)`, the Gaussian
//! integral over energy levels `E = P²/2M`. Note the minus sign in the
//! exponent: it is required for `Z` to match the Gaussian equilibrium
//! distribution and for `T² ∂ln Z/∂T = T/2`.
//!
//! Units: `s_thermo`, `s_micro` and their equilibrium counterparts are in
//! bits per particle (`s_micro_per_bit` in bits per bit); whole-ensemble
//! entropy `S` is in nats.

use std::f64::consts::{E, LN_2, LOG2_E, PI};

use serde::Serialize;

use crate::ensemble::Histogram;
use crate::error::{Error, Result};
use crate::special::{ln_binomial, ln_factorial};

/// Momentum `P = C − C̄`.
#[inline]
pub fn momentum(c: f64, c_bar: f64) -> f64 {
    c - c_bar
}

/// Energy level `E = (C − C̄)² / 2M`.
#[inline]
pub fn energy_level(c: f64, c_bar: f64, bit_len: usize) -> f64 {
    let p = momentum(c, c_bar);
    p * p / (2.0 * bit_len as f64)
}

/// Average internal energy per particle, `Ū = (1/N) Σ_i N_i E_i`.
pub fn internal_energy(h: &Histogram, c_bar: f64) -> f64 {
    let m = h.bit_len();
    let weighted: f64 = h
        .entries()
        .iter()
        .map(|e| e.count as f64 * energy_level(e.value as f64, c_bar, m))
        .sum();
    weighted / h.total() as f64
}

/// Per-particle entropy split into its occupation and microstate parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Entropy {
    /// `(1/N) log₂(N! / Π N_i!)`, bits per particle.
    pub thermodynamic: f64,
    /// `(1/N) Σ_i N_i log₂(2·C(M, C_i))`, bits per particle.
    pub microstate: f64,
}

impl Entropy {
    pub fn total(&self) -> f64 {
        self.thermodynamic + self.microstate
    }
}

pub fn entropy(h: &Histogram) -> Entropy {
    let n = h.total() as f64;
    let m = h.bit_len() as f64;
    let mut occupation = ln_factorial(n);
    let mut arrangements = 0.0;
    for e in h.entries() {
        let count = e.count as f64;
        occupation -= ln_factorial(count);
        arrangements += count * ln_binomial(m, e.value as f64);
    }
    Entropy {
        thermodynamic: LOG2_E / n * occupation,
        microstate: 1.0 + LOG2_E / n * arrangements,
    }
}

fn require_positive(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateModel("temperature must be positive"))
    }
}

/// `Z = √(πMT/2)`.
pub fn partition_function(bit_len: usize, t: f64) -> Result<f64> {
    require_positive(t)?;
    Ok((PI * bit_len as f64 * t / 2.0).sqrt())
}

/// `Ū_eq = T/2`, the one-dimensional Maxwell-Boltzmann value.
pub fn equilibrium_internal_energy(t: f64) -> f64 {
    t / 2.0
}

/// Equilibrium `(s_thermo_eq, s_micro_eq_per_bit)`: `½·log₂(πeMT/2)` bits
/// per particle and the binary entropy of `C̄/M` in bits per bit.
pub fn equilibrium_entropy(bit_len: usize, t: f64, c_bar: f64) -> Result<(f64, f64)> {
    require_positive(t)?;
    let m = bit_len as f64;
    if !(c_bar > 0.0 && c_bar < m) {
        return Err(Error::DegenerateModel("mean measure outside (0, M)"));
    }
    let s_thermo = 0.5 * (PI * E * m * t / 2.0).log2();
    let s_micro = (c_bar * (m / c_bar).log2() + (m - c_bar) * (m / (m - c_bar)).log2()) / m;
    Ok((s_thermo, s_micro))
}

/// Whole-ensemble quantities with volume `V = √M`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleThermo {
    /// Entropy in nats.
    pub entropy: f64,
    pub free_energy: f64,
    pub pressure: f64,
    pub volume: f64,
}

pub fn ensemble_thermo(n: u64, bit_len: usize, t: f64) -> Result<EnsembleThermo> {
    require_positive(t)?;
    let n = n as f64;
    let volume = (bit_len as f64).sqrt();
    let v2 = bit_len as f64;
    Ok(EnsembleThermo {
        entropy: n / 2.0 * (PI * E * v2 * t / 2.0).ln(),
        free_energy: -(n * t / 2.0) * (PI * v2 * t / 2.0).ln(),
        pressure: n * t / volume,
        volume,
    })
}

/// Converts a per-particle entropy in bits to a whole-ensemble one in nats.
pub fn bits_per_particle_to_nats(s_bits: f64, n: u64) -> f64 {
    s_bits * n as f64 * LN_2
}
