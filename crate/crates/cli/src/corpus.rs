//! Deterministic sample inputs.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use strtherm_core::{random_bitstring, BitOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    /// Independent bits with p = 1/2.
    Random,
    /// A short fixed byte pattern, repeated.
    Periodic,
    /// All bytes zero.
    AllZero,
}

pub const PERIODIC_PATTERN: [u8; 4] = [0x5a, 0xc3, 0x0f, 0x96];

pub fn generate(kind: Kind, bytes: usize, seed: u64) -> Result<Vec<u8>> {
    anyhow::ensure!(bytes >= 1, "corpus size must be at least one byte");
    Ok(match kind {
        Kind::Random => random_bitstring(bytes * 8, 0.5, seed)?.to_bytes(BitOrder::MsbFirst),
        Kind::Periodic => PERIODIC_PATTERN.iter().copied().cycle().take(bytes).collect(),
        Kind::AllZero => vec![0; bytes],
    })
}

pub fn write(kind: Kind, bytes: usize, seed: u64, out: &Path) -> Result<()> {
    let data = generate(kind, bytes, seed)?;
    fs::write(out, data).with_context(|| format!("writing {}", out.display()))
}
