//! Fixtures shared by the criterion benches.

use strtherm_core::{random_bitstring, BitString};

/// Byte sizes the benches sweep over.
pub const SIZES: &[usize] = &[256, 1024, 4096, 16384];

/// A seeded half-density string of `bytes * 8` bits.
pub fn random_input(bytes: usize) -> BitString {
    random_bitstring(bytes * 8, 0.5, 0x5eed).expect("non-empty fixture")
}
