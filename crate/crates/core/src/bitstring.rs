//! Packed bit strings and the cyclic shift-XOR kernel.
//!
//! Bits are stored little-endian inside `u64` words: bit `i` of the string is
//! bit `i % 64` of word `i / 64`. Everything past bit `len` in the last word is
//! kept at zero, so popcounts over whole words are exact.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD_BITS: usize = u64::BITS as usize;

/// How the eight bits of each input byte map onto consecutive string bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum BitOrder {
    /// Bit 0 of the string is the most significant bit of byte 0.
    #[default]
    #[serde(rename = "msb")]
    MsbFirst,
    /// Bit 0 of the string is the least significant bit of byte 0.
    #[serde(rename = "lsb")]
    LsbFirst,
}

impl fmt::Display for BitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BitOrder::MsbFirst => "msb",
            BitOrder::LsbFirst => "lsb",
        })
    }
}

/// An immutable, non-empty binary string of `M` bits with `k` of them set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
    ones: usize,
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

#[inline]
fn tail_mask(len: usize) -> u64 {
    match len % WORD_BITS {
        0 => !0,
        r => (1u64 << r) - 1,
    }
}

/// ORs the first `len` bits of `src` into `dst` starting at bit `offset`.
/// `src` must be canonically padded.
fn or_bits_at(dst: &mut [u64], offset: usize, src: &[u64], len: usize) {
    let base = offset / WORD_BITS;
    let shift = offset % WORD_BITS;
    for (j, &w) in src[..words_for(len)].iter().enumerate() {
        dst[base + j] |= w << shift;
        if shift != 0 {
            let spill = w >> (WORD_BITS - shift);
            if spill != 0 {
                dst[base + j + 1] |= spill;
            }
        }
    }
}

impl BitString {
    fn from_words(mut words: Vec<u64>, len: usize) -> Self {
        debug_assert!(len >= 1);
        debug_assert_eq!(words.len(), words_for(len));
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        let ones = words.iter().map(|w| w.count_ones() as usize).sum();
        BitString { words, len, ones }
    }

    /// Unpacks a byte stream, eight bits per byte in the given order.
    pub fn from_bytes(data: &[u8], order: BitOrder) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::EmptyInput);
        }
        let len = data.len() * 8;
        let mut words = vec![0u64; words_for(len)];
        for (i, &byte) in data.iter().enumerate() {
            let byte = match order {
                BitOrder::MsbFirst => byte.reverse_bits(),
                BitOrder::LsbFirst => byte,
            };
            words[i / 8] |= u64::from(byte) << (8 * (i % 8));
        }
        Ok(Self::from_words(words, len))
    }

    pub fn from_bits<I>(bits: I) -> Result<Self>
    where
        I: IntoIterator<Item = bool>,
    {
        let mut words = Vec::new();
        let mut len = 0usize;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        Ok(Self::from_words(words, len))
    }

    /// Packs the string back into bytes; a partial final byte is zero-padded.
    pub fn to_bytes(&self, order: BitOrder) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for (i, byte) in out.iter_mut().enumerate() {
            let raw = (self.words[i / 8] >> (8 * (i % 8))) as u8;
            *byte = match order {
                BitOrder::MsbFirst => raw.reverse_bits(),
                BitOrder::LsbFirst => raw,
            };
        }
        out
    }

    /// Bit length `M`.
    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false: a `BitString` holds at least one bit.
    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of set bits `k`.
    #[inline]
    pub fn ones(&self) -> usize {
        self.ones
    }

    #[inline]
    pub fn zeros(&self) -> usize {
        self.len - self.ones
    }

    /// `min(k, M - k)`; half the largest possible shift-XOR distance.
    #[inline]
    pub fn minority(&self) -> usize {
        self.ones.min(self.zeros())
    }

    /// Fraction of set bits, `p = k / M`.
    pub fn density(&self) -> f64 {
        self.ones as f64 / self.len as f64
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for {} bits", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Keeps the first `max_bits` bits.
    pub fn truncate(&self, max_bits: usize) -> Result<Self> {
        if max_bits == 0 || max_bits > self.len {
            return Err(Error::InvalidLength {
                requested: max_bits,
                available: self.len,
            });
        }
        let words = self.words[..words_for(max_bits)].to_vec();
        Ok(Self::from_words(words, max_bits))
    }

    /// Hamming distance between the string and its cyclic rotation by `shift`
    /// bits: `C_n = Σ_i B_i ⊕ B_{(i+n) mod M}`.
    pub fn shift_xor_distance(&self, shift: usize) -> Result<u64> {
        if shift >= self.len {
            return Err(Error::InvalidShift {
                shift,
                len: self.len,
            });
        }
        Ok(Rotator::new(self).xor_distance(self, shift))
    }

    /// Repeats the string cyclically out to `len` bits. `len` must be a
    /// multiple of the current length.
    pub(crate) fn cycle_to(&self, len: usize) -> Self {
        debug_assert!(len % self.len == 0);
        let mut words = vec![0u64; words_for(len)];
        for offset in (0..len).step_by(self.len) {
            or_bits_at(&mut words, offset, &self.words, self.len);
        }
        BitString {
            words,
            len,
            ones: self.ones * (len / self.len),
        }
    }
}

impl FromStr for BitString {
    type Err = Error;

    /// Parses a string of `'0'` and `'1'` characters, first character = bit 0.
    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBitChar(other)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("BitString");
        d.field("len", &self.len).field("ones", &self.ones);
        if self.len <= 128 {
            d.field("bits", &format_args!("{self}"));
        }
        d.finish()
    }
}

/// A string laid out twice back to back, so that any cyclic rotation can be
/// read out one word at a time with a single unaligned extract.
pub(crate) struct Rotator {
    doubled: Vec<u64>,
    len: usize,
}

impl Rotator {
    pub(crate) fn new(source: &BitString) -> Self {
        let len = source.len;
        // One spare word so `word()` can always read `q + 1`.
        let mut doubled = vec![0u64; words_for(2 * len) + 1];
        or_bits_at(&mut doubled, 0, &source.words, len);
        or_bits_at(&mut doubled, len, &source.words, len);
        Rotator { doubled, len }
    }

    /// Word `j` of the source rotated left by `shift` bits; bits past the
    /// string length are garbage and must be masked by the caller.
    #[inline(always)]
    fn word(&self, j: usize, shift: usize) -> u64 {
        let bit = j * WORD_BITS + shift;
        let q = bit / WORD_BITS;
        let r = bit % WORD_BITS;
        if r == 0 {
            self.doubled[q]
        } else {
            (self.doubled[q] >> r) | (self.doubled[q + 1] << (WORD_BITS - r))
        }
    }

    /// Popcount of `fixed XOR rotate(source, shift)` over the common length.
    #[inline]
    pub(crate) fn xor_distance(&self, fixed: &BitString, shift: usize) -> u64 {
        debug_assert_eq!(fixed.len, self.len);
        debug_assert!(shift < self.len);
        let last = fixed.words.len() - 1;
        let mut total = 0u64;
        for (j, &w) in fixed.words[..last].iter().enumerate() {
            total += u64::from((w ^ self.word(j, shift)).count_ones());
        }
        let tail = (fixed.words[last] ^ self.word(last, shift)) & tail_mask(self.len);
        total + u64::from(tail.count_ones())
    }
}

/// Draws `len` independent bits, each set with probability `p`, from a
/// ChaCha8 stream seeded with `seed`.
pub fn random_bitstring(len: usize, p: f64, seed: u64) -> Result<BitString> {
    if len == 0 {
        return Err(Error::EmptyInput);
    }
    let bernoulli = Bernoulli::new(p).map_err(|_| Error::InvalidProbability(p))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BitString::from_bits((0..len).map(|_| bernoulli.sample(&mut rng)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn naive_distance(b: &BitString, n: usize) -> u64 {
        let m = b.len();
        (0..m).filter(|&i| b.get(i) != b.get((i + n) % m)).count() as u64
    }

    #[test]
    fn from_bytes_examples() {
        let all = BitString::from_bytes(&[0xFF], BitOrder::MsbFirst).unwrap();
        assert_eq!((all.len(), all.ones()), (8, 8));
        let none = BitString::from_bytes(&[0x00], BitOrder::MsbFirst).unwrap();
        assert_eq!((none.len(), none.ones()), (8, 0));
        let a0 = BitString::from_bytes(&[0xA0], BitOrder::MsbFirst).unwrap();
        assert_eq!(a0.to_string(), "10100000");
        assert_eq!(a0.ones(), 2);
        let a0 = BitString::from_bytes(&[0xA0], BitOrder::LsbFirst).unwrap();
        assert_eq!(a0.to_string(), "00000101");
    }

    #[test]
    fn from_bytes_rejects_empty() {
        assert_eq!(
            BitString::from_bytes(&[], BitOrder::MsbFirst),
            Err(Error::EmptyInput)
        );
    }

    #[test]
    fn byte_round_trip() {
        let data: Vec<u8> = (0..=255u8).chain([0x12, 0x34, 0x56]).collect();
        for order in [BitOrder::MsbFirst, BitOrder::LsbFirst] {
            let b = BitString::from_bytes(&data, order).unwrap();
            assert_eq!(b.len(), data.len() * 8);
            assert_eq!(b.to_bytes(order), data);
        }
    }

    #[test]
    fn truncate_examples() {
        let t = bits("10100000").truncate(4).unwrap();
        assert_eq!(t.to_string(), "1010");
        assert_eq!(t.ones(), 2);

        let b = bits("10100000");
        assert_eq!(b.truncate(8).unwrap(), b);

        let t = bits("11111111").truncate(3).unwrap();
        assert_eq!((t.to_string().as_str(), t.ones()), ("111", 3));
    }

    #[test]
    fn truncate_rejects_bad_lengths() {
        let b = bits("1010");
        assert!(matches!(b.truncate(0), Err(Error::InvalidLength { .. })));
        assert!(matches!(b.truncate(5), Err(Error::InvalidLength { .. })));
    }

    #[test]
    fn truncate_clears_padding_mid_word() {
        let b = BitString::from_bytes(&[0xFF; 16], BitOrder::MsbFirst).unwrap();
        let t = b.truncate(70).unwrap();
        assert_eq!(t.ones(), 70);
        assert_eq!(t.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn shift_xor_examples() {
        assert_eq!(bits("0101").shift_xor_distance(0), Ok(0));
        assert_eq!(bits("0101").shift_xor_distance(1), Ok(4));
        assert_eq!(bits("0011").shift_xor_distance(1), Ok(2));
    }

    #[test]
    fn shift_out_of_range() {
        assert_eq!(
            bits("0101").shift_xor_distance(4),
            Err(Error::InvalidShift { shift: 4, len: 4 })
        );
    }

    #[test]
    fn kernel_matches_naive_loop_for_every_short_length() {
        let mut seed = 0;
        for m in 1..=64 {
            for _ in 0..8 {
                seed += 1;
                let b = random_bitstring(m, 0.5, seed).unwrap();
                for n in 0..m {
                    assert_eq!(
                        b.shift_xor_distance(n).unwrap(),
                        naive_distance(&b, n),
                        "m={m} n={n} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn cycle_to_repeats() {
        let a = bits("01");
        assert_eq!(a.cycle_to(4).to_string(), "0101");
        let b = random_bitstring(37, 0.5, 9).unwrap();
        let c = b.cycle_to(37 * 5);
        assert_eq!(c.ones(), 5 * b.ones());
        assert!((0..c.len()).all(|i| c.get(i) == b.get(i % 37)));
        assert_eq!(c, BitString::from_bits(c.iter()).unwrap());
    }

    #[test]
    fn random_extremes() {
        assert_eq!(random_bitstring(1000, 0.0, 3).unwrap().ones(), 0);
        assert_eq!(random_bitstring(1000, 1.0, 3).unwrap().ones(), 1000);
        assert_eq!(random_bitstring(0, 0.5, 3), Err(Error::EmptyInput));
        assert!(matches!(
            random_bitstring(8, 1.5, 3),
            Err(Error::InvalidProbability(_))
        ));
    }

    #[test]
    fn random_is_seeded() {
        let a = random_bitstring(4096, 0.5, 42).unwrap();
        assert_eq!(a, random_bitstring(4096, 0.5, 42).unwrap());
        assert_ne!(a, random_bitstring(4096, 0.5, 43).unwrap());
    }

    #[test]
    fn random_half_density_concentrates() {
        for seed in 0..5 {
            let b = random_bitstring(131_072, 0.5, seed).unwrap();
            assert!((b.density() - 0.5).abs() < 0.01, "seed {seed}: {}", b.density());
        }
    }

    fn arb_bits(max_len: usize) -> impl Strategy<Value = BitString> {
        prop::collection::vec(any::<bool>(), 1..=max_len)
            .prop_map(|v| BitString::from_bits(v).unwrap())
    }

    proptest! {
        #[test]
        fn kernel_matches_naive_loop(b in arb_bits(300), n in any::<prop::sample::Index>()) {
            let n = n.index(b.len());
            prop_assert_eq!(b.shift_xor_distance(n).unwrap(), naive_distance(&b, n));
        }

        #[test]
        fn distance_is_even_symmetric_and_bounded(b in arb_bits(300), n in any::<prop::sample::Index>()) {
            let m = b.len();
            let n = n.index(m);
            let c = b.shift_xor_distance(n).unwrap();
            prop_assert_eq!(c % 2, 0);
            prop_assert!(c <= 2 * b.minority() as u64);
            if n > 0 {
                prop_assert_eq!(c, b.shift_xor_distance(m - n).unwrap());
            }
        }

        #[test]
        fn ones_is_popcount(b in arb_bits(300)) {
            prop_assert_eq!(b.ones(), b.iter().filter(|&x| x).count());
        }
    }
}
