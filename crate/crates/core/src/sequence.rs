//! Bit-packed binary sequences and the seeded generator that produces them.
//!
//! Symbols are stored 64 to a word, symbol `k` (0-based) at bit `k % 64` of
//! word `k / 64`. Bits past the end of the sequence are always zero, so the
//! derived `Eq`/`Hash` compare symbol content only.
//!
//! The packed byte format follows the same layout: symbol `k` lives at bit
//! `k % 8` (least significant first) of byte `k / 8`.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{LcsError, Result};

const WORD_BITS: usize = 64;

/// Generator behind every random sequence. Pinned to ChaCha8 from
/// `rand_chacha` 0.3, which guarantees a value-stable stream per
/// `(seed, stream)` pair.
pub type TrialRng = ChaCha8Rng;

/// Version tag for the generator; bump whenever [`TrialRng`] or the way
/// sequences are drawn from it changes.
pub const RNG_VERSION: u32 = 1;

/// A master seed plus a stream index; together they name one reproducible
/// random byte stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master: u64,
    pub stream: u64,
}

impl SeedSpec {
    pub const fn new(master: u64, stream: u64) -> Self {
        Self { master, stream }
    }

    pub fn rng(&self) -> TrialRng {
        let mut rng = TrialRng::seed_from_u64(self.master);
        rng.set_stream(self.stream);
        rng
    }
}

/// Immutable sequence over {0,1}.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BinarySequence {
    words: Vec<u64>,
    len: usize,
}

impl BinarySequence {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a sequence from symbol values, rejecting anything outside {0,1}.
    pub fn from_symbols<I>(symbols: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: Into<u64>,
    {
        let mut words = Vec::new();
        let mut len = 0;
        for (position, s) in symbols.into_iter().enumerate() {
            let s: u64 = s.into();
            if s > 1 {
                return Err(LcsError::InvalidSymbol {
                    position,
                    found: char::from_digit((s % 10) as u32, 10).unwrap_or('?'),
                });
            }
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            words[len / WORD_BITS] |= s << (len % WORD_BITS);
            len += 1;
        }
        Ok(Self { words, len })
    }

    /// Parses an ASCII string over `'0'`/`'1'`.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(text.len());
        for (position, c) in text.chars().enumerate() {
            match c {
                '0' => bits.push(0u8),
                '1' => bits.push(1u8),
                found => return Err(LcsError::InvalidSymbol { position, found }),
            }
        }
        Self::from_symbols(bits)
    }

    /// Unpacks `len` symbols from the packed byte format.
    pub fn from_packed_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() * 8 < len {
            return Err(LcsError::PackedTooShort { available: bytes.len() * 8, requested: len });
        }
        let mut words = vec![0u64; len.div_ceil(WORD_BITS)];
        for (w, chunk) in words.iter_mut().zip(bytes.chunks(8)) {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            *w = u64::from_le_bytes(buf);
        }
        let mut seq = Self { words, len };
        seq.clear_tail();
        Ok(seq)
    }

    /// Draws `len` fair, independent bits from `rng`. Words are consumed in
    /// order, so a shorter draw from the same stream is a prefix of a longer one.
    pub fn random_from<R: RngCore + ?Sized>(rng: &mut R, len: usize) -> Self {
        let words = (0..len.div_ceil(WORD_BITS)).map(|_| rng.next_u64()).collect();
        let mut seq = Self { words, len };
        seq.clear_tail();
        seq
    }

    pub fn random(len: usize, seed: SeedSpec) -> Self {
        Self::random_from(&mut seed.rng(), len)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol `x_i` with the 1-based index used throughout the crate.
    ///
    /// Panics if `i` is 0 or greater than the length.
    pub fn symbol(&self, i: usize) -> u8 {
        assert!(i >= 1 && i <= self.len, "symbol index {i} out of 1..={}", self.len);
        self.bit(i - 1)
    }

    #[inline]
    fn bit(&self, k: usize) -> u8 {
        ((self.words[k / WORD_BITS] >> (k % WORD_BITS)) & 1) as u8
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = u8> + '_ {
        (0..self.len).map(move |k| self.bit(k))
    }

    /// One byte per symbol, in order.
    pub fn to_symbols(&self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn to_packed_bytes(&self) -> Vec<u8> {
        self.words.iter().flat_map(|w| w.to_le_bytes()).take(self.len.div_ceil(8)).collect()
    }

    /// The initial segment of length `k` (clamped to the full length).
    pub fn prefix(&self, k: usize) -> Self {
        let len = k.min(self.len);
        let mut seq = Self { words: self.words[..len.div_ceil(WORD_BITS)].to_vec(), len };
        seq.clear_tail();
        seq
    }

    /// Every symbol flipped.
    pub fn complement(&self) -> Self {
        let mut seq = Self { words: self.words.iter().map(|w| !w).collect(), len: self.len };
        seq.clear_tail();
        seq
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut symbols = self.to_symbols();
        symbols.extend(other.iter());
        Self::from_symbols(symbols).expect("symbols come from valid sequences")
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    fn clear_tail(&mut self) {
        let used = self.len % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }
}

impl FromStr for BinarySequence {
    type Err = LcsError;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_ascii(s)
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.iter() {
            f.write_str(if s == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinarySequence({self})")
    }
}

/// Enumerates every sequence of length exactly `len` (`len <= 20`), in the
/// order of their integer encoding with bit `k` holding symbol `k + 1`.
pub fn all_sequences(len: usize) -> impl Iterator<Item = BinarySequence> {
    assert!(len <= 20, "refusing to enumerate 2^{len} sequences");
    (0u64..1 << len)
        .map(move |code| BinarySequence::from_symbols((0..len).map(|k| (code >> k) & 1)).expect("bits are 0/1"))
}

/// Every sequence of length `0..=max_len`.
pub fn all_sequences_up_to(max_len: usize) -> impl Iterator<Item = BinarySequence> {
    (0..=max_len).flat_map(all_sequences)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_worked_example() {
        let x = BinarySequence::from_ascii("01101110").unwrap();
        assert_eq!(x.len(), 8);
        assert_eq!(x.symbol(1), 0);
        assert_eq!(x.symbol(2), 1);
        assert_eq!(x.to_string(), "01101110");
    }

    #[test]
    fn empty_and_invalid() {
        assert!(BinarySequence::from_ascii("").unwrap().is_empty());
        assert_eq!(BinarySequence::from_ascii("2"), Err(LcsError::InvalidSymbol { position: 0, found: '2' }));
        assert!(BinarySequence::from_symbols([0u8, 1, 2]).is_err());
    }

    #[test]
    fn prefix_zero_is_empty() {
        let x: BinarySequence = "101".parse().unwrap();
        assert_eq!(x.prefix(0), BinarySequence::empty());
        assert_eq!(x.prefix(2).to_string(), "10");
        assert_eq!(x.prefix(3), x);
    }

    #[test]
    fn packed_bytes_are_lsb_first() {
        let x: BinarySequence = "1000000001".parse().unwrap();
        assert_eq!(x.to_packed_bytes(), vec![0b0000_0001, 0b0000_0010]);
        // garbage in unused high bits is ignored
        let y = BinarySequence::from_packed_bytes(&[0x01, 0xFE], 10).unwrap();
        assert_eq!(y, x);
        assert!(BinarySequence::from_packed_bytes(&[0], 9).is_err());
    }

    #[test]
    fn complement_keeps_tail_clear() {
        let x: BinarySequence = "0101".parse().unwrap();
        let c = x.complement();
        assert_eq!(c.to_string(), "1010");
        assert_eq!(c.count_ones(), 2);
        assert_eq!(c.complement(), x);
    }

    #[test]
    fn random_is_deterministic_and_prefix_stable() {
        let seed = SeedSpec::new(7, 3);
        assert_eq!(BinarySequence::random(0, seed), BinarySequence::empty());
        let a = BinarySequence::random(300, seed);
        assert_eq!(a, BinarySequence::random(300, seed));
        assert_eq!(BinarySequence::random(130, seed), a.prefix(130));
        assert_ne!(a, BinarySequence::random(300, SeedSpec::new(7, 4)));
    }

    #[test]
    fn random_bits_are_balanced() {
        let x = BinarySequence::random(1_000_000, SeedSpec::new(2024, 0));
        let frac = x.count_ones() as f64 / x.len() as f64;
        assert!((frac - 0.5).abs() < 0.005, "fraction of ones {frac}");
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_sequences(0).count(), 1);
        assert_eq!(all_sequences(3).count(), 8);
        assert_eq!(all_sequences_up_to(7).count(), 255);
    }
}
