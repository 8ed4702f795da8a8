//! Packed bit strings over `{0,1}^n` and sign vectors over `{-1,1}^n`.
//!
//! Position `i` of a string lives in bit `i % 64` of word `i / 64`. For sign
//! vectors a set bit means `x_i = -1`, so the bit description `(1 - x_i) / 2`
//! of a point is exactly its packed representation and parities reduce to
//! popcounts.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    len: usize,
    words: Vec<u64>,
}

/// Hidden string `a` defining the target parity.
pub type TargetString = BitString;
/// Fourier index `j`, also the data part of a measurement outcome.
pub type IndexString = BitString;

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString { len, words: vec![0; word_count(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    /// Builds a string of length `len <= 64` from the low bits of `mask`.
    pub fn from_u64(mask: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 bits");
        let mut s = BitString { len, words: vec![mask; word_count(len)] };
        s.trim();
        s
    }

    /// Packs `words` as produced by [`BitString::words`]; excess bits are cleared.
    pub fn from_words(words: Vec<u64>, len: usize) -> Result<Self> {
        if words.len() != word_count(len) {
            return Err(Error::Dimension { expected: word_count(len), found: words.len() });
        }
        let mut s = BitString { len, words };
        s.trim();
        Ok(s)
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut s = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut s = BitString { len, words: (0..word_count(len)).map(|_| rng.gen()).collect() };
        s.trim();
        s
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The packed value when the string fits in one word.
    pub fn to_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn check_len(&self, expected: usize) -> Result<()> {
        if self.len == expected {
            Ok(())
        } else {
            Err(Error::Dimension { expected, found: self.len })
        }
    }

    pub fn xor(&self, other: &BitString) -> Result<BitString> {
        other.check_len(self.len)?;
        Ok(BitString {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitString) -> Result<bool> {
        other.check_len(self.len)?;
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        Ok(ones % 2 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// Parses `"1011"`; the first character is position 0.
impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::InvalidBits("empty string".into()));
        }
        let bits = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidBits(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString::from_bools(&bits))
    }
}

/// A point of the cube `{-1,1}^n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PmOneVector {
    minus: BitString,
}

impl PmOneVector {
    pub fn all_plus(len: usize) -> Self {
        PmOneVector { minus: BitString::zeros(len) }
    }

    /// From entries in `{-1, +1}`.
    pub fn from_signs(entries: &[i8]) -> Result<Self> {
        let mut minus = BitString::zeros(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            match e {
                1 => {}
                -1 => minus.set(i, true),
                other => return Err(Error::InvalidBits(format!("sign entry must be +-1, got {other}"))),
            }
        }
        Ok(PmOneVector { minus })
    }

    /// Interprets set bits as `-1` entries.
    pub fn from_bit_description(minus: BitString) -> Self {
        PmOneVector { minus }
    }

    pub fn from_mask(mask: u64, len: usize) -> Self {
        PmOneVector { minus: BitString::from_u64(mask, len) }
    }

    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    pub fn entry(&self, i: usize) -> i8 {
        if self.minus.get(i) {
            -1
        } else {
            1
        }
    }

    /// The bit description `(1 - x_i) / 2`.
    pub fn bits(&self) -> &BitString {
        &self.minus
    }

    pub fn signs(&self) -> Vec<i8> {
        (0..self.len()).map(|i| self.entry(i)).collect()
    }
}

impl fmt::Debug for PmOneVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PmOneVector({:?})", self.signs())
    }
}
