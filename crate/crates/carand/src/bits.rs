//! Packed binary sequences.
//!
//! A [`BitSequence`] is a finite 0/1 sequence stored 64 bits per word,
//! least-significant bit first: bit `i` lives at `words[i / 64]`, position
//! `i % 64`. Unused high bits of the last word are kept zero so that equality
//! and hashing work on the raw words.

use crate::error::{Error, Result};

/// A finite sequence of bits; the unit of statistical testing and of
/// cipher keystreams.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: usize) -> Self {
        Self {
            words: Vec::with_capacity(bits.div_ceil(64)),
            len: 0,
        }
    }

    /// Builds a sequence from one value per bit; every element must be 0 or 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut seq = Self::with_capacity(bits.len());
        for &b in bits {
            seq.push(b);
        }
        seq
    }

    /// Parses '0'/'1' text. Newlines and carriage returns are ignored;
    /// anything else is rejected.
    pub fn from_ascii(text: &str) -> Result<Self> {
        let mut seq = Self::with_capacity(text.len());
        for (i, ch) in text.bytes().enumerate() {
            match ch {
                b'0' => seq.push(0),
                b'1' => seq.push(1),
                b'\n' | b'\r' => {}
                other => {
                    return Err(Error::Format {
                        what: "bit text",
                        detail: format!("unexpected byte 0x{other:02x} at offset {i}"),
                    })
                }
            }
        }
        Ok(seq)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bit `i` as 0 or 1. Panics when out of range.
    #[inline]
    pub fn bit(&self, i: usize) -> u8 {
        assert!(i < self.len, "bit index {i} out of range (len {})", self.len);
        ((self.words[i / 64] >> (i % 64)) & 1) as u8
    }

    #[inline]
    pub fn push(&mut self, bit: u8) {
        debug_assert!(bit <= 1);
        let pos = self.len % 64;
        if pos == 0 {
            self.words.push(0);
        }
        if bit != 0 {
            *self.words.last_mut().unwrap() |= 1 << pos;
        }
        self.len += 1;
    }

    /// Appends the low `nbits` bits of packed `words` (LSB-first layout).
    pub fn append_words(&mut self, words: &[u64], nbits: usize) {
        debug_assert!(nbits <= words.len() * 64);
        let shift = self.len % 64;
        if shift == 0 {
            // word-aligned fast path
            let full = nbits / 64;
            self.words.extend_from_slice(&words[..full]);
            if nbits % 64 != 0 {
                self.words.push(words[full] & mask_low(nbits % 64));
            }
            self.len += nbits;
            return;
        }
        for i in 0..nbits {
            self.push(((words[i / 64] >> (i % 64)) & 1) as u8);
        }
    }

    pub fn extend(&mut self, other: &BitSequence) {
        self.append_words(&other.words, other.len);
    }

    /// Number of one bits.
    pub fn ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Copy of the sub-sequence `[start, start + len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitSequence {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitSequence::with_capacity(len);
        if start % 64 == 0 {
            out.append_words(&self.words[start / 64..], len);
        } else {
            for i in 0..len {
                out.push(self.bit(start + i));
            }
        }
        out
    }

    /// One byte per bit; convenient form for the statistical tests.
    pub fn to_bit_vec(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len);
        for (wi, &w) in self.words.iter().enumerate() {
            let take = (self.len - wi * 64).min(64);
            for j in 0..take {
                out.push(((w >> j) & 1) as u8);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |i| self.bit(i))
    }

    /// Bitwise complement of the sequence.
    pub fn complemented(&self) -> BitSequence {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.len % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= mask_low(self.len % 64);
            }
        }
        BitSequence { words, len: self.len }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Packs bits into bytes MSB-first within each byte, zero-padding the
    /// final byte. This is the byte convention of the packed file format and
    /// the cipher keystream.
    pub fn to_bytes_msb(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.len.div_ceil(8)];
        for i in 0..self.len {
            if self.bit(i) == 1 {
                out[i / 8] |= 1 << (7 - i % 8);
            }
        }
        out
    }

    /// Inverse of [`to_bytes_msb`](Self::to_bytes_msb) for a known bit count.
    pub fn from_bytes_msb(bytes: &[u8], nbits: usize) -> Result<Self> {
        if bytes.len() < nbits.div_ceil(8) {
            return Err(Error::Format {
                what: "packed bits",
                detail: format!("{} bytes cannot hold {nbits} bits", bytes.len()),
            });
        }
        let mut seq = Self::with_capacity(nbits);
        for i in 0..nbits {
            seq.push((bytes[i / 8] >> (7 - i % 8)) & 1);
        }
        Ok(seq)
    }
}

impl std::fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.len <= 64 {
            let s: String = self.iter().map(|b| if b == 1 { '1' } else { '0' }).collect();
            write!(f, "BitSequence({s})")
        } else {
            write!(f, "BitSequence(len={})", self.len)
        }
    }
}

impl FromIterator<u8> for BitSequence {
    fn from_iter<T: IntoIterator<Item = u8>>(iter: T) -> Self {
        let mut seq = BitSequence::new();
        for b in iter {
            seq.push(b);
        }
        seq
    }
}

#[inline]
pub(crate) fn mask_low(bits: usize) -> u64 {
    debug_assert!(bits >= 1 && bits <= 64);
    if bits == 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_read_round_trip() {
        let bits: Vec<u8> = (0..200).map(|i| ((i * 7 + 3) % 5 == 0) as u8).collect();
        let seq = BitSequence::from_bits(&bits);
        assert_eq!(seq.len(), 200);
        assert_eq!(seq.to_bit_vec(), bits);
        assert_eq!(seq.ones(), bits.iter().map(|&b| b as usize).sum::<usize>());
    }

    #[test]
    fn ascii_parse_ignores_newlines() {
        let seq = BitSequence::from_ascii("0101\n1100\r\n1").unwrap();
        assert_eq!(seq.to_bit_vec(), vec![0, 1, 0, 1, 1, 1, 0, 0, 1]);
        assert!(BitSequence::from_ascii("01x1").is_err());
    }

    #[test]
    fn msb_byte_packing() {
        let seq = BitSequence::from_ascii("10000000").unwrap();
        assert_eq!(seq.to_bytes_msb(), vec![0x80]);
        let seq = BitSequence::from_ascii("110000001").unwrap();
        assert_eq!(seq.to_bytes_msb(), vec![0xc0, 0x80]);
        let back = BitSequence::from_bytes_msb(&[0xc0, 0x80], 9).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn slice_and_extend() {
        let bits: Vec<u8> = (0..300).map(|i| (i % 3 == 0) as u8).collect();
        let seq = BitSequence::from_bits(&bits);
        let a = seq.slice(0, 128);
        let b = seq.slice(128, 172);
        let mut joined = a.clone();
        joined.extend(&b);
        assert_eq!(joined, seq);
        assert_eq!(seq.slice(65, 10).to_bit_vec(), &bits[65..75]);
    }

    #[test]
    fn complement_flips_every_bit() {
        let bits: Vec<u8> = (0..130).map(|i| (i % 7 < 3) as u8).collect();
        let seq = BitSequence::from_bits(&bits);
        let c = seq.complemented();
        assert_eq!(c.len(), seq.len());
        for i in 0..seq.len() {
            assert_eq!(c.bit(i), 1 - seq.bit(i));
        }
        assert_eq!(c.complemented(), seq);
    }
}
