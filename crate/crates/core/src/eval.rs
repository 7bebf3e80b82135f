//! Evaluation vectors: words of F2^(2^n), one bit per evaluation point.
//!
//! Coordinate j (1-based) carries the point u with u_i = 1 - bit_i(j-1), i.e.
//! coordinate 1 evaluates at the all-ones point and coordinate 2^n at the
//! origin. Internally coordinates are 0-based (c = j - 1). Rendered as a
//! binary string with coordinate 1 leftmost.

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported number of variables (vector length 2^20).
pub const MAX_N: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EvalVector {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

impl EvalVector {
    pub fn zero(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::NTooLarge(n));
        }
        Ok(EvalVector { n, words: vec![0; word_count(n)] })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut v = Self::zero(n)?;
        for w in &mut v.words {
            *w = u64::MAX;
        }
        v.mask_tail();
        Ok(v)
    }

    /// Builds a vector from a per-coordinate predicate (0-based coordinates).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        let mut v = Self::zero(n)?;
        for c in 0..v.len() {
            if f(c) {
                v.set(c, true);
            }
        }
        Ok(v)
    }

    /// Low 2^n bits of `w` as a vector; only for n <= 6.
    pub fn from_word(n: usize, w: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Unsupported(format!("from_word needs n <= 6, got {n}")));
        }
        let mut v = Self::zero(n)?;
        v.words[0] = w;
        v.mask_tail();
        Ok(v)
    }

    fn mask_tail(&mut self) {
        let len = self.len();
        if len % 64 != 0 {
            let last = self.words.len() - 1;
            self.words[last] &= (1u64 << (len % 64)) - 1;
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        1usize << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, c: usize) -> bool {
        debug_assert!(c < self.len());
        (self.words[c >> 6] >> (c & 63)) & 1 == 1
    }

    pub fn set(&mut self, c: usize, bit: bool) {
        debug_assert!(c < self.len());
        if bit {
            self.words[c >> 6] |= 1u64 << (c & 63);
        } else {
            self.words[c >> 6] &= !(1u64 << (c & 63));
        }
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n, "xor of different-length vectors");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "product of different-length vectors");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        EvalVector { n: self.n, words }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The whole vector as a single word, if it fits (n <= 6).
    pub fn as_word(&self) -> Option<u64> {
        if self.n <= 6 {
            Some(self.words[0])
        } else {
            None
        }
    }

    /// Parses a binary string ("01100001", spaces allowed). The length must
    /// be a power of two.
    pub fn parse(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|ch| !ch.is_whitespace())
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bitstring"))),
            })
            .collect::<Result<_>>()?;
        if bits.is_empty() || !bits.len().is_power_of_two() {
            return Err(Error::Parse(format!(
                "bitstring length {} is not a power of two",
                bits.len()
            )));
        }
        let n = bits.len().trailing_zeros() as usize;
        Self::from_fn(n, |c| bits[c])
    }
}

impl fmt::Display for EvalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.len() {
            f.write_str(if self.get(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for EvalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EvalVector({self})")
    }
}
