//! Bit-packed strings and the word-parallel primitives built on them.
//!
//! A [`PackedText`] stores a sequence of symbols drawn from an alphabet
//! `[0, sigma)` using `ceil(log2(sigma))` bits per symbol, packed
//! little-endian into 64-bit words: symbol `i` occupies bits
//! `[i*bits, (i+1)*bits)` of the bit stream, and bit `j` of the stream is
//! bit `j % 64` of word `j / 64`. With this layout the *first* differing
//! symbol of two equal-length strings corresponds to the *lowest* differing
//! bit of their XOR, and the last differing symbol to the highest bit, which
//! is what makes the [`lsb`]/[`msb`]-based scans below work.
//!
//! Everything here costs time proportional to the number of words touched,
//! not the number of symbols: equality, longest common prefix/suffix, and
//! the periodic-repetition scans all consume 64-bit chunks. The repetition
//! scans additionally repeat a short period until it fills at least half a
//! word, so a mismatch position can be located with a single XOR plus a
//! bit scan instead of symbol-at-a-time probing.

use crate::error::{Error, Result};

/// Machine word width in bits, exposed so callers can compute block
/// capacities such as `WORD_BITS / bits_per_char`.
pub const WORD_BITS: u32 = 64;

/// An immutable bit-packed string over an alphabet `[0, sigma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedText {
    len: usize,
    sigma: u32,
    bits: u32,
    words: Vec<u64>,
}

impl PackedText {
    /// Packs `symbols` over the alphabet `[0, sigma)`.
    ///
    /// Fails with [`Error::SymbolOutOfRange`] if any symbol is `>= sigma`,
    /// and with [`Error::InvalidParameter`] if `sigma == 0`.
    pub fn from_symbols(symbols: &[u32], sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::InvalidParameter("alphabet size must be at least 1"));
        }
        let bits = bits_per_char(sigma);
        let total_bits = symbols.len() * bits as usize;
        let mut words = vec![0u64; total_bits.div_ceil(64)];
        for (i, &s) in symbols.iter().enumerate() {
            if s >= sigma {
                return Err(Error::SymbolOutOfRange {
                    index: i,
                    symbol: s,
                    sigma,
                });
            }
            let bit = i * bits as usize;
            let (wi, off) = (bit / 64, (bit % 64) as u32);
            words[wi] |= (s as u64) << off;
            if off + bits > 64 {
                words[wi + 1] |= (s as u64) >> (64 - off);
            }
        }
        Ok(PackedText {
            len: symbols.len(),
            sigma,
            bits,
            words,
        })
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True if the text holds no symbols.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Declared alphabet size.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Bits used per symbol: `max(1, ceil(log2(sigma)))`.
    pub fn bits_per_char(&self) -> u32 {
        self.bits
    }

    /// The backing words, little-endian bit order. Exposed for layout tests.
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Symbol at position `i`, or `None` when `i >= len()`.
    pub fn get(&self, i: usize) -> Option<u32> {
        if i < self.len {
            Some(self.char_at(i))
        } else {
            None
        }
    }

    /// Symbol at position `i`. Panics when `i >= len()`.
    ///
    /// Reads at most two words (the symbol may straddle a word boundary).
    pub fn char_at(&self, i: usize) -> u32 {
        assert!(
            i < self.len,
            "char_at: index {i} out of range ({})",
            self.len
        );
        let bit = i * self.bits as usize;
        let (wi, off) = (bit / 64, (bit % 64) as u32);
        let mut v = self.words[wi] >> off;
        if off + self.bits > 64 {
            v |= self.words[wi + 1] << (64 - off);
        }
        (v & mask(self.bits)) as u32
    }

    /// Unpacks the whole text into plain symbols.
    pub fn to_symbols(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.char_at(i)).collect()
    }

    /// A view of `len` symbols starting at `start`. Panics when the range
    /// exceeds the text.
    pub fn slice(&self, start: usize, len: usize) -> PackedSlice<'_> {
        assert!(
            start.checked_add(len).is_some_and(|e| e <= self.len),
            "slice: range [{start}, {start}+{len}) out of bounds for length {}",
            self.len
        );
        PackedSlice {
            text: self,
            start,
            len,
        }
    }

    /// A view of the whole text.
    pub fn as_slice(&self) -> PackedSlice<'_> {
        PackedSlice {
            text: self,
            start: 0,
            len: self.len,
        }
    }
}

/// A borrowed view of a contiguous symbol range of a [`PackedText`].
///
/// Slices are cheap handles (pointer + offsets); sub-slicing never copies
/// symbol data, which is what lets the matchers keep dictionaries of
/// overlapping factors of one shared store.
#[derive(Debug, Clone, Copy)]
pub struct PackedSlice<'a> {
    text: &'a PackedText,
    start: usize,
    len: usize,
}

impl<'a> PackedSlice<'a> {
    /// Number of symbols in the view.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True if the view is empty.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Bits per symbol of the underlying text.
    pub fn bits_per_char(&self) -> u32 {
        self.text.bits
    }

    /// Symbol at position `i` of the view. Panics when out of range.
    pub fn char_at(&self, i: usize) -> u32 {
        assert!(
            i < self.len,
            "char_at: index {i} out of range ({})",
            self.len
        );
        self.text.char_at(self.start + i)
    }

    /// Symbol at position `i`, or `None` when out of range.
    pub fn get(&self, i: usize) -> Option<u32> {
        if i < self.len {
            Some(self.char_at(i))
        } else {
            None
        }
    }

    /// Sub-view of `len` symbols starting at `start` within this view.
    pub fn slice(&self, start: usize, len: usize) -> PackedSlice<'a> {
        assert!(
            start.checked_add(len).is_some_and(|e| e <= self.len),
            "slice: range [{start}, {start}+{len}) out of bounds for length {}",
            self.len
        );
        PackedSlice {
            text: self.text,
            start: self.start + start,
            len,
        }
    }

    /// Unpacks the view into plain symbols.
    pub fn to_symbols(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.char_at(i)).collect()
    }

    /// Reads `nchars` symbols starting at view position `pos` as one
    /// little-endian integer. Requires `nchars * bits_per_char <= 64`.
    pub fn block_bits(&self, pos: usize, nchars: usize) -> u64 {
        debug_assert!(pos + nchars <= self.len);
        let nbits = nchars as u32 * self.text.bits;
        debug_assert!(nbits <= 64);
        read_bits(
            &self.text.words,
            (self.start + pos) * self.text.bits as usize,
            nbits,
        )
    }

    fn bit_start(&self) -> usize {
        self.start * self.text.bits as usize
    }
}

#[inline]
fn bits_per_char(sigma: u32) -> u32 {
    if sigma <= 2 {
        1
    } else {
        32 - (sigma - 1).leading_zeros()
    }
}

#[inline]
fn mask(nbits: u32) -> u64 {
    if nbits >= 64 {
        u64::MAX
    } else {
        (1u64 << nbits) - 1
    }
}

/// Reads `nbits <= 64` bits starting at absolute bit offset `bit`.
#[inline]
fn read_bits(words: &[u64], bit: usize, nbits: u32) -> u64 {
    if nbits == 0 {
        return 0;
    }
    let (wi, off) = (bit / 64, (bit % 64) as u32);
    let mut v = words[wi] >> off;
    if off > 0 && off + nbits > 64 {
        v |= words[wi + 1] << (64 - off);
    }
    v & mask(nbits)
}

/// Position of the most significant set bit of `x`, or `None` for zero.
///
/// `msb(0b1) == Some(0)`, `msb(0b1000_0000) == Some(7)`.
#[inline]
pub fn msb(x: u64) -> Option<u32> {
    if x == 0 {
        None
    } else {
        Some(63 - x.leading_zeros())
    }
}

/// Position of the least significant set bit of `x`, or `None` for zero.
///
/// `lsb(0b1010_0000) == Some(5)`.
#[inline]
pub fn lsb(x: u64) -> Option<u32> {
    if x == 0 {
        None
    } else {
        Some(x.trailing_zeros())
    }
}

/// Word-parallel equality of two equal-length views.
///
/// Panics if the views disagree on length or bits per symbol. Costs
/// `O(len * bits / 64 + 1)` word operations.
pub fn compare_equal(a: PackedSlice<'_>, b: PackedSlice<'_>) -> bool {
    assert_eq!(a.len(), b.len(), "compare_equal: length mismatch");
    assert_eq!(
        a.bits_per_char(),
        b.bits_per_char(),
        "compare_equal: symbol width mismatch"
    );
    let total = a.len * a.text.bits as usize;
    let (abit, bbit) = (a.bit_start(), b.bit_start());
    let mut done = 0usize;
    while done < total {
        let chunk = (total - done).min(64) as u32;
        if read_bits(&a.text.words, abit + done, chunk)
            != read_bits(&b.text.words, bbit + done, chunk)
        {
            return false;
        }
        done += chunk as usize;
    }
    true
}

/// Length of the longest common prefix of two views, in symbols.
///
/// Scans 64-bit chunks; the first differing chunk is resolved with one XOR
/// and an [`lsb`] scan.
pub fn lcp(a: PackedSlice<'_>, b: PackedSlice<'_>) -> usize {
    assert_eq!(
        a.bits_per_char(),
        b.bits_per_char(),
        "lcp: symbol width mismatch"
    );
    let bits = a.text.bits;
    let min_chars = a.len.min(b.len);
    let total = min_chars * bits as usize;
    let (abit, bbit) = (a.bit_start(), b.bit_start());
    let mut done = 0usize;
    while done < total {
        let chunk = (total - done).min(64) as u32;
        let xa = read_bits(&a.text.words, abit + done, chunk);
        let xb = read_bits(&b.text.words, bbit + done, chunk);
        if xa != xb {
            let t = lsb(xa ^ xb).unwrap();
            return (done + t as usize) / bits as usize;
        }
        done += chunk as usize;
    }
    min_chars
}

/// Length of the longest common suffix of two views, in symbols.
///
/// Mirror image of [`lcp`]: chunks are taken from the high end and the last
/// differing chunk is resolved with an [`msb`] scan.
pub fn lcs(a: PackedSlice<'_>, b: PackedSlice<'_>) -> usize {
    assert_eq!(
        a.bits_per_char(),
        b.bits_per_char(),
        "lcs: symbol width mismatch"
    );
    let bits = a.text.bits;
    let min_chars = a.len.min(b.len);
    let total = min_chars * bits as usize;
    let aend = a.bit_start() + a.len * bits as usize;
    let bend = b.bit_start() + b.len * bits as usize;
    let mut done = 0usize;
    while done < total {
        let chunk = (total - done).min(64) as u32;
        let xa = read_bits(&a.text.words, aend - done - chunk as usize, chunk);
        let xb = read_bits(&b.text.words, bend - done - chunk as usize, chunk);
        if xa != xb {
            let t = msb(xa ^ xb).unwrap();
            let matched_bits = done + (chunk - 1 - t) as usize;
            return matched_bits / bits as usize;
        }
        done += chunk as usize;
    }
    min_chars
}

/// Largest `i` such that `p` repeated `i` times is a prefix of `s`.
///
/// Panics when `p` is empty; any `s` (including one shorter than `p`) is
/// accepted and yields the correct count. When `p` packs into fewer than
/// `WORD_BITS / 2` bits it is first repeated until a copy chain fills more
/// than half a word, so the scan advances at least half a word per step and
/// the mismatch offset inside the final block falls out of a single XOR and
/// [`lsb`] scan.
pub fn longest_prefix_repetition(p: PackedSlice<'_>, s: PackedSlice<'_>) -> usize {
    assert!(!p.is_empty(), "longest_prefix_repetition: empty period");
    assert_eq!(p.bits_per_char(), s.bits_per_char());
    let bits = p.bits_per_char();
    let (m, n) = (p.len(), s.len());
    let pbits = m * bits as usize;

    if pbits * 2 >= WORD_BITS as usize {
        // Long period: one word-parallel block compare per copy.
        let mut i = 0usize;
        while (i + 1) * m <= n && compare_equal(s.slice(i * m, m), p) {
            i += 1;
        }
        return i;
    }

    // Short period: compare against p^k where k*m symbols fill > half a word.
    let k = WORD_BITS as usize / pbits;
    let mstar = k * m;
    let pword = p.block_bits(0, m);
    let mut pk = 0u64;
    for j in 0..k {
        pk |= pword << (j * pbits);
    }
    let mut j = 0usize;
    while (j + 1) * mstar <= n
        && s.block_bits(j * mstar, mstar) == pk & mask((mstar * bits as usize) as u32)
    {
        j += 1;
    }
    let rem = n - j * mstar;
    let cmp = rem.min(mstar);
    let qx = if cmp == 0 {
        0
    } else {
        s.block_bits(j * mstar, cmp)
    };
    let px = pk & mask((cmp * bits as usize) as u32);
    let extra = match lsb(qx ^ px) {
        None => rem.min(mstar) / m,
        Some(t) => (t / bits) as usize / m,
    };
    j * k + extra
}

/// Largest `i` such that `p` repeated `i` times is a suffix of `s`.
///
/// Mirror image of [`longest_prefix_repetition`]; the final block is
/// resolved with [`msb`] so the count of matching trailing symbols is exact.
pub fn longest_suffix_repetition(p: PackedSlice<'_>, s: PackedSlice<'_>) -> usize {
    assert!(!p.is_empty(), "longest_suffix_repetition: empty period");
    assert_eq!(p.bits_per_char(), s.bits_per_char());
    let bits = p.bits_per_char();
    let (m, n) = (p.len(), s.len());
    let pbits = m * bits as usize;

    if pbits * 2 >= WORD_BITS as usize {
        let mut i = 0usize;
        while (i + 1) * m <= n && compare_equal(s.slice(n - (i + 1) * m, m), p) {
            i += 1;
        }
        return i;
    }

    let k = WORD_BITS as usize / pbits;
    let mstar = k * m;
    let pword = p.block_bits(0, m);
    let mut pk = 0u64;
    for j in 0..k {
        pk |= pword << (j * pbits);
    }
    let full = mask((mstar * bits as usize) as u32);
    let mut j = 0usize;
    while (j + 1) * mstar <= n && s.block_bits(n - (j + 1) * mstar, mstar) == pk & full {
        j += 1;
    }
    let rem = n - j * mstar;
    let cmp = rem.min(mstar);
    if cmp == 0 {
        return j * k;
    }
    // Compare the last `cmp` symbols of the unmatched prefix of s against
    // the last `cmp` symbols of p^k.
    let qx = s.block_bits(rem - cmp, cmp);
    let px = (pk >> ((mstar - cmp) * bits as usize)) & mask((cmp * bits as usize) as u32);
    let extra = match msb(qx ^ px) {
        None => cmp / m,
        Some(t) => {
            let matched_chars = cmp - 1 - (t / bits) as usize;
            matched_chars / m
        }
    };
    j * k + extra
}

// ===== tests =====
