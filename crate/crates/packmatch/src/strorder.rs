//! String orderings, rank/count references, fingerprints, and a string
//! dictionary based on minimal perfect hashing.
//!
//! Two total orders drive the matchers' rank arithmetic:
//!
//! * **prefix-lex** — ordinary left-to-right dictionary order (a proper
//!   prefix sorts before its extensions);
//! * **suffix-lex** — dictionary order of the *reversals*, i.e. strings are
//!   compared from their last symbol backwards.
//!
//! For a string set `X`, `prrank`/`surank` give the number of elements of
//! `X` strictly preceding a query in the respective order, and
//! `prcount`/`sucount` the number of elements extending the query on the
//! respective side. The defining property used everywhere downstream: the
//! elements of `X` that have `x` as a prefix occupy exactly the rank window
//! `[prrank(x), prrank(x) + prcount(x) - 1]` in prefix-lex order (and
//! symmetrically for suffixes). The rank/count functions here are
//! deliberately brute force — they are construction-time and test-oracle
//! tools, not query-path code.
//!
//! [`StringMph`] stores a static key set of packed strings: keys are mapped
//! to 61-bit polynomial fingerprints (retrying with a fresh random prime
//! until the fingerprints are injective on the key set) and a minimal
//! perfect hash over the fingerprints places each payload in a dense array.
//! Lookups hash the query in `O(|query| / WORD_BITS)` block reads and never
//! fail: a query outside the key set returns some arbitrary in-range
//! payload, so callers verify against stored string data.

use std::cmp::Ordering;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitpack::{lcp, lcs, PackedSlice, WORD_BITS};

// ===== Orders over plain symbol slices =====

/// Prefix-lexicographic (standard dictionary) comparison.
pub fn prefix_lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}

/// Suffix-lexicographic comparison: dictionary order of the reversals.
pub fn suffix_lex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// True if `a` is a prefix of `b`.
pub fn is_prefix(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && &b[..a.len()] == a
}

/// True if `a` is a suffix of `b`.
pub fn is_suffix(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && &b[b.len() - a.len()..] == a
}

/// Number of elements of `xs` strictly preceding `s` in prefix-lex order.
pub fn prrank<X: AsRef<[u32]>>(xs: &[X], s: &[u32]) -> usize {
    xs.iter()
        .filter(|x| prefix_lex_cmp(x.as_ref(), s) == Ordering::Less)
        .count()
}

/// Number of elements of `xs` that have `s` as a prefix.
pub fn prcount<X: AsRef<[u32]>>(xs: &[X], s: &[u32]) -> usize {
    xs.iter().filter(|x| is_prefix(s, x.as_ref())).count()
}

/// Number of elements of `xs` strictly preceding `s` in suffix-lex order.
pub fn surank<X: AsRef<[u32]>>(xs: &[X], s: &[u32]) -> usize {
    xs.iter()
        .filter(|x| suffix_lex_cmp(x.as_ref(), s) == Ordering::Less)
        .count()
}

/// Number of elements of `xs` that have `s` as a suffix.
pub fn sucount<X: AsRef<[u32]>>(xs: &[X], s: &[u32]) -> usize {
    xs.iter().filter(|x| is_suffix(s, x.as_ref())).count()
}

// ===== Orders over packed slices (word-parallel) =====

/// Prefix-lexicographic comparison of packed views, resolved through one
/// longest-common-prefix scan plus at most one symbol read.
pub fn prefix_lex_cmp_packed(a: PackedSlice<'_>, b: PackedSlice<'_>) -> Ordering {
    let l = lcp(a, b);
    if l == a.len().min(b.len()) {
        return a.len().cmp(&b.len());
    }
    a.char_at(l).cmp(&b.char_at(l))
}

/// Suffix-lexicographic comparison of packed views via a longest-common-
/// suffix scan.
pub fn suffix_lex_cmp_packed(a: PackedSlice<'_>, b: PackedSlice<'_>) -> Ordering {
    let l = lcs(a, b);
    if l == a.len().min(b.len()) {
        return a.len().cmp(&b.len());
    }
    a.char_at(a.len() - 1 - l).cmp(&b.char_at(b.len() - 1 - l))
}

// ===== Polynomial fingerprints =====

/// Fingerprint modulus: the Mersenne prime 2^61 - 1.
const FP_MOD: u64 = (1 << 61) - 1;
/// Packed blocks are digested as two sub-31-bit digits so every digit is a
/// canonical residue and distinct block values can never collide
/// independently of the hash parameter.
const DIGIT_SPLIT: u32 = 31;

#[inline]
fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FP_MOD as u128) as u64
}

#[inline]
fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= FP_MOD {
        s - FP_MOD
    } else {
        s
    }
}

#[inline]
fn submod(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + FP_MOD - b
    }
}

/// Symbols per fingerprint block: `WORD_BITS / bits_per_char`.
pub fn block_chars(bits_per_char: u32) -> usize {
    ((WORD_BITS / bits_per_char) as usize).max(1)
}

#[inline]
fn fold_block(h: u64, block: u64, gamma: u64) -> u64 {
    let d0 = block & ((1 << DIGIT_SPLIT) - 1);
    let d1 = block >> DIGIT_SPLIT;
    let h = addmod(mulmod(h, gamma), d0);
    addmod(mulmod(h, gamma), d1)
}

/// Polynomial fingerprint of a packed view.
///
/// The view is consumed in blocks of [`block_chars`] symbols (one word read
/// each, the final block implicitly zero-padded) and folded into a running
/// polynomial in `gamma` modulo 2^61 - 1. The empty view hashes to 0.
pub fn poly_hash(s: PackedSlice<'_>, gamma: u64) -> u64 {
    let bc = block_chars(s.bits_per_char());
    let mut h = 0u64;
    let mut pos = 0usize;
    while pos < s.len() {
        let take = bc.min(s.len() - pos);
        h = fold_block(h, s.block_bits(pos, take), gamma);
        pos += take;
    }
    h
}

/// Fingerprints of every length-`flen` factor of `s`, equal entry by entry
/// to `poly_hash(s.slice(i, flen), gamma)`.
///
/// Instead of hashing each factor from scratch, factors are grouped by
/// their start position modulo the block size: all factors of one residue
/// class share block boundaries, so one prefix-fingerprint table per class
/// answers each factor with O(1) modular operations (plus one direct read
/// for a trailing partial block). Total work is linear in `|s|`.
pub fn factor_hashes(s: PackedSlice<'_>, flen: usize, gamma: u64) -> Vec<u64> {
    assert!(flen >= 1, "factor_hashes: factor length must be positive");
    assert!(
        flen <= s.len(),
        "factor_hashes: factor longer than the string"
    );
    let bc = block_chars(s.bits_per_char());
    let count = s.len() - flen + 1;
    let full = flen / bc;
    let rem = flen % bc;
    // gamma^2 advances a fingerprint by one block (two digits); shift_full
    // advances it by `full` blocks.
    let g2 = mulmod(gamma, gamma);
    let mut shift_full = 1u64;
    for _ in 0..full {
        shift_full = mulmod(shift_full, g2);
    }
    let mut out = vec![0u64; count];
    let mut prefix: Vec<u64> = Vec::new();
    for align in 0..bc.min(count) {
        // Prefix fingerprints over the whole blocks at align, align+bc, ...
        let nblocks = if s.len() >= align {
            (s.len() - align) / bc
        } else {
            0
        };
        prefix.clear();
        prefix.push(0);
        let mut h = 0u64;
        for t in 0..nblocks {
            h = fold_block(h, s.block_bits(align + t * bc, bc), gamma);
            prefix.push(h);
        }
        let mut start = align;
        while start < count {
            let j = (start - align) / bc;
            let mut h = submod(prefix[j + full], mulmod(prefix[j], shift_full));
            if rem > 0 {
                h = fold_block(h, s.block_bits(start + full * bc, rem), gamma);
            }
            out[start] = h;
            start += bc;
        }
    }
    out
}

// ===== Primality (deterministic Miller-Rabin for u64) =====

fn pow_mod(mut base: u128, mut exp: u64, modulus: u128) -> u128 {
    let mut acc: u128 = 1;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a as u128, d, n as u128);
        if x == 1 || x == (n - 1) as u128 {
            continue;
        }
        for _ in 0..r - 1 {
            x = x * x % n as u128;
            if x == (n - 1) as u128 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn random_prime(rng: &mut impl Rng, width: u32) -> u64 {
    let lo = 1u64 << (width - 1);
    let hi = 1u64 << width;
    loop {
        let candidate = rng.random_range(lo..hi) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

// ===== Integer minimal perfect hash (hash and displace) =====

#[inline]
fn mix64(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^= x >> 31;
    x
}

#[inline]
fn hash_with(key: u64, seed: u64) -> u64 {
    mix64(key ^ seed.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Minimal perfect hash over a set of distinct `u64` keys, built with the
/// hash-and-displace scheme: keys are grouped into buckets, and each bucket
/// searches for a displacement under which all of its keys land on free
/// slots. Evaluation is two hashes and one table read.
#[derive(Debug, Clone)]
struct IntMph {
    seed: u64,
    disp: Vec<u32>,
    n: usize,
}

impl IntMph {
    fn build(keys: &[u64]) -> IntMph {
        let n = keys.len();
        if n == 0 {
            return IntMph {
                seed: 0,
                disp: Vec::new(),
                n: 0,
            };
        }
        'round: for round in 0u64.. {
            let seed = 0xC0DE_F00D ^ round.wrapping_mul(0xA24B_AED4_963E_E407);
            let mut buckets: Vec<Vec<u64>> = vec![Vec::new(); n];
            for &k in keys {
                buckets[(hash_with(k, seed) % n as u64) as usize].push(k);
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_unstable_by_key(|&b| std::cmp::Reverse(buckets[b].len()));
            let mut disp = vec![0u32; n];
            let mut taken = vec![false; n];
            let mut staged: Vec<usize> = Vec::new();
            for &b in &order {
                if buckets[b].is_empty() {
                    break;
                }
                let mut placed = false;
                'disp: for d in 1u32..=1_000_000 {
                    staged.clear();
                    for &k in &buckets[b] {
                        let pos =
                            (hash_with(k, seed ^ (d as u64).wrapping_mul(0xFF51_AFD7_ED55_8CCD))
                                % n as u64) as usize;
                        if taken[pos] || staged.contains(&pos) {
                            continue 'disp;
                        }
                        staged.push(pos);
                    }
                    for &pos in &staged {
                        taken[pos] = true;
                    }
                    disp[b] = d;
                    placed = true;
                    break;
                }
                if !placed {
                    continue 'round;
                }
            }
            return IntMph { seed, disp, n };
        }
        unreachable!()
    }

    #[inline]
    fn eval(&self, key: u64) -> usize {
        let b = (hash_with(key, self.seed) % self.n as u64) as usize;
        let d = self.disp[b] as u64;
        (hash_with(key, self.seed ^ d.wrapping_mul(0xFF51_AFD7_ED55_8CCD)) % self.n as u64) as usize
    }
}

// ===== String-keyed minimal perfect hash dictionary =====

/// A static dictionary over packed string keys with constant-size payloads.
///
/// Construction picks a random prime `gamma` and fingerprints every key
/// with [`poly_hash`] (length folded in as a final digit, so keys of
/// different lengths stay distinct); if two keys collide it retries with a
/// fresh prime. An [`IntMph`] over the fingerprints then assigns each key a
/// distinct slot in `[0, key_count)`.
///
/// `lookup` never rejects: for a query that was not a key it returns an
/// arbitrary in-range payload, and callers are expected to verify the match
/// against stored string data. An empty dictionary returns `None` for every
/// query.
#[derive(Debug, Clone)]
pub struct StringMph<V> {
    gamma: u64,
    mph: IntMph,
    values: Vec<V>,
    key_count: usize,
}

impl<V: Clone> StringMph<V> {
    /// Builds the dictionary from distinct keys and their payloads.
    ///
    /// Keys must be pairwise distinct as strings; all must share one symbol
    /// width.
    pub fn build(keys: &[(PackedSlice<'_>, V)]) -> StringMph<V> {
        if keys.is_empty() {
            return StringMph {
                gamma: 0,
                mph: IntMph::build(&[]),
                values: Vec::new(),
                key_count: 0,
            };
        }
        let total_bits: usize = keys
            .iter()
            .map(|(k, _)| k.len() * k.bits_per_char() as usize)
            .sum();
        let total_bytes = (total_bits / 8).max(2) as u64;
        // Fingerprint width 2*log2(total key bytes) + 16, clamped to the
        // 61-bit field.
        let width = (2 * (64 - total_bytes.leading_zeros()) + 16).clamp(17, 60);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0F57_A815);
        let mut fps: Vec<u64> = Vec::with_capacity(keys.len());
        let gamma = loop {
            let gamma = random_prime(&mut rng, width);
            fps.clear();
            fps.extend(keys.iter().map(|(k, _)| fingerprint(*k, gamma)));
            let mut sorted = fps.clone();
            sorted.sort_unstable();
            if sorted.windows(2).all(|w| w[0] != w[1]) {
                break gamma;
            }
        };
        let mph = IntMph::build(&fps);
        let mut values: Vec<Option<V>> = vec![None; keys.len()];
        for (fp, (_, v)) in fps.iter().zip(keys) {
            let slot = mph.eval(*fp);
            debug_assert!(values[slot].is_none());
            values[slot] = Some(v.clone());
        }
        StringMph {
            gamma,
            mph,
            values: values.into_iter().map(Option::unwrap).collect(),
            key_count: keys.len(),
        }
    }

    /// Number of keys.
    pub fn key_count(&self) -> usize {
        self.key_count
    }

    /// Payload slot for `x`.
    ///
    /// Returns `None` only when the dictionary is empty. If `x` was a key,
    /// this is its payload; otherwise it is some arbitrary payload and the
    /// caller must verify.
    pub fn lookup(&self, x: PackedSlice<'_>) -> Option<&V> {
        if self.key_count == 0 {
            return None;
        }
        Some(&self.values[self.mph.eval(fingerprint(x, self.gamma))])
    }
}

#[inline]
fn fingerprint(s: PackedSlice<'_>, gamma: u64) -> u64 {
    addmod(
        mulmod(poly_hash(s, gamma), gamma),
        (s.len() as u64) % FP_MOD,
    )
}

// ===== tests =====

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitpack::PackedText;
    use proptest::prelude::*;

    fn enc(s: &str) -> Vec<u32> {
        s.bytes().map(|b| (b - b'a') as u32).collect()
    }

    fn set(strs: &[&str]) -> Vec<Vec<u32>> {
        strs.iter().map(|s| enc(s)).collect()
    }

    #[test]
    fn order_examples() {
        assert_eq!(prefix_lex_cmp(&enc("ab"), &enc("b")), Ordering::Less);
        assert_eq!(prefix_lex_cmp(&enc("a"), &enc("ab")), Ordering::Less);
        assert_eq!(suffix_lex_cmp(&enc("ba"), &enc("ab")), Ordering::Less);
        assert_eq!(suffix_lex_cmp(&enc("a"), &enc("ba")), Ordering::Less);
        assert_eq!(suffix_lex_cmp(&enc("ab"), &enc("ab")), Ordering::Equal);
    }

    #[test]
    fn rank_count_examples() {
        let x = set(&["a", "ab", "ba"]);
        assert_eq!(prrank(&x, &enc("ba")), 2);
        assert_eq!(prcount(&x, &enc("a")), 2);
        assert_eq!(surank(&x, &enc("ab")), 2);
        assert_eq!(sucount(&x, &[]), 3);
        assert_eq!(sucount(&x, &enc("a")), 2); // "a", "ba"
        assert_eq!(prrank(&x, &[]), 0);
    }

    #[test]
    fn packed_orders_agree_with_plain() {
        let strings = ["", "a", "ab", "abc", "b", "ba", "bb", "aab", "aba"];
        for s in &strings {
            for t in &strings {
                let a = PackedText::from_symbols(&enc(s), 4).unwrap();
                let b = PackedText::from_symbols(&enc(t), 4).unwrap();
                assert_eq!(
                    prefix_lex_cmp_packed(a.as_slice(), b.as_slice()),
                    prefix_lex_cmp(&enc(s), &enc(t)),
                    "prefix {s:?} vs {t:?}"
                );
                assert_eq!(
                    suffix_lex_cmp_packed(a.as_slice(), b.as_slice()),
                    suffix_lex_cmp(&enc(s), &enc(t)),
                    "suffix {s:?} vs {t:?}"
                );
            }
        }
    }

    /// Rank-window membership: y has x as prefix iff y's prefix rank falls
    /// inside [prrank(x), prrank(x) + prcount(x) - 1]; same for suffixes.
    #[test]
    fn rank_window_equivalence_random_sets() {
        let mut state = 0x1234_5678_9ABC_DEF0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..2_000 {
            let size = 1 + (next() % 8) as usize;
            let mut xs: Vec<Vec<u32>> = Vec::new();
            while xs.len() < size {
                let len = (next() % 6) as usize;
                let s: Vec<u32> = (0..len).map(|_| (next() % 2) as u32).collect();
                if !xs.contains(&s) {
                    xs.push(s);
                }
            }
            for x in &xs {
                let lo = prrank(&xs, x);
                let hi = lo + prcount(&xs, x) - 1;
                for y in &xs {
                    let r = prrank(&xs, y);
                    assert_eq!(is_prefix(x, y), (lo..=hi).contains(&r), "{x:?} {y:?}");
                }
                let slo = surank(&xs, x);
                let shi = slo + sucount(&xs, x) - 1;
                for y in &xs {
                    let r = surank(&xs, y);
                    assert_eq!(is_suffix(x, y), (slo..=shi).contains(&r), "{x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn poly_hash_empty_is_zero() {
        let t = PackedText::from_symbols(&enc("abc"), 4).unwrap();
        assert_eq!(poly_hash(t.slice(1, 0), 12345), 0);
    }

    #[test]
    fn poly_hash_is_deterministic_and_content_based() {
        let t1 = PackedText::from_symbols(&enc("xaby"), 26).unwrap();
        let t2 = PackedText::from_symbols(&enc("abab"), 26).unwrap();
        let g = 0x1F3_5711;
        assert_eq!(poly_hash(t1.slice(1, 2), g), poly_hash(t2.slice(0, 2), g));
        assert_eq!(poly_hash(t2.slice(0, 2), g), poly_hash(t2.slice(2, 2), g));
        assert_ne!(poly_hash(t2.slice(0, 2), g), poly_hash(t2.slice(1, 2), g));
    }

    #[test]
    fn factor_hashes_match_direct_hashing() {
        let mut state = 0xDEAD_BEEFu64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for sigma in [2u32, 4, 16, 256] {
            for _ in 0..40 {
                let n = 1 + (next() % 200) as usize;
                let syms: Vec<u32> = (0..n).map(|_| (next() % sigma as u64) as u32).collect();
                let t = PackedText::from_symbols(&syms, sigma).unwrap();
                let flen = 1 + (next() as usize % n);
                let gamma = random_prime(&mut ChaCha8Rng::seed_from_u64(next()), 40);
                let fast = factor_hashes(t.as_slice(), flen, gamma);
                assert_eq!(fast.len(), n - flen + 1);
                for (i, &h) in fast.iter().enumerate() {
                    assert_eq!(h, poly_hash(t.slice(i, flen), gamma), "sigma={sigma} i={i}");
                }
            }
        }
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 61) - 3));
        assert!(is_prime(0xFFFF_FFFF_FFFF_FFC5)); // largest u64 prime
    }

    #[test]
    fn int_mph_is_minimal_and_perfect() {
        let keys: Vec<u64> = (0..500u64)
            .map(|i| i.wrapping_mul(0x9E3779B97F4A7C15))
            .collect();
        let mph = IntMph::build(&keys);
        let mut seen = vec![false; keys.len()];
        for &k in &keys {
            let slot = mph.eval(k);
            assert!(slot < keys.len());
            assert!(!seen[slot], "slot {slot} assigned twice");
            seen[slot] = true;
        }
    }

    #[test]
    fn string_mph_examples() {
        let store = PackedText::from_symbols(&enc("abba"), 4).unwrap();
        // keys "ab" -> 7 and "ba" -> 9
        let keys = vec![(store.slice(0, 2), 7u32), (store.slice(2, 2), 9u32)];
        let d = StringMph::build(&keys);
        assert_eq!(d.key_count(), 2);
        assert_eq!(d.lookup(store.slice(0, 2)), Some(&7));
        assert_eq!(d.lookup(store.slice(2, 2)), Some(&9));
        // Non-key lookup yields some in-range payload, never a crash.
        let junk = PackedText::from_symbols(&enc("bb"), 4).unwrap();
        let got = d.lookup(junk.as_slice()).unwrap();
        assert!(*got == 7 || *got == 9);
    }

    #[test]
    fn string_mph_empty_reports_non_key() {
        let store = PackedText::from_symbols(&enc("a"), 4).unwrap();
        let d: StringMph<u32> = StringMph::build(&[]);
        assert_eq!(d.lookup(store.as_slice()), None);
    }

    #[test]
    fn string_mph_distinguishes_lengths() {
        // "a" vs "aa": the zero-padded final block alone would not separate
        // them; the folded-in length digit must.
        let store = PackedText::from_symbols(&enc("aa"), 4).unwrap();
        let keys = vec![(store.slice(0, 1), 1u32), (store.slice(0, 2), 2u32)];
        let d = StringMph::build(&keys);
        assert_eq!(d.lookup(store.slice(0, 1)), Some(&1));
        assert_eq!(d.lookup(store.slice(0, 2)), Some(&2));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn string_mph_random_key_sets(seed in any::<u64>(),
                                      sigma in prop::sample::select(vec![2u32, 4, 256]),
                                      nkeys in 1usize..120) {
            let mut state = seed | 1;
            let mut next = move || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; state };
            let n = nkeys * 8;
            let syms: Vec<u32> = (0..n).map(|_| (next() % sigma as u64) as u32).collect();
            let t = PackedText::from_symbols(&syms, sigma).unwrap();
            // Distinct fixed-length factors as keys.
            let flen = 1 + (next() % 8) as usize;
            let mut handles: Vec<(usize, usize)> = Vec::new();
            let mut seen: Vec<Vec<u32>> = Vec::new();
            let mut pos = 0;
            while pos + flen <= n && handles.len() < nkeys {
                let f = syms[pos..pos + flen].to_vec();
                if !seen.contains(&f) {
                    seen.push(f);
                    handles.push((pos, flen));
                }
                pos += 1;
            }
            let keys: Vec<(PackedSlice<'_>, usize)> = handles
                .iter()
                .enumerate()
                .map(|(i, &(off, len))| (t.slice(off, len), i))
                .collect();
            let d = StringMph::build(&keys);
            for (i, &(off, len)) in handles.iter().enumerate() {
                prop_assert_eq!(d.lookup(t.slice(off, len)), Some(&i));
            }
        }
    }
}
