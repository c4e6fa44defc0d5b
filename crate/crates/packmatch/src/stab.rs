//! Stabbing structures and ordered string indexes.
//!
//! The block matcher reduces automaton transitions and occurrence reporting
//! to point-stabbing queries:
//!
//! * [`Stab1D`] answers "which interval contains this point" for a *laminar*
//!   family (any two intervals are nested or disjoint), returning the
//!   tightest (innermost) such interval. Build is a sort plus one sweep;
//!   queries are a single predecessor search over elementary segments.
//! * [`Stab2D`] answers "which axis-aligned rectangles contain this point"
//!   for an arbitrary rectangle family, via a segment tree over the x-axis
//!   whose canonical nodes each carry a segment tree over the y-axis with
//!   rectangle-id lists at canonical nodes. A rectangle is stored O(log²)
//!   times and queries cost O(log² + output).
//! * [`StringIndex`] stores a set of packed strings sorted in prefix-lex or
//!   suffix-lex order and finds, for a query `x`, the longest stored string
//!   that is a prefix (resp. suffix) of `x`, along with the rank of that
//!   string in sorted order. It also exposes the rank a query string would
//!   occupy, which is what positions stabbing queries on the y-axis.

use std::sync::Arc;

use crate::bitpack::{lcp, lcs, PackedSlice, PackedText};
use crate::error::{Error, Result};
use crate::strorder::{prefix_lex_cmp_packed, suffix_lex_cmp_packed};
use std::cmp::Ordering;

// ===== 1D stabbing over a laminar interval family =====

/// Point-stabbing over a laminar family of closed `u64` intervals.
///
/// Laminarity means any two intervals are nested or disjoint, so the
/// intervals containing a point form a chain and "the tightest one" is well
/// defined. The structure precomputes, for every elementary segment between
/// consecutive interval endpoints, the innermost interval covering it; a
/// query is then one binary search.
#[derive(Debug, Clone)]
pub struct Stab1D {
    boundaries: Vec<u64>,
    seg_owner: Vec<Option<u32>>,
    count: usize,
}

impl Stab1D {
    /// Builds the structure over closed intervals `(lo, hi)`.
    ///
    /// Fails with [`Error::NonLaminar`] if two intervals properly cross,
    /// and with [`Error::InvalidParameter`] on an empty interval
    /// (`lo > hi`) or an endpoint at `u64::MAX`.
    pub fn build(intervals: &[(u64, u64)]) -> Result<Stab1D> {
        for &(lo, hi) in intervals {
            if lo > hi {
                return Err(Error::InvalidParameter("stabbing interval with lo > hi"));
            }
            if hi == u64::MAX {
                return Err(Error::InvalidParameter(
                    "stabbing interval endpoint overflows",
                ));
            }
        }
        let mut boundaries: Vec<u64> = Vec::with_capacity(intervals.len() * 2);
        for &(lo, hi) in intervals {
            boundaries.push(lo);
            boundaries.push(hi + 1);
        }
        boundaries.sort_unstable();
        boundaries.dedup();
        let nseg = boundaries.len().saturating_sub(1);
        let mut seg_owner: Vec<Option<u32>> = vec![None; nseg];
        // Sweep left to right with a nesting stack. Sorting by (lo asc,
        // hi desc) pushes an outer interval before the inner ones sharing
        // its left endpoint, so the stack top is always the innermost
        // active interval. A push whose right endpoint escapes the current
        // top would cross it.
        let mut order: Vec<u32> = (0..intervals.len() as u32).collect();
        order.sort_by_key(|&i| {
            let (lo, hi) = intervals[i as usize];
            (lo, std::cmp::Reverse(hi))
        });
        let mut stack: Vec<u32> = Vec::new();
        let mut next = 0usize;
        for (si, owner) in seg_owner.iter_mut().enumerate() {
            let s = boundaries[si];
            while let Some(&top) = stack.last() {
                if intervals[top as usize].1 < s {
                    stack.pop();
                } else {
                    break;
                }
            }
            while next < order.len() && intervals[order[next] as usize].0 == s {
                let id = order[next];
                if let Some(&top) = stack.last() {
                    if intervals[id as usize].1 > intervals[top as usize].1 {
                        return Err(Error::NonLaminar);
                    }
                }
                stack.push(id);
                next += 1;
            }
            *owner = stack.last().copied();
        }
        Ok(Stab1D {
            boundaries,
            seg_owner,
            count: intervals.len(),
        })
    }

    /// Number of intervals stored.
    pub fn len(&self) -> usize {
        self.count
    }

    /// True if no intervals are stored.
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Index (into the build slice) of the tightest interval containing
    /// `point`, or `None` if no interval contains it.
    pub fn query(&self, point: u64) -> Option<u32> {
        let i = self.boundaries.partition_point(|&b| b <= point);
        if i == 0 || i >= self.boundaries.len() {
            return None;
        }
        self.seg_owner[i - 1]
    }
}

// ===== 2D stabbing over arbitrary rectangles =====

/// One axis of the rectangle structure: a segment tree over elementary
/// segments whose canonical nodes carry id lists.
#[derive(Debug, Clone)]
struct SegLists {
    coords: Vec<u64>,
    size: usize,
    lists: Vec<Vec<u32>>,
}

impl SegLists {
    fn build(items: &[(u64, u64, u32)]) -> SegLists {
        let mut coords: Vec<u64> = Vec::with_capacity(items.len() * 2);
        for &(lo, hi, _) in items {
            coords.push(lo);
            coords.push(hi + 1);
        }
        coords.sort_unstable();
        coords.dedup();
        let nseg = coords.len().saturating_sub(1);
        let size = nseg.max(1).next_power_of_two();
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); 2 * size];
        for &(lo, hi, id) in items {
            let mut a = coords.partition_point(|&c| c < lo) + size;
            let mut b = coords.partition_point(|&c| c < hi + 1) + size;
            while a < b {
                if a & 1 == 1 {
                    lists[a].push(id);
                    a += 1;
                }
                if b & 1 == 1 {
                    b -= 1;
                    lists[b].push(id);
                }
                a >>= 1;
                b >>= 1;
            }
        }
        for l in &mut lists {
            l.sort_unstable();
        }
        SegLists {
            coords,
            size,
            lists,
        }
    }

    fn query_into(&self, q: u64, out: &mut Vec<u32>) {
        let i = self.coords.partition_point(|&c| c <= q);
        if i == 0 || i >= self.coords.len() {
            return;
        }
        let mut node = (i - 1) + self.size;
        while node >= 1 {
            out.extend_from_slice(&self.lists[node]);
            node >>= 1;
        }
    }
}

/// Point-stabbing over an arbitrary family of closed axis-aligned
/// rectangles `(x1, x2, y1, y2)`.
///
/// A query returns the ids (indices into the build slice) of every
/// rectangle containing the point; each id is reported exactly once
/// because canonical segment-tree nodes on one root-to-leaf path cover
/// disjoint leaf ranges.
#[derive(Debug, Clone)]
pub struct Stab2D {
    xcoords: Vec<u64>,
    size: usize,
    ynodes: Vec<Option<Box<SegLists>>>,
    count: usize,
}

impl Stab2D {
    /// Builds the structure. Rectangles must satisfy `x1 <= x2`,
    /// `y1 <= y2`, and keep endpoints below `u64::MAX`.
    pub fn build(rects: &[(u64, u64, u64, u64)]) -> Stab2D {
        for &(x1, x2, y1, y2) in rects {
            assert!(
                x1 <= x2 && y1 <= y2 && x2 < u64::MAX && y2 < u64::MAX,
                "malformed stabbing rectangle"
            );
        }
        let mut xcoords: Vec<u64> = Vec::with_capacity(rects.len() * 2);
        for &(x1, x2, _, _) in rects {
            xcoords.push(x1);
            xcoords.push(x2 + 1);
        }
        xcoords.sort_unstable();
        xcoords.dedup();
        let nseg = xcoords.len().saturating_sub(1);
        let size = nseg.max(1).next_power_of_two();
        let mut staged: Vec<Vec<(u64, u64, u32)>> = vec![Vec::new(); 2 * size];
        for (id, &(x1, x2, y1, y2)) in rects.iter().enumerate() {
            let mut a = xcoords.partition_point(|&c| c < x1) + size;
            let mut b = xcoords.partition_point(|&c| c < x2 + 1) + size;
            while a < b {
                if a & 1 == 1 {
                    staged[a].push((y1, y2, id as u32));
                    a += 1;
                }
                if b & 1 == 1 {
                    b -= 1;
                    staged[b].push((y1, y2, id as u32));
                }
                a >>= 1;
                b >>= 1;
            }
        }
        let ynodes = staged
            .into_iter()
            .map(|items| {
                if items.is_empty() {
                    None
                } else {
                    Some(Box::new(SegLists::build(&items)))
                }
            })
            .collect();
        Stab2D {
            xcoords,
            size,
            ynodes,
            count: rects.len(),
        }
    }

    /// Number of rectangles stored.
    pub fn len(&self) -> usize {
        self.count
    }

    /// True if no rectangles are stored.
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Appends the ids of all rectangles containing `(x, y)` to `out`
    /// (each exactly once, in no particular order).
    pub fn query_into(&self, x: u64, y: u64, out: &mut Vec<u32>) {
        let i = self.xcoords.partition_point(|&c| c <= x);
        if i == 0 || i >= self.xcoords.len() {
            return;
        }
        let mut node = (i - 1) + self.size;
        while node >= 1 {
            if let Some(yt) = &self.ynodes[node] {
                yt.query_into(y, out);
            }
            node >>= 1;
        }
    }

    /// Ids of all rectangles containing `(x, y)`, sorted ascending.
    pub fn query(&self, x: u64, y: u64) -> Vec<u32> {
        let mut out = Vec::new();
        self.query_into(x, y, &mut out);
        out.sort_unstable();
        out
    }
}

// ===== Ordered string indexes =====

/// Which side of the query a stored string must match.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    /// Stored strings are matched as prefixes of the query; the index is
    /// sorted in prefix-lex (ordinary dictionary) order.
    Prefix,
    /// Stored strings are matched as suffixes of the query; the index is
    /// sorted in suffix-lex (dictionary order of reversals).
    Suffix,
}

/// Result of a [`StringIndex::query`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexHit {
    /// Rank of the found string in the index's sorted order.
    pub rank: usize,
    /// Length of the found string.
    pub len: usize,
    /// True iff the found string equals the query itself.
    pub exact: bool,
}

/// A sorted set of packed strings supporting longest-prefix /
/// longest-suffix queries and order ranks.
///
/// Strings are handles `(start, len)` into one shared packed store;
/// duplicates are removed at build. For each stored string the index keeps
/// the chain of stored strings contained in it on the relevant side (its
/// stored prefixes for [`Dir::Prefix`], stored suffixes for
/// [`Dir::Suffix`], itself included) in increasing length; total chain size
/// is bounded by the total length of the stored strings (plus one entry per
/// string if the empty string is stored).
///
/// A query binary-searches the order predecessor `pred` of `x`, measures
/// the longest common prefix (resp. suffix) `l` of `pred` and `x`, and
/// takes the longest chain entry of `pred` with length at most `l` — which
/// is provably the longest stored prefix (resp. suffix) of `x`.
#[derive(Debug, Clone)]
pub struct StringIndex {
    store: Arc<PackedText>,
    dir: Dir,
    handles: Vec<(usize, usize)>,
    chains: Vec<Vec<u32>>,
}

impl StringIndex {
    /// Builds the index over `handles` (pairs `(start, len)` into `store`),
    /// sorting in the order induced by `dir` and discarding duplicates.
    pub fn build(store: Arc<PackedText>, handles: &[(usize, usize)], dir: Dir) -> StringIndex {
        let mut sorted: Vec<(usize, usize)> = handles.to_vec();
        sorted.sort_by(|&a, &b| dir_cmp(dir, slice_of(&store, a), slice_of(&store, b)));
        sorted.dedup_by(|a, b| {
            dir_cmp(dir, slice_of(&store, *a), slice_of(&store, *b)) == Ordering::Equal
        });
        let mut chains: Vec<Vec<u32>> = Vec::with_capacity(sorted.len());
        let mut stack: Vec<u32> = Vec::new();
        for i in 0..sorted.len() {
            let cur = slice_of(&store, sorted[i]);
            while let Some(&top) = stack.last() {
                let t = slice_of(&store, sorted[top as usize]);
                if dir_contains(dir, t, cur) {
                    break;
                }
                stack.pop();
            }
            stack.push(i as u32);
            chains.push(stack.clone());
        }
        StringIndex {
            store,
            dir,
            handles: sorted,
            chains,
        }
    }

    /// Number of (distinct) stored strings.
    pub fn len(&self) -> usize {
        self.handles.len()
    }

    /// True if the index stores nothing.
    pub fn is_empty(&self) -> bool {
        self.handles.is_empty()
    }

    /// The stored string at `rank` in sorted order.
    pub fn entry(&self, rank: usize) -> PackedSlice<'_> {
        slice_of(&self.store, self.handles[rank])
    }

    /// Number of stored strings strictly preceding `x` in the index order.
    /// This is exactly the rank `x` itself would occupy.
    pub fn rank(&self, x: PackedSlice<'_>) -> usize {
        let n = self.handles.len();
        partition_point_idx(n, |i| dir_cmp(self.dir, self.entry(i), x) == Ordering::Less)
    }

    /// Longest stored string that is a prefix (for [`Dir::Prefix`]) or
    /// suffix (for [`Dir::Suffix`]) of `x`, or `None` if no stored string
    /// matches. Ties cannot occur because stored strings are distinct.
    pub fn query(&self, x: PackedSlice<'_>) -> Option<IndexHit> {
        let n = self.handles.len();
        // Predecessor: greatest stored string <= x in the index order.
        let np = partition_point_idx(n, |i| {
            dir_cmp(self.dir, self.entry(i), x) != Ordering::Greater
        });
        if np == 0 {
            return None;
        }
        let pred = np - 1;
        let l = match self.dir {
            Dir::Prefix => lcp(self.entry(pred), x),
            Dir::Suffix => lcs(self.entry(pred), x),
        };
        // Every stored string contained in x on the relevant side is on
        // pred's chain with length at most l; take the longest such.
        let chain = &self.chains[pred];
        let k = chain.partition_point(|&j| self.handles[j as usize].1 <= l);
        if k == 0 {
            return None;
        }
        let best = chain[k - 1] as usize;
        let len = self.handles[best].1;
        Some(IndexHit {
            rank: best,
            len,
            exact: len == x.len(),
        })
    }
}

fn slice_of<'a>(store: &'a PackedText, handle: (usize, usize)) -> PackedSlice<'a> {
    store.slice(handle.0, handle.1)
}

fn dir_cmp(dir: Dir, a: PackedSlice<'_>, b: PackedSlice<'_>) -> Ordering {
    match dir {
        Dir::Prefix => prefix_lex_cmp_packed(a, b),
        Dir::Suffix => suffix_lex_cmp_packed(a, b),
    }
}

/// True if `a` is contained in `b` on the side selected by `dir`.
fn dir_contains(dir: Dir, a: PackedSlice<'_>, b: PackedSlice<'_>) -> bool {
    if a.len() > b.len() {
        return false;
    }
    match dir {
        Dir::Prefix => lcp(a, b) == a.len(),
        Dir::Suffix => lcs(a, b) == a.len(),
    }
}

fn partition_point_idx(n: usize, pred: impl Fn(usize) -> bool) -> usize {
    let mut lo = 0usize;
    let mut hi = n;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

// ===== tests =====

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitpack::PackedText;

    fn enc(s: &str) -> Vec<u32> {
        s.bytes().map(|b| (b - b'a') as u32).collect()
    }

    // --- Stab1D ---

    #[test]
    fn stab1d_hand_example() {
        let ivs = [(0u64, 9u64), (0, 4), (2, 3), (6, 9), (6, 7)];
        let s = Stab1D::build(&ivs).unwrap();
        assert_eq!(s.len(), 5);
        assert_eq!(s.query(0), Some(1));
        assert_eq!(s.query(2), Some(2));
        assert_eq!(s.query(3), Some(2));
        assert_eq!(s.query(4), Some(1));
        assert_eq!(s.query(5), Some(0));
        assert_eq!(s.query(6), Some(4));
        assert_eq!(s.query(8), Some(3));
        assert_eq!(s.query(9), Some(3));
        assert_eq!(s.query(10), None);
    }

    #[test]
    fn stab1d_empty_and_point_intervals() {
        let s = Stab1D::build(&[]).unwrap();
        assert!(s.is_empty());
        assert_eq!(s.query(0), None);
        let s = Stab1D::build(&[(5, 5)]).unwrap();
        assert_eq!(s.query(4), None);
        assert_eq!(s.query(5), Some(0));
        assert_eq!(s.query(6), None);
    }

    #[test]
    fn stab1d_duplicate_intervals_prefer_later() {
        let s = Stab1D::build(&[(1, 2), (1, 2)]).unwrap();
        assert_eq!(s.query(1), Some(1));
    }

    #[test]
    fn stab1d_rejects_crossing() {
        assert!(matches!(
            Stab1D::build(&[(0, 5), (3, 8)]),
            Err(Error::NonLaminar)
        ));
        assert!(matches!(
            Stab1D::build(&[(3, 8), (0, 5)]),
            Err(Error::NonLaminar)
        ));
        // Nested and disjoint are fine.
        assert!(Stab1D::build(&[(0, 5), (6, 8), (1, 2)]).is_ok());
    }

    #[test]
    fn stab1d_rejects_malformed() {
        assert!(matches!(
            Stab1D::build(&[(4, 2)]),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            Stab1D::build(&[(0, u64::MAX)]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn stab1d_random_laminar_vs_brute() {
        let mut state = 0xACE1_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..300 {
            let mut ivs: Vec<(u64, u64)> = Vec::new();
            for _ in 0..60 {
                let lo = next() % 100;
                let hi = lo + next() % 30;
                let c = (lo, hi);
                let compatible = ivs.iter().all(|&(a, b)| {
                    c.1 < a || b < c.0 || (a <= c.0 && c.1 <= b) || (c.0 <= a && b <= c.1)
                });
                if compatible && !ivs.contains(&c) {
                    ivs.push(c);
                }
            }
            let s = Stab1D::build(&ivs).unwrap();
            for q in 0..140u64 {
                let brute = ivs
                    .iter()
                    .enumerate()
                    .filter(|(_, &(lo, hi))| lo <= q && q <= hi)
                    .min_by_key(|(_, &(lo, hi))| hi - lo)
                    .map(|(i, _)| i as u32);
                assert_eq!(s.query(q), brute, "q={q} ivs={ivs:?}");
            }
        }
    }

    // --- Stab2D ---

    #[test]
    fn stab2d_hand_example() {
        // Two overlapping rectangles and one disjoint.
        let rects = [(0u64, 5u64, 0u64, 5u64), (3, 8, 3, 8), (10, 12, 0, 1)];
        let s = Stab2D::build(&rects);
        assert_eq!(s.len(), 3);
        assert_eq!(s.query(4, 4), vec![0, 1]);
        assert_eq!(s.query(0, 0), vec![0]);
        assert_eq!(s.query(8, 8), vec![1]);
        assert_eq!(s.query(11, 1), vec![2]);
        assert_eq!(s.query(9, 9), Vec::<u32>::new());
        assert_eq!(s.query(100, 0), Vec::<u32>::new());
    }

    #[test]
    fn stab2d_empty() {
        let s = Stab2D::build(&[]);
        assert!(s.is_empty());
        assert_eq!(s.query(0, 0), Vec::<u32>::new());
    }

    #[test]
    fn stab2d_random_vs_brute() {
        let mut state = 0xBEE5_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let n = 1 + (next() % 40) as usize;
            let rects: Vec<(u64, u64, u64, u64)> = (0..n)
                .map(|_| {
                    let x1 = next() % 24;
                    let x2 = x1 + next() % 10;
                    let y1 = next() % 24;
                    let y2 = y1 + next() % 10;
                    (x1, x2, y1, y2)
                })
                .collect();
            let s = Stab2D::build(&rects);
            for x in 0..36u64 {
                for y in 0..36u64 {
                    let brute: Vec<u32> = rects
                        .iter()
                        .enumerate()
                        .filter(|(_, &(x1, x2, y1, y2))| x1 <= x && x <= x2 && y1 <= y && y <= y2)
                        .map(|(i, _)| i as u32)
                        .collect();
                    assert_eq!(s.query(x, y), brute, "({x},{y}) rects={rects:?}");
                }
            }
        }
    }

    // --- StringIndex ---

    fn index_of(strs: &[&str], dir: Dir) -> (StringIndex, Arc<PackedText>) {
        let mut syms: Vec<u32> = Vec::new();
        let mut handles: Vec<(usize, usize)> = Vec::new();
        for s in strs {
            let e = enc(s);
            handles.push((syms.len(), e.len()));
            syms.extend_from_slice(&e);
        }
        let store = Arc::new(PackedText::from_symbols(&syms, 26).unwrap());
        (StringIndex::build(Arc::clone(&store), &handles, dir), store)
    }

    fn q(store: &PackedText, _: ()) -> PackedSlice<'_> {
        store.as_slice()
    }

    fn packed(s: &str) -> PackedText {
        PackedText::from_symbols(&enc(s), 26).unwrap()
    }

    #[test]
    fn prefix_index_hand_examples() {
        let (idx, _) = index_of(&["a", "ab", "abc", "b"], Dir::Prefix);
        assert_eq!(idx.len(), 4);
        // Sorted: a, ab, abc, b.
        assert_eq!(idx.entry(0).to_symbols(), enc("a"));
        assert_eq!(idx.entry(3).to_symbols(), enc("b"));

        let t = packed("abd");
        let hit = idx.query(q(&t, ())).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (1, 2, false));

        let t = packed("abc");
        let hit = idx.query(q(&t, ())).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (2, 3, true));

        let t = packed("abcd");
        let hit = idx.query(q(&t, ())).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (2, 3, false));

        let t = packed("c");
        assert_eq!(idx.query(q(&t, ())), None);
        let t = packed("");
        assert_eq!(idx.query(q(&t, ())), None);

        // Ranks: number of stored strings strictly below the query.
        assert_eq!(idx.rank(packed("a").as_slice()), 0);
        assert_eq!(idx.rank(packed("ab").as_slice()), 1);
        assert_eq!(idx.rank(packed("abb").as_slice()), 2);
        assert_eq!(idx.rank(packed("z").as_slice()), 4);
        assert_eq!(idx.rank(packed("").as_slice()), 0);
    }

    #[test]
    fn suffix_index_hand_examples() {
        let (idx, _) = index_of(&["a", "ba", "b"], Dir::Suffix);
        // Suffix-lex order (by reversals "a" < "ab" < "b"): a, ba, b.
        assert_eq!(idx.entry(0).to_symbols(), enc("a"));
        assert_eq!(idx.entry(1).to_symbols(), enc("ba"));
        assert_eq!(idx.entry(2).to_symbols(), enc("b"));

        let t = packed("cba");
        let hit = idx.query(t.as_slice()).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (1, 2, false));

        let t = packed("cb");
        let hit = idx.query(t.as_slice()).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (2, 1, false));

        let t = packed("ba");
        let hit = idx.query(t.as_slice()).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (1, 2, true));

        let t = packed("c");
        assert_eq!(idx.query(t.as_slice()), None);
    }

    #[test]
    fn index_stores_empty_string() {
        let (idx, _) = index_of(&["", "a"], Dir::Prefix);
        let t = packed("b");
        let hit = idx.query(t.as_slice()).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (0, 0, false));
        let t = packed("");
        let hit = idx.query(t.as_slice()).unwrap();
        assert_eq!((hit.rank, hit.len, hit.exact), (0, 0, true));
    }

    #[test]
    fn index_dedups() {
        let (idx, _) = index_of(&["ab", "ab", "a"], Dir::Prefix);
        assert_eq!(idx.len(), 2);
    }

    #[test]
    fn index_random_vs_brute() {
        use crate::strorder::{is_prefix, is_suffix, prefix_lex_cmp, suffix_lex_cmp};
        let mut state = 0xF00D_u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..600 {
            let nset = 1 + (next() % 10) as usize;
            let mut strs: Vec<Vec<u32>> = Vec::new();
            while strs.len() < nset {
                let len = (next() % 7) as usize;
                let s: Vec<u32> = (0..len).map(|_| (next() % 2) as u32).collect();
                if !strs.contains(&s) {
                    strs.push(s);
                }
            }
            let mut syms: Vec<u32> = Vec::new();
            let mut handles: Vec<(usize, usize)> = Vec::new();
            for s in &strs {
                handles.push((syms.len(), s.len()));
                syms.extend_from_slice(s);
            }
            let store = Arc::new(PackedText::from_symbols(&syms, 2).unwrap());
            for dir in [Dir::Prefix, Dir::Suffix] {
                let idx = StringIndex::build(Arc::clone(&store), &handles, dir);
                for _ in 0..40 {
                    let qlen = (next() % 9) as usize;
                    let qs: Vec<u32> = (0..qlen).map(|_| (next() % 2) as u32).collect();
                    let qt = PackedText::from_symbols(&qs, 2).unwrap();
                    let got = idx.query(qt.as_slice());
                    let brute = strs
                        .iter()
                        .filter(|s| match dir {
                            Dir::Prefix => is_prefix(s, &qs),
                            Dir::Suffix => is_suffix(s, &qs),
                        })
                        .max_by_key(|s| s.len());
                    match (got, brute) {
                        (None, None) => {}
                        (Some(hit), Some(b)) => {
                            assert_eq!(
                                idx.entry(hit.rank).to_symbols(),
                                *b.clone(),
                                "trial={trial} q={qs:?}"
                            );
                            assert_eq!(hit.len, b.len());
                            assert_eq!(hit.exact, b.len() == qs.len());
                        }
                        (g, b) => panic!("trial={trial} q={qs:?}: got {g:?} brute {b:?}"),
                    }
                    // rank() against the brute strict-predecessor count.
                    let brute_rank = strs
                        .iter()
                        .filter(|s| {
                            let ord = match dir {
                                Dir::Prefix => prefix_lex_cmp(s, &qs),
                                Dir::Suffix => suffix_lex_cmp(s, &qs),
                            };
                            ord == Ordering::Less
                        })
                        .count();
                    assert_eq!(idx.rank(qt.as_slice()), brute_rank);
                }
            }
        }
    }
}
