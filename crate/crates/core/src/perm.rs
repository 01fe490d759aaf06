//! Permutations in one-line notation and the prefix-set calculus of full flags.
//!
//! A full flag `(U_1 ⊂ U_2 ⊂ … ⊂ U_n)` of subsets of `[n]` is identified with
//! the permutation `u` whose `i`-th entry is the unique element of
//! `U_i \ U_{i-1}`. The flag is then recovered as the prefix sets
//! `u(i) = {u_1, …, u_i}`, which are computed on demand rather than stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest permutation length supported by the permutation-level operations.
pub const MAX_N: usize = 12;

const FACTORIALS: [u64; 21] = {
    let mut f = [1u64; 21];
    let mut i = 1;
    while i <= 20 {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// `n!` for `n <= 20`.
pub fn factorial(n: usize) -> u64 {
    FACTORIALS[n]
}

/// `C(n, 2)`.
pub fn choose2(n: usize) -> u64 {
    (n as u64) * (n.saturating_sub(1) as u64) / 2
}

/// A permutation of `[n]` in one-line notation, values `1..=n`.
///
/// Stored inline so that it is `Copy`; the unused tail of `entries` is zero,
/// which keeps the derived `Ord` lexicographic among permutations of equal
/// length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_N],
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking that `entries`
    /// is a rearrangement of `1..=n`.
    pub fn new(entries: &[u8]) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty sequence".into()));
        }
        if n > MAX_N {
            return Err(Error::CapExceeded {
                what: "permutation length",
                n,
                cap: MAX_N,
            });
        }
        let mut seen = 0u64;
        for &x in entries {
            if x == 0 || x as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {x} outside 1..={n}"
                )));
            }
            if seen & (1 << x) != 0 {
                return Err(Error::InvalidPermutation(format!("repeated value {x}")));
            }
            seen |= 1 << x;
        }
        Ok(Self::from_slice_unchecked(entries))
    }

    pub(crate) fn from_slice_unchecked(entries: &[u8]) -> Self {
        let mut buf = [0u8; MAX_N];
        buf[..entries.len()].copy_from_slice(entries);
        Self {
            len: entries.len() as u8,
            entries: buf,
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_len(n)?;
        let v: Vec<u8> = (1..=n as u8).collect();
        Ok(Self::from_slice_unchecked(&v))
    }

    /// `(n, n-1, …, 1)`.
    pub fn reversal(n: usize) -> Result<Self> {
        check_len(n)?;
        let v: Vec<u8> = (1..=n as u8).rev().collect();
        Ok(Self::from_slice_unchecked(&v))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false; permutations have at least one entry.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.entries[..self.len as usize]
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                min: 1,
                max: self.len(),
            });
        }
        Ok(self.entries[i - 1])
    }

    pub fn is_identity(&self) -> bool {
        self.entries()
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut inv = [0u8; MAX_N];
        for (i, &x) in self.entries().iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Self::from_slice_unchecked(&inv[..n])
    }

    /// Rank of this permutation in the lexicographic order of `S_n`
    /// (Lehmer code read as a factorial-base number).
    pub fn lex_rank(&self) -> usize {
        lex_rank_slice(self.entries())
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, rank: usize) -> Result<Self> {
        check_len(n)?;
        let total = factorial(n) as usize;
        if rank >= total {
            return Err(Error::IndexOutOfRange {
                index: rank,
                min: 0,
                max: total - 1,
            });
        }
        let mut out = [0u8; MAX_N];
        unrank_into(n, rank, &mut out);
        Ok(Self::from_slice_unchecked(&out[..n]))
    }

    /// Advances to the lexicographic successor in place. Returns `false`
    /// (leaving `self` untouched) when `self` is the reversal.
    pub fn next_lex(&mut self) -> bool {
        let n = self.len();
        let a = &mut self.entries[..n];
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| a[i] < a[i + 1]) else {
            return false;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| a[j] > a[i])
            .expect("successor pivot");
        a.swap(i, j);
        a[i + 1..].reverse();
        true
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPermutation("n must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::CapExceeded {
            what: "permutation length",
            n,
            cap: MAX_N,
        });
    }
    Ok(())
}

pub(crate) fn lex_rank_slice(a: &[u8]) -> usize {
    let n = a.len();
    let mut used = 0u32;
    let mut rank = 0usize;
    for (i, &x) in a.iter().enumerate() {
        // number of unused values smaller than x
        let smaller = (used & ((1u32 << x) - 1)).count_ones() as usize;
        let lehmer = x as usize - 1 - smaller;
        rank += lehmer * FACTORIALS[n - 1 - i] as usize;
        used |= 1 << x;
    }
    rank
}

pub(crate) fn unrank_into(n: usize, mut rank: usize, out: &mut [u8]) {
    let mut pool = [0u8; MAX_N];
    for (i, slot) in pool[..n].iter_mut().enumerate() {
        *slot = (i + 1) as u8;
    }
    let mut left = n;
    for (i, o) in out[..n].iter_mut().enumerate() {
        let f = FACTORIALS[n - 1 - i] as usize;
        let d = rank / f;
        rank %= f;
        *o = pool[d];
        pool.copy_within(d + 1..left, d);
        left -= 1;
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for x in self.entries() {
                write!(f, "{x}")?;
            }
        } else {
            for (i, x) in self.entries().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation string".into()));
        }
        let entries: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("unexpected character {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(&entries)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A subset of `[n]` (`n <= 63`) stored as a bitmask; bit `x` marks value `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PrefixSet(u64);

impl PrefixSet {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, x: u8) -> bool {
        x < 64 && self.0 & (1 << x) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (1..64u8).filter(move |&x| self.0 & (1 << x) != 0)
    }
}

impl FromIterator<u8> for PrefixSet {
    fn from_iter<I: IntoIterator<Item = u8>>(iter: I) -> Self {
        PrefixSet(iter.into_iter().fold(0, |m, x| m | (1 << x)))
    }
}

impl fmt::Debug for PrefixSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// The set `u(i) = {u_1, …, u_i}`; empty for `i = 0`.
pub fn prefix_set(u: &Permutation, i: usize) -> Result<PrefixSet> {
    if i > u.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 0,
            max: u.len(),
        });
    }
    Ok(u.entries()[..i].iter().copied().collect())
}

fn same_len(u: &Permutation, v: &Permutation) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::SizeMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(())
}

/// Number of positions `i ∈ [n]` where the prefix sets of `u` and `v` differ,
/// i.e. the number of flag members the two full flags do not share.
pub fn prefix_mismatch_count(u: &Permutation, v: &Permutation) -> Result<usize> {
    same_len(u, v)?;
    Ok(mismatch_slices(u.entries(), v.entries()))
}

#[inline]
pub(crate) fn mismatch_slices(a: &[u8], b: &[u8]) -> usize {
    let mut ma = 0u64;
    let mut mb = 0u64;
    let mut count = 0;
    for (&x, &y) in a.iter().zip(b) {
        ma |= 1 << x;
        mb |= 1 << y;
        count += (ma != mb) as usize;
    }
    count
}

/// Inversion count: pairs `i < j` with `u_i > u_j`.
pub fn disorder(u: &Permutation) -> u64 {
    let mut buf = u.entries().to_vec();
    count_inversions(&mut buf)
}

/// Minimal number of neighbouring transpositions turning `u` into `v`.
///
/// Computed as the inversion count of `v` read through the positions of `u`
/// using a merge count.
pub fn kendall_distance(u: &Permutation, v: &Permutation) -> Result<u64> {
    same_len(u, v)?;
    let mut w = relative_pattern(u, v).entries().to_vec();
    Ok(count_inversions(&mut w))
}

/// The permutation `w = u⁻¹ ∘ v`: `w_j` is the position in `u` of `v_j`.
pub fn relative_pattern(u: &Permutation, v: &Permutation) -> Permutation {
    let mut pos = [0u8; MAX_N + 1];
    for (i, &x) in u.entries().iter().enumerate() {
        pos[x as usize] = (i + 1) as u8;
    }
    let w: Vec<u8> = v.entries().iter().map(|&x| pos[x as usize]).collect();
    Permutation::from_slice_unchecked(&w)
}

fn count_inversions(a: &mut [u8]) -> u64 {
    let n = a.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = count_inversions(&mut a[..mid]) + count_inversions(&mut a[mid..]);
    let mut merged = Vec::with_capacity(n);
    let (mut i, mut j) = (0, mid);
    while i < mid && j < n {
        if a[i] <= a[j] {
            merged.push(a[i]);
            i += 1;
        } else {
            merged.push(a[j]);
            count += (mid - i) as u64;
            j += 1;
        }
    }
    merged.extend_from_slice(&a[i..mid]);
    merged.extend_from_slice(&a[j..n]);
    a.copy_from_slice(&merged);
    count
}

/// Inserts `n + 1` at 1-based position `i` of `u` (`1 <= i <= n + 1`).
pub fn insertion(u: &Permutation, i: usize) -> Result<Permutation> {
    let n = u.len();
    if i == 0 || i > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            min: 1,
            max: n + 1,
        });
    }
    if n + 1 > MAX_N {
        return Err(Error::CapExceeded {
            what: "permutation length",
            n: n + 1,
            cap: MAX_N,
        });
    }
    let mut out = [0u8; MAX_N];
    out[..i - 1].copy_from_slice(&u.entries()[..i - 1]);
    out[i - 1] = (n + 1) as u8;
    out[i..=n].copy_from_slice(&u.entries()[i - 1..]);
    Ok(Permutation::from_slice_unchecked(&out[..=n]))
}

/// True iff no proper prefix `p_1..p_i` (`1 <= i < n`) is exactly `{1, …, i}`.
pub fn is_irreducible(p: &Permutation) -> bool {
    let n = p.len();
    let mut max = 0u8;
    for (i, &x) in p.entries()[..n - 1].iter().enumerate() {
        max = max.max(x);
        if max as usize == i + 1 {
            return false;
        }
    }
    true
}

/// Indices `i ∈ [n]` (ascending) at which two flags share their `i`-th member.
///
/// Consecutive boundaries delimit windows on which `v` is an irreducible
/// rearrangement of `u`; the last boundary is always `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    boundaries: Vec<usize>,
}

impl BlockDecomposition {
    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn block_count(&self) -> usize {
        self.boundaries.len()
    }

    /// 1-based inclusive `(start, end)` windows.
    pub fn windows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let starts = std::iter::once(0).chain(self.boundaries.iter().copied());
        starts.zip(&self.boundaries).map(|(s, &e)| (s + 1, e))
    }

    /// Sizes of the windows, a composition of `n`.
    pub fn sizes(&self) -> Vec<usize> {
        self.windows().map(|(s, e)| e - s + 1).collect()
    }
}

pub fn block_boundaries(u: &Permutation, v: &Permutation) -> Result<BlockDecomposition> {
    same_len(u, v)?;
    let mut ma = 0u64;
    let mut mb = 0u64;
    let mut boundaries = Vec::new();
    for (i, (&x, &y)) in u.entries().iter().zip(v.entries()).enumerate() {
        ma |= 1 << x;
        mb |= 1 << y;
        if ma == mb {
            boundaries.push(i + 1);
        }
    }
    Ok(BlockDecomposition { boundaries })
}

/// Right action: position `j` of the result holds `u_{g(j)}`.
pub fn compose(u: &Permutation, g: &Permutation) -> Result<Permutation> {
    same_len(u, g)?;
    let mut out = [0u8; MAX_N];
    compose_into(u.entries(), g.entries(), &mut out);
    Ok(Permutation::from_slice_unchecked(&out[..u.len()]))
}

#[inline]
pub(crate) fn compose_into(u: &[u8], g: &[u8], out: &mut [u8]) {
    for (o, &gj) in out.iter_mut().zip(g) {
        *o = u[gj as usize - 1];
    }
}
