//! Brute-force reference computations.
//!
//! Each function here reaches its answer by a route that shares nothing with
//! the fast path it is compared against: pairwise predicate scans instead of
//! generator products, filtering all of `S_n` instead of composing
//! irreducible blocks, BFS over transposition moves instead of merge counts.
//! They are quadratic or worse and meant for `n <= 6`.

use std::collections::{HashMap, VecDeque};

use crate::error::Result;
use crate::graph::FlagGraphSpec;
use crate::ordering::enumerate_permutations;
use crate::perm::{block_boundaries, is_irreducible, prefix_set, Permutation};

/// Edges found by testing every unordered pair with the prefix-set predicate.
pub fn pairwise_edges(spec: &FlagGraphSpec) -> Result<Vec<(usize, usize)>> {
    let ordering = spec.ordering()?;
    let perms = ordering.perms();
    let k = spec.k();
    let mut edges = Vec::new();
    for i in 0..perms.len() {
        for j in i + 1..perms.len() {
            let differing = (1..=spec.n())
                .filter(|&t| prefix_set(&perms[i], t).ok() != prefix_set(&perms[j], t).ok())
                .count();
            if differing == k && k > 0 {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Every `g ∈ S_n` whose block decomposition against the identity has
/// exactly `n - k` blocks.
pub fn generators_by_filter(n: usize, k: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(n)?;
    enumerate_permutations(n)?
        .iter()
        .filter_map(|g| match block_boundaries(&id, g) {
            Ok(b) if b.block_count() == n - k => Some(Ok(*g)),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

pub fn irreducible_count_by_filter(m: usize) -> Result<u64> {
    Ok(enumerate_permutations(m)?
        .iter()
        .filter(|p| is_irreducible(p))
        .count() as u64)
}

/// Fewest neighbouring transpositions from `u` to `v`, by BFS over `S_n`.
pub fn kendall_by_bfs(u: &Permutation, v: &Permutation) -> u64 {
    let mut dist: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    dist.insert(u.entries().to_vec(), 0);
    queue.push_back(u.entries().to_vec());
    while let Some(cur) = queue.pop_front() {
        let d = dist[&cur];
        if cur == v.entries() {
            return d;
        }
        for i in 0..cur.len() - 1 {
            let mut next = cur.clone();
            next.swap(i, i + 1);
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    unreachable!("S_n is connected under neighbouring transpositions")
}

/// Inversion count by direct double loop.
pub fn disorder_by_pairs(u: &Permutation) -> u64 {
    let e = u.entries();
    let mut c = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            c += (e[i] > e[j]) as u64;
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_values() {
        assert_eq!(irreducible_count_by_filter(3).unwrap(), 3);
        assert_eq!(irreducible_count_by_filter(4).unwrap(), 13);
        assert_eq!(generators_by_filter(4, 2).unwrap().len(), 7);
        let u: Permutation = "213".parse().unwrap();
        let v: Permutation = "312".parse().unwrap();
        assert_eq!(kendall_by_bfs(&u, &v), 3);
    }
}
