//! The graphs `FJ(n, k)`: adjacency, Cayley generators, degrees, edges.
//!
//! Two permutations are adjacent in `FJ(n, k)` when their prefix sets differ
//! at exactly `k` positions. Equivalently `v = u · g` where `g` is a direct
//! sum of exactly `n - k` irreducible permutations, so `FJ(n, k)` is the
//! Cayley graph of `S_n` on that generator set and every vertex has the same
//! degree.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ordering::{enumerate_permutations, VertexOrdering};
use crate::perm::{
    compose_into, factorial, insertion, is_irreducible, mismatch_slices, unrank_into, Permutation,
    MAX_N,
};

/// `FJ(n, 0)` under the loop-free convention used for edge lists, degrees
/// and adjacency matrices.
pub const LOOP_CONVENTION: &str =
    "FJ(n,0): every flag is related only to itself; loops are excluded, so the graph is edgeless";

/// Size limits guarding the `n!`-scale computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Largest `n` for edge enumeration and BFS.
    pub graph: usize,
    /// Largest `n` for dense adjacency matrices.
    pub matrix: usize,
    /// Largest matrix order handed to the dense eigensolver.
    pub eigen: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            graph: 8,
            matrix: 7,
            eigen: 720,
        }
    }
}

impl Caps {
    pub(crate) fn check_graph(&self, n: usize) -> Result<()> {
        if n > self.graph {
            return Err(Error::CapExceeded {
                what: "graph cap",
                n,
                cap: self.graph,
            });
        }
        Ok(())
    }

    pub(crate) fn check_matrix(&self, n: usize) -> Result<()> {
        if n > self.matrix {
            return Err(Error::CapExceeded {
                what: "matrix cap",
                n,
                cap: self.matrix,
            });
        }
        Ok(())
    }
}

pub(crate) fn check_params(n: usize, k: usize) -> Result<()> {
    if n == 0 || k >= n {
        return Err(Error::InvalidParameters { n, k });
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

/// The graph `FJ(n, k)` together with a vertex ordering and size caps.
///
/// Without an explicit ordering the vertices are indexed by lexicographic
/// rank and nothing of size `n!` is materialized up front.
#[derive(Clone, Debug)]
pub struct FlagGraphSpec {
    n: usize,
    k: usize,
    ordering: Option<VertexOrdering>,
    caps: Caps,
    generators: OnceLock<GeneratorSet>,
}

impl FlagGraphSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_params(n, k)?;
        Ok(Self {
            n,
            k,
            ordering: None,
            caps: Caps::default(),
            generators: OnceLock::new(),
        })
    }

    pub fn with_ordering(mut self, ordering: VertexOrdering) -> Result<Self> {
        if ordering.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: ordering.n(),
            });
        }
        self.ordering = (!ordering.is_lexicographic()).then_some(ordering);
        Ok(self)
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn vertex_count(&self) -> usize {
        factorial(self.n) as usize
    }

    /// The vertex ordering, materialized if it is the implicit lexicographic one.
    pub fn ordering(&self) -> Result<VertexOrdering> {
        match &self.ordering {
            Some(o) => Ok(o.clone()),
            None => enumerate_permutations(self.n),
        }
    }

    pub fn index_of(&self, p: &Permutation) -> Result<usize> {
        self.check_size(p)?;
        Ok(self.index_of_slice(p.entries()))
    }

    #[inline]
    pub(crate) fn index_of_slice(&self, a: &[u8]) -> usize {
        match &self.ordering {
            Some(o) => o.index_of_slice(a),
            None => crate::perm::lex_rank_slice(a),
        }
    }

    /// Vertex at position `i` of the ordering.
    pub fn vertex(&self, i: usize) -> Result<Permutation> {
        match &self.ordering {
            Some(o) => o.get(i).copied().ok_or(Error::IndexOutOfRange {
                index: i,
                min: 0,
                max: o.len() - 1,
            }),
            None => Permutation::from_lex_rank(self.n, i),
        }
    }

    #[inline]
    pub(crate) fn vertex_into(&self, i: usize, out: &mut [u8]) {
        match &self.ordering {
            Some(o) => out[..self.n].copy_from_slice(o.perms()[i].entries()),
            None => unrank_into(self.n, i, out),
        }
    }

    /// Cayley generators, computed once per spec.
    pub fn generator_set(&self) -> Result<&GeneratorSet> {
        if let Some(g) = self.generators.get() {
            return Ok(g);
        }
        let computed = generators(self.n, self.k)?;
        Ok(self.generators.get_or_init(|| computed))
    }

    pub(crate) fn check_size(&self, p: &Permutation) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_nontrivial(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::TrivialGraph { n: self.n });
        }
        Ok(())
    }
}

/// The flag adjacency predicate: prefix sets differ at exactly `k` positions.
///
/// For `k = 0` this holds only for `u = v` (the flag reading of `FJ(n, 0)`);
/// edge lists and matrices drop that loop, see [`LOOP_CONVENTION`].
pub fn adjacent(spec: &FlagGraphSpec, u: &Permutation, v: &Permutation) -> Result<bool> {
    spec.check_size(u)?;
    spec.check_size(v)?;
    Ok(mismatch_slices(u.entries(), v.entries()) == spec.k)
}

/// Generators of `FJ(n, k)` as a Cayley graph: every direct sum of exactly
/// `n - k` irreducible permutations, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.generators.iter()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.generators.binary_search(g).is_ok()
    }
}

/// Irreducible permutations of `[m]`, lexicographically.
pub fn irreducible_permutations(m: usize) -> Result<Vec<Permutation>> {
    Ok(enumerate_permutations(m)?
        .iter()
        .copied()
        .filter(is_irreducible)
        .collect())
}

pub fn generators(n: usize, k: usize) -> Result<GeneratorSet> {
    check_params(n, k)?;
    let parts = n - k;
    let mut by_size: Vec<Vec<Permutation>> = vec![Vec::new(); k + 2];
    for (size, slot) in by_size.iter_mut().enumerate().skip(1) {
        *slot = irreducible_permutations(size)?;
    }

    let mut out = Vec::new();
    for composition in compositions(n, parts) {
        let mut buf = [0u8; MAX_N];
        direct_sums(&composition, &by_size, 0, 0, &mut buf, &mut out);
    }
    out.sort_unstable();
    Ok(GeneratorSet {
        n,
        k,
        generators: out,
    })
}

fn direct_sums(
    composition: &[usize],
    by_size: &[Vec<Permutation>],
    part: usize,
    offset: usize,
    buf: &mut [u8; MAX_N],
    out: &mut Vec<Permutation>,
) {
    if part == composition.len() {
        out.push(Permutation::from_slice_unchecked(&buf[..offset]));
        return;
    }
    let size = composition[part];
    for block in &by_size[size] {
        for (slot, &x) in buf[offset..offset + size].iter_mut().zip(block.entries()) {
            *slot = x + offset as u8;
        }
        direct_sums(composition, by_size, part + 1, offset + size, buf, out);
    }
}

/// Compositions of `n` into exactly `parts` positive parts.
pub fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // leave at least one for each remaining part
        for first in 1..=rest.saturating_sub(parts - 1) {
            cur.push(first);
            go(rest - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 || parts > n {
        return out;
    }
    go(n, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Number of irreducible permutations of `[m]`, from
/// `m! = Σ_{i=1..m} I(i) · (m - i)!`.
///
/// # Panics
///
/// If `m` is outside `1..=20`.
pub fn irreducible_count(m: usize) -> u64 {
    assert!(
        (1..=20).contains(&m),
        "irreducible_count needs 1 <= m <= 20"
    );
    let mut counts = vec![0u64; m + 1];
    for j in 1..=m {
        let reducible: u64 = (1..j).map(|i| counts[i] * factorial(j - i)).sum();
        counts[j] = factorial(j) - reducible;
    }
    counts[m]
}

/// Vertex degree of `FJ(n, k)`: the number of direct sums of `n - k`
/// irreducible blocks. `FJ(n, 0)` has degree 0 under the loop-free convention.
pub fn degree(n: usize, k: usize) -> Result<u64> {
    if n == 0 || k >= n || n > 20 {
        return Err(Error::InvalidParameters { n, k });
    }
    if k == 0 {
        return Ok(0);
    }
    let parts = n - k;
    // ways[p][s]: ordered sums of p irreducible blocks covering s points
    let mut ways = vec![vec![0u64; n + 1]; parts + 1];
    ways[0][0] = 1;
    for p in 1..=parts {
        for s in p..=n {
            ways[p][s] = (1..=s - (p - 1))
                .map(|c| ways[p - 1][s - c] * irreducible_count(c))
                .sum();
        }
    }
    Ok(ways[parts][n])
}

/// Neighbours of `u`, i.e. `u · g` for every generator `g`. Empty for `k = 0`.
pub fn neighbors(spec: &FlagGraphSpec, u: &Permutation) -> Result<Vec<Permutation>> {
    spec.check_size(u)?;
    if spec.k == 0 {
        return Ok(Vec::new());
    }
    let n = spec.n;
    let mut buf = [0u8; MAX_N];
    Ok(spec
        .generator_set()?
        .iter()
        .map(|g| {
            compose_into(u.entries(), g.entries(), &mut buf);
            Permutation::from_slice_unchecked(&buf[..n])
        })
        .collect())
}

/// All edges as `(i, j)` pairs of ordering indices with `i < j`, sorted.
pub fn build_edges(spec: &FlagGraphSpec) -> Result<Vec<(usize, usize)>> {
    spec.require_nontrivial()?;
    spec.caps.check_graph(spec.n)?;
    let n = spec.n;
    let gens: Vec<&[u8]> = spec.generator_set()?.iter().map(|g| g.entries()).collect();
    let mut edges: Vec<(usize, usize)> = (0..spec.vertex_count())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut u = [0u8; MAX_N];
            spec.vertex_into(i, &mut u);
            let mut w = [0u8; MAX_N];
            let mut local = Vec::with_capacity(gens.len());
            for g in &gens {
                compose_into(&u[..n], g, &mut w);
                let j = spec.index_of_slice(&w[..n]);
                if i < j {
                    local.push((i, j));
                }
            }
            local
        })
        .collect();
    edges.sort_unstable();
    Ok(edges)
}

/// Checks that inserting `n + 1` at `position` maps `FJ(n, k)` isomorphically
/// onto an induced subgraph of `FJ(n + 1, k)`: adjacency and non-adjacency are
/// both preserved for every pair of vertices.
///
/// Holds for positions `1` and `n + 1`; other positions generally fail.
pub fn insertion_preserves_adjacency(n: usize, k: usize, position: usize) -> Result<bool> {
    let small = FlagGraphSpec::new(n, k)?;
    let big = FlagGraphSpec::new(n + 1, k)?;
    let ordering = enumerate_permutations(n)?;
    let perms = ordering.perms();
    let lifted: Vec<Permutation> = perms
        .iter()
        .map(|u| insertion(u, position))
        .collect::<Result<_>>()?;
    for a in 0..perms.len() {
        for b in a + 1..perms.len() {
            let before = adjacent(&small, &perms[a], &perms[b])?;
            let after = adjacent(&big, &lifted[a], &lifted[b])?;
            if before != after {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn adjacency_examples() {
        let fj52 = FlagGraphSpec::new(5, 2).unwrap();
        let fj53 = FlagGraphSpec::new(5, 3).unwrap();
        assert!(adjacent(&fj52, &p("12345"), &p("21354")).unwrap());
        assert!(!adjacent(&fj52, &p("12345"), &p("32415")).unwrap());
        assert!(adjacent(&fj53, &p("12345"), &p("32415")).unwrap());
        let fj74 = FlagGraphSpec::new(7, 4).unwrap();
        assert!(adjacent(&fj74, &p("1234567"), &p("2314675")).unwrap());
        assert!(adjacent(&fj52, &p("1234"), &p("1234")).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(FlagGraphSpec::new(3, 3).is_err());
        assert!(FlagGraphSpec::new(0, 0).is_err());
        assert!(generators(2, 2).is_err());
        assert!(degree(3, 5).is_err());
    }

    #[test]
    fn generator_examples() {
        let g30 = generators(3, 0).unwrap();
        assert_eq!(g30.generators, vec![p("123")]);
        let g31 = generators(3, 1).unwrap();
        assert_eq!(g31.generators, vec![p("132"), p("213")]);
        assert_eq!(generators(4, 2).unwrap().len(), 7);
        let g32 = generators(3, 2).unwrap();
        assert_eq!(g32.generators, vec![p("231"), p("312"), p("321")]);
    }

    #[test]
    fn irreducible_counts() {
        let expected = [1, 1, 3, 13, 71, 461, 3447, 29093];
        for (m, &e) in expected.iter().enumerate() {
            assert_eq!(irreducible_count(m + 1), e, "m = {}", m + 1);
        }
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(5, 1).unwrap(), 4);
        assert_eq!(degree(3, 2).unwrap(), 3);
        assert_eq!(degree(4, 2).unwrap(), 7);
        assert_eq!(degree(4, 0).unwrap(), 0);
    }

    #[test]
    fn compositions_small() {
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
        assert_eq!(compositions(3, 3), vec![vec![1, 1, 1]]);
        assert!(compositions(3, 4).is_empty());
    }

    #[test]
    fn neighbor_examples() {
        let fj31 = FlagGraphSpec::new(3, 1).unwrap();
        let mut nb = neighbors(&fj31, &p("123")).unwrap();
        nb.sort();
        assert_eq!(nb, vec![p("132"), p("213")]);

        let fj21 = FlagGraphSpec::new(2, 1).unwrap();
        assert_eq!(neighbors(&fj21, &p("12")).unwrap(), vec![p("21")]);

        let fj42 = FlagGraphSpec::new(4, 2).unwrap();
        assert_eq!(neighbors(&fj42, &p("1234")).unwrap().len(), 7);

        let fj30 = FlagGraphSpec::new(3, 0).unwrap();
        assert!(neighbors(&fj30, &p("123")).unwrap().is_empty());
    }

    #[test]
    fn edge_counts() {
        let count = |n, k| {
            build_edges(&FlagGraphSpec::new(n, k).unwrap())
                .unwrap()
                .len()
        };
        assert_eq!(count(2, 1), 1);
        assert_eq!(count(3, 1), 6);
        assert_eq!(count(4, 2), 84);
        assert!(matches!(
            build_edges(&FlagGraphSpec::new(3, 0).unwrap()),
            Err(Error::TrivialGraph { .. })
        ));
        let capped = FlagGraphSpec::new(5, 1).unwrap().with_caps(Caps {
            graph: 4,
            ..Caps::default()
        });
        assert!(matches!(
            build_edges(&capped),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn edges_respect_custom_ordering() {
        let reversed: Vec<_> = enumerate_permutations(3)
            .unwrap()
            .iter()
            .rev()
            .copied()
            .collect();
        let ordering = VertexOrdering::from_perms(3, reversed).unwrap();
        let spec = FlagGraphSpec::new(3, 1)
            .unwrap()
            .with_ordering(ordering)
            .unwrap();
        let edges = build_edges(&spec).unwrap();
        assert_eq!(edges.len(), 6);
        for (i, j) in edges {
            let (u, v) = (spec.vertex(i).unwrap(), spec.vertex(j).unwrap());
            assert!(adjacent(&spec, &u, &v).unwrap());
        }
    }

    #[test]
    fn end_insertions_embed() {
        for n in 2..=4 {
            for k in 1..n {
                assert!(insertion_preserves_adjacency(n, k, 1).unwrap());
                assert!(insertion_preserves_adjacency(n, k, n + 1).unwrap());
            }
        }
        // a middle insertion is not an embedding of the permutahedron
        assert!(!insertion_preserves_adjacency(3, 1, 2).unwrap());
    }
}
