//! Breadth-first distances, connectivity and diameters of `FJ(n, k)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{build_edges, check_params, FlagGraphSpec};
use crate::perm::{choose2, compose_into, kendall_distance, Permutation, MAX_N};

/// Marks a vertex the search never reached.
pub const UNREACHED: u16 = u16::MAX;

/// Shortest-path distances from one source, indexed like the spec's ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: Permutation,
    pub distances: Vec<u16>,
    pub eccentricity: u16,
}

impl DistanceProfile {
    pub fn is_connected(&self) -> bool {
        !self.distances.contains(&UNREACHED)
    }

    pub fn unreachable_count(&self) -> usize {
        self.distances.iter().filter(|&&d| d == UNREACHED).count()
    }
}

pub fn bfs(spec: &FlagGraphSpec, source: &Permutation) -> Result<DistanceProfile> {
    spec.require_nontrivial()?;
    spec.caps().check_graph(spec.n())?;
    let start = spec.index_of(source)?;
    let n = spec.n();
    let gens: Vec<&[u8]> = spec.generator_set()?.iter().map(|g| g.entries()).collect();

    let mut distances = vec![UNREACHED; spec.vertex_count()];
    distances[start] = 0;
    let mut frontier = vec![start as u32];
    let mut next = Vec::new();
    let mut level = 0u16;
    let mut u = [0u8; MAX_N];
    let mut w = [0u8; MAX_N];
    while !frontier.is_empty() {
        for &i in &frontier {
            spec.vertex_into(i as usize, &mut u);
            for g in &gens {
                compose_into(&u[..n], g, &mut w);
                let j = spec.index_of_slice(&w[..n]);
                if distances[j] == UNREACHED {
                    distances[j] = level + 1;
                    next.push(j as u32);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level += 1;
        std::mem::swap(&mut frontier, &mut next);
        next.clear();
    }

    Ok(DistanceProfile {
        source: *source,
        distances,
        eccentricity: level,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DiameterMode {
    /// Eccentricity of the identity; exact because Cayley graphs are
    /// vertex-transitive.
    #[default]
    Transitive,
    /// Maximum eccentricity over every source vertex.
    Exhaustive,
}

/// Diameter of `FJ(n, k)`. A disconnected graph is an error, not a value.
pub fn diameter(spec: &FlagGraphSpec, mode: DiameterMode) -> Result<u64> {
    let disconnected = |p: &DistanceProfile| Error::Disconnected {
        n: spec.n(),
        k: spec.k(),
        unreachable: p.unreachable_count(),
    };
    match mode {
        DiameterMode::Transitive => {
            let profile = bfs(spec, &Permutation::identity(spec.n())?)?;
            if !profile.is_connected() {
                return Err(disconnected(&profile));
            }
            Ok(profile.eccentricity as u64)
        }
        DiameterMode::Exhaustive => {
            spec.require_nontrivial()?;
            spec.caps().check_graph(spec.n())?;
            // warm the shared generator cache before fanning out
            spec.generator_set()?;
            (0..spec.vertex_count())
                .into_par_iter()
                .map(|i| {
                    let profile = bfs(spec, &spec.vertex(i)?)?;
                    if !profile.is_connected() {
                        return Err(disconnected(&profile));
                    }
                    Ok(profile.eccentricity as u64)
                })
                .try_reduce(|| 0, |a, b| Ok(a.max(b)))
        }
    }
}

/// Connectivity via one BFS. `FJ(n, 0)` is edgeless, hence connected only for
/// `n = 1`.
pub fn is_connected(spec: &FlagGraphSpec) -> Result<bool> {
    if spec.k() == 0 {
        return Ok(spec.n() == 1);
    }
    Ok(bfs(spec, &Permutation::identity(spec.n())?)?.is_connected())
}

/// `⌈C(n,2) / C(k+1,2)⌉`, a lower bound on the diameter of `FJ(n, k)`.
pub fn diameter_lower_bound(n: usize, k: usize) -> Result<u64> {
    check_params(n, k)?;
    if k == 0 {
        return Err(Error::InvalidParameters { n, k });
    }
    Ok(choose2(n).div_ceil(choose2(k + 1)))
}

/// Outcome of checking that every edge spans at most `C(k+1, 2)` neighbouring
/// transpositions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranspositionBoundReport {
    pub n: usize,
    pub k: usize,
    pub bound: u64,
    pub edges_checked: usize,
    pub max_observed: u64,
    /// First offending edge and its Kendall distance.
    pub violation: Option<(Permutation, Permutation, u64)>,
}

impl TranspositionBoundReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

pub fn edge_transposition_bound_check(spec: &FlagGraphSpec) -> Result<TranspositionBoundReport> {
    let edges = build_edges(spec)?;
    let bound = choose2(spec.k() + 1);
    let mut max_observed = 0;
    let mut violation = None;
    for &(i, j) in &edges {
        let (u, v) = (spec.vertex(i)?, spec.vertex(j)?);
        let d = kendall_distance(&u, &v)?;
        max_observed = max_observed.max(d);
        if d > bound && violation.is_none() {
            violation = Some((u, v, d));
        }
    }
    Ok(TranspositionBoundReport {
        n: spec.n(),
        k: spec.k(),
        bound,
        edges_checked: edges.len(),
        max_observed,
        violation,
    })
}
