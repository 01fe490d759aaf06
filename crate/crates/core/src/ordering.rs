//! Explicit orderings of the vertex set `S_n`.

use crate::error::{Error, Result};
use crate::perm::{factorial, Permutation};

/// Largest `n` for which all `n!` permutations may be materialized.
pub const MAX_ENUMERATION_N: usize = 10;

/// A sequence containing every permutation of `[n]` exactly once.
///
/// Besides the sequence itself it keeps a table from lexicographic rank to
/// position, so `index_of` is a Lehmer-code computation plus one lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    n: usize,
    perms: Vec<Permutation>,
    position: Vec<u32>,
}

impl VertexOrdering {
    /// Validates that `perms` lists each element of `S_n` exactly once.
    pub fn from_perms(n: usize, perms: Vec<Permutation>) -> Result<Self> {
        check_cap(n)?;
        let total = factorial(n) as usize;
        if perms.len() != total {
            return Err(Error::InvalidPermutation(format!(
                "ordering has {} entries, expected {n}! = {total}",
                perms.len()
            )));
        }
        let mut position = vec![u32::MAX; total];
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: p.len(),
                });
            }
            let slot = &mut position[p.lex_rank()];
            if *slot != u32::MAX {
                return Err(Error::InvalidPermutation(format!("ordering repeats {p}")));
            }
            *slot = i as u32;
        }
        Ok(Self { n, perms, position })
    }

    /// Lexicographic order on one-line notation.
    pub fn lexicographic(n: usize) -> Result<Self> {
        check_cap(n)?;
        let total = factorial(n) as usize;
        let mut perms = Vec::with_capacity(total);
        let mut p = Permutation::identity(n)?;
        loop {
            perms.push(p);
            if !p.next_lex() {
                break;
            }
        }
        let position = (0..total as u32).collect();
        Ok(Self { n, perms, position })
    }

    /// One permutation per line, blank lines and `#` comments ignored.
    pub fn parse_lines(text: &str) -> Result<Self> {
        let perms: Vec<Permutation> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<_>>()?;
        let n = perms
            .first()
            .map(Permutation::len)
            .ok_or_else(|| Error::Parse("ordering file is empty".into()))?;
        Self::from_perms(n, perms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn get(&self, i: usize) -> Option<&Permutation> {
        self.perms.get(i)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.perms.iter()
    }

    /// Position of `p` in this ordering; `p` must have length `n`.
    pub fn index_of(&self, p: &Permutation) -> usize {
        self.position[p.lex_rank()] as usize
    }

    pub(crate) fn index_of_slice(&self, a: &[u8]) -> usize {
        self.position[crate::perm::lex_rank_slice(a)] as usize
    }

    pub fn is_lexicographic(&self) -> bool {
        self.position
            .iter()
            .enumerate()
            .all(|(i, &p)| p as usize == i)
    }
}

impl<'a> IntoIterator for &'a VertexOrdering {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;

    fn into_iter(self) -> Self::IntoIter {
        self.perms.iter()
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPermutation("n must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_N {
        return Err(Error::CapExceeded {
            what: "permutation enumeration",
            n,
            cap: MAX_ENUMERATION_N,
        });
    }
    Ok(())
}

/// All `n!` permutations in lexicographic order, identity first.
pub fn enumerate_permutations(n: usize) -> Result<VertexOrdering> {
    VertexOrdering::lexicographic(n)
}
