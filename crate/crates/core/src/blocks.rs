//! Adjacency matrices under explicit vertex orderings and their block
//! structure under the insertion ordering.
//!
//! For an ordering `S` of `S_n`, the concatenated ordering `S̄` of `S_{n+1}`
//! lists `φ_1(S), φ_2(S), …, φ_{n+1}(S)`, where `φ_i` inserts `n + 1` at
//! position `i`. Under `S̄` the adjacency matrix of `FJ(n+1, k)` splits into
//! `(n+1)²` blocks of size `n!`, and those blocks are themselves adjacency
//! matrices of smaller flag graphs. The `verify_*` functions check this block
//! by block and report the first discrepancy with 1-based coordinates.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{check_params, Caps, FlagGraphSpec};
use crate::ordering::VertexOrdering;
use crate::perm::{compose_into, factorial, insertion, mismatch_slices, Permutation, MAX_N};
use crate::SCHEMA_VERSION;

/// Read access to a square 0/1 matrix.
pub trait BitGrid {
    fn size(&self) -> usize;
    fn get(&self, row: usize, col: usize) -> bool;
}

/// Square 0/1 matrix stored as packed 64-bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    order: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(order: usize) -> Self {
        let words_per_row = order.div_ceil(64);
        Self {
            order,
            words_per_row,
            bits: vec![0; order * words_per_row],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(order);
        for r in 0..order {
            for c in 0..order {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let word = &mut self.bits[row * self.words_per_row + col / 64];
        if value {
            *word |= 1 << (col % 64);
        } else {
            *word &= !(1 << (col % 64));
        }
    }

    fn row_words(&self, row: usize) -> &[u64] {
        &self.bits[row * self.words_per_row..(row + 1) * self.words_per_row]
    }

    pub fn row_sum(&self, row: usize) -> usize {
        self.row_words(row)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (r + 1..self.order).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.order).all(|i| !self.get(i, i))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.order).map(|r| self.row_sum(r)).sum::<usize>() / 2
    }

    /// `A · x` over the integers.
    pub fn mul_vec(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.order {
            return Err(Error::SizeMismatch {
                left: self.order,
                right: x.len(),
            });
        }
        Ok((0..self.order)
            .map(|r| {
                (0..self.order)
                    .filter(|&c| self.get(r, c))
                    .map(|c| x[c])
                    .sum()
            })
            .collect())
    }

    /// One line of `0`/`1` characters per row.
    pub fn to_grid(&self) -> String {
        let mut out = String::with_capacity(self.order * (self.order + 1));
        for r in 0..self.order {
            out.extend((0..self.order).map(|c| if self.get(r, c) { '1' } else { '0' }));
            out.push('\n');
        }
        out
    }

    pub fn parse_grid(text: &str) -> Result<Self> {
        let rows: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .collect();
        let order = rows.len();
        let mut m = Self::zeros(order);
        for (r, line) in rows.iter().enumerate() {
            if line.len() != order {
                return Err(Error::Parse(format!(
                    "row {} has {} columns, expected {order}",
                    r + 1,
                    line.len()
                )));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => return Err(Error::Parse(format!("unexpected {other:?} in grid"))),
                }
            }
        }
        Ok(m)
    }

    /// Run-length encoding: a header `rle <order>`, then one line per row of
    /// comma-separated run lengths alternating zeros and ones, starting with
    /// a (possibly empty) run of zeros.
    pub fn to_rle(&self) -> String {
        let mut out = format!("rle {}\n", self.order);
        for r in 0..self.order {
            let mut runs = Vec::new();
            let mut current = false;
            let mut len = 0usize;
            for c in 0..self.order {
                let bit = self.get(r, c);
                if bit == current {
                    len += 1;
                } else {
                    runs.push(len);
                    current = bit;
                    len = 1;
                }
            }
            runs.push(len);
            let line: Vec<String> = runs.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn parse_rle(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty rle input".into()))?;
        let order: usize = header
            .strip_prefix("rle ")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad rle header {header:?}")))?;
        let mut m = Self::zeros(order);
        let mut rows = 0;
        for (r, line) in lines.enumerate() {
            if r >= order {
                return Err(Error::Parse("too many rle rows".into()));
            }
            let mut col = 0usize;
            for (idx, tok) in line.split(',').enumerate() {
                let len: usize = tok
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad run length {tok:?}")))?;
                if col + len > order {
                    return Err(Error::Parse(format!("row {} overflows", r + 1)));
                }
                if idx % 2 == 1 {
                    for c in col..col + len {
                        m.set(r, c, true);
                    }
                }
                col += len;
            }
            if col != order {
                return Err(Error::Parse(format!("row {} has {col} columns", r + 1)));
            }
            rows += 1;
        }
        if rows != order {
            return Err(Error::Parse(format!("expected {order} rows, found {rows}")));
        }
        Ok(m)
    }
}

impl BitGrid for BitMatrix {
    fn size(&self) -> usize {
        self.order
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] >> (col % 64) & 1 == 1
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BitMatrix({})\n{}", self.order, self.to_grid())
    }
}

/// `A(G, S)`: the 0/1 matrix of a graph on `S_n` w.r.t. an ordering.
#[derive(Clone, Debug)]
pub struct AdjacencyMatrix {
    pub matrix: BitMatrix,
    pub ordering: VertexOrdering,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    /// Block `[i, j]` (1-based) for a block size of `(n-1)!`, matching an
    /// ordering built by [`concatenated_ordering`].
    pub fn block(&self, i: usize, j: usize) -> Result<BlockView<'_>> {
        let n = self.ordering.n();
        BlockView::new(&self.matrix, factorial(n - 1) as usize, i, j)
    }
}

impl BitGrid for AdjacencyMatrix {
    fn size(&self) -> usize {
        self.matrix.order()
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.matrix.get(row, col)
    }
}

/// The `[i, j]` sub-block of a matrix partitioned into equal square blocks.
#[derive(Clone, Copy, Debug)]
pub struct BlockView<'a> {
    parent: &'a BitMatrix,
    block_size: usize,
    i: usize,
    j: usize,
}

impl<'a> BlockView<'a> {
    /// `i` and `j` are 1-based block indices.
    pub fn new(parent: &'a BitMatrix, block_size: usize, i: usize, j: usize) -> Result<Self> {
        let blocks = parent.order() / block_size.max(1);
        for idx in [i, j] {
            if idx == 0 || idx > blocks {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    min: 1,
                    max: blocks,
                });
            }
        }
        Ok(Self {
            parent,
            block_size,
            i,
            j,
        })
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn to_matrix(&self) -> BitMatrix {
        BitMatrix::from_fn(self.block_size, |r, c| self.get(r, c))
    }
}

impl BitGrid for BlockView<'_> {
    fn size(&self) -> usize {
        self.block_size
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> bool {
        self.parent.get(
            (self.i - 1) * self.block_size + row,
            (self.j - 1) * self.block_size + col,
        )
    }
}

/// Common row sum of a square 0/1 matrix whose row and column sums are all
/// equal; `None` otherwise.
pub fn block_regularity<G: BitGrid + ?Sized>(b: &G) -> Option<usize> {
    let m = b.size();
    let row = |r: usize| (0..m).filter(|&c| b.get(r, c)).count();
    let col = |c: usize| (0..m).filter(|&r| b.get(r, c)).count();
    let target = if m == 0 { 0 } else { row(0) };
    ((0..m).all(|r| row(r) == target) && (0..m).all(|c| col(c) == target)).then_some(target)
}

/// First `(row, col)` (0-based) where two equally sized grids disagree.
pub fn first_difference<A: BitGrid + ?Sized, B: BitGrid + ?Sized>(
    a: &A,
    b: &B,
) -> Option<(usize, usize)> {
    let m = a.size();
    (0..m)
        .flat_map(|r| (0..m).map(move |c| (r, c)))
        .find(|&(r, c)| a.get(r, c) != b.get(r, c))
}

/// `φ_1(S), …, φ_{n+1}(S)` concatenated: an ordering of `S_{n+1}`.
pub fn concatenated_ordering(s: &VertexOrdering) -> Result<VertexOrdering> {
    let n = s.n();
    let mut perms = Vec::with_capacity(s.len() * (n + 1));
    for i in 1..=n + 1 {
        for u in s {
            perms.push(insertion(u, i)?);
        }
    }
    VertexOrdering::from_perms(n + 1, perms)
}

fn check_ordering(spec_n: usize, s: &VertexOrdering) -> Result<()> {
    if s.n() != spec_n {
        return Err(Error::SizeMismatch {
            left: spec_n,
            right: s.n(),
        });
    }
    Ok(())
}

/// `A(FJ(n, k), S)` straight from the prefix-set predicate; zero diagonal.
pub fn adjacency_matrix(spec: &FlagGraphSpec, s: &VertexOrdering) -> Result<AdjacencyMatrix> {
    check_ordering(spec.n(), s)?;
    spec.caps().check_matrix(spec.n())?;
    let k = spec.k();
    let perms = s.perms();
    let matrix = BitMatrix::from_fn(s.len(), |r, c| {
        r != c && mismatch_slices(perms[r].entries(), perms[c].entries()) == k
    });
    Ok(AdjacencyMatrix {
        matrix,
        ordering: s.clone(),
    })
}

/// The flag relation "prefix sets differ at exactly `k` positions", diagonal
/// included. Equal to [`adjacency_matrix`] for `k >= 1` and to the identity
/// for `k = 0`.
pub fn flag_relation_matrix(
    n: usize,
    k: usize,
    s: &VertexOrdering,
    caps: &Caps,
) -> Result<BitMatrix> {
    check_params(n, k)?;
    check_ordering(n, s)?;
    caps.check_matrix(n)?;
    let perms = s.perms();
    Ok(BitMatrix::from_fn(s.len(), |r, c| {
        mismatch_slices(perms[r].entries(), perms[c].entries()) == k
    }))
}

/// Adjacency matrix of the Cayley graph on `S_n` with the given generators
/// (right action `u ↦ u · g`), w.r.t. `s`.
pub fn cayley_matrix(generators: &[Permutation], s: &VertexOrdering) -> Result<BitMatrix> {
    let n = s.n();
    if let Some(g) = generators.iter().find(|g| g.len() != n) {
        return Err(Error::SizeMismatch {
            left: n,
            right: g.len(),
        });
    }
    let mut m = BitMatrix::zeros(s.len());
    let mut w = [0u8; MAX_N];
    for (r, u) in s.iter().enumerate() {
        for g in generators {
            compose_into(u.entries(), g.entries(), &mut w);
            m.set(r, s.index_of_slice(&w[..n]), true);
        }
    }
    Ok(m)
}

/// The `(x, x+1)`-transposition of `S_n` in one-line notation.
pub fn neighbouring_transposition(n: usize, x: usize) -> Result<Permutation> {
    if x == 0 || x >= n {
        return Err(Error::IndexOutOfRange {
            index: x,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let mut e: Vec<u8> = (1..=n as u8).collect();
    e.swap(x - 1, x);
    Permutation::new(&e)
}

/// 1-based location of a block discrepancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub block: (usize, usize),
    pub row: usize,
    pub col: usize,
    pub expected: bool,
    pub found: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssertionResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub blocks_checked: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub schema_version: u32,
    pub check: String,
    /// Size of the smaller permutations; the parent graph lives on `S_{n+1}`.
    pub n: usize,
    pub k: usize,
    pub block_size: usize,
    pub passed: bool,
    pub assertions: Vec<AssertionResult>,
    pub notes: Vec<String>,
}

struct AssertionBuilder {
    result: AssertionResult,
}

impl AssertionBuilder {
    fn new(id: &str, description: impl Into<String>) -> Self {
        Self {
            result: AssertionResult {
                id: id.into(),
                description: description.into(),
                passed: true,
                blocks_checked: 0,
                witness: None,
            },
        }
    }

    fn compare<E: BitGrid + ?Sized>(&mut self, found: &BlockView<'_>, expected: &E) {
        self.result.blocks_checked += 1;
        if self.result.witness.is_some() {
            return;
        }
        if let Some((r, c)) = first_difference(found, expected) {
            self.result.passed = false;
            self.result.witness = Some(Witness {
                block: found.indices(),
                row: r + 1,
                col: c + 1,
                expected: expected.get(r, c),
                found: found.get(r, c),
            });
        }
    }

    fn finish(self) -> AssertionResult {
        self.result
    }
}

fn finish_report(
    check: &str,
    n: usize,
    k: usize,
    block_size: usize,
    assertions: Vec<AssertionResult>,
    notes: Vec<String>,
) -> BlockReport {
    BlockReport {
        schema_version: SCHEMA_VERSION,
        check: check.into(),
        n,
        k,
        block_size,
        passed: assertions.iter().all(|a| a.passed),
        assertions,
        notes,
    }
}

/// Builds `A(FJ(n+1, k), S̄)` and checks, with `S` an ordering of `S_n`:
///
/// 1. blocks `[i, j]` with `|i - j| > k` are zero;
/// 2. the corner blocks `[1, 1]` and `[n+1, n+1]` equal `A(FJ(n, k), S)`;
/// 3. blocks with `|i - j| = 1` equal `A(FJ(n, k-1), S)`, which for `k = 1`
///    is the identity (flag relation of `FJ(n, 0)`).
pub fn verify_recursive_blocks(
    n: usize,
    k: usize,
    s: &VertexOrdering,
    caps: &Caps,
) -> Result<BlockReport> {
    check_params(n, k)?;
    if k == 0 {
        return Err(Error::TrivialGraph { n });
    }
    check_ordering(n, s)?;
    caps.check_matrix(n + 1)?;

    let bar = concatenated_ordering(s)?;
    let parent = adjacency_matrix(&FlagGraphSpec::new(n + 1, k)?.with_caps(*caps), &bar)?;
    let corner = flag_relation_matrix(n, k, s, caps)?;
    let flank = flag_relation_matrix(n, k - 1, s, caps)?;
    let bs = s.len();

    let mut zero = AssertionBuilder::new(
        "zero-far-blocks",
        format!("blocks with |i-j| > {k} are zero"),
    );
    let mut corners = AssertionBuilder::new(
        "corner-blocks",
        format!("[1,1] and [{0},{0}] equal A(FJ({n},{k}),S)", n + 1),
    );
    let mut flanks = AssertionBuilder::new(
        "flank-blocks",
        format!("blocks with |i-j| = 1 equal A(FJ({n},{}),S)", k - 1),
    );
    let zeros = BitMatrix::zeros(bs);
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            let view = BlockView::new(&parent.matrix, bs, i, j)?;
            let gap = i.abs_diff(j);
            if gap > k {
                zero.compare(&view, &zeros);
            }
            if gap == 1 {
                flanks.compare(&view, &flank);
            }
            if (i, j) == (1, 1) || (i, j) == (n + 1, n + 1) {
                corners.compare(&view, &corner);
            }
        }
    }

    let mut notes = Vec::new();
    if k == 1 {
        notes.push(format!(
            "flank target A(FJ({n},0),S) is the {bs}x{bs} identity: each flag is related only to itself"
        ));
    }
    Ok(finish_report(
        "recursive",
        n,
        k,
        bs,
        vec![zero.finish(), corners.finish(), flanks.finish()],
        notes,
    ))
}

/// Builds `A(FJ(n+1, 1), S̄)` and checks its permutahedron block structure:
/// zero outside the tri-diagonal, identity flanks, corners equal to
/// `A(FJ(n, 1), S)`, and each interior diagonal block `[i, i]` equal to the
/// Cayley graph of `S_n` on all neighbouring transpositions except
/// `(i-1, i)`, constructed independently from its generators. Block
/// regularities are checked against `n-1` (corners), `n-2` (interior),
/// `1` (flanks) and `0` (elsewhere).
pub fn verify_permutahedron_blocks(
    n: usize,
    s: &VertexOrdering,
    caps: &Caps,
) -> Result<BlockReport> {
    check_params(n, 1)?;
    check_ordering(n, s)?;
    caps.check_matrix(n + 1)?;

    let bar = concatenated_ordering(s)?;
    let parent = adjacency_matrix(&FlagGraphSpec::new(n + 1, 1)?.with_caps(*caps), &bar)?;
    let bs = s.len();
    let all: Vec<Permutation> = (1..n)
        .map(|x| neighbouring_transposition(n, x))
        .collect::<Result<_>>()?;
    let corner = cayley_matrix(&all, s)?;

    let mut zero = AssertionBuilder::new("tridiagonal", "blocks with |i-j| > 1 are zero");
    let mut flanks =
        AssertionBuilder::new("identity-flanks", "blocks with |i-j| = 1 are the identity");
    let mut corners = AssertionBuilder::new(
        "corner-blocks",
        format!("[1,1] and [{0},{0}] equal A(FJ({n},1),S)", n + 1),
    );
    let mut interior = AssertionBuilder::new(
        "interior-diagonal-blocks",
        "[i,i] for 1 < i <= n equals the Cayley graph without the (i-1,i)-transposition",
    );
    let mut regular = AssertionResult {
        id: "block-regularities".into(),
        description: format!(
            "every block is regular: {} on corners, {} on interior diagonal, 1 on flanks, 0 elsewhere",
            n - 1,
            n - 2
        ),
        passed: true,
        blocks_checked: 0,
        witness: None,
    };

    let zeros = BitMatrix::zeros(bs);
    let identity = BitMatrix::identity(bs);
    for i in 1..=n + 1 {
        for j in 1..=n + 1 {
            let view = BlockView::new(&parent.matrix, bs, i, j)?;
            let gap = i.abs_diff(j);
            let expected_regularity = match gap {
                0 if i == 1 || i == n + 1 => n - 1,
                0 => n - 2,
                1 => 1,
                _ => 0,
            };
            regular.blocks_checked += 1;
            if regular.passed && block_regularity(&view) != Some(expected_regularity) {
                regular.passed = false;
                regular.witness = Some(Witness {
                    block: (i, j),
                    row: 0,
                    col: 0,
                    expected: true,
                    found: false,
                });
            }
            match gap {
                0 if i == 1 || i == n + 1 => corners.compare(&view, &corner),
                0 => {
                    let gens: Vec<Permutation> = all
                        .iter()
                        .enumerate()
                        .filter(|&(x, _)| x + 1 != i - 1)
                        .map(|(_, g)| *g)
                        .collect();
                    interior.compare(&view, &cayley_matrix(&gens, s)?);
                }
                1 => flanks.compare(&view, &identity),
                _ => zero.compare(&view, &zeros),
            }
        }
    }

    let mut notes = Vec::new();
    if n == 2 {
        notes.push(
            "n = 2: the single interior diagonal block has no generators left and is the 2x2 zero matrix"
                .into(),
        );
    }
    Ok(finish_report(
        "permutahedron",
        n,
        1,
        bs,
        vec![
            zero.finish(),
            flanks.finish(),
            corners.finish(),
            interior.finish(),
            regular,
        ],
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::enumerate_permutations;

    fn lex(n: usize) -> VertexOrdering {
        enumerate_permutations(n).unwrap()
    }

    #[test]
    fn concatenated_examples() {
        let bar = concatenated_ordering(&lex(3)).unwrap();
        let head: Vec<String> = bar.iter().take(7).map(ToString::to_string).collect();
        assert_eq!(
            head,
            ["4123", "4132", "4213", "4231", "4312", "4321", "1423"]
        );
        let tail: Vec<String> = bar.iter().skip(18).map(ToString::to_string).collect();
        assert_eq!(tail, ["1234", "1324", "2134", "2314", "3124", "3214"]);

        let one = concatenated_ordering(&lex(1)).unwrap();
        let got: Vec<String> = one.iter().map(ToString::to_string).collect();
        assert_eq!(got, ["21", "12"]);

        let two = concatenated_ordering(&lex(2)).unwrap();
        let got: Vec<String> = two.iter().map(ToString::to_string).collect();
        assert_eq!(got, ["312", "321", "132", "231", "123", "213"]);
    }

    #[test]
    fn small_adjacency_matrices() {
        let a = adjacency_matrix(&FlagGraphSpec::new(2, 1).unwrap(), &lex(2)).unwrap();
        assert_eq!(a.matrix.to_grid(), "01\n10\n");

        let a = adjacency_matrix(&FlagGraphSpec::new(3, 1).unwrap(), &lex(3)).unwrap();
        assert!(a.matrix.is_symmetric());
        assert!(a.matrix.has_zero_diagonal());
        assert!((0..6).all(|r| a.matrix.row_sum(r) == 2));

        let spec = FlagGraphSpec::new(4, 2).unwrap();
        let a = adjacency_matrix(&spec, &concatenated_ordering(&lex(3)).unwrap()).unwrap();
        assert_eq!(a.order(), 24);
        assert!(a.block(4, 4).is_ok());
        assert!(a.block(5, 1).is_err());
        assert!(a.block(0, 1).is_err());
    }

    #[test]
    fn permutahedron_block_examples() {
        let spec = FlagGraphSpec::new(4, 1).unwrap();
        let a = adjacency_matrix(&spec, &concatenated_ordering(&lex(3)).unwrap()).unwrap();
        let b13 = a.block(1, 3).unwrap();
        assert_eq!(first_difference(&b13, &BitMatrix::zeros(6)), None);
        let b23 = a.block(2, 3).unwrap();
        assert_eq!(first_difference(&b23, &BitMatrix::identity(6)), None);
        for i in 1..=4 {
            for j in 1..=4 {
                let bij = a.block(i, j).unwrap().to_matrix();
                let bji = a.block(j, i).unwrap().to_matrix();
                let transposed = BitMatrix::from_fn(6, |r, c| bji.get(c, r));
                assert_eq!(bij, transposed);
            }
        }
        let regs: Vec<_> = (1..=4)
            .map(|i| block_regularity(&a.block(i, i).unwrap()))
            .collect();
        assert_eq!(regs, vec![Some(2), Some(1), Some(1), Some(2)]);
    }

    #[test]
    fn regularity_examples() {
        assert_eq!(block_regularity(&BitMatrix::identity(6)), Some(1));
        assert_eq!(block_regularity(&BitMatrix::zeros(6)), Some(0));
        let a = adjacency_matrix(&FlagGraphSpec::new(3, 1).unwrap(), &lex(3)).unwrap();
        assert_eq!(block_regularity(&a), Some(2));
        let mut lopsided = BitMatrix::zeros(3);
        lopsided.set(0, 1, true);
        assert_eq!(block_regularity(&lopsided), None);
        // equal row sums, unequal column sums
        let skew = BitMatrix::from_fn(2, |_, c| c == 0);
        assert_eq!(block_regularity(&skew), None);
    }

    #[test]
    fn recursive_report_examples() {
        let caps = Caps::default();
        let r = verify_recursive_blocks(3, 2, &lex(3), &caps).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.assertions.len(), 3);

        let r = verify_recursive_blocks(3, 1, &lex(3), &caps).unwrap();
        assert!(r.passed);
        assert_eq!(r.notes.len(), 1);

        let r = verify_recursive_blocks(2, 1, &lex(2), &caps).unwrap();
        assert!(r.passed);
        assert!(verify_recursive_blocks(3, 0, &lex(3), &caps).is_err());
        assert!(verify_recursive_blocks(3, 1, &lex(2), &caps).is_err());
    }

    #[test]
    fn permutahedron_report_examples() {
        let caps = Caps::default();
        let r = verify_permutahedron_blocks(3, &lex(3), &caps).unwrap();
        assert!(r.passed, "{r:#?}");
        let r = verify_permutahedron_blocks(2, &lex(2), &caps).unwrap();
        assert!(r.passed, "{r:#?}");
        assert_eq!(r.notes.len(), 1);
        let capped = Caps { matrix: 4, ..caps };
        assert!(matches!(
            verify_permutahedron_blocks(4, &lex(4), &capped),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn report_pinpoints_a_wrong_ordering_claim() {
        // A middle insertion block is not a copy of FJ(n,k), so a corner-style
        // comparison against [2,2] must produce a witness.
        let caps = Caps::default();
        let bar = concatenated_ordering(&lex(3)).unwrap();
        let parent = adjacency_matrix(&FlagGraphSpec::new(4, 1).unwrap(), &bar).unwrap();
        let corner = flag_relation_matrix(3, 1, &lex(3), &caps).unwrap();
        let mut check = AssertionBuilder::new("probe", "");
        check.compare(&parent.block(2, 2).unwrap(), &corner);
        let res = check.finish();
        assert!(!res.passed);
        let w = res.witness.unwrap();
        assert_eq!(w.block, (2, 2));
        assert!(w.row >= 1 && w.col >= 1);
    }

    #[test]
    fn grid_and_rle_formats() {
        let a = adjacency_matrix(&FlagGraphSpec::new(3, 1).unwrap(), &lex(3)).unwrap();
        let grid = a.matrix.to_grid();
        assert_eq!(BitMatrix::parse_grid(&grid).unwrap(), a.matrix);
        let rle = a.matrix.to_rle();
        assert!(rle.starts_with("rle 6\n"));
        // row of 123: neighbours 132 (index 1) and 213 (index 2)
        assert_eq!(rle.lines().nth(1), Some("1,2,3"));
        assert_eq!(BitMatrix::parse_rle(&rle).unwrap(), a.matrix);
        assert!(BitMatrix::parse_rle("rle 2\n1,1\n").is_err());
        assert!(BitMatrix::parse_rle("rle 2\n3\n2\n").is_err());
        assert!(BitMatrix::parse_grid("01\n1\n").is_err());
    }
}
