//! Spectra of permutahedra through the regularity matrix.
//!
//! Under the concatenated ordering every block of `A(FJ(n, 1))` is the
//! adjacency matrix of a regular graph, so the `n × n` matrix `M` of block
//! regularities satisfies `A · φ(v) = φ(M · v)`, where `φ` spreads the `i`-th
//! coordinate of `v` over the `i`-th block of `(n-1)!` coordinates. Every
//! eigenvalue of `M` is therefore an eigenvalue of `A`.

use serde::Serialize;

use crate::blocks::{
    adjacency_matrix, block_regularity, concatenated_ordering, BitGrid, BitMatrix, BlockView,
};
use crate::error::{Error, Result};
use crate::graph::{Caps, FlagGraphSpec};
use crate::ordering::{enumerate_permutations, VertexOrdering};
use crate::perm::factorial;

/// Tolerances and limits for the numerical routines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectralConfig {
    /// Jacobi stops once the off-diagonal Frobenius norm drops below
    /// `eig_tol * max(1, ‖A‖_F)`; bisection brackets to this width.
    pub eig_tol: f64,
    /// Absolute tolerance when matching eigenvalues across spectra.
    pub match_tol: f64,
    /// Computed eigenvalues closer than this are merged into one distinct value.
    pub merge_tol: f64,
    /// Largest matrix order accepted by [`eig_symmetric`].
    pub eigen_cap: usize,
    pub max_sweeps: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        Self {
            eig_tol: 1e-12,
            match_tol: 1e-8,
            merge_tol: 1e-7,
            eigen_cap: 720,
            max_sweeps: 100,
        }
    }
}

/// The tridiagonal matrix of block regularities of `A(FJ(n, 1), S̄)`:
/// `n-2` in the corners, `n-3` on the interior diagonal, `1` beside it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityMatrix {
    n: usize,
    rows: Vec<Vec<i64>>,
}

impl RegularityMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// 0-based entry access.
    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.rows[r][c]
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.rows[i][i] as f64).collect()
    }

    pub fn off_diagonal(&self) -> Vec<f64> {
        (1..self.n).map(|i| self.rows[i][i - 1] as f64).collect()
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::from_fn(self.n, |r, c| self.rows[r][c] as f64)
    }
}

pub fn regularity_matrix(n: usize) -> Result<RegularityMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameters { n, k: 1 });
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = if i == 0 || i == n - 1 {
            n as i64 - 2
        } else {
            n as i64 - 3
        };
        if i > 0 {
            row[i - 1] = 1;
        }
        if i + 1 < n {
            row[i + 1] = 1;
        }
    }
    Ok(RegularityMatrix { n, rows })
}

/// Reads `M` off `A(FJ(n, 1), S̄)` block by block, with `S` an ordering of
/// `S_{n-1}`. Fails if any block is not regular.
pub fn regularity_matrix_from_blocks(
    n: usize,
    s: &VertexOrdering,
    caps: &Caps,
) -> Result<RegularityMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameters { n, k: 1 });
    }
    if s.n() + 1 != n {
        return Err(Error::SizeMismatch {
            left: n - 1,
            right: s.n(),
        });
    }
    caps.check_matrix(n)?;
    let bar = concatenated_ordering(s)?;
    let a = adjacency_matrix(&FlagGraphSpec::new(n, 1)?.with_caps(*caps), &bar)?;
    let bs = s.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            let view = BlockView::new(&a.matrix, bs, i + 1, j + 1)?;
            *slot = block_regularity(&view).ok_or(Error::NonRegularBlock { i: i + 1, j: j + 1 })?
                as i64;
        }
    }
    Ok(RegularityMatrix { n, rows })
}

/// Dense real square matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    order: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                data.push(f(r, c));
            }
        }
        Self { order, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::SizeMismatch {
                left: order,
                right: bad.len(),
            });
        }
        Ok(Self::from_fn(order, |r, c| rows[r][c]))
    }

    pub fn from_bits<G: BitGrid + ?Sized>(g: &G) -> Self {
        Self::from_fn(g.size(), |r, c| if g.get(r, c) { 1.0 } else { 0.0 })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.order + c]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }
}

/// Eigenvalues sorted in descending order, plus the distinct values after
/// merging those closer than the merge tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub all: Vec<f64>,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<f64>, merge_tol: f64) -> Self {
        eigenvalues.sort_by(|a, b| b.total_cmp(a));
        let mut values: Vec<f64> = Vec::new();
        let mut multiplicities: Vec<usize> = Vec::new();
        let mut group_sum = 0.0;
        let mut group_last = f64::NAN;
        for &x in &eigenvalues {
            if values.is_empty() || (group_last - x).abs() > merge_tol {
                values.push(x);
                multiplicities.push(1);
                group_sum = x;
            } else {
                let m = multiplicities.last_mut().unwrap();
                *m += 1;
                group_sum += x;
                *values.last_mut().unwrap() = group_sum / *m as f64;
            }
            group_last = x;
        }
        Self {
            values,
            multiplicities,
            all: eigenvalues,
        }
    }

    pub fn distinct_count(&self) -> usize {
        self.values.len()
    }

    pub fn order(&self) -> usize {
        self.all.len()
    }

    pub fn largest(&self) -> Option<f64> {
        self.values.first().copied()
    }

    /// Second-largest distinct eigenvalue.
    pub fn second_largest(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.values.iter().any(|v| (v - x).abs() <= tol)
    }
}

/// Symmetric eigenvalues by cyclic Jacobi rotations.
pub fn eig_symmetric(a: &DenseMatrix, cfg: &SpectralConfig) -> Result<Spectrum> {
    let n = a.order();
    if n > cfg.eigen_cap {
        return Err(Error::CapExceeded {
            what: "eigen cap (matrix order)",
            n,
            cap: cfg.eigen_cap,
        });
    }
    let scale = a.frobenius_sq().sqrt().max(1.0);
    for r in 0..n {
        for c in r + 1..n {
            if (a.get(r, c) - a.get(c, r)).abs() > cfg.eig_tol * scale {
                return Err(Error::NonSymmetric { row: r, col: c });
            }
        }
    }

    let mut m = a.data.clone();
    let threshold = cfg.eig_tol * scale;
    let off_norm = |m: &[f64]| -> f64 {
        let mut s = 0.0;
        for r in 0..n {
            for c in r + 1..n {
                s += 2.0 * m[r * n + c] * m[r * n + c];
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    let mut residual = off_norm(&m);
    while residual >= threshold {
        if sweeps == cfg.max_sweeps {
            return Err(Error::NoConvergence { sweeps, residual });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                // annihilating angle, smaller root for stability
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut m, n, p, q, c, s);
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
            }
        }
        sweeps += 1;
        residual = off_norm(&m);
    }

    let eigenvalues = (0..n).map(|i| m[i * n + i]).collect();
    Ok(Spectrum::from_eigenvalues(eigenvalues, cfg.merge_tol))
}

/// `M ← Jᵀ M J` for the rotation in the `(p, q)` plane.
fn rotate(m: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    // columns p and q
    for k in 0..n {
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        m[k * n + p] = c * mkp - s * mkq;
        m[k * n + q] = s * mkp + c * mkq;
    }
    // rows p and q
    let (head, tail) = m.split_at_mut(q * n);
    let row_p = &mut head[p * n..p * n + n];
    let row_q = &mut tail[..n];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

/// Number of eigenvalues strictly below `x` of the symmetric tridiagonal
/// matrix with the given diagonal and off-diagonal (Sturm sequence via the
/// LDLᵀ pivots).
pub fn sturm_count(diagonal: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..diagonal.len() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = diagonal[i] - x - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (diagonal[i].abs() + x.abs()).max(1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// All eigenvalues of a symmetric tridiagonal matrix by bisection on the
/// Sturm count, bracketed by Gershgorin discs.
pub fn tridiagonal_eigenvalues(diagonal: &[f64], off: &[f64], tol: f64) -> Result<Vec<f64>> {
    let n = diagonal.len();
    if off.len() + 1 != n.max(1) {
        return Err(Error::SizeMismatch {
            left: n.saturating_sub(1),
            right: off.len(),
        });
    }
    let radius = |i: usize| {
        let l = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let r = if i + 1 < n { off[i].abs() } else { 0.0 };
        l + r
    };
    let lo0 = (0..n)
        .map(|i| diagonal[i] - radius(i))
        .fold(f64::INFINITY, f64::min)
        - 1.0;
    let hi0 = (0..n)
        .map(|i| diagonal[i] + radius(i))
        .fold(f64::NEG_INFINITY, f64::max)
        + 1.0;

    let mut out = Vec::with_capacity(n);
    for idx in 0..n {
        // the idx-th smallest eigenvalue lies where the count crosses idx
        let (mut lo, mut hi) = (lo0, hi0);
        while hi - lo > tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs())) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diagonal, off, mid) > idx {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    Ok(out)
}

pub fn eig_tridiagonal(m: &RegularityMatrix, cfg: &SpectralConfig) -> Result<Spectrum> {
    let values = tridiagonal_eigenvalues(&m.diagonal(), &m.off_diagonal(), cfg.eig_tol)?;
    Ok(Spectrum::from_eigenvalues(values, cfg.merge_tol))
}

/// `φ(v)` in `ℝ^{n!}`: coordinate `(i-1)·(n-1)! + t` holds `v_i` for every
/// `t ∈ [(n-1)!]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftedVector {
    pub n: usize,
    pub coords: Vec<f64>,
}

pub fn lift_vector(v: &[f64], n: usize) -> Result<LiftedVector> {
    Ok(LiftedVector {
        n,
        coords: lift(v, n)?,
    })
}

fn lift<T: Copy>(v: &[T], n: usize) -> Result<Vec<T>> {
    if v.len() != n || n == 0 {
        return Err(Error::SizeMismatch {
            left: n,
            right: v.len(),
        });
    }
    let width = factorial(n - 1) as usize;
    Ok(v.iter()
        .flat_map(|&x| std::iter::repeat(x).take(width))
        .collect())
}

/// Checks `A · φ(e_i) = φ(M · e_i)` in exact integer arithmetic for every
/// basis vector, with `A = A(FJ(n, 1), S̄)` and `S` an ordering of `S_{n-1}`.
pub fn verify_intertwining(n: usize, s: &VertexOrdering, caps: &Caps) -> Result<bool> {
    if n < 2 {
        return Err(Error::InvalidParameters { n, k: 1 });
    }
    caps.check_matrix(n)?;
    if s.n() + 1 != n {
        return Err(Error::SizeMismatch {
            left: n - 1,
            right: s.n(),
        });
    }
    let a = adjacency_matrix(
        &FlagGraphSpec::new(n, 1)?.with_caps(*caps),
        &concatenated_ordering(s)?,
    )?;
    let m = regularity_matrix(n)?;
    Ok(intertwines(&a.matrix, &m, |v| lift(v, n)))
}

/// `A · L(e_i) = L(M · e_i)` for every basis vector `e_i`, with `L` a
/// caller-supplied lifting map.
pub fn intertwines(
    a: &BitMatrix,
    m: &RegularityMatrix,
    lift_map: impl Fn(&[i64]) -> Result<Vec<i64>>,
) -> bool {
    (0..m.n()).all(|i| {
        let mut e = vec![0i64; m.n()];
        e[i] = 1;
        match (lift_map(&e), lift_map(&m.mul_vec(&e))) {
            (Ok(le), Ok(rhs)) => a.mul_vec(&le).map(|lhs| lhs == rhs).unwrap_or(false),
            _ => false,
        }
    })
}

/// Result of matching each value of a small spectrum into a big one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubsetMatch {
    pub ok: bool,
    /// `(small index, big index)` pairs over distinct values.
    pub matching: Vec<(usize, usize)>,
    pub unmatched: Option<f64>,
}

/// Is every distinct value of `small` within `tol` of some value of `big`?
pub fn spectrum_subset_check(small: &Spectrum, big: &Spectrum, tol: f64) -> SubsetMatch {
    let mut matching = Vec::with_capacity(small.values.len());
    for (i, &x) in small.values.iter().enumerate() {
        let nearest = big
            .values
            .iter()
            .enumerate()
            .map(|(j, &y)| (j, (x - y).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1));
        match nearest {
            Some((j, d)) if d <= tol => matching.push((i, j)),
            _ => {
                return SubsetMatch {
                    ok: false,
                    matching,
                    unmatched: Some(x),
                }
            }
        }
    }
    SubsetMatch {
        ok: true,
        matching,
        unmatched: None,
    }
}

/// `spec(A(FJ(n, 1)))` under lexicographic order.
pub fn permutahedron_spectrum(n: usize, cfg: &SpectralConfig) -> Result<Spectrum> {
    let order = factorial(n) as usize;
    if order > cfg.eigen_cap {
        return Err(Error::CapExceeded {
            what: "eigen cap (n!)",
            n,
            cap: cfg.eigen_cap,
        });
    }
    let caps = Caps {
        matrix: n.max(Caps::default().matrix),
        ..Caps::default()
    };
    let a = adjacency_matrix(
        &FlagGraphSpec::new(n, 1)?.with_caps(caps),
        &enumerate_permutations(n)?,
    )?;
    eig_symmetric(&DenseMatrix::from_bits(&a.matrix), cfg)
}

/// Whether the second-largest distinct eigenvalue of `FJ(n, 1)` is among the
/// eigenvalues of `M(n)`. Evidence, not a theorem.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjectureEvidence {
    pub n: usize,
    pub second_largest: Option<f64>,
    pub matched: Option<f64>,
    pub holds: bool,
}

pub fn second_largest_evidence(
    n: usize,
    full: &Spectrum,
    m: &Spectrum,
    tol: f64,
) -> ConjectureEvidence {
    let second = full.second_largest();
    let matched = second.and_then(|x| m.values.iter().copied().find(|y| (x - y).abs() <= tol));
    ConjectureEvidence {
        n,
        second_largest: second,
        matched,
        holds: matched.is_some(),
    }
}

pub fn conjecture_second_largest(n: usize, cfg: &SpectralConfig) -> Result<ConjectureEvidence> {
    let full = permutahedron_spectrum(n, cfg)?;
    let m = eig_tridiagonal(&regularity_matrix(n)?, cfg)?;
    Ok(second_largest_evidence(n, &full, &m, cfg.match_tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SpectralConfig {
        SpectralConfig::default()
    }

    #[test]
    fn regularity_matrix_shapes() {
        let m4 = regularity_matrix(4).unwrap();
        assert_eq!(
            m4.rows(),
            &[
                vec![2, 1, 0, 0],
                vec![1, 1, 1, 0],
                vec![0, 1, 1, 1],
                vec![0, 0, 1, 2]
            ]
        );
        assert_eq!(
            regularity_matrix(2).unwrap().rows(),
            &[vec![0, 1], vec![1, 0]]
        );
        let m5 = regularity_matrix(5).unwrap();
        assert_eq!(m5.entry(0, 0), 3);
        assert_eq!(m5.entry(4, 4), 3);
        assert!((1..4).all(|i| m5.entry(i, i) == 2));
        assert!((1..5).all(|i| m5.entry(i, i - 1) == 1 && m5.entry(i - 1, i) == 1));
        assert!(regularity_matrix(1).is_err());
    }

    #[test]
    fn regularity_from_blocks_small() {
        let caps = Caps::default();
        for n in 2..=5 {
            let s = enumerate_permutations(n - 1).unwrap();
            assert_eq!(
                regularity_matrix_from_blocks(n, &s, &caps).unwrap(),
                regularity_matrix(n).unwrap(),
                "n = {n}"
            );
        }
        let s2 = enumerate_permutations(2).unwrap();
        assert_eq!(
            regularity_matrix_from_blocks(3, &s2, &caps).unwrap().rows(),
            &[vec![1, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]
        );
    }

    #[test]
    fn jacobi_trivial_cases() {
        let id = DenseMatrix::from_fn(3, |r, c| if r == c { 1.0 } else { 0.0 });
        let s = eig_symmetric(&id, &cfg()).unwrap();
        assert_eq!(s.values, vec![1.0]);
        assert_eq!(s.multiplicities, vec![3]);

        let swap = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let s = eig_symmetric(&swap, &cfg()).unwrap();
        assert_eq!(s.values.len(), 2);
        assert!((s.values[0] - 1.0).abs() < 1e-12 && (s.values[1] + 1.0).abs() < 1e-12);

        let skew = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            eig_symmetric(&skew, &cfg()),
            Err(Error::NonSymmetric { .. })
        ));

        let tiny_cap = SpectralConfig {
            eigen_cap: 1,
            ..cfg()
        };
        assert!(eig_symmetric(&swap, &tiny_cap).is_err());
    }

    #[test]
    fn bisection_small() {
        let s = eig_tridiagonal(&regularity_matrix(2).unwrap(), &cfg()).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-10 && (s.values[1] + 1.0).abs() < 1e-10);
        let s = eig_tridiagonal(&regularity_matrix(5).unwrap(), &cfg()).unwrap();
        assert_eq!(s.distinct_count(), 5);
        assert!((s.largest().unwrap() - 4.0).abs() < 1e-10);
    }

    #[test]
    fn lifting() {
        assert_eq!(
            lift_vector(&[1.0, 0.0, 0.0], 3).unwrap().coords,
            vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0]
        );
        assert!(lift_vector(&[0.0; 3], 3)
            .unwrap()
            .coords
            .iter()
            .all(|&x| x == 0.0));
        let e2 = lift_vector(&[0.0, 1.0, 0.0, 0.0], 4).unwrap().coords;
        let ones: Vec<usize> = (0..24).filter(|&i| e2[i] == 1.0).map(|i| i + 1).collect();
        assert_eq!(ones, (7..=12).collect::<Vec<_>>());
        assert!(lift_vector(&[1.0], 3).is_err());
    }

    #[test]
    fn subset_trivia() {
        let big = Spectrum::from_eigenvalues(vec![3.0, 1.0], 1e-7);
        let empty = Spectrum::from_eigenvalues(vec![], 1e-7);
        assert!(spectrum_subset_check(&empty, &big, 1e-8).ok);
        let small = Spectrum::from_eigenvalues(vec![2.5], 1e-7);
        let r = spectrum_subset_check(&small, &big, 1e-8);
        assert!(!r.ok);
        assert_eq!(r.unmatched, Some(2.5));
    }

    #[test]
    fn merging_groups_close_values() {
        let s = Spectrum::from_eigenvalues(vec![1.0, 1.0 + 1e-9, -2.0, 1.0 - 1e-9, 0.5], 1e-7);
        assert_eq!(s.multiplicities, vec![3, 1, 1]);
        assert!((s.values[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.all.len(), 5);
    }

    #[test]
    fn intertwining_small() {
        let caps = Caps::default();
        for n in 2..=4 {
            let s = enumerate_permutations(n - 1).unwrap();
            assert!(verify_intertwining(n, &s, &caps).unwrap(), "n = {n}");
        }
    }
}
