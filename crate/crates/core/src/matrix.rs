//! Dense adjacency matrices over a finite carrier and the exact closed forms
//! built on them: log-determinants, spectral radius, operator norm and the
//! feedback equation that yields the simplified reduction.
//!
//! Matrices use the row convention: entry `(v, w)` is the weight of `v -> w`,
//! so the product `A * B` sums paths made of an `A`-edge then a `B`-edge.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::graph::{fmt_decimal, simplify, SimpleGraph, VertexId, WeightedGraph, DEFAULT_TOL};

/// Largest carrier handled by the dense routines.
pub const MAX_DIM: usize = 64;

/// Spectral radii at or above `1 - DIVERGENCE_MARGIN` count as divergent.
pub const DIVERGENCE_MARGIN: f64 = 1e-9;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 10_000;

/// A dense square matrix whose rows and columns are indexed by vertices in
/// increasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalizedMatrix {
    index: Vec<VertexId>,
    entries: Vec<f64>,
}

impl LocalizedMatrix {
    pub fn zeros(index: impl IntoIterator<Item = VertexId>) -> Self {
        let index: Vec<_> = index
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = index.len();
        Self {
            index,
            entries: vec![0.0; n * n],
        }
    }

    pub fn identity(index: impl IntoIterator<Item = VertexId>) -> Self {
        let mut m = Self::zeros(index);
        for i in 0..m.dim() {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from rows; `index` must be strictly increasing.
    pub fn from_rows(index: Vec<VertexId>, rows: &[Vec<f64>]) -> Self {
        assert!(
            index.windows(2).all(|w| w[0] < w[1]),
            "index must be increasing"
        );
        assert_eq!(rows.len(), index.len(), "row count must match index");
        assert!(
            rows.iter().all(|r| r.len() == index.len()),
            "matrix must be square"
        );
        Self {
            index,
            entries: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[VertexId] {
        &self.index
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.index.binary_search(&v).ok()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        let n = self.dim();
        self.entries[i * n + j] = x;
    }

    /// Entry for the vertex pair `(v, w)`, 0 outside the carrier.
    pub fn at(&self, v: VertexId, w: VertexId) -> f64 {
        match (self.position(v), self.position(w)) {
            (Some(i), Some(j)) => self.get(i, j),
            _ => 0.0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.index, other.index,
            "product of matrices over different carriers"
        );
        let n = self.dim();
        let mut out = Self::zeros(self.index.iter().copied());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    /// `I - self`.
    pub fn one_minus(&self) -> Self {
        let mut out = self.clone();
        for x in &mut out.entries {
            *x = -*x;
        }
        for i in 0..self.dim() {
            out.entries[i * self.dim() + i] += 1.0;
        }
        out
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            index: self.index.clone(),
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.index, other.index);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&x| x >= 0.0)
    }

    /// The principal submatrix on the given positions.
    fn principal(&self, positions: &[usize]) -> Vec<f64> {
        positions
            .iter()
            .flat_map(|&i| positions.iter().map(move |&j| self.get(i, j)))
            .collect()
    }

    /// Restriction to the vertices in `keep`.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Self {
        let positions: Vec<usize> = (0..self.dim())
            .filter(|&i| keep.contains(&self.index[i]))
            .collect();
        Self {
            index: positions.iter().map(|&i| self.index[i]).collect(),
            entries: self.principal(&positions),
        }
    }

    /// The simple graph with one edge per positive entry.
    pub fn to_simple_graph(&self) -> SimpleGraph {
        let n = self.dim();
        let weights = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) > 0.0)
            .map(|(i, j)| ((self.index[i], self.index[j]), self.get(i, j)))
            .collect();
        SimpleGraph::from_raw(self.index.iter().copied().collect(), weights)
    }

    /// Debug dump: an `index` line, then one row per line.
    pub fn dump(&self) -> String {
        let mut out = String::from("index");
        for v in &self.index {
            write!(out, " {v}").unwrap();
        }
        out.push('\n');
        for i in 0..self.dim() {
            let row: Vec<_> = (0..self.dim())
                .map(|j| fmt_decimal(self.get(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Groups of positions forming strongly connected components of the
    /// nonzero pattern that carry at least one cycle.
    fn cyclic_blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut g = DiGraph::<(), ()>::with_capacity(n, 0);
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for i in 0..n {
            for j in 0..n {
                if self.get(i, j) != 0.0 {
                    g.add_edge(nodes[i], nodes[j], ());
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = tarjan_scc(&g)
            .into_iter()
            .map(|c| {
                let mut b: Vec<usize> = c.into_iter().map(|v| v.index()).collect();
                b.sort_unstable();
                b
            })
            .filter(|b| b.len() > 1 || self.get(b[0], b[0]) != 0.0)
            .collect();
        blocks.sort();
        blocks
    }
}

/// The adjacency matrix of `s` over the ordered carrier `over`, zero-padded
/// on vertices outside `s`.
pub fn adjacency_matrix(s: &SimpleGraph, over: &BTreeSet<VertexId>) -> Result<LocalizedMatrix> {
    if over.len() > MAX_DIM {
        return Err(Error::DimensionTooLarge(over.len()));
    }
    if let Some(&v) = s.vertices().difference(over).next() {
        return Err(Error::carrier(v, "vertex lies outside the matrix index"));
    }
    if !s.is_total() {
        return Err(Error::NonTotal);
    }
    let mut m = LocalizedMatrix::zeros(over.iter().copied());
    for (&(v, w), &x) in s.weights() {
        let (i, j) = (m.position(v).unwrap(), m.position(w).unwrap());
        m.set(i, j, x);
    }
    Ok(m)
}

/// Partial sums of `sum_{k=1..K} Tr(M^k) / k`.
pub fn trace_series_partial(m: &LocalizedMatrix, terms: usize) -> Vec<f64> {
    let mut sums = Vec::with_capacity(terms);
    let mut power = m.clone();
    let mut acc = 0.0;
    for k in 1..=terms {
        acc += power.trace() / k as f64;
        sums.push(acc);
        if k < terms {
            power = power.mul(m);
        }
    }
    sums
}

/// Decides `rho(M) < bound` for an entrywise nonnegative `M`.
///
/// `I - M / bound` is then a Z-matrix, and it is a nonsingular M-matrix
/// exactly when Gaussian elimination without pivoting meets only positive
/// pivots. Unlike power iteration this is exact on nilpotent, periodic and
/// defective matrices.
pub fn spectral_radius_below(m: &LocalizedMatrix, bound: f64) -> bool {
    debug_assert!(m.is_nonnegative());
    m.cyclic_blocks().iter().all(|block| {
        let n = block.len();
        let mut a = m.principal(block);
        for x in &mut a {
            *x = -*x / bound;
        }
        for i in 0..n {
            a[i * n + i] += 1.0;
        }
        positive_pivots(&mut a, n)
    })
}

fn positive_pivots(a: &mut [f64], n: usize) -> bool {
    for k in 0..n {
        let pivot = a[k * n + k];
        if pivot.is_nan() || pivot <= 0.0 {
            return false;
        }
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k..n {
                a[i * n + j] -= factor * a[k * n + j];
            }
        }
    }
    true
}

/// `-ln det(I - M)` for nonnegative `M`, or infinity when
/// `rho(M) >= 1 - DIVERGENCE_MARGIN`.
///
/// The determinant factors over the strongly connected blocks of the
/// pattern, so a nilpotent `M` gives exactly 0.
pub fn log_det_one_minus(m: &LocalizedMatrix) -> f64 {
    let mut total = 0.0;
    for block in m.cyclic_blocks() {
        let n = block.len();
        let sub = LocalizedMatrix {
            index: block.iter().map(|&i| m.index[i]).collect(),
            entries: m.principal(&block),
        };
        if !spectral_radius_below(&sub, 1.0 - DIVERGENCE_MARGIN) {
            return f64::INFINITY;
        }
        let mut a = sub.one_minus().entries;
        match lu_factor(&mut a, n) {
            Some(lu) if lu.sign > 0.0 => {
                total -= (0..n).map(|i| a[i * n + i].abs().ln()).sum::<f64>();
            }
            _ => return f64::INFINITY,
        }
    }
    total.max(0.0)
}

/// Row permutation and sign of an in-place LU factorization.
struct Lu {
    perm: Vec<usize>,
    sign: f64,
}

/// Partially pivoted LU; `None` when a pivot vanishes.
fn lu_factor(a: &mut [f64], n: usize) -> Option<Lu> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .expect("non-empty pivot range");
        if a[p * n + k] == 0.0 {
            return None;
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            perm.swap(k, p);
            sign = -sign;
        }
        let pivot = a[k * n + k];
        for i in k + 1..n {
            let factor = a[i * n + k] / pivot;
            a[i * n + k] = factor;
            if factor != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        if sign == 0.0 {
            return None;
        }
    }
    let sign = sign * (0..n).map(|i| a[i * n + i].signum()).product::<f64>();
    Some(Lu { perm, sign })
}

/// Solves `A X = I` column by column.
fn inverse(m: &LocalizedMatrix) -> Option<LocalizedMatrix> {
    let n = m.dim();
    let mut a = m.entries.clone();
    let lu = lu_factor(&mut a, n)?;
    let mut out = LocalizedMatrix::zeros(m.index.iter().copied());
    let mut col = vec![0.0; n];
    for c in 0..n {
        for (i, x) in col.iter_mut().enumerate() {
            *x = if lu.perm[i] == c { 1.0 } else { 0.0 };
        }
        for i in 0..n {
            let s: f64 = (0..i).map(|j| a[i * n + j] * col[j]).sum();
            col[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| a[i * n + j] * col[j]).sum();
            col[i] = (col[i] - s) / a[i * n + i];
        }
        for (i, &x) in col.iter().enumerate() {
            out.set(i, c, x);
        }
    }
    Some(out)
}

/// Largest eigenvalue modulus of a nonnegative matrix.
///
/// Each cyclic block is irreducible; power iteration runs on the block
/// shifted by a positive multiple of the identity, which makes it primitive,
/// and stops when the Collatz-Wielandt bounds agree to 1e-12.
pub fn spectral_radius(m: &LocalizedMatrix) -> Result<f64> {
    let mut rho: f64 = 0.0;
    for block in m.cyclic_blocks() {
        let n = block.len();
        let b = m.principal(&block);
        rho = rho.max(perron_root(&b, n)?);
    }
    Ok(rho)
}

fn perron_root(b: &[f64], n: usize) -> Result<f64> {
    if n == 1 {
        return Ok(b[0]);
    }
    let row_sums: Vec<f64> = (0..n).map(|i| b[i * n..(i + 1) * n].iter().sum()).collect();
    let lo = row_sums.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = row_sums.iter().copied().fold(0.0, f64::max);
    // The root lies between the extreme row sums; shifting by their mean
    // damps the other eigenvalues on the spectral circle.
    let shift = 0.5 * (lo + hi);
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut last = 0.0;
    for _ in 0..POWER_MAX_ITER {
        for i in 0..n {
            y[i] = shift * x[i] + (0..n).map(|j| b[i * n + j] * x[j]).sum::<f64>();
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0_f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        last = 0.5 * (lo + hi) - shift;
        if hi - lo <= POWER_TOL * hi {
            return Ok(last.max(0.0));
        }
        let norm = y.iter().copied().fold(0.0, f64::max);
        for i in 0..n {
            x[i] = y[i] / norm;
        }
    }
    Err(Error::NoConvergence {
        iterations: POWER_MAX_ITER,
        last,
    })
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn symmetric_eigenvalues(m: &LocalizedMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.entries.clone();
    let scale: f64 = a.iter().map(|x| x * x).sum::<f64>().max(f64::MIN_POSITIVE);
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

fn is_symmetric_matrix(m: &LocalizedMatrix, tol: f64) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..i).all(|j| (m.get(i, j) - m.get(j, i)).abs() <= tol))
}

/// Largest singular value: the largest eigenvalue modulus for symmetric
/// matrices, power iteration on `M^T M` otherwise.
pub fn operator_norm(m: &LocalizedMatrix) -> Result<f64> {
    if m.dim() == 0 {
        return Ok(0.0);
    }
    if is_symmetric_matrix(m, 0.0) {
        let eig = symmetric_eigenvalues(m);
        return Ok(eig.iter().fold(0.0, |acc: f64, x| acc.max(x.abs())));
    }
    let gram = m.transpose().mul(m);
    let n = gram.dim();
    let mut x = vec![1.0; n];
    let mut last = 0.0;
    for _ in 0..POWER_MAX_ITER {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|j| gram.get(i, j) * x[j]).sum())
            .collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(0.0);
        }
        let rayleigh: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>()
            / x.iter().map(|v| v * v).sum::<f64>();
        if (rayleigh - last).abs() <= POWER_TOL * rayleigh {
            return Ok(rayleigh.sqrt());
        }
        last = rayleigh;
        x = y.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NoConvergence {
        iterations: POWER_MAX_ITER,
        last: last.sqrt(),
    })
}

/// A symmetric simple graph whose adjacency matrix has norm at most 1.
pub fn is_operator_graph(s: &SimpleGraph) -> bool {
    if !s.is_total() || !s.is_symmetric() {
        return false;
    }
    adjacency_matrix(s, s.vertices())
        .and_then(|m| operator_norm(&m))
        .is_ok_and(|norm| norm <= 1.0 + DEFAULT_TOL)
}

/// Common carrier of two simple graphs with their matrices over it.
fn common_matrices(
    f: &SimpleGraph,
    g: &SimpleGraph,
) -> Result<(BTreeSet<VertexId>, LocalizedMatrix, LocalizedMatrix)> {
    let carrier: BTreeSet<_> = f.vertices().union(g.vertices()).copied().collect();
    let mf = adjacency_matrix(f, &carrier)?;
    let mg = adjacency_matrix(g, &carrier)?;
    Ok((carrier, mf, mg))
}

/// `-ln det(I - M_f M_g)` over the common carrier, infinite when divergent.
pub fn log_det_measure(f: &SimpleGraph, g: &SimpleGraph) -> Result<f64> {
    let (_, mf, mg) = common_matrices(f, g)?;
    Ok(log_det_one_minus(&mf.mul(&mg)))
}

/// The simplified reduction of `f` and `g`, from the feedback equation
///
/// `S = (p_F' + p_G' M_g)(I - M_f M_g)^-1 (M_f p_F' + p_G')`
///
/// restricted to the symmetric difference, where `F'` and `G'` are the
/// private vertices of each side. Entries that no alternating path can
/// reach are forced to zero so round-off never invents edges.
pub fn feedback_solve(f: &SimpleGraph, g: &SimpleGraph) -> Result<SimpleGraph> {
    let (carrier, mf, mg) = common_matrices(f, g)?;
    let fg = mf.mul(&mg);
    if !spectral_radius_below(&fg, 1.0 - DIVERGENCE_MARGIN) {
        return Err(Error::NonTotal);
    }
    let resolvent = inverse(&fg.one_minus()).ok_or(Error::NonTotal)?;

    let only_f: BTreeSet<_> = f.vertices().difference(g.vertices()).copied().collect();
    let only_g: BTreeSet<_> = g.vertices().difference(f.vertices()).copied().collect();
    let (left, right) = side_operators(&carrier, &only_f, &only_g, &mf, &mg);
    let s = left.mul(&resolvent).mul(&right);

    let pattern = {
        let star = boolean_star(&pattern_of(&fg));
        boolean_mul(&boolean_mul(&pattern_of(&left), &star), &pattern_of(&right))
    };
    let delta: BTreeSet<_> = only_f.union(&only_g).copied().collect();
    let n = s.dim();
    let mut masked = s.clone();
    for i in 0..n {
        for j in 0..n {
            if !pattern[i * n + j] || s.get(i, j) <= 0.0 {
                masked.set(i, j, 0.0);
            }
        }
    }
    Ok(masked.restrict(&delta).to_simple_graph())
}

/// `p_F' + p_G' M_g` and `M_f p_F' + p_G'` as full-carrier matrices.
fn side_operators(
    carrier: &BTreeSet<VertexId>,
    only_f: &BTreeSet<VertexId>,
    only_g: &BTreeSet<VertexId>,
    mf: &LocalizedMatrix,
    mg: &LocalizedMatrix,
) -> (LocalizedMatrix, LocalizedMatrix) {
    let mut left = LocalizedMatrix::zeros(carrier.iter().copied());
    let mut right = left.clone();
    let n = left.dim();
    for (i, v) in carrier.iter().enumerate() {
        if only_f.contains(v) {
            left.set(i, i, 1.0);
            for k in 0..n {
                right.set(k, i, mf.get(k, i));
            }
        } else if only_g.contains(v) {
            right.set(i, i, 1.0);
            for k in 0..n {
                left.set(i, k, mg.get(i, k));
            }
        }
    }
    (left, right)
}

/// The four blocks of the simplified reduction, computed independently of
/// [`feedback_solve`] through the resolvent `(I - M_g M_f)^-1`:
///
/// * private-f to private-f: `M_f R`
/// * private-f to private-g: `M_f R M_g`
/// * private-g to private-f: `R M_g M_f`
/// * private-g to private-g: `R M_g`
pub fn feedback_blocks(f: &SimpleGraph, g: &SimpleGraph) -> Result<LocalizedMatrix> {
    let (_, mf, mg) = common_matrices(f, g)?;
    let gf = mg.mul(&mf);
    if !spectral_radius_below(&gf, 1.0 - DIVERGENCE_MARGIN) {
        return Err(Error::NonTotal);
    }
    let r = inverse(&gf.one_minus()).ok_or(Error::NonTotal)?;
    let ff = mf.mul(&r);
    let fg = ff.mul(&mg);
    let gff = r.mul(&gf);
    let gg = r.mul(&mg);

    let only_f: BTreeSet<_> = f.vertices().difference(g.vertices()).copied().collect();
    let only_g: BTreeSet<_> = g.vertices().difference(f.vertices()).copied().collect();
    let delta: Vec<_> = only_f.union(&only_g).copied().collect();
    let mut out = LocalizedMatrix::zeros(delta.iter().copied());
    for (a, &v) in delta.iter().enumerate() {
        for (b, &w) in delta.iter().enumerate() {
            let block = match (only_f.contains(&v), only_f.contains(&w)) {
                (true, true) => &ff,
                (true, false) => &fg,
                (false, true) => &gff,
                (false, false) => &gg,
            };
            out.set(a, b, block.at(v, w));
        }
    }
    Ok(out)
}

/// The simplified full reduction of two multigraphs.
pub fn reduce_exact(f: &WeightedGraph, g: &WeightedGraph) -> Result<SimpleGraph> {
    feedback_solve(&simplify(f), &simplify(g))
}

/// Checks `<F, G1 ∪ G2> = <F, G1> + <H, G2>` with `H` the feedback solution
/// of `F` and `G1`, all measured by log-determinants.
pub fn check_matrix_adjunction(
    f: &SimpleGraph,
    g1: &SimpleGraph,
    g2: &SimpleGraph,
) -> Result<bool> {
    if let Some(&v) = g1.vertices().intersection(g2.vertices()).next() {
        return Err(Error::carrier(
            v,
            "the two right-hand graphs share this vertex",
        ));
    }
    let joint: BTreeSet<_> = g1.vertices().union(g2.vertices()).copied().collect();
    if let Some(&v) = joint.symmetric_difference(f.vertices()).next() {
        return Err(Error::carrier(
            v,
            "the left graph's carrier must be the union of the right-hand carriers",
        ));
    }
    let h = feedback_solve(f, g1)?;
    let lhs = log_det_measure(f, &g1.union(g2))?;
    let first = log_det_measure(f, g1)?;
    let second = log_det_measure(&h, g2)?;
    Ok(crate::measure::sum_matches(lhs, first, second))
}

fn pattern_of(m: &LocalizedMatrix) -> Vec<bool> {
    m.entries.iter().map(|&x| x != 0.0).collect()
}

fn boolean_mul(a: &[bool], b: &[bool]) -> Vec<bool> {
    let n = (a.len() as f64).sqrt() as usize;
    let mut out = vec![false; n * n];
    for i in 0..n {
        for k in 0..n {
            if a[i * n + k] {
                for j in 0..n {
                    out[i * n + j] |= b[k * n + j];
                }
            }
        }
    }
    out
}

/// Reflexive-transitive closure.
fn boolean_star(a: &[bool]) -> Vec<bool> {
    let n = (a.len() as f64).sqrt() as usize;
    let mut r = a.to_vec();
    for i in 0..n {
        r[i * n + i] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i * n + k] {
                for j in 0..n {
                    if r[k * n + j] {
                        r[i * n + j] = true;
                    }
                }
            }
        }
    }
    r
}
