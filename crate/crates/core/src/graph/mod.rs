//! Finite directed weighted multigraphs and their combinatorics.
//!
//! A [`WeightedGraph`] lives on a finite set of natural-number vertices; two
//! graphs interact exactly where their vertex sets overlap. Plugging two
//! graphs colors every edge by its origin, and everything interesting
//! (alternating paths, 1-circuits, reduction) happens inside the resulting
//! [`ColoredGraph`].

pub(crate) mod format;
mod paths;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub use format::{fmt_decimal, parse_graph, to_dot, write_graph};
pub use paths::{
    alternating_paths, one_circuits, reduce, reduce_truncated, AlternationAnalysis, Circuit, Path,
    Reduct,
};

/// Vertices are natural numbers; every carrier is a finite subset of them.
pub type VertexId = u64;

/// Default tolerance for floating-point weight comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Position of an edge inside its graph. Ids are dense: `0..num_edges()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub weight: f64,
}

/// A finite directed multigraph with positive edge weights.
///
/// Base graphs have weights in `(0, 1]`; graphs rebuilt from simplified
/// graphs may carry larger weights, so the constructor only requires
/// positive finite weights and [`WeightedGraph::is_base`] checks the bound.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedGraph {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
}

impl WeightedGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId, f64)>,
    ) -> Result<Self> {
        let mut g = Self::on(vertices);
        for (src, dst, weight) in edges {
            g.add_edge(src, dst, weight)?;
        }
        Ok(g)
    }

    /// The edgeless graph on `vertices`.
    pub fn on(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        Self {
            vertices: vertices.into_iter().collect(),
            edges: Vec::new(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId, weight: f64) -> Result<EdgeId> {
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::InvalidWeight(weight));
        }
        for v in [src, dst] {
            if !self.vertices.contains(&v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        self.edges.push(Edge { src, dst, weight });
        Ok(EdgeId(self.edges.len() - 1))
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    /// True when every weight lies in `(0, 1]`.
    pub fn is_base(&self) -> bool {
        self.edges.iter().all(|e| e.weight <= 1.0)
    }

    /// Renames every vertex through `f`. The caller guarantees injectivity.
    pub(crate) fn relabel(&self, mut f: impl FnMut(VertexId) -> VertexId) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&v| f(v)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    src: f(e.src),
                    dst: f(e.dst),
                    weight: e.weight,
                })
                .collect(),
        }
    }

    /// The subgraph induced on `keep`.
    pub fn restrict(&self, keep: &BTreeSet<VertexId>) -> Self {
        Self {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.src) && keep.contains(&e.dst))
                .copied()
                .collect(),
        }
    }
}

/// Union of graphs: union of vertex sets, disjoint union of edges.
///
/// The edges of `g` keep their ids; the edges of `h` are shifted after them,
/// so `union(g, g)` doubles every edge.
pub fn union(g: &WeightedGraph, h: &WeightedGraph) -> WeightedGraph {
    WeightedGraph {
        vertices: g.vertices.union(&h.vertices).copied().collect(),
        edges: g.edges.iter().chain(h.edges.iter()).copied().collect(),
    }
}

/// Which side of a plugging an edge comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    pub fn flip(self) -> Self {
        match self {
            Color::Zero => Color::One,
            Color::One => Color::Zero,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Color::Zero => 0,
            Color::One => 1,
        }
    }
}

/// The plugging of two graphs: their union with edges colored by origin.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    underlying: WeightedGraph,
    colors: Vec<Color>,
    /// Out-edges per (vertex, color), in increasing id order.
    out: BTreeMap<(VertexId, Color), Vec<EdgeId>>,
}

impl ColoredGraph {
    fn from_parts(underlying: WeightedGraph, colors: Vec<Color>) -> Self {
        debug_assert_eq!(underlying.num_edges(), colors.len());
        let mut out: BTreeMap<(VertexId, Color), Vec<EdgeId>> = BTreeMap::new();
        for (i, e) in underlying.edges.iter().enumerate() {
            out.entry((e.src, colors[i])).or_default().push(EdgeId(i));
        }
        Self {
            underlying,
            colors,
            out,
        }
    }

    pub fn underlying(&self) -> &WeightedGraph {
        &self.underlying
    }

    pub fn color(&self, id: EdgeId) -> Color {
        self.colors[id.0]
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        self.underlying.edge(id)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.colors.len()).map(EdgeId)
    }

    /// Number of edges of each color, `(color 0, color 1)`.
    pub fn color_histogram(&self) -> (usize, usize) {
        let zero = self.colors.iter().filter(|&&c| c == Color::Zero).count();
        (zero, self.colors.len() - zero)
    }

    pub(crate) fn out_edges(&self, v: VertexId, color: Color) -> &[EdgeId] {
        self.out.get(&(v, color)).map_or(&[], Vec::as_slice)
    }
}

/// Plugs `g` (color 0) and `h` (color 1).
pub fn plug(g: &WeightedGraph, h: &WeightedGraph) -> ColoredGraph {
    let colors = std::iter::repeat_n(Color::Zero, g.num_edges())
        .chain(std::iter::repeat_n(Color::One, h.num_edges()))
        .collect();
    ColoredGraph::from_parts(union(g, h), colors)
}

/// A graph with at most one edge per ordered pair of vertices.
///
/// Weights are strictly positive and may be `f64::INFINITY` when built from
/// a divergent sum; such a graph is not total.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SimpleGraph {
    vertices: BTreeSet<VertexId>,
    weights: BTreeMap<(VertexId, VertexId), f64>,
}

impl SimpleGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        weights: impl IntoIterator<Item = ((VertexId, VertexId), f64)>,
    ) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let mut map = BTreeMap::new();
        for ((v, w), x) in weights {
            if x.is_nan() || x <= 0.0 {
                return Err(Error::InvalidWeight(x));
            }
            for u in [v, w] {
                if !vertices.contains(&u) {
                    return Err(Error::UnknownVertex(u));
                }
            }
            *map.entry((v, w)).or_insert(0.0) += x;
        }
        Ok(Self {
            vertices,
            weights: map,
        })
    }

    pub(crate) fn from_raw(
        vertices: BTreeSet<VertexId>,
        weights: BTreeMap<(VertexId, VertexId), f64>,
    ) -> Self {
        Self { vertices, weights }
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn weights(&self) -> &BTreeMap<(VertexId, VertexId), f64> {
        &self.weights
    }

    /// Weight of `v -> w`, or 0 when there is no edge.
    pub fn weight(&self, v: VertexId, w: VertexId) -> f64 {
        self.weights.get(&(v, w)).copied().unwrap_or(0.0)
    }

    pub fn is_total(&self) -> bool {
        self.weights.values().all(|w| w.is_finite())
    }

    /// Sum of loop weights.
    pub fn trace(&self) -> f64 {
        self.weights
            .iter()
            .filter(|((v, w), _)| v == w)
            .map(|(_, x)| x)
            .sum()
    }

    /// The graph of paths of length `k`; `k = 0` gives the identity graph.
    pub fn power(&self, k: usize) -> SimpleGraph {
        if k == 0 {
            return SimpleGraph {
                vertices: self.vertices.clone(),
                weights: self.vertices.iter().map(|&v| ((v, v), 1.0)).collect(),
            };
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Union of carriers with weights of common pairs added.
    pub fn union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut weights = self.weights.clone();
        for (&k, &x) in &other.weights {
            *weights.entry(k).or_insert(0.0) += x;
        }
        SimpleGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            weights,
        }
    }

    /// Paths made of one edge of `self` followed by one edge of `other`.
    pub fn compose(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut by_src: BTreeMap<VertexId, Vec<(VertexId, f64)>> = BTreeMap::new();
        for (&(v, w), &x) in &other.weights {
            by_src.entry(v).or_default().push((w, x));
        }
        let mut weights = BTreeMap::new();
        for (&(u, v), &x) in &self.weights {
            for &(w, y) in by_src.get(&v).map_or(&[][..], Vec::as_slice) {
                *weights.entry((u, w)).or_insert(0.0) += x * y;
            }
        }
        SimpleGraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            weights,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric_within(DEFAULT_TOL)
    }

    pub fn is_symmetric_within(&self, tol: f64) -> bool {
        self.weights
            .iter()
            .all(|(&(v, w), &x)| approx_eq(x, self.weight(w, v), tol))
    }

    /// Same vertices and entrywise equal weights within `tol`.
    pub fn approx_eq(&self, other: &SimpleGraph, tol: f64) -> bool {
        self.vertices == other.vertices
            && self
                .weights
                .keys()
                .chain(other.weights.keys())
                .all(|&(v, w)| approx_eq(self.weight(v, w), other.weight(v, w), tol))
    }

    /// One edge per entry of the weight map. Fails on infinite weights.
    pub fn to_multigraph(&self) -> Result<WeightedGraph> {
        if !self.is_total() {
            return Err(Error::NonTotal);
        }
        WeightedGraph::new(
            self.vertices.iter().copied(),
            self.weights.iter().map(|(&(v, w), &x)| (v, w, x)),
        )
    }
}

fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol
}

/// Sums the weights of parallel edges.
pub fn simplify(g: &WeightedGraph) -> SimpleGraph {
    let mut weights = BTreeMap::new();
    for e in &g.edges {
        *weights.entry((e.src, e.dst)).or_insert(0.0) += e.weight;
    }
    SimpleGraph {
        vertices: g.vertices.clone(),
        weights,
    }
}

/// Location-exact equality: same vertices and the same multiset of
/// `(src, dst, weight)` triples, weights compared within `tol`. Edge ids are
/// ignored.
pub fn graph_equal(a: &WeightedGraph, b: &WeightedGraph, tol: f64) -> bool {
    if a.vertices != b.vertices || a.num_edges() != b.num_edges() {
        return false;
    }
    let group = |g: &WeightedGraph| {
        let mut m: BTreeMap<(VertexId, VertexId), Vec<f64>> = BTreeMap::new();
        for e in &g.edges {
            m.entry((e.src, e.dst)).or_default().push(e.weight);
        }
        for ws in m.values_mut() {
            ws.sort_by(f64::total_cmp);
        }
        m
    };
    let (ga, gb) = (group(a), group(b));
    ga.len() == gb.len()
        && ga.iter().zip(gb.iter()).all(|((ka, wa), (kb, wb))| {
            ka == kb
                && wa.len() == wb.len()
                && wa.iter().zip(wb).all(|(&x, &y)| approx_eq(x, y, tol))
        })
}
