//! Alternating paths, 1-circuits and the reduction of a plugging.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::{Dfs, Reversed};

use super::{plug, Color, ColoredGraph, EdgeId, VertexId, WeightedGraph};
use crate::error::{Error, Result};

/// An alternating path: consecutive edges have different colors.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub edges: Vec<EdgeId>,
    pub src: VertexId,
    pub dst: VertexId,
    /// Product of the edge weights.
    pub weight: f64,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// A primitive alternating 1-circuit in canonical rotation: it starts with
/// a color-0 edge and is lexicographically least among such rotations.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub edges: Vec<EdgeId>,
    pub weight: f64,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl ColoredGraph {
    /// Alternating paths of length `1..=max_len` from a vertex of `from` to
    /// a vertex of `to`, in lexicographic order of edge-id sequences.
    ///
    /// The returned flag is set when some path reached `max_len` edges and
    /// could still be extended, i.e. the enumeration may be incomplete.
    pub fn alternating_paths(
        &self,
        from: &BTreeSet<VertexId>,
        to: &BTreeSet<VertexId>,
        max_len: usize,
    ) -> (Vec<Path>, bool) {
        let mut found = Vec::new();
        let mut cut = false;
        if max_len == 0 {
            return (found, cut);
        }
        let mut stack = Vec::new();
        for id in self.edge_ids() {
            let e = self.edge(id);
            if !from.contains(&e.src) {
                continue;
            }
            stack.push(id);
            self.extend_path(&mut stack, e.weight, to, max_len, &mut found, &mut cut);
            stack.pop();
        }
        (found, cut)
    }

    fn extend_path(
        &self,
        stack: &mut Vec<EdgeId>,
        weight: f64,
        to: &BTreeSet<VertexId>,
        max_len: usize,
        found: &mut Vec<Path>,
        cut: &mut bool,
    ) {
        let last = *stack.last().expect("path is non-empty");
        let end = self.edge(last).dst;
        if to.contains(&end) {
            found.push(Path {
                edges: stack.clone(),
                src: self.edge(stack[0]).src,
                dst: end,
                weight,
            });
        }
        let next = self.out_edges(end, self.color(last).flip());
        if stack.len() == max_len {
            *cut |= !next.is_empty();
            return;
        }
        for &f in next {
            stack.push(f);
            self.extend_path(stack, weight * self.edge(f).weight, to, max_len, found, cut);
            stack.pop();
        }
    }

    /// Primitive 1-circuits of length at most `max_len`, canonical rotation,
    /// sorted lexicographically by edge ids.
    pub fn one_circuits(&self, max_len: usize) -> Vec<Circuit> {
        let mut found = Vec::new();
        let mut stack = Vec::new();
        for e0 in self.edge_ids().filter(|&e| self.color(e) == Color::Zero) {
            if max_len < 2 {
                break;
            }
            stack.push(e0);
            self.extend_circuit(e0, &mut stack, self.edge(e0).weight, max_len, &mut found);
            stack.pop();
        }
        found
    }

    fn extend_circuit(
        &self,
        e0: EdgeId,
        stack: &mut Vec<EdgeId>,
        weight: f64,
        max_len: usize,
        found: &mut Vec<Circuit>,
    ) {
        let last = *stack.last().expect("circuit prefix is non-empty");
        let end = self.edge(last).dst;
        let color = self.color(last);
        if color == Color::One && end == self.edge(e0).src && is_canonical_primitive(stack) {
            found.push(Circuit {
                edges: stack.clone(),
                weight,
            });
        }
        if stack.len() == max_len {
            return;
        }
        let next_color = color.flip();
        for &f in self.out_edges(end, next_color) {
            // A canonical rotation starts with its least color-0 edge.
            if next_color == Color::Zero && f < e0 {
                continue;
            }
            stack.push(f);
            self.extend_circuit(e0, stack, weight * self.edge(f).weight, max_len, found);
            stack.pop();
        }
    }

    /// Vertices that belong to exactly one side of the plugging.
    pub fn interface(g: &WeightedGraph, h: &WeightedGraph) -> BTreeSet<VertexId> {
        g.vertices()
            .symmetric_difference(h.vertices())
            .copied()
            .collect()
    }
}

/// Rotations by an even offset keep a color-0 edge in front. A rotation
/// that is smaller means the sequence is not canonical; one that is equal
/// means it is a power of a shorter circuit.
fn is_canonical_primitive(seq: &[EdgeId]) -> bool {
    let n = seq.len();
    (2..n)
        .step_by(2)
        .all(|k| seq[k..].iter().chain(&seq[..k]).cmp(seq.iter()).is_gt())
}

/// Alternating paths of `g`□`h` from `from` to `to`, lengths `1..=max_len`.
pub fn alternating_paths(
    g: &WeightedGraph,
    h: &WeightedGraph,
    from: &BTreeSet<VertexId>,
    to: &BTreeSet<VertexId>,
    max_len: usize,
) -> Vec<Path> {
    plug(g, h).alternating_paths(from, to, max_len).0
}

/// Primitive 1-circuits of `g`□`h` up to `max_len` edges.
pub fn one_circuits(g: &WeightedGraph, h: &WeightedGraph, max_len: usize) -> Vec<Circuit> {
    plug(g, h).one_circuits(max_len)
}

/// Result of a length-bounded reduction.
#[derive(Clone, Debug)]
pub struct Reduct {
    pub graph: WeightedGraph,
    /// One path per edge of `graph`, in the same order.
    pub paths: Vec<Path>,
    /// Set when longer alternating paths out of the interface exist.
    pub truncated: bool,
}

/// The reduction `g`∷`h` restricted to paths of at most `max_len` edges.
///
/// Vertices are the symmetric difference of the carriers; there is one edge
/// per alternating path between two such vertices.
pub fn reduce_truncated(g: &WeightedGraph, h: &WeightedGraph, max_len: usize) -> Reduct {
    let plugged = plug(g, h);
    let delta = ColoredGraph::interface(g, h);
    let (paths, truncated) = plugged.alternating_paths(&delta, &delta, max_len);
    let mut graph = WeightedGraph::on(delta.iter().copied());
    for p in &paths {
        graph
            .add_edge(p.src, p.dst, p.weight)
            .expect("path endpoints lie in the interface and weights are positive");
    }
    Reduct {
        graph,
        paths,
        truncated,
    }
}

/// The full reduction `g`∷`h`, when it has finitely many edges.
pub fn reduce(g: &WeightedGraph, h: &WeightedGraph) -> Result<WeightedGraph> {
    let plugged = plug(g, h);
    let delta = ColoredGraph::interface(g, h);
    let bound = AlternationAnalysis::new(&plugged)
        .path_length_bound(&plugged, &delta)
        .ok_or(Error::InfiniteReduction)?;
    Ok(reduce_truncated(g, h, bound.max(1)).graph)
}

/// Finiteness questions about a plugging, answered on its alternation
/// graph: one node per edge, an arc `e -> f` when `f` may follow `e` in an
/// alternating path.
pub struct AlternationAnalysis {
    states: DiGraph<EdgeId, ()>,
    /// Edges that lie on some closed alternating walk.
    cyclic: Vec<bool>,
    circuits_finite: bool,
    longest_cycle: usize,
}

impl AlternationAnalysis {
    pub fn new(p: &ColoredGraph) -> Self {
        let n = p.underlying().num_edges();
        let mut states = DiGraph::with_capacity(n, 0);
        for id in p.edge_ids() {
            states.add_node(id);
        }
        for id in p.edge_ids() {
            let e = p.edge(id);
            for &f in p.out_edges(e.dst, p.color(id).flip()) {
                states.add_edge(NodeIndex::new(id.0), NodeIndex::new(f.0), ());
            }
        }
        let mut cyclic = vec![false; n];
        let mut circuits_finite = true;
        let mut longest_cycle = 0;
        for scc in tarjan_scc(&states) {
            // Alternation forbids self-arcs, so singleton components are acyclic.
            if scc.len() < 2 {
                continue;
            }
            let members: BTreeSet<_> = scc.iter().copied().collect();
            let arcs = scc
                .iter()
                .flat_map(|&v| states.neighbors(v))
                .filter(|w| members.contains(w))
                .count();
            // A strongly connected component is a single cycle exactly when
            // it has as many arcs as nodes; anything more yields infinitely
            // many primitive closed walks.
            if arcs > scc.len() {
                circuits_finite = false;
            }
            longest_cycle = longest_cycle.max(scc.len());
            for v in scc {
                cyclic[v.index()] = true;
            }
        }
        Self {
            states,
            cyclic,
            circuits_finite,
            longest_cycle,
        }
    }

    pub fn circuits_finite(&self) -> bool {
        self.circuits_finite
    }

    /// Length of the longest primitive 1-circuit, when there are finitely many.
    pub fn circuit_length_bound(&self) -> Option<usize> {
        self.circuits_finite.then_some(self.longest_cycle)
    }

    /// Upper bound on the length of alternating paths between vertices of
    /// `delta`, or `None` when there are infinitely many such paths.
    pub fn path_length_bound(&self, p: &ColoredGraph, delta: &BTreeSet<VertexId>) -> Option<usize> {
        let relevant = self.relevant_edges(p, delta);
        if relevant.iter().any(|&i| self.cyclic[i]) {
            None
        } else {
            Some(relevant.len())
        }
    }

    /// Edges lying on some alternating path from `delta` to `delta`.
    fn relevant_edges(&self, p: &ColoredGraph, delta: &BTreeSet<VertexId>) -> Vec<usize> {
        let n = self.cyclic.len();
        let mut forward = vec![false; n];
        let mut backward = vec![false; n];
        for id in p.edge_ids() {
            let e = p.edge(id);
            if delta.contains(&e.src) && !forward[id.0] {
                let mut dfs = Dfs::new(&self.states, NodeIndex::new(id.0));
                while let Some(v) = dfs.next(&self.states) {
                    forward[v.index()] = true;
                }
            }
        }
        let reversed = Reversed(&self.states);
        for id in p.edge_ids() {
            let e = p.edge(id);
            if delta.contains(&e.dst) && !backward[id.0] {
                let mut dfs = Dfs::new(reversed, NodeIndex::new(id.0));
                while let Some(v) = dfs.next(reversed) {
                    backward[v.index()] = true;
                }
            }
        }
        (0..n).filter(|&i| forward[i] && backward[i]).collect()
    }
}
