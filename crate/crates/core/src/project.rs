//! Projects: a wager paired with a graph, and the operations between them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::format::{lines, parse_graph_lines};
use crate::graph::{fmt_decimal, reduce, union, write_graph, VertexId, WeightedGraph, DEFAULT_TOL};
use crate::matrix::reduce_exact;
use crate::measure::measure_exact;

/// A wager together with a graph; the carrier is the graph's vertex set.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Project {
    wager: f64,
    graph: WeightedGraph,
}

impl Project {
    pub fn new(wager: f64, graph: WeightedGraph) -> Result<Self> {
        if !(wager.is_finite() && wager >= 0.0) {
            return Err(Error::InvalidWager(wager));
        }
        Ok(Self { wager, graph })
    }

    /// Zero wager.
    pub fn from_graph(graph: WeightedGraph) -> Self {
        Self { wager: 0.0, graph }
    }

    /// The neutral element of the tensor: zero wager, empty graph on no vertex.
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn wager(&self) -> f64 {
        self.wager
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn carrier(&self) -> &BTreeSet<VertexId> {
        self.graph.vertices()
    }

    /// Equal wagers and equal graphs, both within `tol`.
    pub fn approx_eq(&self, other: &Project, tol: f64) -> bool {
        (self.wager - other.wager).abs() <= tol
            && crate::graph::graph_equal(&self.graph, &other.graph, tol)
    }
}

/// `a + b + <A, B>` without any carrier condition.
pub fn raw_interaction(a: &Project, b: &Project) -> Result<f64> {
    Ok(a.wager + b.wager + measure_exact(&a.graph, &b.graph)?.value)
}

/// `a + b + <A, B>` for projects of the same carrier.
pub fn interaction(a: &Project, b: &Project) -> Result<f64> {
    if a.carrier() != b.carrier() {
        return Err(Error::CarrierMismatch);
    }
    raw_interaction(a, b)
}

/// The interaction is neither 0 nor infinite.
pub fn orthogonal(a: &Project, b: &Project) -> Result<bool> {
    let x = interaction(a, b)?;
    Ok(x.is_finite() && x > DEFAULT_TOL)
}

/// Wagers add, graphs are put side by side. Carriers must be disjoint.
pub fn tensor(a: &Project, b: &Project) -> Result<Project> {
    if let Some(&v) = a.carrier().intersection(b.carrier()).next() {
        return Err(Error::carrier(
            v,
            "tensor factors must have disjoint carriers",
        ));
    }
    Ok(Project {
        wager: a.wager + b.wager,
        graph: union(&a.graph, &b.graph),
    })
}

/// The execution of `f` against `g`: wager `<<f, g>>`, graph the reduction.
///
/// When the reduction has infinitely many edges the graph is the simplified
/// reduction, one edge per vertex pair; see [`cut_simplified`].
pub fn cut(f: &Project, g: &Project) -> Result<Project> {
    let wager = raw_interaction(f, g)?;
    if wager.is_infinite() {
        return Err(Error::CutUndefined);
    }
    let graph = match reduce(&f.graph, &g.graph) {
        Ok(graph) => graph,
        Err(Error::InfiniteReduction) => reduce_exact(&f.graph, &g.graph)?.to_multigraph()?,
        Err(e) => return Err(e),
    };
    Ok(Project { wager, graph })
}

/// Like [`cut`], but the graph is always the simplified reduction.
pub fn cut_simplified(f: &Project, g: &Project) -> Result<Project> {
    let wager = raw_interaction(f, g)?;
    if wager.is_infinite() {
        return Err(Error::CutUndefined);
    }
    Ok(Project {
        wager,
        graph: reduce_exact(&f.graph, &g.graph)?.to_multigraph()?,
    })
}

/// A finite injective relabeling of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Delocation {
    map: BTreeMap<VertexId, VertexId>,
}

impl Delocation {
    pub fn new(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (v, w) in pairs {
            if let Some(old) = map.insert(v, w) {
                if old != w {
                    return Err(Error::carrier(v, "mapped to two different vertices"));
                }
                continue;
            }
            if !seen.insert(w) {
                return Err(Error::NotInjective(w));
            }
        }
        Ok(Self { map })
    }

    /// The restriction of `f` to `domain`.
    pub fn from_fn(
        domain: impl IntoIterator<Item = VertexId>,
        f: impl Fn(VertexId) -> VertexId,
    ) -> Result<Self> {
        Self::new(domain.into_iter().map(|v| (v, f(v))))
    }

    pub fn get(&self, v: VertexId) -> Option<VertexId> {
        self.map.get(&v).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.map.keys().copied()
    }

    pub fn image(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.map.values().copied()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.map.iter().map(|(&v, &w)| (v, w))
    }

    pub fn inverse(&self) -> Self {
        Self {
            map: self.map.iter().map(|(&v, &w)| (w, v)).collect(),
        }
    }
}

/// Moves a project along `d`, which must be defined on its whole carrier.
pub fn delocate(a: &Project, d: &Delocation) -> Result<Project> {
    if let Some(&v) = a.carrier().iter().find(|&&v| d.get(v).is_none()) {
        return Err(Error::Delocation(v));
    }
    Ok(Project {
        wager: a.wager,
        graph: a.graph.relabel(|v| d.get(v).expect("checked above")),
    })
}

/// The project with a weight-1 edge in each direction between `v` and
/// `d(v)`, for every `v` in the domain. Domain and image must be disjoint.
pub fn fax(d: &Delocation) -> Result<Project> {
    let domain: BTreeSet<_> = d.domain().collect();
    if let Some(v) = d.image().find(|w| domain.contains(w)) {
        return Err(Error::Locativity(v));
    }
    let vertices = d.domain().chain(d.image());
    let edges = d.pairs().flat_map(|(v, w)| [(v, w, 1.0), (w, v, 1.0)]);
    Ok(Project::from_graph(WeightedGraph::new(vertices, edges)?))
}

/// Parses `wager <decimal>` followed by the graph format.
pub fn parse_project(text: &str) -> Result<Project> {
    let mut it = lines(text);
    let header = it
        .next()
        .ok_or_else(|| Error::parse(1, 1, "expected `wager` line"))?;
    if header.keyword() != "wager" {
        return Err(header.error(header.tokens[0].0, "expected `wager` line"));
    }
    header.expect_arity(2)?;
    let wager: f64 = header.parse_at(1, "wager")?;
    let graph = parse_graph_lines(it.next(), it)?;
    Project::new(wager, graph).map_err(|e| header.error(header.tokens[1].0, e.to_string()))
}

pub fn write_project(p: &Project) -> String {
    let mut out = String::new();
    writeln!(out, "wager {}", fmt_decimal(p.wager)).unwrap();
    out.push_str(&write_graph(&p.graph));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_equal;

    fn loop_project(v: VertexId, w: f64, wager: f64) -> Project {
        Project::new(wager, WeightedGraph::new([v], [(v, v, w)]).unwrap()).unwrap()
    }

    fn fax_of(pairs: &[(VertexId, VertexId)]) -> Project {
        fax(&Delocation::new(pairs.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn interactions() {
        let a = Project::new(0.3, WeightedGraph::empty()).unwrap();
        let b = Project::new(0.2, WeightedGraph::empty()).unwrap();
        assert!((interaction(&a, &b).unwrap() - 0.5).abs() < 1e-15);

        let p = loop_project(1, 0.5, 0.0);
        let x = interaction(&p, &p).unwrap();
        assert!((x + 0.75f64.ln()).abs() < 1e-12);
        assert!(orthogonal(&p, &p).unwrap());

        assert!(!orthogonal(&Project::unit(), &Project::unit()).unwrap());

        let f = Project::from_graph(WeightedGraph::new([1, 2], [(1, 2, 1.0)]).unwrap());
        let g = Project::from_graph(WeightedGraph::new([1, 2], [(2, 1, 1.0)]).unwrap());
        assert!(interaction(&f, &g).unwrap().is_infinite());
        assert!(!orthogonal(&f, &g).unwrap());
        assert!(matches!(cut(&f, &g), Err(Error::CutUndefined)));

        assert!(matches!(
            interaction(&p, &loop_project(2, 0.5, 0.0)),
            Err(Error::CarrierMismatch)
        ));
    }

    #[test]
    fn tensors() {
        let t = tensor(&loop_project(1, 0.5, 0.1), &loop_project(2, 0.5, 0.2)).unwrap();
        assert!((t.wager() - 0.3).abs() < 1e-15);
        assert_eq!(t.graph().num_edges(), 2);
        let u = tensor(&t, &Project::unit()).unwrap();
        assert_eq!(u, t);
        assert!(tensor(&t, &loop_project(1, 0.5, 0.0)).is_err());
    }

    #[test]
    fn cut_of_disjoint_projects_is_tensor() {
        let a = loop_project(1, 0.5, 0.1);
        let b = loop_project(2, 0.5, 0.2);
        let c = cut(&a, &b).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(c.wager(), t.wager());
        assert!(graph_equal(c.graph(), t.graph(), 0.0));
    }

    #[test]
    fn faxes_compose() {
        let c = cut(&fax_of(&[(1, 2)]), &fax_of(&[(2, 3)])).unwrap();
        assert!(c.approx_eq(&fax_of(&[(1, 3)]), 0.0));
        assert!(matches!(
            fax(&Delocation::new([(1, 2), (2, 3)]).unwrap()),
            Err(Error::Locativity(2))
        ));
    }

    #[test]
    fn delocations() {
        let p = loop_project(1, 0.5, 0.0);
        let id = Delocation::new([(1, 1)]).unwrap();
        assert_eq!(delocate(&p, &id).unwrap(), p);
        let moved = delocate(&p, &Delocation::new([(1, 5)]).unwrap()).unwrap();
        assert_eq!(moved, loop_project(5, 0.5, 0.0));
        assert!(matches!(
            delocate(&p, &Delocation::default()),
            Err(Error::Delocation(1))
        ));
        assert!(matches!(
            Delocation::new([(1, 3), (2, 3)]),
            Err(Error::NotInjective(3))
        ));
    }

    #[test]
    fn file_round_trip() {
        let p = tensor(&loop_project(1, 0.5, 0.25), &fax_of(&[(2, 3)])).unwrap();
        let text = write_project(&p);
        assert!(text.starts_with("wager 0.25\nvertices 1 2 3\n"));
        assert!(parse_project(&text).unwrap().approx_eq(&p, 0.0));
        assert!(parse_project("wager -1\nvertices\n").is_err());
        assert!(parse_project("vertices\n").is_err());
    }
}
