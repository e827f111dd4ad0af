//! Successful projects: the graph-level analogue of a correct proof.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{simplify, SimpleGraph, VertexId, WeightedGraph};
use crate::project::Project;

/// Success demands exact transpositions, so weights are compared tightly.
pub const SUCCESS_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Failure {
    NonZeroWager,
    NotSymmetric,
    CubeDiffers,
    NonZeroTrace,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Failure::NonZeroWager => "wager is not 0",
            Failure::NotSymmetric => "simplified graph is not symmetric",
            Failure::CubeDiffers => "cube of the simplified graph differs from it",
            Failure::NonZeroTrace => "trace is not 0",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuccessVerdict {
    pub reasons: Vec<Failure>,
}

impl SuccessVerdict {
    pub fn successful(&self) -> bool {
        self.reasons.is_empty()
    }
}

/// Checking mode. The weak mode tolerates fixed points, i.e. drops the
/// trace clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuccessMode {
    pub allow_fixpoints: bool,
}

pub fn is_successful(a: &Project) -> SuccessVerdict {
    is_successful_in(a, SuccessMode::default())
}

pub fn is_successful_in(a: &Project, mode: SuccessMode) -> SuccessVerdict {
    let s = simplify(a.graph());
    let mut reasons = Vec::new();
    if a.wager() != 0.0 {
        reasons.push(Failure::NonZeroWager);
    }
    if !s.is_symmetric_within(SUCCESS_TOL) {
        reasons.push(Failure::NotSymmetric);
    }
    if !s.power(3).approx_eq(&s, SUCCESS_TOL) {
        reasons.push(Failure::CubeDiffers);
    }
    if !mode.allow_fixpoints && s.trace().abs() > SUCCESS_TOL {
        reasons.push(Failure::NonZeroTrace);
    }
    SuccessVerdict { reasons }
}

/// Edges pair vertices into disjoint symmetric weight-1 pairs, with no loops.
pub fn is_transposition_union(s: &SimpleGraph) -> bool {
    is_transposition_union_in(s, SuccessMode::default())
}

/// As [`is_transposition_union`]; the weak mode also accepts weight-1 loops
/// on otherwise isolated vertices.
pub fn is_transposition_union_in(s: &SimpleGraph, mode: SuccessMode) -> bool {
    let mut sources = BTreeSet::new();
    let mut targets = BTreeSet::new();
    s.weights().iter().all(|(&(v, w), &x)| {
        (x - 1.0).abs() <= SUCCESS_TOL
            && (v != w || mode.allow_fixpoints)
            && (s.weight(w, v) - 1.0).abs() <= SUCCESS_TOL
            && sources.insert(v)
            && targets.insert(w)
    })
}

/// Outcome of splitting a successful project along a carrier partition.
#[derive(Clone, Debug)]
pub enum Split {
    /// The project is the tensor of these two successful parts.
    Tensor(Project, Project),
    /// An edge crosses the partition; `counter_test` carries the reversed
    /// edge and a nonzero wager, and interacts infinitely with the project.
    Crossing {
        edge: (VertexId, VertexId),
        counter_test: Project,
    },
}

pub fn split_successful_tensor(
    f: &Project,
    left: &BTreeSet<VertexId>,
    right: &BTreeSet<VertexId>,
) -> Result<Split> {
    if !is_successful(f).successful() {
        return Err(Error::NotSuccessful);
    }
    if let Some(&v) = left.intersection(right).next() {
        return Err(Error::carrier(v, "belongs to both sides of the split"));
    }
    let parts: BTreeSet<_> = left.union(right).copied().collect();
    if let Some(&v) = parts.symmetric_difference(f.carrier()).next() {
        return Err(Error::carrier(v, "split sides must partition the carrier"));
    }
    let s = simplify(f.graph());
    let crossing = s
        .weights()
        .keys()
        .find(|(v, w)| left.contains(v) != left.contains(w));
    if let Some(&(v, w)) = crossing {
        let graph = WeightedGraph::new(parts.iter().copied(), [(w, v, 1.0)])?;
        return Ok(Split::Crossing {
            edge: (v, w),
            counter_test: Project::new(1.0, graph)?,
        });
    }
    Ok(Split::Tensor(
        Project::new(0.0, f.graph().restrict(left))?,
        Project::new(0.0, f.graph().restrict(right))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::project::{fax, interaction, tensor, Delocation};

    fn fax_of(pairs: &[(VertexId, VertexId)]) -> Project {
        fax(&Delocation::new(pairs.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn verdicts() {
        assert!(is_successful(&fax_of(&[(1, 2)])).successful());
        let wagered = Project::new(0.1, fax_of(&[(1, 2)]).graph().clone()).unwrap();
        assert_eq!(is_successful(&wagered).reasons, vec![Failure::NonZeroWager]);
        let fix = Project::from_graph(WeightedGraph::new([1], [(1, 1, 1.0)]).unwrap());
        assert_eq!(is_successful(&fix).reasons, vec![Failure::NonZeroTrace]);
        let weak = SuccessMode {
            allow_fixpoints: true,
        };
        assert!(is_successful_in(&fix, weak).successful());
        let arrow = Project::from_graph(WeightedGraph::new([1, 2], [(1, 2, 1.0)]).unwrap());
        assert!(!is_successful(&arrow).successful());
        assert!(is_successful(&Project::unit()).successful());
    }

    #[test]
    fn transpositions() {
        assert!(is_transposition_union(&simplify(fax_of(&[(1, 2)]).graph())));
        let half = SimpleGraph::new([1, 2], [((1, 2), 0.5), ((2, 1), 0.5)]).unwrap();
        assert!(!is_transposition_union(&half));
        let star = SimpleGraph::new(
            [1, 2, 3],
            [((1, 2), 1.0), ((2, 1), 1.0), ((1, 3), 1.0), ((3, 1), 1.0)],
        )
        .unwrap();
        assert!(!is_transposition_union(&star));
    }

    #[test]
    fn splitting() {
        let f = tensor(&fax_of(&[(1, 2)]), &fax_of(&[(3, 4)])).unwrap();
        let (l, r): (BTreeSet<_>, BTreeSet<_>) = ([1, 2].into(), [3, 4].into());
        match split_successful_tensor(&f, &l, &r).unwrap() {
            Split::Tensor(a, b) => {
                assert!(a.approx_eq(&fax_of(&[(1, 2)]), 0.0));
                assert!(b.approx_eq(&fax_of(&[(3, 4)]), 0.0));
            }
            other => panic!("expected a tensor, got {other:?}"),
        }

        let g = tensor(
            &fax_of(&[(1, 3)]),
            &Project::from_graph(WeightedGraph::on([2, 4])),
        )
        .unwrap();
        match split_successful_tensor(&g, &l, &r).unwrap() {
            Split::Crossing { edge, counter_test } => {
                assert_eq!(edge, (1, 3));
                assert!(interaction(&g, &counter_test).unwrap().is_infinite());
            }
            other => panic!("expected a crossing edge, got {other:?}"),
        }
    }
}
