//! Tests built from switchings of a conclusion.
//!
//! Each `⅋` of the conclusion is switched left or right; every switching
//! yields a project on the conclusion's location that sends an atom to the
//! next atom reached by a trip through the switched formula trees. The
//! interpretation of a proof is orthogonal to every such test.

use std::collections::BTreeSet;

use super::formula::{Atom, Basis, Formula, Sequent};
use super::{ProofError, ProofErrorKind, Rule};
use crate::error::Result;
use crate::graph::{graph_equal, simplify, VertexId, WeightedGraph};
use crate::project::{cut, delocate, tensor, Delocation, Project};

/// Weight of a trip segment that bounced.
const BOUNCE_WEIGHT: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Debug)]
enum Kind {
    Atom(Atom),
    Unit,
    Tensor(usize, usize),
    /// Children and the index of this `⅋` among all of them.
    Par(usize, usize, usize),
}

struct Forest {
    kinds: Vec<Kind>,
    parents: Vec<Option<(usize, Side)>>,
    atoms: Vec<usize>,
    pars: usize,
}

impl Forest {
    fn new(s: &Sequent) -> Self {
        let mut forest = Forest {
            kinds: Vec::new(),
            parents: Vec::new(),
            atoms: Vec::new(),
            pars: 0,
        };
        for f in s.formulas() {
            forest.add(f, None);
        }
        forest
    }

    fn add(&mut self, f: &Formula, parent: Option<(usize, Side)>) -> usize {
        let id = self.kinds.len();
        self.kinds.push(Kind::Unit);
        self.parents.push(parent);
        let kind = match f {
            Formula::Var(a) | Formula::NegVar(a) => {
                self.atoms.push(id);
                Kind::Atom(a.clone())
            }
            Formula::One | Formula::Bottom => Kind::Unit,
            Formula::Tensor(a, b) => {
                let l = self.add(a, Some((id, Side::Left)));
                let r = self.add(b, Some((id, Side::Right)));
                Kind::Tensor(l, r)
            }
            Formula::Par(a, b) => {
                let k = self.pars;
                self.pars += 1;
                let l = self.add(a, Some((id, Side::Left)));
                let r = self.add(b, Some((id, Side::Right)));
                Kind::Par(l, r, k)
            }
        };
        self.kinds[id] = kind;
        id
    }

    /// Follows the trip from atom `start` going down until it enters an
    /// atom going up. Returns that atom and whether the trip bounced.
    fn next_atom(&self, start: usize, switches: &[Side]) -> (usize, bool) {
        #[derive(Clone, Copy)]
        enum Dir {
            Down,
            Up,
        }
        let (mut node, mut dir, mut bounced) = (start, Dir::Down, false);
        // Each state is visited at most once on a trip.
        for _ in 0..=4 * self.kinds.len() {
            match dir {
                Dir::Down => match self.parents[node] {
                    None => {
                        bounced = true;
                        dir = Dir::Up;
                    }
                    Some((p, side)) => match (&self.kinds[p], side) {
                        (Kind::Tensor(_, r), Side::Left) => {
                            node = *r;
                            dir = Dir::Up;
                        }
                        (Kind::Tensor(..), Side::Right) => node = p,
                        (Kind::Par(.., k), side) if switches[*k] == side => node = p,
                        (Kind::Par(..), _) => {
                            bounced = true;
                            dir = Dir::Up;
                        }
                        _ => unreachable!("leaves have no children"),
                    },
                },
                Dir::Up => match &self.kinds[node] {
                    Kind::Atom(_) => return (node, bounced),
                    Kind::Unit => {
                        bounced = true;
                        dir = Dir::Down;
                    }
                    Kind::Tensor(l, _) => node = *l,
                    Kind::Par(l, r, k) => {
                        node = if switches[*k] == Side::Left { *l } else { *r };
                    }
                },
            }
        }
        unreachable!("trips terminate")
    }

    fn atom(&self, node: usize) -> &Atom {
        match &self.kinds[node] {
            Kind::Atom(a) => a,
            _ => unreachable!("not an atom"),
        }
    }
}

/// A switching (`true` = right premise kept) and its test project.
#[derive(Clone, Debug)]
pub struct SwitchingTest {
    pub switches: Vec<bool>,
    pub project: Project,
}

fn proof_error(kind: ProofErrorKind) -> crate::error::Error {
    ProofError {
        node: None,
        rule: Rule::Par,
        kind,
    }
    .into()
}

/// One test per switching of the `⅋` connectives of `s`.
///
/// A conclusion without atoms gets the single test `(ln 2, empty graph)`.
pub fn switching_tests(s: &Sequent, basis: &Basis) -> Result<Vec<SwitchingTest>> {
    let forest = Forest::new(s);
    let mut carrier = BTreeSet::new();
    for &a in &forest.atoms {
        carrier.extend(basis.atom_location(forest.atom(a)).map_err(proof_error)?);
    }
    if forest.atoms.is_empty() {
        let project = Project::new(std::f64::consts::LN_2, WeightedGraph::empty())?;
        return Ok(vec![SwitchingTest {
            switches: vec![false; forest.pars],
            project,
        }]);
    }
    let mut out = Vec::with_capacity(1 << forest.pars);
    for bits in 0u64..(1 << forest.pars) {
        let switches: Vec<Side> = (0..forest.pars)
            .map(|k| {
                if bits >> k & 1 == 1 {
                    Side::Right
                } else {
                    Side::Left
                }
            })
            .collect();
        let mut graph = WeightedGraph::on(carrier.iter().copied());
        for &a in &forest.atoms {
            let (b, bounced) = forest.next_atom(a, &switches);
            let (from, to) = (forest.atom(a), forest.atom(b));
            let weight = if bounced { BOUNCE_WEIGHT } else { 1.0 };
            let layers = basis
                .size_of(&from.name)
                .map_err(proof_error)?
                .min(basis.size_of(&to.name).map_err(proof_error)?);
            for x in 0..layers {
                let v = basis.vertex(from, x).map_err(proof_error)?;
                let w = basis.vertex(to, x).map_err(proof_error)?;
                graph.add_edge(v, w, weight)?;
            }
        }
        out.push(SwitchingTest {
            switches: switches.iter().map(|&s| s == Side::Right).collect(),
            project: Project::from_graph(graph),
        });
    }
    Ok(out)
}

/// Plugging `test` (a project on `0..size`) into the location of `atom`
/// moves it onto the location linked to `atom` by `f`: `f` cut with the
/// test there equals the rest of `f` beside the test moved to the partner.
pub fn transport_check(f: &Project, basis: &Basis, atom: &Atom, test: &Project) -> Result<bool> {
    let size = basis.size_of(&atom.name).map_err(proof_error)?;
    let s = simplify(f.graph());
    let mut here = Vec::new();
    let mut there = Vec::new();
    for x in 0..size {
        let v = basis.vertex(atom, x).map_err(proof_error)?;
        let partners: Vec<VertexId> = s
            .weights()
            .keys()
            .filter(|&&(a, _)| a == v)
            .map(|&(_, b)| b)
            .collect();
        let [w] = partners[..] else {
            return Ok(false);
        };
        here.push((x, v));
        there.push((x, w));
    }
    let placed = delocate(test, &Delocation::new(here.iter().copied())?)?;
    let moved = delocate(test, &Delocation::new(there.iter().copied())?)?;
    let used: BTreeSet<VertexId> = here.iter().chain(&there).map(|&(_, v)| v).collect();
    let rest: BTreeSet<VertexId> = f.carrier().difference(&used).copied().collect();
    let lhs = cut(f, &placed)?;
    let rhs = tensor(&Project::new(f.wager(), f.graph().restrict(&rest))?, &moved)?;
    Ok((lhs.wager() - rhs.wager()).abs() <= 1e-12 && graph_equal(lhs.graph(), rhs.graph(), 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{check_proof, interpret, parse_proof};
    use crate::project::orthogonal;

    fn tests_for(text: &str) -> (Project, Vec<SwitchingTest>) {
        let file = parse_proof(text).unwrap();
        let s = check_proof(&file.proof, &file.basis).unwrap();
        let f = interpret(&file.proof, &file.basis).unwrap();
        (f, switching_tests(&s, &file.basis).unwrap())
    }

    #[test]
    fn axiom_and_tensor() {
        let (f, tests) = tests_for("(ax X1 0 1)");
        assert_eq!(tests.len(), 1);
        assert!(orthogonal(&f, &tests[0].project).unwrap());

        let (f, tests) = tests_for("(tensor (ax X1 0 1) (ax X2 0 1))");
        assert_eq!(tests.len(), 1);
        assert!(orthogonal(&f, &tests[0].project).unwrap());
    }

    #[test]
    fn par_gives_two_tests() {
        let (f, tests) = tests_for("(par (ex (tensor (ax X1 0 1) (ax X2 0 1)) 0 1))");
        assert_eq!(tests.len(), 2);
        for t in &tests {
            assert!(orthogonal(&f, &t.project).unwrap());
        }
    }

    #[test]
    fn units_only() {
        let (f, tests) = tests_for("(bot (one))");
        assert_eq!(tests.len(), 1);
        assert!(orthogonal(&f, &tests[0].project).unwrap());
    }

    #[test]
    fn wrong_linking_is_caught() {
        // The fax linking X1(0) and X1(1) proves X1(0) ⅋ X1(1)^⊥ but not
        // X1(0) ⊗ X1(1)^⊥.
        let basis = Basis::new(["X1"], &Default::default());
        let a = Atom::new("X1", 0);
        let b = Atom::new("X1", 1);
        let s = Sequent(vec![Formula::par(
            Formula::Var(a.clone()),
            Formula::NegVar(b.clone()),
        )]);
        let pairs = [(basis.vertex(&a, 0).unwrap(), basis.vertex(&b, 0).unwrap())];
        let f = crate::project::fax(&Delocation::new(pairs).unwrap()).unwrap();
        let tests = switching_tests(&s, &basis).unwrap();
        assert!(tests.iter().all(|t| orthogonal(&f, &t.project).unwrap()));
        let t = Sequent(vec![Formula::tensor(Formula::Var(a), Formula::NegVar(b))]);
        let tests = switching_tests(&t, &basis).unwrap();
        assert!(tests.iter().any(|t| !orthogonal(&f, &t.project).unwrap()));
    }

    #[test]
    fn transport() {
        let file = parse_proof("var X1 size 2\n(ax X1 0 1)").unwrap();
        let f = interpret(&file.proof, &file.basis).unwrap();
        let g = WeightedGraph::new([0, 1], [(0, 1, 0.5), (1, 1, 0.25)]).unwrap();
        let test = Project::new(0.5, g).unwrap();
        assert!(transport_check(&f, &file.basis, &Atom::new("X1", 0), &test).unwrap());
    }
}
