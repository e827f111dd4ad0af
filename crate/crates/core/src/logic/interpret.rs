//! Proofs as projects: axioms are faxes, tensor and mix put graphs side by
//! side, cut executes.

use super::formula::{Atom, Basis};
use super::proof::{check_proof, LocAxiom, Proof, Tree};
use crate::error::Result;
use crate::project::{cut, fax, tensor, Delocation, Project};

/// Fax between the layers of the two atoms of an axiom.
pub(crate) fn axiom_project(a: &LocAxiom, basis: &Basis) -> Result<Project> {
    let (pos, neg) = (a.positive(), a.negative());
    let pairs = layer_pairs(&pos, &neg, basis)?;
    fax(&Delocation::new(pairs)?)
}

fn layer_pairs(from: &Atom, to: &Atom, basis: &Basis) -> Result<Vec<(u64, u64)>> {
    let size = basis.size_of(&from.name).map_err(|k| super::ProofError {
        node: None,
        rule: super::Rule::Ax,
        kind: k,
    })?;
    (0..size)
        .map(|x| {
            let v = basis.vertex(from, x);
            let w = basis.vertex(to, x);
            match (v, w) {
                (Ok(v), Ok(w)) => Ok((v, w)),
                (Err(kind), _) | (_, Err(kind)) => Err(super::ProofError {
                    node: None,
                    rule: super::Rule::Ax,
                    kind,
                }
                .into()),
            }
        })
        .collect()
}

fn build(p: &Proof, basis: &Basis) -> Result<Project> {
    match p {
        Tree::Ax(a) => axiom_project(a, basis),
        Tree::One => Ok(Project::unit()),
        Tree::Bot(q) | Tree::Par(q) | Tree::Ex(q, ..) => build(q, basis),
        Tree::Tensor(l, r) | Tree::Mix(l, r) => tensor(&build(l, basis)?, &build(r, basis)?),
        Tree::Cut(l, r) => cut(&build(l, basis)?, &build(r, basis)?),
    }
}

/// Checks `p`, then interprets it.
pub fn interpret(p: &Proof, basis: &Basis) -> Result<Project> {
    check_proof(p, basis)?;
    build(p, basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_equal;
    use crate::logic::delta;

    #[test]
    fn axiom_is_a_fax() {
        let basis = Basis::new(["X1"], &[("X1".to_string(), 2)].into());
        let p = interpret(&Proof::ax("X1", 0, 1), &basis).unwrap();
        let d = |m| delta(1, m).unwrap();
        let expected = fax(&Delocation::new([(d(0), d(2)), (d(1), d(3))]).unwrap()).unwrap();
        assert!(p.approx_eq(&expected, 0.0));
    }

    #[test]
    fn cut_of_axioms_is_an_axiom() {
        let basis = Basis::new(["X1"], &Default::default());
        let p = Proof::cut(
            Proof::ax("X1", 3, 97),
            Proof::ex(Proof::ax("X1", 97, 23), 0, 1),
        );
        let got = interpret(&p, &basis).unwrap();
        let want = interpret(&Proof::ax("X1", 3, 23), &basis).unwrap();
        assert_eq!(got.wager(), 0.0);
        assert!(graph_equal(got.graph(), want.graph(), 0.0));
    }

    #[test]
    fn units_are_empty() {
        let basis = Basis::default();
        assert_eq!(
            interpret(&Proof::bot(Proof::One), &basis).unwrap(),
            Project::unit()
        );
    }
}
