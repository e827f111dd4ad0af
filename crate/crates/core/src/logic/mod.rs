//! Multiplicative linear logic with located formulas, and its
//! interpretation by projects.

mod cut_elim;
mod formula;
mod interpret;
mod parse;
mod proof;
mod random;
mod switching;

use std::fmt;

pub use cut_elim::{eliminate_cuts, eliminate_cuts_checked, Normalization};
pub use formula::{delta, delta_inverse, Atom, Basis, Formula, Sequent, VarInfo};
pub use interpret::interpret;
pub use parse::{parse_mll_proof, parse_proof, write_proof, ProofFile};
pub use proof::{check_proof, mll_conclusion, AxiomSyntax, LocAxiom, MllProof, Proof, Rule, Tree};
pub use random::{random_proof, ProofShape};
pub use switching::{switching_tests, transport_check, SwitchingTest};

use crate::graph::VertexId;

/// A rule application that violates the calculus.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{}", self.describe())]
pub struct ProofError {
    /// Preorder index of the offending node, when known.
    pub node: Option<usize>,
    pub rule: Rule,
    pub kind: ProofErrorKind,
}

impl ProofError {
    fn describe(&self) -> String {
        match self.node {
            Some(n) => format!("rule `{}` at node {n}: {}", self.rule, self.kind),
            None => format!("rule `{}`: {}", self.rule, self.kind),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProofErrorKind {
    AxiomSamePosition(Atom),
    NonLinear { atom: Atom, positive: bool },
    Overlap(VertexId),
    TooFewFormulas { needed: usize, found: usize },
    PositionOutOfRange { index: usize, len: usize },
    NotDual { left: Formula, right: Formula },
    UnknownVariable(String),
    LocationOverflow(String),
    BadTestCarrier(String),
}

impl fmt::Display for ProofErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofErrorKind::AxiomSamePosition(a) => {
                write!(f, "axiom uses position {} twice for {}", a.pos, a.name)
            }
            ProofErrorKind::NonLinear { atom, positive } => {
                let neg = if *positive { "" } else { "^⊥" };
                write!(f, "{atom}{neg} occurs in two axioms")
            }
            ProofErrorKind::Overlap(v) => write!(f, "premise locations share vertex {v}"),
            ProofErrorKind::TooFewFormulas { needed, found } => {
                write!(f, "premise needs {needed} formulas, has {found}")
            }
            ProofErrorKind::PositionOutOfRange { index, len } => {
                write!(
                    f,
                    "position {index} out of range for a sequent of {len} formulas"
                )
            }
            ProofErrorKind::NotDual { left, right } => {
                write!(f, "cut formulas {left} and {right} are not dual")
            }
            ProofErrorKind::UnknownVariable(n) => write!(f, "unknown variable {n}"),
            ProofErrorKind::LocationOverflow(a) => write!(f, "location of {a} overflows"),
            ProofErrorKind::BadTestCarrier(n) => {
                write!(f, "test projects for {n} must live on 0..size")
            }
        }
    }
}
