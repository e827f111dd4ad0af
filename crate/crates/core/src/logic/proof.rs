//! Proof trees and the located sequent calculus checker.

use std::collections::BTreeSet;
use std::fmt;

use super::formula::{Atom, Basis, Formula, Sequent};
use super::{ProofError, ProofErrorKind};

/// Axiom of the located calculus: `⊢ X(pos), X(neg)^⊥`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocAxiom {
    pub name: String,
    pub pos: u64,
    pub neg: u64,
}

impl LocAxiom {
    pub fn new(name: impl Into<String>, pos: u64, neg: u64) -> Self {
        Self {
            name: name.into(),
            pos,
            neg,
        }
    }

    pub fn positive(&self) -> Atom {
        Atom::new(self.name.clone(), self.pos)
    }

    pub fn negative(&self) -> Atom {
        Atom::new(self.name.clone(), self.neg)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Ax,
    One,
    Bot,
    Par,
    Tensor,
    Cut,
    Mix,
    Ex,
}

impl Rule {
    pub fn keyword(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::One => "one",
            Rule::Bot => "bot",
            Rule::Par => "par",
            Rule::Tensor => "tensor",
            Rule::Cut => "cut",
            Rule::Mix => "mix",
            Rule::Ex => "ex",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// A proof tree whose axioms are labelled by `A`.
///
/// Conclusions are ordered. `Bot` appends `⊥`; `Par` joins the last two
/// formulas; `Tensor` joins the last formula of each premise; `Cut` cuts
/// the last formula of each premise; `Mix` concatenates; `Ex(p, i, j)`
/// swaps positions `i` and `j` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree<A> {
    Ax(A),
    One,
    Bot(Box<Tree<A>>),
    Par(Box<Tree<A>>),
    Tensor(Box<Tree<A>>, Box<Tree<A>>),
    Cut(Box<Tree<A>>, Box<Tree<A>>),
    Mix(Box<Tree<A>>, Box<Tree<A>>),
    Ex(Box<Tree<A>>, usize, usize),
}

/// A proof of the located calculus.
pub type Proof = Tree<LocAxiom>;

/// A proof of plain multiplicative logic: axioms only name a variable.
pub type MllProof = Tree<String>;

impl<A> Tree<A> {
    pub fn rule(&self) -> Rule {
        match self {
            Tree::Ax(_) => Rule::Ax,
            Tree::One => Rule::One,
            Tree::Bot(_) => Rule::Bot,
            Tree::Par(_) => Rule::Par,
            Tree::Tensor(..) => Rule::Tensor,
            Tree::Cut(..) => Rule::Cut,
            Tree::Mix(..) => Rule::Mix,
            Tree::Ex(..) => Rule::Ex,
        }
    }

    pub fn children(&self) -> Vec<&Tree<A>> {
        match self {
            Tree::Ax(_) | Tree::One => vec![],
            Tree::Bot(p) | Tree::Par(p) | Tree::Ex(p, ..) => vec![p],
            Tree::Tensor(p, q) | Tree::Cut(p, q) | Tree::Mix(p, q) => vec![p, q],
        }
    }

    /// All nodes, exchanges included.
    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .iter()
            .map(|c| c.node_count())
            .sum::<usize>()
    }

    /// Nodes other than exchanges.
    pub fn rule_count(&self) -> usize {
        let own = usize::from(self.rule() != Rule::Ex);
        own + self
            .children()
            .iter()
            .map(|c| c.rule_count())
            .sum::<usize>()
    }

    pub fn count(&self, rule: Rule) -> usize {
        let own = usize::from(self.rule() == rule);
        own + self.children().iter().map(|c| c.count(rule)).sum::<usize>()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count(Rule::Cut) == 0
    }

    /// Axiom labels in preorder.
    pub fn axioms(&self) -> Vec<&A> {
        let mut out = Vec::new();
        self.collect_axioms(&mut out);
        out
    }

    fn collect_axioms<'a>(&'a self, out: &mut Vec<&'a A>) {
        if let Tree::Ax(a) = self {
            out.push(a);
        }
        for c in self.children() {
            c.collect_axioms(out);
        }
    }

    /// Relabels axioms, visiting them in preorder.
    pub fn try_map_axioms<B, E>(
        &self,
        f: &mut impl FnMut(&A) -> Result<B, E>,
    ) -> Result<Tree<B>, E> {
        let bx = |t: Tree<B>| Box::new(t);
        Ok(match self {
            Tree::Ax(a) => Tree::Ax(f(a)?),
            Tree::One => Tree::One,
            Tree::Bot(p) => Tree::Bot(bx(p.try_map_axioms(f)?)),
            Tree::Par(p) => Tree::Par(bx(p.try_map_axioms(f)?)),
            Tree::Ex(p, i, j) => Tree::Ex(bx(p.try_map_axioms(f)?), *i, *j),
            Tree::Tensor(p, q) => {
                let p = p.try_map_axioms(f)?;
                Tree::Tensor(bx(p), bx(q.try_map_axioms(f)?))
            }
            Tree::Cut(p, q) => {
                let p = p.try_map_axioms(f)?;
                Tree::Cut(bx(p), bx(q.try_map_axioms(f)?))
            }
            Tree::Mix(p, q) => {
                let p = p.try_map_axioms(f)?;
                Tree::Mix(bx(p), bx(q.try_map_axioms(f)?))
            }
        })
    }

    pub fn bot(p: Tree<A>) -> Self {
        Tree::Bot(Box::new(p))
    }

    pub fn par(p: Tree<A>) -> Self {
        Tree::Par(Box::new(p))
    }

    pub fn tensor(p: Tree<A>, q: Tree<A>) -> Self {
        Tree::Tensor(Box::new(p), Box::new(q))
    }

    pub fn cut(p: Tree<A>, q: Tree<A>) -> Self {
        Tree::Cut(Box::new(p), Box::new(q))
    }

    pub fn mix(p: Tree<A>, q: Tree<A>) -> Self {
        Tree::Mix(Box::new(p), Box::new(q))
    }

    pub fn ex(p: Tree<A>, i: usize, j: usize) -> Self {
        Tree::Ex(Box::new(p), i, j)
    }
}

impl Proof {
    pub fn ax(name: impl Into<String>, pos: u64, neg: u64) -> Self {
        Tree::Ax(LocAxiom::new(name, pos, neg))
    }

    /// Forgets positions.
    pub fn erase(&self) -> MllProof {
        self.try_map_axioms::<_, std::convert::Infallible>(&mut |a| Ok(a.name.clone()))
            .unwrap_or_else(|e| match e {})
    }
}

impl MllProof {
    pub fn ax(name: impl Into<String>) -> Self {
        Tree::Ax(name.into())
    }

    /// Assigns positions. `enumerate(k, positive)` gives the position of
    /// the positive or negative atom of the `k`-th axiom in preorder.
    /// Positions must be distinct per variable name and polarity.
    pub fn localize(
        &self,
        mut enumerate: impl FnMut(usize, bool) -> u64,
    ) -> Result<Proof, ProofError> {
        let mut seen = BTreeSet::new();
        let mut k = 0;
        self.try_map_axioms(&mut |name: &String| {
            let (pos, neg) = (enumerate(k, true), enumerate(k, false));
            k += 1;
            for (j, polarity) in [(pos, true), (neg, false)] {
                if !seen.insert((name.clone(), j, polarity)) {
                    return Err(ProofError {
                        node: None,
                        rule: Rule::Ax,
                        kind: ProofErrorKind::NonLinear {
                            atom: Atom::new(name.clone(), j),
                            positive: polarity,
                        },
                    });
                }
            }
            Ok(LocAxiom::new(name.clone(), pos, neg))
        })
    }

    /// Localizes with positions `2k` and `2k + 1` for the `k`-th axiom.
    pub fn localize_default(&self) -> Proof {
        self.localize(|k, positive| 2 * k as u64 + u64::from(!positive))
            .expect("distinct positions are linear")
    }
}

/// How an axiom label is printed inside `(ax ...)`.
pub trait AxiomSyntax {
    fn write_args(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl AxiomSyntax for LocAxiom {
    fn write_args(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.name, self.pos, self.neg)
    }
}

impl AxiomSyntax for String {
    fn write_args(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self)
    }
}

impl<A: AxiomSyntax> fmt::Display for Tree<A> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.rule())?;
        match self {
            Tree::Ax(a) => {
                f.write_str(" ")?;
                a.write_args(f)?;
            }
            Tree::Ex(p, i, j) => write!(f, " {p} {i} {j}")?,
            _ => {
                for c in self.children() {
                    write!(f, " {c}")?;
                }
            }
        }
        f.write_str(")")
    }
}

struct Checker<'a> {
    basis: &'a Basis,
    /// Off for unlocated proofs: positions, linearity and locations are
    /// then ignored.
    located: bool,
    next: usize,
    used: BTreeSet<(Atom, bool)>,
}

impl Checker<'_> {
    fn sequent(&mut self, p: &Proof) -> Result<Vec<Formula>, ProofError> {
        let node = self.next;
        self.next += 1;
        let rule = p.rule();
        let fail = |kind| ProofError {
            node: Some(node),
            rule,
            kind,
        };
        let located = self.located;
        let location = |fs: &[Formula]| -> Result<BTreeSet<u64>, ProofError> {
            let mut out = BTreeSet::new();
            for f in fs.iter().filter(|_| located) {
                out.extend(self.basis.location(f).map_err(fail)?);
            }
            Ok(out)
        };
        let disjoint = |a: &[Formula], b: &[Formula]| -> Result<(), ProofError> {
            let (la, lb) = (location(a)?, location(b)?);
            match la.intersection(&lb).next() {
                Some(&v) => Err(fail(ProofErrorKind::Overlap(v))),
                None => Ok(()),
            }
        };
        let split_last = |mut s: Vec<Formula>| -> Result<(Vec<Formula>, Formula), ProofError> {
            let last = s.pop().ok_or(fail(ProofErrorKind::TooFewFormulas {
                needed: 1,
                found: 0,
            }))?;
            Ok((s, last))
        };

        match p {
            Tree::Ax(a) if !self.located => Ok(vec![
                Formula::Var(a.positive()),
                Formula::NegVar(a.negative()),
            ]),
            Tree::Ax(a) => {
                if a.pos == a.neg {
                    return Err(fail(ProofErrorKind::AxiomSamePosition(a.positive())));
                }
                for (atom, positive) in [(a.positive(), true), (a.negative(), false)] {
                    if !self.used.insert((atom.clone(), positive)) {
                        return Err(fail(ProofErrorKind::NonLinear { atom, positive }));
                    }
                }
                let s = vec![Formula::Var(a.positive()), Formula::NegVar(a.negative())];
                location(&s)?;
                Ok(s)
            }
            Tree::One => Ok(vec![Formula::One]),
            Tree::Bot(q) => {
                let mut s = self.sequent(q)?;
                s.push(Formula::Bottom);
                Ok(s)
            }
            Tree::Par(q) => {
                let s = self.sequent(q)?;
                if s.len() < 2 {
                    return Err(fail(ProofErrorKind::TooFewFormulas {
                        needed: 2,
                        found: s.len(),
                    }));
                }
                let (s, b) = split_last(s)?;
                let (mut s, a) = split_last(s)?;
                s.push(Formula::par(a, b));
                Ok(s)
            }
            Tree::Ex(q, i, j) => {
                let mut s = self.sequent(q)?;
                let len = s.len();
                if let Some(&index) = [*i, *j].iter().find(|&&k| k >= len) {
                    return Err(fail(ProofErrorKind::PositionOutOfRange { index, len }));
                }
                s.swap(*i, *j);
                Ok(s)
            }
            Tree::Tensor(l, r) => {
                let (delta, a) = split_last(self.sequent(l)?)?;
                let (gamma, b) = split_last(self.sequent(r)?)?;
                let mut left = delta.clone();
                left.push(a.clone());
                let mut right = gamma.clone();
                right.push(b.clone());
                disjoint(&left, &right)?;
                let mut s = delta;
                s.extend(gamma);
                s.push(Formula::tensor(a, b));
                Ok(s)
            }
            Tree::Cut(l, r) => {
                let (delta, a) = split_last(self.sequent(l)?)?;
                let (gamma, b) = split_last(self.sequent(r)?)?;
                if a.dual() != b {
                    return Err(fail(ProofErrorKind::NotDual { left: a, right: b }));
                }
                disjoint(&delta, &gamma)?;
                let mut s = delta;
                s.extend(gamma);
                Ok(s)
            }
            Tree::Mix(l, r) => {
                let mut s = self.sequent(l)?;
                let gamma = self.sequent(r)?;
                disjoint(&s, &gamma)?;
                s.extend(gamma);
                Ok(s)
            }
        }
    }
}

/// Checks rule shapes, location side conditions and linearity, returning
/// the conclusion.
pub fn check_proof(p: &Proof, basis: &Basis) -> Result<Sequent, ProofError> {
    let mut checker = Checker {
        basis,
        located: true,
        next: 0,
        used: BTreeSet::new(),
    };
    checker.sequent(p).map(Sequent)
}

/// The conclusion of an unlocated proof, every position being 0.
pub fn mll_conclusion(p: &MllProof) -> Result<Sequent, ProofError> {
    let erased = p
        .try_map_axioms::<_, std::convert::Infallible>(&mut |name| {
            Ok(LocAxiom::new(name.clone(), 0, 0))
        })
        .unwrap_or_else(|e| match e {});
    let mut checker = Checker {
        basis: &Basis::default(),
        located: false,
        next: 0,
        used: BTreeSet::new(),
    };
    checker.sequent(&erased).map(Sequent)
}
