//! Cut elimination.
//!
//! Proofs are converted to derivations that name their principal formulas
//! instead of relying on positions, normalized innermost cut first, and
//! printed back with the exchanges needed to restore the original
//! conclusion order.

use super::formula::{Basis, Formula};
use super::interpret::axiom_project;
use super::proof::{check_proof, LocAxiom, Proof, Tree};
use crate::error::Result;
use crate::graph::graph_equal;
use crate::project::{cut, tensor, Project};

#[derive(Clone, Debug)]
enum Deriv {
    /// `⊢ X(pos), X(neg)^⊥`
    Ax(LocAxiom),
    One,
    Bot(Box<Deriv>),
    Par(Box<Deriv>, Formula, Formula),
    Tensor(Box<Deriv>, Box<Deriv>, Formula, Formula),
    /// The formula belongs to the left premise, its dual to the right one.
    Cut(Box<Deriv>, Box<Deriv>, Formula),
    Mix(Box<Deriv>, Box<Deriv>),
}

fn remove_one(s: &mut Vec<Formula>, f: &Formula) {
    let i = s.iter().position(|g| g == f).expect("formula present");
    s.remove(i);
}

impl Deriv {
    fn conclusion(&self) -> Vec<Formula> {
        match self {
            Deriv::Ax(a) => vec![Formula::Var(a.positive()), Formula::NegVar(a.negative())],
            Deriv::One => vec![Formula::One],
            Deriv::Bot(p) => {
                let mut s = p.conclusion();
                s.push(Formula::Bottom);
                s
            }
            Deriv::Par(p, a, b) => {
                let mut s = p.conclusion();
                remove_one(&mut s, a);
                remove_one(&mut s, b);
                s.push(Formula::par(a.clone(), b.clone()));
                s
            }
            Deriv::Tensor(l, r, a, b) => {
                let mut s = l.conclusion();
                remove_one(&mut s, a);
                let mut t = r.conclusion();
                remove_one(&mut t, b);
                s.extend(t);
                s.push(Formula::tensor(a.clone(), b.clone()));
                s
            }
            Deriv::Cut(l, r, a) => {
                let mut s = l.conclusion();
                remove_one(&mut s, a);
                let mut t = r.conclusion();
                remove_one(&mut t, &a.dual());
                s.extend(t);
                s
            }
            Deriv::Mix(l, r) => {
                let mut s = l.conclusion();
                s.extend(r.conclusion());
                s
            }
        }
    }

    fn contains(&self, f: &Formula) -> bool {
        self.conclusion().contains(f)
    }

    fn is_principal(&self, f: &Formula) -> bool {
        match (self, f) {
            (Deriv::One, Formula::One) | (Deriv::Bot(_), Formula::Bottom) => true,
            (Deriv::Par(_, a, b), Formula::Par(x, y)) => a == &**x && b == &**y,
            (Deriv::Tensor(_, _, a, b), Formula::Tensor(x, y)) => a == &**x && b == &**y,
            _ => false,
        }
    }

    /// Replaces the literal `from` (an atom occurrence) by `to` everywhere.
    fn rename(&self, from: &Formula, to: &Formula) -> Deriv {
        let bx = Box::new;
        let f = |x: &Formula| x.replace(from, to);
        match self {
            Deriv::Ax(a) => {
                let mut a = a.clone();
                match (from, to) {
                    (Formula::Var(x), Formula::Var(y)) if *x == a.positive() => a.pos = y.pos,
                    (Formula::NegVar(x), Formula::NegVar(y)) if *x == a.negative() => a.neg = y.pos,
                    _ => {}
                }
                Deriv::Ax(a)
            }
            Deriv::One => Deriv::One,
            Deriv::Bot(p) => Deriv::Bot(bx(p.rename(from, to))),
            Deriv::Par(p, a, b) => Deriv::Par(bx(p.rename(from, to)), f(a), f(b)),
            Deriv::Tensor(l, r, a, b) => {
                Deriv::Tensor(bx(l.rename(from, to)), bx(r.rename(from, to)), f(a), f(b))
            }
            Deriv::Cut(l, r, a) => Deriv::Cut(bx(l.rename(from, to)), bx(r.rename(from, to)), f(a)),
            Deriv::Mix(l, r) => Deriv::Mix(bx(l.rename(from, to)), bx(r.rename(from, to))),
        }
    }

    fn project(&self, basis: &Basis) -> Result<Project> {
        match self {
            Deriv::Ax(a) => axiom_project(a, basis),
            Deriv::One => Ok(Project::unit()),
            Deriv::Bot(p) | Deriv::Par(p, ..) => p.project(basis),
            Deriv::Tensor(l, r, ..) | Deriv::Mix(l, r) => {
                tensor(&l.project(basis)?, &r.project(basis)?)
            }
            Deriv::Cut(l, r, _) => cut(&l.project(basis)?, &r.project(basis)?),
        }
    }
}

fn from_proof(p: &Proof) -> (Deriv, Vec<Formula>) {
    let bx = Box::new;
    match p {
        Tree::Ax(a) => {
            let d = Deriv::Ax(a.clone());
            let s = d.conclusion();
            (d, s)
        }
        Tree::One => (Deriv::One, vec![Formula::One]),
        Tree::Bot(q) => {
            let (d, mut s) = from_proof(q);
            s.push(Formula::Bottom);
            (Deriv::Bot(bx(d)), s)
        }
        Tree::Par(q) => {
            let (d, mut s) = from_proof(q);
            let b = s.pop().expect("checked proof");
            let a = s.pop().expect("checked proof");
            s.push(Formula::par(a.clone(), b.clone()));
            (Deriv::Par(bx(d), a, b), s)
        }
        Tree::Ex(q, i, j) => {
            let (d, mut s) = from_proof(q);
            s.swap(*i, *j);
            (d, s)
        }
        Tree::Tensor(l, r) => {
            let (dl, mut s) = from_proof(l);
            let (dr, mut t) = from_proof(r);
            let a = s.pop().expect("checked proof");
            let b = t.pop().expect("checked proof");
            s.extend(t);
            s.push(Formula::tensor(a.clone(), b.clone()));
            (Deriv::Tensor(bx(dl), bx(dr), a, b), s)
        }
        Tree::Cut(l, r) => {
            let (dl, mut s) = from_proof(l);
            let (dr, mut t) = from_proof(r);
            let a = s.pop().expect("checked proof");
            t.pop();
            s.extend(t);
            (Deriv::Cut(bx(dl), bx(dr), a), s)
        }
        Tree::Mix(l, r) => {
            let (dl, mut s) = from_proof(l);
            let (dr, t) = from_proof(r);
            s.extend(t);
            (Deriv::Mix(bx(dl), bx(dr)), s)
        }
    }
}

/// Swaps an occurrence of `f` at or after `from`, and not at `skip`, into
/// `target`.
fn move_to(
    p: Proof,
    s: &mut [Formula],
    f: &Formula,
    target: usize,
    from: usize,
    skip: Option<usize>,
) -> Proof {
    let i = (from..s.len())
        .find(|&i| Some(i) != skip && s[i] == *f)
        .expect("formula present");
    if i == target {
        return p;
    }
    s.swap(i, target);
    Proof::ex(p, i, target)
}

fn to_proof(d: &Deriv) -> (Proof, Vec<Formula>) {
    match d {
        Deriv::Ax(a) => (Tree::Ax(a.clone()), d.conclusion()),
        Deriv::One => (Proof::One, vec![Formula::One]),
        Deriv::Bot(p) => {
            let (q, mut s) = to_proof(p);
            s.push(Formula::Bottom);
            (Proof::bot(q), s)
        }
        Deriv::Par(p, a, b) => {
            let (q, mut s) = to_proof(p);
            let n = s.len();
            let q = move_to(q, &mut s, a, n - 2, 0, None);
            let q = move_to(q, &mut s, b, n - 1, 0, Some(n - 2));
            s.truncate(n - 2);
            s.push(Formula::par(a.clone(), b.clone()));
            (Proof::par(q), s)
        }
        Deriv::Tensor(l, r, a, b) => {
            let (ql, mut s) = to_proof(l);
            let (qr, mut t) = to_proof(r);
            let (n, m) = (s.len(), t.len());
            let ql = move_to(ql, &mut s, a, n - 1, 0, None);
            let qr = move_to(qr, &mut t, b, m - 1, 0, None);
            s.pop();
            t.pop();
            s.extend(t);
            s.push(Formula::tensor(a.clone(), b.clone()));
            (Proof::tensor(ql, qr), s)
        }
        Deriv::Cut(l, r, a) => {
            let (ql, mut s) = to_proof(l);
            let (qr, mut t) = to_proof(r);
            let (n, m) = (s.len(), t.len());
            let ql = move_to(ql, &mut s, a, n - 1, 0, None);
            let qr = move_to(qr, &mut t, &a.dual(), m - 1, 0, None);
            s.pop();
            t.pop();
            s.extend(t);
            (Proof::cut(ql, qr), s)
        }
        Deriv::Mix(l, r) => {
            let (ql, mut s) = to_proof(l);
            let (qr, t) = to_proof(r);
            s.extend(t);
            (Proof::mix(ql, qr), s)
        }
    }
}

struct Normalizer<'a> {
    /// When set, every rewrite is checked against the interpretation.
    basis: Option<&'a Basis>,
    rewrites: usize,
    mismatches: Vec<String>,
}

impl Normalizer<'_> {
    fn normalize(&mut self, d: Deriv) -> Deriv {
        let bx = Box::new;
        match d {
            Deriv::Ax(_) | Deriv::One => d,
            Deriv::Bot(p) => Deriv::Bot(bx(self.normalize(*p))),
            Deriv::Par(p, a, b) => Deriv::Par(bx(self.normalize(*p)), a, b),
            Deriv::Tensor(l, r, a, b) => {
                Deriv::Tensor(bx(self.normalize(*l)), bx(self.normalize(*r)), a, b)
            }
            Deriv::Mix(l, r) => Deriv::Mix(bx(self.normalize(*l)), bx(self.normalize(*r))),
            Deriv::Cut(l, r, a) => {
                let l = self.normalize(*l);
                let r = self.normalize(*r);
                self.eliminate(l, r, a)
            }
        }
    }

    /// Removes a cut between cut-free derivations.
    fn eliminate(&mut self, l: Deriv, r: Deriv, a: Formula) -> Deriv {
        self.rewrites += 1;
        let before = self
            .basis
            .map(|_| Deriv::Cut(Box::new(l.clone()), Box::new(r.clone()), a.clone()));
        let out = self.step(l, r, a);
        if let (Some(basis), Some(before)) = (self.basis, before) {
            let same = match (before.project(basis), out.project(basis)) {
                (Ok(x), Ok(y)) => x.wager() == y.wager() && graph_equal(x.graph(), y.graph(), 0.0),
                _ => false,
            };
            if !same {
                self.mismatches.push(format!(
                    "rewrite {} changed the interpretation",
                    self.rewrites
                ));
            }
        }
        out
    }

    fn step(&mut self, l: Deriv, r: Deriv, a: Formula) -> Deriv {
        let dual = a.dual();
        if let Deriv::Ax(ax) = &l {
            // The other atom of the axiom replaces the dual in `r`.
            return if a == Formula::Var(ax.positive()) {
                r.rename(&dual, &Formula::NegVar(ax.negative()))
            } else {
                r.rename(&dual, &Formula::Var(ax.positive()))
            };
        }
        if let Deriv::Ax(ax) = &r {
            return if dual == Formula::Var(ax.positive()) {
                l.rename(&a, &Formula::NegVar(ax.negative()))
            } else {
                l.rename(&a, &Formula::Var(ax.positive()))
            };
        }
        if !l.is_principal(&a) {
            return self.commute(l, &a, &mut |s, sub| s.eliminate(sub, r.clone(), a.clone()));
        }
        if !r.is_principal(&dual) {
            return self.commute(r, &dual, &mut |s, sub| {
                s.eliminate(l.clone(), sub, a.clone())
            });
        }
        match (l, r) {
            (Deriv::One, Deriv::Bot(p)) | (Deriv::Bot(p), Deriv::One) => *p,
            (Deriv::Tensor(l1, l2, x, y), Deriv::Par(p, ..)) => {
                let inner = self.eliminate(*l1, *p, x);
                self.eliminate(*l2, inner, y)
            }
            (Deriv::Par(p, x, y), Deriv::Tensor(r1, r2, ..)) => {
                let inner = self.eliminate(*p, *r1, x);
                self.eliminate(inner, *r2, y)
            }
            (l, r) => unreachable!("no key case for {l:?} against {r:?}"),
        }
    }

    /// Pushes the cut into the premise of `d` that holds `f`.
    fn commute(
        &mut self,
        d: Deriv,
        f: &Formula,
        k: &mut dyn FnMut(&mut Self, Deriv) -> Deriv,
    ) -> Deriv {
        let bx = Box::new;
        match d {
            Deriv::Bot(p) => Deriv::Bot(bx(k(self, *p))),
            Deriv::Par(p, a, b) => Deriv::Par(bx(k(self, *p)), a, b),
            Deriv::Tensor(l, r, a, b) => {
                let in_left = l.conclusion().iter().filter(|g| *g == f).count();
                if in_left > usize::from(a == *f) {
                    Deriv::Tensor(bx(k(self, *l)), r, a, b)
                } else {
                    Deriv::Tensor(l, bx(k(self, *r)), a, b)
                }
            }
            Deriv::Mix(l, r) => {
                if l.contains(f) {
                    Deriv::Mix(bx(k(self, *l)), r)
                } else {
                    Deriv::Mix(l, bx(k(self, *r)))
                }
            }
            other => unreachable!("cannot commute a cut into {other:?}"),
        }
    }
}

/// A cut-free proof with the same conclusion.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub proof: Proof,
    /// Number of elementary cut rewrites performed.
    pub rewrites: usize,
    /// Rewrites after which the interpretation changed; only filled by
    /// [`eliminate_cuts_checked`].
    pub mismatches: Vec<String>,
}

fn run(p: &Proof, basis: &Basis, checked: bool) -> Result<Normalization> {
    let goal = check_proof(p, basis)?.0;
    let (d, _) = from_proof(p);
    let mut n = Normalizer {
        basis: checked.then_some(basis),
        rewrites: 0,
        mismatches: Vec::new(),
    };
    let d = n.normalize(d);
    let (mut proof, mut s) = to_proof(&d);
    for (k, f) in goal.iter().enumerate() {
        proof = move_to(proof, &mut s, f, k, k, None);
    }
    Ok(Normalization {
        proof,
        rewrites: n.rewrites,
        mismatches: n.mismatches,
    })
}

pub fn eliminate_cuts(p: &Proof, basis: &Basis) -> Result<Normalization> {
    run(p, basis, false)
}

/// As [`eliminate_cuts`], also comparing the interpretation of every cut
/// with that of its rewrite.
pub fn eliminate_cuts_checked(p: &Proof, basis: &Basis) -> Result<Normalization> {
    run(p, basis, true)
}
