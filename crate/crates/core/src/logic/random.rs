//! Random located proofs, cuts included.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::formula::{Atom, Basis, Formula};
use super::proof::Proof;

/// Parameters for [`random_proof`].
#[derive(Clone, Debug)]
pub struct ProofShape {
    /// Upper bound on rules, exchanges not counted.
    pub max_rules: usize,
    pub depth: usize,
    /// Variable names and their sizes.
    pub sizes: BTreeMap<String, u64>,
}

impl Default for ProofShape {
    fn default() -> Self {
        Self {
            max_rules: 12,
            depth: 3,
            sizes: [("X1".to_string(), 1), ("X2".to_string(), 2)].into(),
        }
    }
}

struct Gen<'r, R> {
    rng: &'r mut R,
    names: Vec<String>,
    next: BTreeMap<String, u64>,
}

/// Swaps position `i` into `target`.
fn exchange(p: Proof, s: &mut [Formula], i: usize, target: usize) -> Proof {
    if i == target {
        return p;
    }
    s.swap(i, target);
    Proof::ex(p, i, target)
}

impl<R: Rng> Gen<'_, R> {
    fn fresh(&mut self, name: &str) -> u64 {
        let n = self.next.entry(name.to_string()).or_insert(0);
        *n += 1;
        *n - 1
    }

    fn axiom(&mut self) -> (Proof, Vec<Formula>) {
        let name = self
            .names
            .choose(self.rng)
            .expect("at least one name")
            .clone();
        let (pos, neg) = (self.fresh(&name), self.fresh(&name));
        let s = vec![
            Formula::Var(Atom::new(name.clone(), pos)),
            Formula::NegVar(Atom::new(name.clone(), neg)),
        ];
        let p = Proof::ax(name, pos, neg);
        (p, s)
    }

    fn any(&mut self, depth: usize) -> (Proof, Vec<Formula>) {
        if depth == 0 {
            return if self.rng.gen_bool(0.9) {
                self.axiom()
            } else {
                (Proof::One, vec![Formula::One])
            };
        }
        match self.rng.gen_range(0..100) {
            0..=14 => self.axiom(),
            15..=17 => (Proof::One, vec![Formula::One]),
            18..=22 => {
                let (p, mut s) = self.any(depth - 1);
                s.push(Formula::Bottom);
                (Proof::bot(p), s)
            }
            23..=39 => {
                let (mut p, mut s) = self.any(depth - 1);
                if s.len() < 2 {
                    return (p, s);
                }
                let n = s.len();
                let i = self.rng.gen_range(0..n);
                p = exchange(p, &mut s, i, n - 2);
                let j = self.rng.gen_range(0..n - 1);
                let j = if j == n - 2 { n - 1 } else { j };
                p = exchange(p, &mut s, j, n - 1);
                let b = s.pop().expect("two formulas");
                let a = s.pop().expect("two formulas");
                s.push(Formula::par(a, b));
                (Proof::par(p), s)
            }
            40..=59 => {
                let (p, mut s) = self.any(depth - 1);
                let (q, mut t) = self.any(depth - 1);
                let (i, j) = (
                    self.rng.gen_range(0..s.len()),
                    self.rng.gen_range(0..t.len()),
                );
                let (n, m) = (s.len(), t.len());
                let p = exchange(p, &mut s, i, n - 1);
                let q = exchange(q, &mut t, j, m - 1);
                let a = s.pop().expect("nonempty");
                let b = t.pop().expect("nonempty");
                s.extend(t);
                s.push(Formula::tensor(a, b));
                (Proof::tensor(p, q), s)
            }
            60..=89 => {
                let (p, mut s) = self.any(depth - 1);
                let n = s.len();
                let i = self.rng.gen_range(0..n);
                let p = exchange(p, &mut s, i, n - 1);
                let a = s.pop().expect("nonempty");
                let (q, mut t) = self.goal(&a.dual());
                t.pop();
                s.extend(t);
                (Proof::cut(p, q), s)
            }
            _ => {
                let (p, mut s) = self.any(depth - 1);
                let (q, t) = self.any(depth - 1);
                s.extend(t);
                (Proof::mix(p, q), s)
            }
        }
    }

    /// A cut-free proof of `f` and fresh atoms, with `f` last.
    fn goal(&mut self, f: &Formula) -> (Proof, Vec<Formula>) {
        match f {
            Formula::Var(x) => {
                let neg = self.fresh(&x.name);
                let p = Proof::ax(x.name.clone(), x.pos, neg);
                let mut s = vec![f.clone(), Formula::NegVar(Atom::new(x.name.clone(), neg))];
                let p = exchange(p, &mut s, 0, 1);
                (p, s)
            }
            Formula::NegVar(x) => {
                let pos = self.fresh(&x.name);
                let s = vec![Formula::Var(Atom::new(x.name.clone(), pos)), f.clone()];
                (Proof::ax(x.name.clone(), pos, x.pos), s)
            }
            Formula::Tensor(a, b) => {
                let (p, mut s) = self.goal(a);
                let (q, t) = self.goal(b);
                s.pop();
                s.extend(t);
                s.pop();
                s.push(f.clone());
                (Proof::tensor(p, q), s)
            }
            Formula::Par(a, b) => {
                let (p, mut s) = self.goal(a);
                let (q, t) = self.goal(b);
                let i = s.len() - 1;
                s.extend(t);
                let n = s.len();
                let p = exchange(Proof::mix(p, q), &mut s, i, n - 2);
                s.truncate(n - 2);
                s.push(f.clone());
                (Proof::par(p), s)
            }
            Formula::One => (Proof::One, vec![Formula::One]),
            Formula::Bottom => (Proof::bot(Proof::One), vec![Formula::One, Formula::Bottom]),
        }
    }
}

/// A random checked proof within `shape`, with its basis.
pub fn random_proof<R: Rng>(rng: &mut R, shape: &ProofShape) -> (Proof, Basis) {
    let basis = Basis::new(shape.sizes.keys().map(String::as_str), &shape.sizes);
    loop {
        let mut gen = Gen {
            rng: &mut *rng,
            names: shape.sizes.keys().cloned().collect(),
            next: BTreeMap::new(),
        };
        let (p, _) = gen.any(shape.depth);
        if p.rule_count() <= shape.max_rules {
            debug_assert!(super::check_proof(&p, &basis).is_ok(), "{p}");
            return (p, basis);
        }
    }
}
