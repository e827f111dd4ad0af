//! Located formulas, variable sizes and the pairing that flattens
//! locations into natural numbers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ProofErrorKind;
use crate::graph::VertexId;
use crate::project::Project;

/// `(n, m) -> 2^n (2m + 1) - 1`, a bijection between pairs and naturals.
/// `None` on overflow.
pub fn delta(n: u64, m: u64) -> Option<u64> {
    let odd = m.checked_mul(2)?.checked_add(1)?;
    let shift = u32::try_from(n).ok()?;
    let scaled = odd.checked_mul(1u64.checked_shl(shift)?)?;
    // Reject shifts that lost high bits.
    (scaled >> shift == odd).then_some(scaled - 1)
}

pub fn delta_inverse(v: u64) -> (u64, u64) {
    let w = v + 1;
    let n = u64::from(w.trailing_zeros());
    (n, (w >> n) / 2)
}

/// A localized variable `X(j)`: a name and a position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub name: String,
    pub pos: u64,
}

impl Atom {
    pub fn new(name: impl Into<String>, pos: u64) -> Self {
        Self {
            name: name.into(),
            pos,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.pos)
    }
}

/// Formulas with negation pushed to the atoms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(Atom),
    NegVar(Atom),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    One,
    Bottom,
}

impl Formula {
    pub fn tensor(a: Formula, b: Formula) -> Self {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Self {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// Linear negation, by De Morgan.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Var(a) => Formula::NegVar(a.clone()),
            Formula::NegVar(a) => Formula::Var(a.clone()),
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            Formula::One => Formula::Bottom,
            Formula::Bottom => Formula::One,
        }
    }

    /// Number of connectives and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Atom occurrences, left to right, with their polarity (`true` = positive).
    pub fn atoms(&self) -> Vec<(&Atom, bool)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<(&'a Atom, bool)>) {
        match self {
            Formula::Var(a) => out.push((a, true)),
            Formula::NegVar(a) => out.push((a, false)),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            Formula::One | Formula::Bottom => {}
        }
    }

    /// Replaces every occurrence of `from` by `to`.
    pub(crate) fn replace(&self, from: &Formula, to: &Formula) -> Formula {
        if self == from {
            return to.clone();
        }
        match self {
            Formula::Tensor(a, b) => Formula::tensor(a.replace(from, to), b.replace(from, to)),
            Formula::Par(a, b) => Formula::par(a.replace(from, to), b.replace(from, to)),
            other => other.clone(),
        }
    }

    fn fmt_nested(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Formula::Var(a) => write!(f, "{a}"),
            Formula::NegVar(a) => write!(f, "{a}^⊥"),
            Formula::One => f.write_str("1"),
            Formula::Bottom => f.write_str("⊥"),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                let op = if matches!(self, Formula::Tensor(..)) {
                    "⊗"
                } else {
                    "⅋"
                };
                if !top {
                    f.write_str("(")?;
                }
                a.fmt_nested(f, false)?;
                write!(f, " {op} ")?;
                b.fmt_nested(f, false)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_nested(f, true)
    }
}

/// An ordered list of formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn atoms(&self) -> Vec<(&Atom, bool)> {
        self.0.iter().flat_map(Formula::atoms).collect()
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⊢")?;
        for (i, a) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Index, size and optional test projects of one variable name.
#[derive(Clone, Debug, PartialEq)]
pub struct VarInfo {
    pub index: u64,
    pub size: u64,
    /// Projects on `{0, .., size - 1}` used to probe interpretations.
    pub tests: Vec<Project>,
}

/// Sizes and indices for variable names.
///
/// A name `X<digits>` gets the index given by its digits; other names are
/// numbered after the largest such index, in sorted order. Undeclared
/// sizes default to 1.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Basis {
    vars: BTreeMap<String, VarInfo>,
}

fn numeric_index(name: &str) -> Option<u64> {
    let digits = name.strip_prefix('X')?;
    let canonical = !digits.is_empty()
        && digits.bytes().all(|b| b.is_ascii_digit())
        && (digits == "0" || !digits.starts_with('0'));
    canonical.then(|| digits.parse().ok()).flatten()
}

impl Basis {
    /// Indexes `names`, taking sizes from `sizes` where given.
    pub fn new<'a>(
        names: impl IntoIterator<Item = &'a str>,
        sizes: &BTreeMap<String, u64>,
    ) -> Self {
        let all: BTreeSet<String> = names
            .into_iter()
            .map(str::to_string)
            .chain(sizes.keys().cloned())
            .collect();
        let mut next = all
            .iter()
            .filter_map(|n| numeric_index(n))
            .max()
            .map_or(0, |m| m + 1);
        let mut vars = BTreeMap::new();
        for name in &all {
            let index = numeric_index(name).unwrap_or_else(|| {
                next += 1;
                next - 1
            });
            vars.insert(
                name.to_string(),
                VarInfo {
                    index,
                    size: sizes.get(name.as_str()).copied().unwrap_or(1),
                    tests: Vec::new(),
                },
            );
        }
        Self { vars }
    }

    /// Indexes the names occurring in `formulas` with default sizes.
    pub fn for_sequent(s: &Sequent) -> Self {
        let names: BTreeSet<&str> = s
            .atoms()
            .into_iter()
            .map(|(a, _)| a.name.as_str())
            .collect();
        Self::new(names, &BTreeMap::new())
    }

    pub fn get(&self, name: &str) -> Option<&VarInfo> {
        self.vars.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = (&str, &VarInfo)> {
        self.vars.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Attaches test projects to a name. Each must live on `{0, .., size - 1}`.
    pub fn set_tests(&mut self, name: &str, tests: Vec<Project>) -> Result<(), ProofErrorKind> {
        let info = self
            .vars
            .get_mut(name)
            .ok_or_else(|| ProofErrorKind::UnknownVariable(name.to_string()))?;
        let expected: BTreeSet<VertexId> = (0..info.size).collect();
        if tests.iter().any(|t| t.carrier() != &expected) {
            return Err(ProofErrorKind::BadTestCarrier(name.to_string()));
        }
        info.tests = tests;
        Ok(())
    }

    fn info(&self, name: &str) -> Result<&VarInfo, ProofErrorKind> {
        self.get(name)
            .ok_or_else(|| ProofErrorKind::UnknownVariable(name.to_string()))
    }

    /// The vertex of layer `x` of atom `a`: `delta(i, pos * size + x)`.
    pub fn vertex(&self, a: &Atom, x: u64) -> Result<VertexId, ProofErrorKind> {
        let info = self.info(&a.name)?;
        a.pos
            .checked_mul(info.size)
            .and_then(|base| base.checked_add(x))
            .and_then(|m| delta(info.index, m))
            .ok_or_else(|| ProofErrorKind::LocationOverflow(a.to_string()))
    }

    pub fn size_of(&self, name: &str) -> Result<u64, ProofErrorKind> {
        Ok(self.info(name)?.size)
    }

    /// Location of an atom: its `size` consecutive layers.
    pub fn atom_location(&self, a: &Atom) -> Result<BTreeSet<VertexId>, ProofErrorKind> {
        (0..self.size_of(&a.name)?)
            .map(|x| self.vertex(a, x))
            .collect()
    }

    /// Union of the atom locations; empty for units.
    pub fn location(&self, f: &Formula) -> Result<BTreeSet<VertexId>, ProofErrorKind> {
        let mut out = BTreeSet::new();
        for (a, _) in f.atoms() {
            out.extend(self.atom_location(a)?);
        }
        Ok(out)
    }
}
