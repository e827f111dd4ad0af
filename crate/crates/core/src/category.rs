//! The bijections on natural numbers that build the *-autonomous category
//! of projects, morphisms as projects on paired carriers, and sample-based
//! checks of the category laws.
//!
//! A morphism from carrier `S` to carrier `T` is a project on
//! `{2s | s in S} ∪ {2t + 1 | t in T}`: the pair `(x, i)` is stored as
//! `2x + i` throughout.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedGraph};
use crate::project::{cut, delocate, fax, tensor, Delocation, Project};

/// A natural number tagged with a copy index.
pub type Tagged = (u64, u8);

pub fn psi0(x: u64) -> Tagged {
    (x, 0)
}

pub fn psi1(x: u64) -> Tagged {
    (x, 1)
}

/// `(x, i) -> (x, i + 1)`: copies 0, 1 to copies 1, 2.
pub fn mu((x, i): Tagged) -> Tagged {
    (x, i + 1)
}

/// Copies 0, 2 back to copies 0, 1; undefined on copy 1.
pub fn nu((x, i): Tagged) -> Option<Tagged> {
    match i {
        0 => Some((x, 0)),
        2 => Some((x, 1)),
        _ => None,
    }
}

/// The pairing `(x, i) -> 2x + i`.
pub fn phi((x, i): Tagged) -> u64 {
    debug_assert!(i < 2);
    2 * x + u64::from(i)
}

pub fn phi_inverse(n: u64) -> Tagged {
    (n / 2, (n % 2) as u8)
}

/// Swaps `(2x + 1, 0)` and `(2x, 1)`, fixes everything else.
pub fn tau((n, i): Tagged) -> Tagged {
    match (n % 2, i) {
        (1, 0) => (n - 1, 1),
        (0, 1) => (n + 1, 0),
        _ => (n, i),
    }
}

/// Exchanges `2n` and `2n + 1`.
pub fn gamma(n: u64) -> u64 {
    n ^ 1
}

/// Reassociation `A ⊗ (B ⊗ C) -> (A ⊗ B) ⊗ C` on encoded carriers.
pub fn alpha(n: u64) -> u64 {
    match n % 4 {
        0 | 2 => 2 * n,
        1 => n + 1,
        _ => (n - 1) / 2,
    }
}

pub fn alpha_inverse(m: u64) -> u64 {
    match m % 4 {
        0 => m / 2,
        2 => m - 1,
        _ => 2 * m + 1,
    }
}

/// Forgets the copy index.
pub fn pi((n, _): Tagged) -> u64 {
    n
}

/// Both unitors: `pi ∘ phi^-1`, i.e. `n -> n / 2`.
pub fn unitor(n: u64) -> u64 {
    pi(phi_inverse(n))
}

/// Embeds a carrier into its double dual.
pub fn dualizing(x: u64) -> u64 {
    4 * x
}

/// The named maps, for enumeration and reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bijection {
    Psi0,
    Psi1,
    Mu,
    Nu,
    Phi,
    Tau,
    Gamma,
    Alpha,
    Pi,
}

/// An argument or value of a [`Bijection`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Nat(u64),
    Pair(u64, u8),
}

impl Bijection {
    pub const ALL: [Bijection; 9] = [
        Bijection::Psi0,
        Bijection::Psi1,
        Bijection::Mu,
        Bijection::Nu,
        Bijection::Phi,
        Bijection::Tau,
        Bijection::Gamma,
        Bijection::Alpha,
        Bijection::Pi,
    ];

    /// `None` outside the map's domain.
    pub fn apply(self, p: Point) -> Option<Point> {
        use Point::{Nat, Pair};
        match (self, p) {
            (Bijection::Psi0, Nat(x)) => Some(Pair(x, 0)),
            (Bijection::Psi1, Nat(x)) => Some(Pair(x, 1)),
            (Bijection::Mu, Pair(x, i)) if i < 2 => Some(Pair(x, i + 1)),
            (Bijection::Nu, Pair(x, i)) => nu((x, i)).map(|(y, j)| Pair(y, j)),
            (Bijection::Phi, Pair(x, i)) if i < 2 => Some(Nat(phi((x, i)))),
            (Bijection::Tau, Pair(x, i)) if i < 2 => {
                let (y, j) = tau((x, i));
                Some(Pair(y, j))
            }
            (Bijection::Gamma, Nat(n)) => Some(Nat(gamma(n))),
            (Bijection::Alpha, Nat(n)) => Some(Nat(alpha(n))),
            (Bijection::Pi, Pair(x, _)) => Some(Nat(x)),
            _ => None,
        }
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bijection::Psi0 => "psi0",
            Bijection::Psi1 => "psi1",
            Bijection::Mu => "mu",
            Bijection::Nu => "nu",
            Bijection::Phi => "phi",
            Bijection::Tau => "tau",
            Bijection::Gamma => "gamma",
            Bijection::Alpha => "alpha",
            Bijection::Pi => "pi",
        })
    }
}

pub fn standard_bijections() -> Vec<Bijection> {
    Bijection::ALL.to_vec()
}

/// A project on the paired carrier of a source and a target.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    source: BTreeSet<u64>,
    target: BTreeSet<u64>,
    body: Project,
}

impl Morphism {
    pub fn new(source: BTreeSet<u64>, target: BTreeSet<u64>, body: Project) -> Result<Self> {
        let expected = paired_carrier(&source, &target);
        if let Some(&v) = expected.symmetric_difference(body.carrier()).next() {
            return Err(Error::carrier(
                v,
                "body carrier must pair source and target",
            ));
        }
        Ok(Self {
            source,
            target,
            body,
        })
    }

    /// The morphism realizing a bijection `source -> target` as a fax.
    pub fn from_bijection(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let d = Delocation::new(pairs.iter().map(|&(s, t)| (phi(psi0(s)), phi(psi1(t)))))?;
        Self::new(
            pairs.iter().map(|p| p.0).collect(),
            pairs.iter().map(|p| p.1).collect(),
            fax(&d)?,
        )
    }

    pub fn source(&self) -> &BTreeSet<u64> {
        &self.source
    }

    pub fn target(&self) -> &BTreeSet<u64> {
        &self.target
    }

    pub fn body(&self) -> &Project {
        &self.body
    }

    /// Same carriers and equal bodies within `tol`.
    pub fn approx_eq(&self, other: &Morphism, tol: f64) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.body.approx_eq(&other.body, tol)
    }
}

fn paired_carrier(source: &BTreeSet<u64>, target: &BTreeSet<u64>) -> BTreeSet<VertexId> {
    source
        .iter()
        .map(|&s| phi(psi0(s)))
        .chain(target.iter().map(|&t| phi(psi1(t))))
        .collect()
}

/// The fax of `(x, 0) -> (x, 1)` on `s`.
pub fn identity_morphism(s: &BTreeSet<u64>) -> Morphism {
    Morphism::from_bijection(s.iter().map(|&x| (x, x)))
        .expect("the identity pairing is a bijection")
}

/// The isomorphism `S -> f(S)` induced by an injective map on naturals.
pub fn iso_morphism(s: &BTreeSet<u64>, f: impl Fn(u64) -> u64) -> Result<Morphism> {
    Morphism::from_bijection(s.iter().map(|&x| (x, f(x))))
}

/// Moves a body vertex `2x + i` to copy `i + shift` of three, as `3x + i + shift`.
fn to_three_copies(v: VertexId, shift: u8) -> VertexId {
    let (x, i) = phi_inverse(v);
    3 * x + u64::from(i + shift)
}

/// `g ∘ f`: cut `f` against `g` moved one copy up, then fold copy 2 onto 1.
pub fn compose(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.target != g.source {
        return Err(Error::CarrierMismatch);
    }
    let lift = |m: &Morphism, shift: u8| {
        let d = Delocation::from_fn(m.body.carrier().iter().copied(), |v| {
            to_three_copies(v, shift)
        })?;
        delocate(&m.body, &d)
    };
    let reduced = cut(&lift(f, 0)?, &lift(g, 1)?)?;
    let fold = Delocation::from_fn(reduced.carrier().iter().copied(), |v| {
        let (x, i) = nu((v / 3, (v % 3) as u8)).expect("the cut consumes the middle copy");
        phi((x, i))
    })?;
    Morphism::new(
        f.source.clone(),
        g.target.clone(),
        delocate(&reduced, &fold)?,
    )
}

/// Tensor of objects: `phi(psi0(a) ⊗ psi1(b))`.
pub fn tensor_objects(a: &Project, b: &Project) -> Result<Project> {
    let left = Delocation::from_fn(a.carrier().iter().copied(), |x| phi(psi0(x)))?;
    let right = Delocation::from_fn(b.carrier().iter().copied(), |x| phi(psi1(x)))?;
    tensor(&delocate(a, &left)?, &delocate(b, &right)?)
}

/// Tensor of carriers, matching [`tensor_objects`].
pub fn tensor_carriers(a: &BTreeSet<u64>, b: &BTreeSet<u64>) -> BTreeSet<u64> {
    a.iter()
        .map(|&x| phi(psi0(x)))
        .chain(b.iter().map(|&y| phi(psi1(y))))
        .collect()
}

/// `tau(psi0(phi(f)) ⊗ psi1(phi(g)))`, with the result encoded by `phi`.
pub fn tensor_morphisms(f: &Morphism, g: &Morphism) -> Result<Morphism> {
    let place = |m: &Morphism, side: u8| {
        let d = Delocation::from_fn(m.body.carrier().iter().copied(), |v| phi(tau((v, side))))?;
        delocate(&m.body, &d)
    };
    let body = tensor(&place(f, 0)?, &place(g, 1)?)?;
    Morphism::new(
        tensor_carriers(&f.source, &g.source),
        tensor_carriers(&f.target, &g.target),
        body,
    )
}

/// Relabels both sides of a morphism through the unitor `n -> n / 2`.
pub fn apply_unitor(m: &Morphism) -> Result<Morphism> {
    let d = Delocation::from_fn(m.body.carrier().iter().copied(), |v| {
        let (n, i) = phi_inverse(v);
        phi((unitor(n), i))
    })?;
    Morphism::new(
        m.source.iter().map(|&n| unitor(n)).collect(),
        m.target.iter().map(|&n| unitor(n)).collect(),
        delocate(&m.body, &d)?,
    )
}

/// `(f ⊗ id)` on an encoded tensor carrier.
fn left_whisker(f: impl Fn(u64) -> u64, n: u64) -> u64 {
    if n.is_multiple_of(2) {
        2 * f(n / 2)
    } else {
        n
    }
}

/// `(id ⊗ f)` on an encoded tensor carrier.
fn right_whisker(f: impl Fn(u64) -> u64, n: u64) -> u64 {
    if n % 2 == 1 {
        2 * f(n / 2) + 1
    } else {
        n
    }
}

/// First point of `0..window` where the pentagon fails.
pub fn pentagon_failure(window: u64) -> Option<u64> {
    (0..window).find(|&n| {
        let direct = alpha(alpha(n));
        let around = left_whisker(alpha, alpha(right_whisker(alpha, n)));
        direct != around
    })
}

/// First point of `0..window` where the braiding hexagon fails.
pub fn hexagon_failure(window: u64) -> Option<u64> {
    (0..window).find(|&n| {
        let direct = alpha(gamma(alpha(n)));
        let around = left_whisker(gamma, alpha(right_whisker(gamma, n)));
        direct != around
    })
}

pub fn gamma_involution_failure(window: u64) -> Option<u64> {
    (0..window).find(|&n| gamma(gamma(n)) != n)
}

/// Failures collected by [`check_coherence_samples`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoherenceReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl CoherenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// A random subset of `0..bound`.
fn random_carrier(rng: &mut impl Rng, bound: u64, max_len: usize) -> BTreeSet<u64> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..bound)).collect()
}

/// A random weighted graph on `carrier` with weights in `(0, 1]`.
fn random_project(rng: &mut impl Rng, carrier: &BTreeSet<u64>) -> Project {
    let vs: Vec<_> = carrier.iter().copied().collect();
    let mut g = WeightedGraph::on(vs.iter().copied());
    if !vs.is_empty() {
        for _ in 0..rng.gen_range(0..=2 * vs.len()) {
            let (s, t) = (
                vs[rng.gen_range(0..vs.len())],
                vs[rng.gen_range(0..vs.len())],
            );
            g.add_edge(s, t, rng.gen_range(0.05..=1.0))
                .expect("endpoints are in the carrier");
        }
    }
    Project::new(rng.gen_range(0.0..1.0), g).expect("wager is finite")
}

/// A fax morphism realizing a random bijection from `source`.
fn random_fax_morphism(rng: &mut impl Rng, source: &BTreeSet<u64>, bound: u64) -> Morphism {
    let mut pool: Vec<u64> = (0..bound).collect();
    pool.shuffle(rng);
    Morphism::from_bijection(source.iter().copied().zip(pool))
        .expect("shuffled targets are distinct")
}

/// Runs every sample-based law check with the given seed on `0..window`.
pub fn check_coherence_samples(seed: u64, window: u64, samples: usize) -> CoherenceReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CoherenceReport::default();

    report.record(gamma_involution_failure(window).is_none(), || {
        format!(
            "gamma is not an involution at {:?}",
            gamma_involution_failure(window)
        )
    });
    report.record(pentagon_failure(window).is_none(), || {
        format!("pentagon fails at {:?}", pentagon_failure(window))
    });
    report.record(hexagon_failure(window).is_none(), || {
        format!("hexagon fails at {:?}", hexagon_failure(window))
    });
    report.record((0..window).all(|n| alpha_inverse(alpha(n)) == n), || {
        "alpha_inverse does not invert alpha".into()
    });

    for sample in 0..samples {
        let (a, b, c) = (
            random_carrier(&mut rng, 32, 5),
            random_carrier(&mut rng, 32, 5),
            random_carrier(&mut rng, 32, 5),
        );
        let (pa, pb, pc) = (
            random_project(&mut rng, &a),
            random_project(&mut rng, &b),
            random_project(&mut rng, &c),
        );
        sample_associator(&mut report, sample, &pa, &pb, &pc);
        sample_dualizing(&mut report, sample, &a);
        sample_unitors(&mut report, sample, &pa);
        sample_composition(&mut rng, &mut report, sample, &a);
        sample_symmetry(&mut report, sample, &a, &b);
    }
    report
}

fn sample_associator(
    report: &mut CoherenceReport,
    sample: usize,
    a: &Project,
    b: &Project,
    c: &Project,
) {
    let right = tensor_objects(a, &tensor_objects(b, c).expect("phi separates factors"))
        .expect("phi separates factors");
    let left = tensor_objects(&tensor_objects(a, b).expect("phi separates factors"), c)
        .expect("phi separates factors");
    let moved = Delocation::from_fn(right.carrier().iter().copied(), alpha)
        .and_then(|d| delocate(&right, &d));
    report.record(moved.is_ok_and(|m| m.approx_eq(&left, 0.0)), || {
        format!("sample {sample}: alpha does not reassociate the tensor")
    });
}

fn sample_dualizing(report: &mut CoherenceReport, sample: usize, a: &BTreeSet<u64>) {
    // The dual of the unit has the empty carrier, so the linear map into it
    // lives on the source side only.
    let bottom = BTreeSet::new();
    let double_dual = paired_carrier(&paired_carrier(a, &bottom), &bottom);
    let image: BTreeSet<_> = a.iter().map(|&x| dualizing(x)).collect();
    report.record(image.len() == a.len() && image == double_dual, || {
        format!("sample {sample}: x -> 4x does not reach the double dual of {a:?}")
    });
}

fn sample_unitors(report: &mut CoherenceReport, sample: usize, a: &Project) {
    let unit = Project::unit();
    for (side, t) in [
        ("left", tensor_objects(&unit, a)),
        ("right", tensor_objects(a, &unit)),
    ] {
        let back = t.and_then(|t| {
            let d = Delocation::from_fn(t.carrier().iter().copied(), unitor)?;
            delocate(&t, &d)
        });
        report.record(back.is_ok_and(|b| b.approx_eq(a, 0.0)), || {
            format!("sample {sample}: {side} unitor round trip changes the project")
        });
    }
}

fn sample_composition(
    rng: &mut ChaCha8Rng,
    report: &mut CoherenceReport,
    sample: usize,
    a: &BTreeSet<u64>,
) {
    let f = random_fax_morphism(rng, a, 32);
    let g = random_fax_morphism(rng, f.target(), 32);
    let h = random_fax_morphism(rng, g.target(), 32);

    let left_id = compose(&f, &identity_morphism(f.target()));
    let right_id = compose(&identity_morphism(f.source()), &f);
    report.record(left_id.is_ok_and(|m| m.approx_eq(&f, 0.0)), || {
        format!("sample {sample}: id ∘ f differs from f")
    });
    report.record(right_id.is_ok_and(|m| m.approx_eq(&f, 0.0)), || {
        format!("sample {sample}: f ∘ id differs from f")
    });

    let outer = compose(&f, &g).and_then(|gf| compose(&gf, &h));
    let inner = compose(&g, &h).and_then(|hg| compose(&f, &hg));
    let same = matches!((&outer, &inner), (Ok(x), Ok(y)) if x.approx_eq(y, 0.0));
    report.record(same, || {
        format!("sample {sample}: composition is not associative")
    });

    let fi = tensor_morphisms(&identity_morphism(a), &identity_morphism(f.target()));
    let expected = identity_morphism(&tensor_carriers(a, f.target()));
    report.record(fi.is_ok_and(|m| m.approx_eq(&expected, 0.0)), || {
        format!("sample {sample}: tensor of identities is not the identity")
    });

    let empty = identity_morphism(&BTreeSet::new());
    for (side, t) in [
        ("right", tensor_morphisms(&f, &empty)),
        ("left", tensor_morphisms(&empty, &f)),
    ] {
        let back = t.and_then(|t| apply_unitor(&t));
        report.record(back.is_ok_and(|m| m.approx_eq(&f, 0.0)), || {
            format!("sample {sample}: {side} unit tensor does not unfold to f")
        });
    }
}

fn sample_symmetry(
    report: &mut CoherenceReport,
    sample: usize,
    a: &BTreeSet<u64>,
    b: &BTreeSet<u64>,
) {
    let ab = tensor_carriers(a, b);
    let ok = iso_morphism(&ab, gamma).and_then(|swap| {
        let back = iso_morphism(swap.target(), gamma)?;
        compose(&swap, &back)
    });
    report.record(
        ok.is_ok_and(|m| m.approx_eq(&identity_morphism(&ab), 0.0)),
        || format!("sample {sample}: the symmetry is not its own inverse"),
    );
}
