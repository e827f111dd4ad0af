//! Seeded randomized verification suites and the worked examples they
//! start from.
//!
//! Every trial draws from its own generator, seeded from the master seed
//! and the trial index, so reports do not depend on scheduling.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::category::{check_coherence_samples, hexagon_failure, pentagon_failure};
use crate::error::Error;
use crate::graph::{
    graph_equal, one_circuits, plug, reduce, simplify, union, AlternationAnalysis, SimpleGraph,
    VertexId, WeightedGraph,
};
use crate::logic::{
    check_proof, eliminate_cuts_checked, interpret, parse_proof, random_proof, switching_tests,
    Basis, Proof, ProofShape,
};
use crate::matrix::{
    adjacency_matrix, check_matrix_adjunction, feedback_blocks, feedback_solve, is_operator_graph,
    log_det_one_minus, operator_norm, spectral_radius, trace_series_partial,
};
use crate::measure::{
    check_adjunction, check_simplify_invariance, measure_exact, measure_truncated,
};
use crate::project::{cut, interaction, orthogonal, raw_interaction, tensor, Project};
use crate::truth::{is_successful, is_transposition_union, split_successful_tensor, Split};

/// The 4-cycle `1 -> 2 -> 4 -> 3 -> 1`, loops on 1 and 2, and the 2-cycle
/// between 1 and 2, all with weight 1.
pub fn worked_graphs() -> (WeightedGraph, WeightedGraph, WeightedGraph) {
    let f = WeightedGraph::new(
        [1, 2, 3, 4],
        [(1, 2, 1.0), (2, 4, 1.0), (4, 3, 1.0), (3, 1, 1.0)],
    )
    .expect("valid graph");
    let g = WeightedGraph::new([1, 2], [(1, 1, 1.0), (2, 2, 1.0)]).expect("valid graph");
    let h = WeightedGraph::new([1, 2], [(1, 2, 1.0), (2, 1, 1.0)]).expect("valid graph");
    (f, g, h)
}

/// Two parallel edges `1 -> 2` and two parallel edges `2 -> 3`.
pub fn parallel_edges(x: [f64; 2], y: [f64; 2]) -> (WeightedGraph, WeightedGraph) {
    let a = WeightedGraph::new([1, 2], [(1, 2, x[0]), (1, 2, x[1])]).expect("valid weights");
    let b = WeightedGraph::new([2, 3], [(2, 3, y[0]), (2, 3, y[1])]).expect("valid weights");
    (a, b)
}

/// A proof with an axiom cut, a tensor and a par, concluding
/// `⊢ X1(23)^⊥ ⅋ X2(12)^⊥, X1(3) ⊗ X2(7)`.
pub const SAMPLE_PROOF: &str = "\
(ex
  (par
    (ex
      (ex
        (tensor
          (ex (cut (ax X1 3 97) (ex (ax X1 97 23) 0 1)) 0 1)
          (ex (ax X2 7 12) 0 1))
        0 2)
      1 2))
  0 1)
";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Adjunction,
    Circuits,
    Routes,
    Invariance,
    Feedback,
    MatrixAdjunction,
    Assoc,
    Category,
    Truth,
    Soundness,
    Examples,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Adjunction,
        Suite::Circuits,
        Suite::Routes,
        Suite::Invariance,
        Suite::Feedback,
        Suite::MatrixAdjunction,
        Suite::Assoc,
        Suite::Category,
        Suite::Truth,
        Suite::Soundness,
        Suite::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjunction => "adjunction",
            Suite::Circuits => "circuits",
            Suite::Routes => "routes",
            Suite::Invariance => "invariance",
            Suite::Feedback => "feedback",
            Suite::MatrixAdjunction => "matrix-adjunction",
            Suite::Assoc => "assoc",
            Suite::Category => "category",
            Suite::Truth => "truth",
            Suite::Soundness => "soundness",
            Suite::Examples => "examples",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Adjunction | Suite::MatrixAdjunction => 1000,
            Suite::Circuits | Suite::Routes | Suite::Invariance => 500,
            Suite::Feedback => 200,
            Suite::Assoc | Suite::Truth => 300,
            Suite::Category => 20,
            // Trial 0 checks the sample proof, the others random proofs.
            Suite::Soundness => 101,
            Suite::Examples => 100,
        }
    }

    fn trial(self) -> fn(&mut ChaCha8Rng, &VerifyOptions, usize) -> Result<(), String> {
        match self {
            Suite::Adjunction => adjunction_trial,
            Suite::Circuits => circuits_trial,
            Suite::Routes => routes_trial,
            Suite::Invariance => invariance_trial,
            Suite::Feedback => feedback_trial,
            Suite::MatrixAdjunction => matrix_adjunction_trial,
            Suite::Assoc => assoc_trial,
            Suite::Category => category_trial,
            Suite::Truth => truth_trial,
            Suite::Soundness => soundness_trial,
            Suite::Examples => examples_trial,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub trials: usize,
    pub seed: u64,
    /// Upper bound on the vertices of each random graph.
    pub max_vertices: usize,
}

impl VerifyOptions {
    pub fn for_suite(suite: Suite, seed: u64) -> Self {
        Self {
            trials: suite.default_trials(),
            seed,
            max_vertices: 6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialFailure {
    pub trial: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    /// Sorted by trial index.
    pub failures: Vec<TrialFailure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let passed = self.trials - self.failures.len();
        write!(f, "{}: {passed}/{} pass", self.suite, self.trials)?;
        for failure in &self.failures {
            write!(f, "\n  trial {}: {}", failure.trial, failure.message)?;
        }
        Ok(())
    }
}

/// The generator of one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> SuiteReport {
    let trial = suite.trial();
    let mut failures: Vec<TrialFailure> = (0..options.trials)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = trial_rng(options.seed, i);
            trial(&mut rng, options, i)
                .err()
                .map(|message| TrialFailure { trial: i, message })
        })
        .collect();
    failures.sort_by_key(|f| f.trial);
    SuiteReport {
        suite,
        trials: options.trials,
        failures,
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Up to `max_edges` random edges on `vertices`, weights drawn from `weights`.
pub fn random_graph(
    rng: &mut impl Rng,
    vertices: &[VertexId],
    max_edges: usize,
    weights: std::ops::RangeInclusive<f64>,
) -> WeightedGraph {
    let mut g = WeightedGraph::on(vertices.iter().copied());
    if vertices.is_empty() {
        return g;
    }
    for _ in 0..rng.gen_range(0..=max_edges) {
        let v = *vertices.choose(rng).expect("nonempty");
        let w = *vertices.choose(rng).expect("nonempty");
        g.add_edge(v, w, rng.gen_range(weights.clone()))
            .expect("endpoints and weight are valid");
    }
    g
}

/// A carrier of at most `max` vertices split into a whole carrier and two
/// disjoint parts inside it.
fn split_carrier(rng: &mut impl Rng, max: usize) -> (Vec<VertexId>, Vec<VertexId>, Vec<VertexId>) {
    let n = rng.gen_range(max.clamp(1, 2)..=max.max(1)) as VertexId;
    let whole: Vec<VertexId> = (0..n).collect();
    let (mut g, mut h) = (Vec::new(), Vec::new());
    for &v in &whole {
        match rng.gen_range(0..3) {
            0 => g.push(v),
            1 => h.push(v),
            _ => {}
        }
    }
    (whole, g, h)
}

fn adjunction_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    let (vf, vg, vh) = split_carrier(rng, o.max_vertices);
    let f = random_graph(rng, &vf, 3 * vf.len(), 0.1..=0.9);
    let g = random_graph(rng, &vg, 2 * vg.len(), 0.1..=0.9);
    let h = random_graph(rng, &vh, 2 * vh.len(), 0.1..=0.9);
    let a = check_adjunction(&f, &g, &h).map_err(err)?;
    if a.holds {
        Ok(())
    } else {
        Err(format!(
            "<F,G∪H> = {} but <F,G> + <F∷G,H> = {} + {}",
            a.whole.value, a.first.value, a.second.value
        ))
    }
}

fn count_circuits(g: &WeightedGraph, h: &WeightedGraph) -> Result<usize, String> {
    let bound = AlternationAnalysis::new(&plug(g, h))
        .circuit_length_bound()
        .ok_or("infinitely many circuits")?;
    let len = (bound + bound % 2).max(2);
    let n = one_circuits(g, h, len).len();
    let beyond = one_circuits(g, h, len + 2).len();
    if beyond != n {
        return Err(format!(
            "{beyond} circuits up to length {} but {n} up to {len}",
            len + 2
        ));
    }
    Ok(n)
}

fn circuits_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, trial: usize) -> Result<(), String> {
    // Most random instances have no circuit at all; keep a quarter of those.
    let want_circuits = !trial.is_multiple_of(4);
    for _ in 0..10_000 {
        let (vf, vg, vh) = split_carrier(rng, o.max_vertices);
        let f = random_graph(rng, &vf, vf.len() + 1, 0.1..=0.9);
        let g = random_graph(rng, &vg, vg.len(), 0.1..=0.9);
        let h = random_graph(rng, &vh, vh.len(), 0.1..=0.9);
        let gh = union(&g, &h);
        if !AlternationAnalysis::new(&plug(&f, &gh)).circuits_finite() {
            continue;
        }
        let fg = match reduce(&f, &g) {
            Ok(fg) => fg,
            Err(Error::InfiniteReduction) => continue,
            Err(e) => return Err(err(e)),
        };
        let whole = count_circuits(&f, &gh)?;
        if want_circuits && whole == 0 {
            continue;
        }
        let first = count_circuits(&f, &g)?;
        let second = count_circuits(&fg, &h)?;
        return if whole == first + second {
            Ok(())
        } else {
            Err(format!(
                "#C(F,G∪H) = {whole} but #C(F,G) + #C(F∷G,H) = {first} + {second}"
            ))
        };
    }
    Err("no instance with finitely many circuits found".into())
}

fn random_simple(rng: &mut impl Rng, vertices: &[VertexId], density: f64) -> SimpleGraph {
    let mut weights = Vec::new();
    for &v in vertices {
        for &w in vertices {
            if rng.gen_bool(density) {
                weights.push(((v, w), rng.gen_range(0.05..=1.0)));
            }
        }
    }
    SimpleGraph::new(vertices.iter().copied(), weights).expect("positive weights")
}

fn scaled(s: &SimpleGraph, factor: f64) -> SimpleGraph {
    SimpleGraph::new(
        s.vertices().iter().copied(),
        s.weights().iter().map(|(&k, &x)| (k, x * factor)),
    )
    .expect("positive weights")
}

fn routes_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    let n = rng.gen_range(1..=o.max_vertices.max(1)) as VertexId;
    let vs: Vec<VertexId> = (0..n).collect();
    let over: BTreeSet<VertexId> = vs.iter().copied().collect();
    let f = random_simple(rng, &vs, 0.5);
    let g = random_simple(rng, &vs, 0.5);
    let product = |f: &SimpleGraph| -> Result<_, String> {
        let mf = adjacency_matrix(f, &over).map_err(err)?;
        let mg = adjacency_matrix(&g, &over).map_err(err)?;
        Ok(mf.mul(&mg))
    };
    let mut m = product(&f)?;
    let rho = spectral_radius(&m).map_err(err)?;
    if rho >= 0.9 {
        m = product(&scaled(&f, rng.gen_range(0.1..0.89) / rho))?;
    }
    let series = *trace_series_partial(&m, 500).last().expect("500 terms");
    let exact = log_det_one_minus(&m);
    if (series - exact).abs() <= 1e-6 {
        Ok(())
    } else {
        Err(format!("trace series {series} but log det {exact}"))
    }
}

fn invariance_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    const MAX_LEN: usize = 8;
    let n = rng.gen_range(1..=o.max_vertices.clamp(1, 4)) as VertexId;
    let vs: Vec<VertexId> = (0..n).collect();
    let g = random_graph(rng, &vs, 2 * vs.len(), 0.1..=0.9);
    let mut h = random_graph(rng, &vs, 2 * vs.len(), 0.1..=0.9);
    // Duplicate some edges so the simplification has something to merge.
    for e in h.edges().to_vec() {
        if rng.gen_bool(0.5) {
            h.add_edge(e.src, e.dst, rng.gen_range(0.1..=0.9))
                .map_err(err)?;
        }
    }
    if !check_simplify_invariance(&g, &h, MAX_LEN).map_err(err)? {
        return Err("simplifying H changed the measurement".into());
    }
    let exact = measure_exact(&g, &h).map_err(err)?.value;
    let mut previous = 0.0;
    for len in (2..=MAX_LEN).step_by(2) {
        let partial = measure_truncated(&g, &h, len).value;
        if partial < previous - 1e-12 {
            return Err(format!("partial sum decreases at length {len}"));
        }
        if partial > exact + 1e-9 {
            return Err(format!(
                "partial sum {partial} at length {len} exceeds {exact}"
            ));
        }
        previous = partial;
    }
    Ok(())
}

/// A random symmetric simple graph scaled to operator norm at most 1.
fn random_operator_graph(rng: &mut impl Rng, vertices: &[VertexId]) -> Result<SimpleGraph, String> {
    let mut weights = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        for &w in &vertices[i..] {
            if rng.gen_bool(0.5) {
                let x = rng.gen_range(0.05..=1.0);
                weights.push(((v, w), x));
                if v != w {
                    weights.push(((w, v), x));
                }
            }
        }
    }
    let s = SimpleGraph::new(vertices.iter().copied(), weights).map_err(err)?;
    let over: BTreeSet<VertexId> = vertices.iter().copied().collect();
    let norm = operator_norm(&adjacency_matrix(&s, &over).map_err(err)?).map_err(err)?;
    Ok(if norm > 0.0 {
        scaled(&s, rng.gen_range(0.3..=1.0) / norm)
    } else {
        s
    })
}

/// Two overlapping carriers drawn from `0..max`.
fn overlapping_carriers(rng: &mut impl Rng, max: usize) -> (Vec<VertexId>, Vec<VertexId>) {
    let n = rng.gen_range(1..=max.max(1)) as VertexId;
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for v in 0..n {
        match rng.gen_range(0..3) {
            0 => a.push(v),
            1 => b.push(v),
            _ => {
                a.push(v);
                b.push(v);
            }
        }
    }
    (a, b)
}

fn feedback_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    for _ in 0..1000 {
        let (va, vb) = overlapping_carriers(rng, o.max_vertices);
        let f = random_operator_graph(rng, &va)?;
        let g = random_operator_graph(rng, &vb)?;
        let measured = crate::matrix::log_det_measure(&f, &g).map_err(err)?;
        if measured.is_infinite() {
            continue;
        }
        let (solved, blocks) = match (feedback_solve(&f, &g), feedback_blocks(&f, &g)) {
            (Ok(s), Ok(b)) => (s, b),
            (Err(Error::NonTotal), _) | (_, Err(Error::NonTotal)) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(err(e)),
        };
        let delta: BTreeSet<VertexId> = blocks.index().iter().copied().collect();
        let diff = adjacency_matrix(&solved, &delta)
            .map_err(err)?
            .max_abs_diff(&blocks);
        if diff > 1e-9 {
            return Err(format!("block formula differs by {diff}"));
        }
        if !is_operator_graph(&solved) {
            return Err("solution is not an operator graph".into());
        }
        return Ok(());
    }
    Err("no pair with finite measurement found".into())
}

fn matrix_adjunction_trial(
    rng: &mut ChaCha8Rng,
    o: &VerifyOptions,
    _: usize,
) -> Result<(), String> {
    for _ in 0..1000 {
        let (vf, mut vg, _) = split_carrier(rng, o.max_vertices);
        vg.retain(|_| rng.gen_bool(0.7));
        let vh: Vec<VertexId> = vf.iter().copied().filter(|v| !vg.contains(v)).collect();
        let f = random_operator_graph(rng, &vf)?;
        let g1 = random_operator_graph(rng, &vg)?;
        let g2 = random_operator_graph(rng, &vh)?;
        if crate::matrix::log_det_measure(&f, &g1)
            .map_err(err)?
            .is_infinite()
        {
            continue;
        }
        return match check_matrix_adjunction(&f, &g1, &g2) {
            Ok(true) => Ok(()),
            Ok(false) => Err("matrix adjunction fails".into()),
            Err(Error::NonTotal) => continue,
            Err(e) => Err(err(e)),
        };
    }
    Err("no triple with finite measurement found".into())
}

/// Vertices of `0..max` shared by at most two of three graphs.
fn assoc_carriers(rng: &mut impl Rng, max: usize) -> [Vec<VertexId>; 3] {
    let mut out: [Vec<VertexId>; 3] = Default::default();
    for v in 0..rng.gen_range(1..=max.max(1)) as VertexId {
        let mut member = [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)];
        if member.iter().all(|&m| m) {
            member[rng.gen_range(0..3)] = false;
        }
        for (set, m) in out.iter_mut().zip(member) {
            if m {
                set.push(v);
            }
        }
    }
    out
}

fn assoc_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    for _ in 0..10_000 {
        let [v0, v1, v2] = assoc_carriers(rng, o.max_vertices);
        let g0 = random_graph(rng, &v0, v0.len() + 1, 0.1..=0.9);
        let g1 = random_graph(rng, &v1, v1.len() + 1, 0.1..=0.9);
        let g2 = random_graph(rng, &v2, v2.len() + 1, 0.1..=0.9);
        let right = reduce(&g1, &g2).and_then(|r| reduce(&g0, &r));
        let left = reduce(&g0, &g1).and_then(|l| reduce(&l, &g2));
        match (left, right) {
            (Ok(l), Ok(r)) => {
                return if graph_equal(&l, &r, 1e-12) {
                    Ok(())
                } else {
                    Err(format!(
                        "(G0∷G1)∷G2 has {} edges, G0∷(G1∷G2) has {}",
                        l.num_edges(),
                        r.num_edges()
                    ))
                };
            }
            (Err(Error::InfiniteReduction), _) | (_, Err(Error::InfiniteReduction)) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(err(e)),
        }
    }
    Err("no triple with finite reductions found".into())
}

/// Three graphs on the single vertex 1: two edgeless, the last with a loop.
/// Associativity fails for them since the shared vertex lies in all three.
pub fn assoc_counterexample() -> Result<bool, Error> {
    let f = WeightedGraph::on([1]);
    let g = WeightedGraph::on([1]);
    let h = WeightedGraph::new([1], [(1, 1, 0.5)])?;
    let left = reduce(&reduce(&f, &g)?, &h)?;
    let right = reduce(&f, &reduce(&g, &h)?)?;
    Ok(!graph_equal(&left, &right, 1e-12))
}

fn category_trial(rng: &mut ChaCha8Rng, _: &VerifyOptions, trial: usize) -> Result<(), String> {
    // The pointwise bijection laws only need checking once.
    let window = if trial == 0 { 1 << 16 } else { 0 };
    let report = check_coherence_samples(rng.gen(), window, 1);
    if report.passed() {
        Ok(())
    } else {
        Err(report.failures.join("; "))
    }
}

/// A project whose graph is a random partial matching of `carrier`.
pub fn random_matching(rng: &mut impl Rng, carrier: &[VertexId]) -> Project {
    let mut vs = carrier.to_vec();
    vs.shuffle(rng);
    let pairs = rng.gen_range(0..=vs.len() / 2);
    let edges = vs
        .chunks(2)
        .take(pairs)
        .flat_map(|p| [(p[0], p[1], 1.0), (p[1], p[0], 1.0)]);
    Project::from_graph(WeightedGraph::new(carrier.iter().copied(), edges).expect("valid matching"))
}

fn truth_trial(rng: &mut ChaCha8Rng, o: &VerifyOptions, _: usize) -> Result<(), String> {
    let n = rng.gen_range(1..=o.max_vertices.max(2)) as VertexId;
    let carrier: Vec<VertexId> = (0..n).collect();
    let f = random_matching(rng, &carrier);
    let g = random_matching(rng, &carrier);
    if !is_successful(&f).successful() {
        return Err("a matching is not successful".into());
    }
    if orthogonal(&f, &g).map_err(err)? {
        return Err(format!(
            "two successful projects are orthogonal (interaction {})",
            interaction(&f, &g).map_err(err)?
        ));
    }

    // Plug a successful project into part of the carrier of another.
    let part: Vec<VertexId> = carrier
        .iter()
        .copied()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    let a = random_matching(rng, &part);
    if raw_interaction(&f, &a).map_err(err)?.is_finite() {
        let c = cut(&f, &a).map_err(err)?;
        if !is_successful(&c).successful() {
            return Err("cut of successful projects is not successful".into());
        }
    }

    // Verdicts agree with the transposition test, also on perturbed graphs.
    let mut perturbed = f.graph().clone();
    let (v, w) = (
        *carrier.choose(rng).expect("nonempty"),
        *carrier.choose(rng).expect("nonempty"),
    );
    perturbed
        .add_edge(v, w, rng.gen_range(0.1..=1.0))
        .map_err(err)?;
    for p in [&f, &Project::from_graph(perturbed)] {
        let verdict = is_successful(p).successful();
        if verdict != is_transposition_union(&simplify(p.graph())) {
            return Err("success verdict disagrees with the transposition test".into());
        }
    }

    let left: BTreeSet<VertexId> = part.iter().copied().collect();
    let right: BTreeSet<VertexId> = carrier
        .iter()
        .copied()
        .filter(|v| !left.contains(v))
        .collect();
    match split_successful_tensor(&f, &left, &right).map_err(err)? {
        Split::Tensor(a, b) => {
            if !tensor(&a, &b).map_err(err)?.approx_eq(&f, 0.0) {
                return Err("split parts do not tensor back".into());
            }
        }
        Split::Crossing { counter_test, .. } => {
            if !interaction(&f, &counter_test).map_err(err)?.is_infinite() {
                return Err("counter-test interaction is finite".into());
            }
        }
    }
    Ok(())
}

/// Interpretation, success, switching tests and cut elimination for one proof.
pub fn check_soundness(p: &Proof, basis: &Basis) -> Result<(), String> {
    let conclusion = check_proof(p, basis).map_err(|e| e.to_string())?;
    let f = interpret(p, basis).map_err(err)?;
    let verdict = is_successful(&f);
    if !verdict.successful() {
        return Err(format!(
            "interpretation is not successful: {:?}",
            verdict.reasons
        ));
    }
    for t in switching_tests(&conclusion, basis).map_err(err)? {
        if !orthogonal(&f, &t.project).map_err(err)? {
            return Err(format!("not orthogonal to the switching {:?}", t.switches));
        }
    }
    let normal = eliminate_cuts_checked(p, basis).map_err(err)?;
    if let Some(m) = normal.mismatches.first() {
        return Err(m.clone());
    }
    if !normal.proof.is_cut_free() {
        return Err("normal form still has cuts".into());
    }
    if check_proof(&normal.proof, basis).map_err(|e| e.to_string())? != conclusion {
        return Err("normal form has another conclusion".into());
    }
    let g = interpret(&normal.proof, basis).map_err(err)?;
    if f.wager() != g.wager() || !graph_equal(f.graph(), g.graph(), 0.0) {
        return Err("normal form has another interpretation".into());
    }
    Ok(())
}

fn soundness_trial(rng: &mut ChaCha8Rng, _: &VerifyOptions, trial: usize) -> Result<(), String> {
    let (p, basis) = if trial == 0 {
        let file = parse_proof(SAMPLE_PROOF).map_err(err)?;
        (file.proof, file.basis)
    } else {
        random_proof(rng, &ProofShape::default())
    };
    check_soundness(&p, &basis).map_err(|e| format!("{p}: {e}"))
}

fn examples_trial(rng: &mut ChaCha8Rng, _: &VerifyOptions, trial: usize) -> Result<(), String> {
    if trial == 0 {
        check_worked_graphs()?;
    }
    let mut weight = || rng.gen_range(0.01..=1.0);
    let (x, y) = ([weight(), weight()], [weight(), weight()]);
    let (a, b) = parallel_edges(x, y);
    let expected = (x[0] + x[1]) * (y[0] + y[1]);
    let via_paths = simplify(&reduce(&a, &b).map_err(err)?).weight(1, 3);
    let via_matrices = feedback_solve(&simplify(&a), &simplify(&b))
        .map_err(err)?
        .weight(1, 3);
    for got in [via_paths, via_matrices] {
        if (got - expected).abs() > 1e-12 {
            return Err(format!("weight {got}, expected {expected}"));
        }
    }
    Ok(())
}

fn check_worked_graphs() -> Result<(), String> {
    let (f, g, h) = worked_graphs();
    let expect = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    expect(union(&f, &g).num_edges() == 6, "F ∪ G should have 6 edges")?;
    expect(
        plug(&f, &g).color_histogram() == (4, 2),
        "F □ G should have 4 + 2 edges",
    )?;
    expect(
        plug(&f, &h).color_histogram() == (4, 2),
        "F □ H should have 4 + 2 edges",
    )?;
    let back_and_forth =
        WeightedGraph::new([3, 4], [(4, 3, 1.0), (3, 4, 1.0)]).expect("valid graph");
    for (name, other) in [("G", &g), ("H", &h)] {
        let r = crate::graph::reduce_truncated(&f, other, 8);
        expect(!r.truncated, &format!("F ∷ {name} should not be truncated"))?;
        expect(
            graph_equal(&r.graph, &back_and_forth, 0.0),
            &format!("F ∷ {name} should be 4 -> 3 and 3 -> 4"),
        )?;
    }
    expect(
        one_circuits(&f, &g, 8).is_empty(),
        "F □ G should have no circuit",
    )?;
    let c = one_circuits(&f, &h, 8);
    expect(
        c.len() == 1 && c[0].len() == 2,
        "F □ H should have one circuit of length 2",
    )?;
    expect(
        measure_exact(&f, &h).map_err(err)?.is_infinite(),
        "<F, H> should be infinite",
    )?;
    let paths = crate::graph::alternating_paths(&f, &g, &[3].into(), &[4].into(), 5);
    expect(
        paths.len() == 1 && paths[0].len() == 5,
        "one alternating path of length 5 from 3 to 4 in F □ G",
    )?;
    expect(pentagon_failure(1 << 10).is_none(), "pentagon")?;
    expect(hexagon_failure(1 << 10).is_none(), "hexagon")?;
    let unit = cut(
        &Project::from_graph(f.clone()),
        &Project::from_graph(g.clone()),
    )
    .map_err(err)?;
    expect(unit.wager() == 0.0, "cutting F with G has zero wager")
}
