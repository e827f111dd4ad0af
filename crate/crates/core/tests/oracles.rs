//! Library results against independent computations: brute-force circuit
//! enumeration, and dense linear algebra from nalgebra.

use std::collections::{BTreeMap, BTreeSet};

use goi::graph::{one_circuits, plug, reduce, simplify, Color, EdgeId, SimpleGraph, WeightedGraph};
use goi::matrix::{
    adjacency_matrix, feedback_solve, log_det_one_minus, operator_norm, spectral_radius,
    LocalizedMatrix,
};
use goi::measure::{circuit_cost, measure_exact, measure_truncated};
use nalgebra::DMatrix;
use proptest::prelude::*;

/// A multigraph on `vertices` with edges given by endpoint indices.
fn graph_strategy(vertices: Vec<u64>, max_edges: usize) -> impl Strategy<Value = WeightedGraph> {
    let n = vertices.len();
    let edges = if n == 0 {
        Just(Vec::new()).boxed()
    } else {
        prop::collection::vec((0..n, 0..n, 0.1f64..=0.9), 0..=max_edges).boxed()
    };
    edges.prop_map(move |es| {
        WeightedGraph::new(
            vertices.iter().copied(),
            es.into_iter()
                .map(|(a, b, w)| (vertices[a], vertices[b], w)),
        )
        .unwrap()
    })
}

/// All closed alternating edge sequences up to `max_len`, grouped into
/// rotation classes; returns the primitive classes with their weights.
fn brute_force_circuits(
    g: &WeightedGraph,
    h: &WeightedGraph,
    max_len: usize,
) -> Vec<(Vec<EdgeId>, f64)> {
    let p = plug(g, h);
    let ids: Vec<EdgeId> = p.edge_ids().collect();
    let mut classes: BTreeMap<Vec<EdgeId>, f64> = BTreeMap::new();
    let mut stack: Vec<Vec<EdgeId>> = ids.iter().map(|&e| vec![e]).collect();
    while let Some(seq) = stack.pop() {
        let (first, last) = (seq[0], *seq.last().unwrap());
        let closes = p.edge(last).dst == p.edge(first).src && p.color(last) != p.color(first);
        if closes {
            let primitive = (1..seq.len()).all(|k| {
                let rotated: Vec<_> = seq[k..].iter().chain(&seq[..k]).copied().collect();
                rotated != seq
            });
            if primitive {
                let canonical = (0..seq.len())
                    .map(|k| {
                        seq[k..]
                            .iter()
                            .chain(&seq[..k])
                            .copied()
                            .collect::<Vec<_>>()
                    })
                    .min()
                    .unwrap();
                let weight = seq.iter().map(|&e| p.edge(e).weight).product();
                classes.insert(canonical, weight);
            }
        }
        if seq.len() < max_len {
            for &e in &ids {
                if p.edge(e).src == p.edge(last).dst && p.color(e) != p.color(last) {
                    let mut next = seq.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
    }
    classes.into_iter().collect()
}

fn to_dmatrix(m: &LocalizedMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j))
}

/// `None` when the Schur iteration does not settle.
fn nalgebra_spectral_radius(m: &DMatrix<f64>) -> Option<f64> {
    let schur = m.clone().try_schur(f64::EPSILON, 10_000)?;
    Some(
        schur
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max),
    )
}

fn nonnegative_matrix(n: usize) -> impl Strategy<Value = LocalizedMatrix> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], n * n).prop_map(move |xs| {
        let rows: Vec<Vec<f64>> = xs.chunks(n).map(<[f64]>::to_vec).collect();
        LocalizedMatrix::from_rows((0..n as u64).collect(), &rows)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn circuits_match_brute_force(
        g in graph_strategy(vec![0, 1, 2], 4),
        h in graph_strategy(vec![0, 1, 2], 4),
    ) {
        let expected = brute_force_circuits(&g, &h, 6);
        let got = one_circuits(&g, &h, 6);
        prop_assert_eq!(got.len(), expected.len());
        let got_weights: f64 = got.iter().map(|c| c.weight).sum();
        let expected_weights: f64 = expected.iter().map(|(_, w)| w).sum();
        prop_assert!((got_weights - expected_weights).abs() <= 1e-12);
        // Canonical representatives start with a color-0 edge, so they are
        // rotations of the brute-force minima.
        let p = plug(&g, &h);
        for c in &got {
            prop_assert_eq!(p.color(c.edges[0]), Color::Zero);
            let mut rotated = c.edges.clone();
            let min = (0..rotated.len())
                .map(|_| { rotated.rotate_left(1); rotated.clone() })
                .min()
                .unwrap();
            prop_assert!(expected.iter().any(|(e, _)| *e == min));
        }
    }

    #[test]
    fn truncated_measure_is_the_brute_force_sum(
        g in graph_strategy(vec![0, 1], 3),
        h in graph_strategy(vec![0, 1], 3),
    ) {
        let expected: f64 = brute_force_circuits(&g, &h, 6).iter().map(|&(_, w)| circuit_cost(w)).sum();
        let got = measure_truncated(&g, &h, 6).value;
        prop_assert!((got - expected).abs() <= 1e-12 || got == expected);
    }

    #[test]
    fn log_det_matches_nalgebra(m in (1usize..=5).prop_flat_map(nonnegative_matrix)) {
        let a = to_dmatrix(&m);
        let rho = nalgebra_spectral_radius(&a);
        prop_assume!(rho.is_some());
        let rho = rho.unwrap();
        let ours = spectral_radius(&m).unwrap();
        // A zero eigenvalue of a nilpotent part is only resolved to about
        // eps^(1/n) by the Schur form.
        prop_assert!(
            (ours - rho).abs() <= 1e-7 * rho.max(1.0) || (ours == 0.0 && rho < 1e-2),
            "{} vs {}", ours, rho
        );
        let scaled = if ours > 0.0 { m.scale(0.8 / ours) } else { m.clone() };
        let b = to_dmatrix(&scaled);
        let det = (DMatrix::identity(b.nrows(), b.ncols()) - &b).determinant();
        let expected = -det.ln();
        prop_assert!((log_det_one_minus(&scaled) - expected).abs() <= 1e-9 * expected.abs().max(1.0));
    }

    #[test]
    fn operator_norm_matches_singular_values(m in (1usize..=5).prop_flat_map(nonnegative_matrix)) {
        let expected = to_dmatrix(&m).singular_values().max();
        let got = operator_norm(&m).unwrap();
        prop_assert!((got - expected).abs() <= 1e-8 * expected.max(1.0));
    }

    #[test]
    fn feedback_solve_matches_alternating_state_sum(
        f in graph_strategy(vec![0, 1, 2, 3], 6),
        g in graph_strategy(vec![2, 3, 4, 5], 6),
    ) {
        let (sf, sg) = (simplify(&f), simplify(&g));
        if let Some(expected) = alternating_path_sums(&sf, &sg) {
            let got = feedback_solve(&sf, &sg).unwrap();
            prop_assert!(got.approx_eq(&expected, 1e-9), "{got:?} vs {expected:?}");
            if let Ok(r) = reduce(&f, &g) {
                prop_assert!(simplify(&r).approx_eq(&got, 1e-9));
            }
        }
    }
}

/// Sums of alternating paths between private vertices through a state
/// space of (vertex, color of the last edge), with the geometric series
/// inverted by nalgebra. `None` when the series diverges.
fn alternating_path_sums(f: &SimpleGraph, g: &SimpleGraph) -> Option<SimpleGraph> {
    let carrier: Vec<u64> = f.vertices().union(g.vertices()).copied().collect();
    let n = carrier.len();
    let state = |v: usize, c: usize| 2 * v + c;
    let mut t = DMatrix::zeros(2 * n, 2 * n);
    for (i, &v) in carrier.iter().enumerate() {
        for (j, &w) in carrier.iter().enumerate() {
            // An edge of color c may follow one of the other color.
            t[(state(i, 1), state(j, 0))] = f.weight(v, w);
            t[(state(i, 0), state(j, 1))] = g.weight(v, w);
        }
    }
    if nalgebra_spectral_radius(&t)? >= 0.99 {
        return None;
    }
    let resolvent = (DMatrix::identity(2 * n, 2 * n) - &t).try_inverse()?;
    let paths = &t * resolvent;
    let delta: BTreeSet<u64> = f
        .vertices()
        .symmetric_difference(g.vertices())
        .copied()
        .collect();
    let mut weights = Vec::new();
    for (i, v) in carrier
        .iter()
        .enumerate()
        .filter(|(_, v)| delta.contains(v))
    {
        for (j, w) in carrier
            .iter()
            .enumerate()
            .filter(|(_, w)| delta.contains(w))
        {
            let x: f64 = (0..2)
                .flat_map(|c| (0..2).map(move |d| (c, d)))
                .map(|(c, d)| paths[(state(i, c), state(j, d))])
                .sum();
            if x > 1e-15 {
                weights.push(((*v, *w), x));
            }
        }
    }
    SimpleGraph::new(delta, weights).ok()
}

#[test]
fn measure_exact_matches_nalgebra_on_a_dense_pair() {
    let over: BTreeSet<u64> = (0..4).collect();
    let g = WeightedGraph::new(
        0..4,
        (0..4).flat_map(|v| (0..4).map(move |w| (v, w, 0.1 + 0.05 * (v + w) as f64))),
    )
    .unwrap();
    let h = WeightedGraph::new(
        0..4,
        [
            (0, 1, 0.4),
            (1, 2, 0.3),
            (2, 3, 0.2),
            (3, 0, 0.5),
            (1, 1, 0.6),
        ],
    )
    .unwrap();
    let m = adjacency_matrix(&simplify(&g), &over)
        .unwrap()
        .mul(&adjacency_matrix(&simplify(&h), &over).unwrap());
    let a = to_dmatrix(&m);
    let expected = -(DMatrix::identity(4, 4) - a).determinant().ln();
    let got = measure_exact(&g, &h).unwrap().value;
    assert!((got - expected).abs() <= 1e-12, "{got} vs {expected}");
}
