//! Small instances whose answers are known in closed form.

use std::collections::BTreeSet;

use goi::category::{identity_morphism, pentagon_failure, tensor_carriers, tensor_morphisms};
use goi::graph::{
    alternating_paths, graph_equal, one_circuits, plug, reduce, reduce_truncated, simplify, union,
    EdgeId, SimpleGraph, WeightedGraph,
};
use goi::logic::{
    check_proof, delta, delta_inverse, eliminate_cuts, interpret, parse_proof, switching_tests,
    Basis, Proof, Tree,
};
use goi::matrix::{
    adjacency_matrix, feedback_solve, is_operator_graph, log_det_one_minus, reduce_exact,
    spectral_radius, trace_series_partial, LocalizedMatrix,
};
use goi::measure::{check_adjunction, measure_exact, measure_truncated};
use goi::project::{cut, fax, interaction, orthogonal, tensor, Delocation, Project};
use goi::truth::{is_successful, split_successful_tensor, Split};
use goi::verify::{worked_graphs, SAMPLE_PROOF};

fn loop_at(v: u64, w: f64) -> WeightedGraph {
    WeightedGraph::new([v], [(v, v, w)]).unwrap()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn ids(ids: &[usize]) -> Vec<EdgeId> {
    ids.iter().copied().map(EdgeId).collect()
}

#[test]
fn union_keeps_parallel_copies() {
    let g = loop_at(1, 0.5);
    let u = union(&g, &g);
    assert_eq!(u.num_edges(), 2);
    assert!(u
        .edges()
        .iter()
        .all(|e| (e.src, e.dst, e.weight) == (1, 1, 0.5)));
}

#[test]
fn simplification_sums_parallel_edges() {
    let g = WeightedGraph::new([0, 1], [(0, 1, 0.2), (0, 1, 0.3), (0, 1, 0.4)]).unwrap();
    let s = simplify(&g);
    assert!(close(s.weight(0, 1), 0.9, 1e-15));
    assert!(s.is_total());
}

#[test]
fn simple_graph_operations() {
    let loops = SimpleGraph::new([1, 2], [((1, 1), 0.5), ((2, 2), 0.25)]).unwrap();
    assert_eq!(loops.trace(), 0.75);
    let chain = SimpleGraph::new([1, 2, 3], [((1, 2), 0.5), ((2, 3), 0.5)]).unwrap();
    let square = chain.power(2);
    assert_eq!(square.weights().len(), 1);
    assert_eq!(square.weight(1, 3), 0.25);
    assert!(SimpleGraph::new([1, 2], [((1, 2), 0.3), ((2, 1), 0.3)])
        .unwrap()
        .is_symmetric());
    let a = SimpleGraph::new([1], [((1, 1), 0.5)]).unwrap();
    let b = SimpleGraph::new([1], [((1, 1), 0.5 + 1e-12)]).unwrap();
    assert!(a.approx_eq(&b, 1e-9));
}

#[test]
fn worked_plugging_paths_and_circuits() {
    let (f, g, h) = worked_graphs();
    // Edge ids: a, b, c, d from the 4-cycle, then the second graph's edges.
    assert_eq!(plug(&f, &h).color_histogram(), (4, 2));
    let paths = alternating_paths(&f, &g, &[3].into(), &[4].into(), 5);
    assert_eq!(paths.len(), 1);
    assert_eq!(paths[0].edges, ids(&[3, 4, 0, 5, 1]));

    let circuits = one_circuits(&f, &h, 8);
    assert_eq!(circuits.len(), 1);
    assert_eq!(circuits[0].edges, ids(&[0, 5]));
    assert!(one_circuits(&f, &g, 8).is_empty());
}

#[test]
fn worked_reductions() {
    let (f, g, h) = worked_graphs();
    let expected = WeightedGraph::new([3, 4], [(4, 3, 1.0), (3, 4, 1.0)]).unwrap();

    let r = reduce_truncated(&f, &g, 8);
    assert!(!r.truncated);
    assert!(graph_equal(&r.graph, &expected, 0.0));
    let long = r.paths.iter().find(|p| p.src == 3).unwrap();
    assert_eq!(long.edges, ids(&[3, 4, 0, 5, 1]));

    let r = reduce_truncated(&f, &h, 8);
    assert!(!r.truncated);
    assert!(graph_equal(&r.graph, &expected, 0.0));
    let long = r.paths.iter().find(|p| p.src == 3).unwrap();
    assert_eq!(long.edges, ids(&[3, 4, 1]));

    let s = feedback_solve(&simplify(&f), &simplify(&g)).unwrap();
    assert_eq!(s.weights().len(), 2);
    assert_eq!((s.weight(4, 3), s.weight(3, 4)), (1.0, 1.0));
}

#[test]
fn loop_pairs() {
    let (g, h) = (loop_at(7, 0.3), loop_at(7, 0.6));
    let c = one_circuits(&g, &h, 8);
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].len(), 2);
    assert!(close(c[0].weight, 0.18, 1e-15));

    let expected = -(0.75f64).ln();
    let (g, h) = (loop_at(1, 0.5), loop_at(1, 0.5));
    assert!(close(measure_exact(&g, &h).unwrap().value, expected, 1e-12));
    assert!(close(measure_truncated(&g, &h, 8).value, expected, 1e-12));
    assert!(close(expected, 0.2876821, 1e-7));
}

#[test]
fn infinite_measurements() {
    let (f, _, h) = worked_graphs();
    assert!(measure_exact(&f, &h).unwrap().is_infinite());
    let g = WeightedGraph::new([1, 2], [(1, 2, 1.0)]).unwrap();
    let h = WeightedGraph::new([1, 2], [(2, 1, 1.0)]).unwrap();
    assert!(measure_exact(&g, &h).unwrap().is_infinite());
}

#[test]
fn adjunction_with_a_single_long_circuit() {
    let f = WeightedGraph::new([1, 2], [(1, 2, 0.5), (2, 1, 0.5)]).unwrap();
    let (g, h) = (loop_at(1, 0.5), loop_at(2, 0.5));
    let a = check_adjunction(&f, &g, &h).unwrap();
    let expected = -(15.0f64 / 16.0).ln();
    assert!(close(a.whole.value, expected, 1e-12));
    assert_eq!(a.first.value, 0.0);
    assert!(close(a.second.value, expected, 1e-12));
    assert!(a.holds);
    let fg = reduce(&f, &g).unwrap();
    assert!(graph_equal(&fg, &loop_at(2, 0.125), 1e-15));
}

#[test]
fn parallel_loops_give_a_strict_lower_bound() {
    let g = loop_at(5, 0.5);
    let h = WeightedGraph::new([5], [(5, 5, 0.3), (5, 5, 0.2)]).unwrap();
    let exact = measure_exact(&g, &h).unwrap().value;
    assert!(close(exact, -(0.75f64).ln(), 1e-12));
    let partial: Vec<f64> = (1..=5)
        .map(|k| measure_truncated(&g, &h, 2 * k).value)
        .collect();
    assert!(partial.windows(2).all(|w| w[0] < w[1]));
    assert!(partial.iter().all(|&x| x < exact));
    assert!(measure_truncated(&g, &h, 10).is_truncated());
}

#[test]
fn parallel_loops_with_a_private_exit() {
    // p -> v, a loop at v and v -> p in G; loops 0.3 and 0.2 at v in H.
    let g = WeightedGraph::new([5, 9], [(9, 5, 1.0), (5, 5, 0.5), (5, 9, 1.0)]).unwrap();
    let h = WeightedGraph::new([5], [(5, 5, 0.3), (5, 5, 0.2)]).unwrap();
    let exact = reduce_exact(&g, &h).unwrap().weight(9, 9);
    assert!(close(exact, 2.0 / 3.0, 1e-12));
    // Enumerating the simplified H to length 60 reaches the limit; the
    // multigraph has 2^k paths of length 2k + 3, so it stops earlier.
    let simplified = simplify(&h).to_multigraph().unwrap();
    assert!(close(
        simplify(&reduce_truncated(&g, &simplified, 60).graph).weight(9, 9),
        exact,
        1e-9
    ));
    assert!(close(
        simplify(&reduce_truncated(&g, &h, 21).graph).weight(9, 9),
        exact,
        1e-5
    ));
}

#[test]
fn matrices() {
    let swap = SimpleGraph::new([1, 2], [((1, 2), 1.0), ((2, 1), 1.0)]).unwrap();
    let m = adjacency_matrix(&swap, swap.vertices()).unwrap();
    assert_eq!(
        m.max_abs_diff(&LocalizedMatrix::from_rows(
            vec![1, 2],
            &[vec![0.0, 1.0], vec![1.0, 0.0]]
        )),
        0.0
    );
    assert!(is_operator_graph(&swap));
    let heavy = SimpleGraph::new([1, 2], [((1, 2), 1.0), ((2, 1), 1.0), ((1, 1), 1.0)]).unwrap();
    assert!(!is_operator_graph(&heavy));

    let quarter = LocalizedMatrix::from_rows(vec![0], &[vec![0.25]]);
    let series = trace_series_partial(&quarter, 3);
    assert!(close(series[0], 0.25, 1e-15));
    assert!(close(series[1], 0.28125, 1e-15));
    assert!(close(series[2], 0.25 + 0.03125 + 0.015625 / 3.0, 1e-15));
    let exact = -(0.75f64).ln();
    assert!(close(
        *trace_series_partial(&quarter, 200).last().unwrap(),
        exact,
        1e-6
    ));
    assert!(close(log_det_one_minus(&quarter), exact, 1e-15));

    let half = LocalizedMatrix::from_rows(vec![0, 1], &[vec![0.0, 0.5], vec![0.5, 0.0]]);
    assert!(close(spectral_radius(&half).unwrap(), 0.5, 1e-12));
}

#[test]
fn projects() {
    let (p, q) = (
        Project::new(0.0, loop_at(1, 0.5)).unwrap(),
        Project::new(0.0, loop_at(1, 0.5)).unwrap(),
    );
    assert!(close(interaction(&p, &q).unwrap(), 0.2876821, 1e-7));
    assert!(orthogonal(&p, &q).unwrap());
    let a = Project::new(0.0, WeightedGraph::new([1, 2], [(1, 2, 1.0)]).unwrap()).unwrap();
    let b = Project::new(0.0, WeightedGraph::new([1, 2], [(2, 1, 1.0)]).unwrap()).unwrap();
    assert!(interaction(&a, &b).unwrap().is_infinite());
    assert!(!orthogonal(&a, &b).unwrap());

    let t = tensor(
        &Project::new(0.1, loop_at(1, 0.5)).unwrap(),
        &Project::new(0.2, loop_at(2, 0.5)).unwrap(),
    )
    .unwrap();
    assert!(close(t.wager(), 0.3, 1e-15));
    assert_eq!(t.graph().num_edges(), 2);

    let (f, g, _) = worked_graphs();
    let c = cut(&Project::from_graph(f), &Project::from_graph(g)).unwrap();
    assert_eq!(c.wager(), 0.0);
    let expected = WeightedGraph::new([3, 4], [(4, 3, 1.0), (3, 4, 1.0)]).unwrap();
    assert!(graph_equal(c.graph(), &expected, 0.0));

    let link = fax(&Delocation::new([(1, 2)]).unwrap()).unwrap();
    assert!(is_successful(&link).successful());
}

#[test]
fn crossing_edges_have_counter_tests() {
    let f =
        Project::from_graph(WeightedGraph::new([1, 2, 3, 4], [(1, 3, 1.0), (3, 1, 1.0)]).unwrap());
    let left: BTreeSet<u64> = [1, 2].into();
    let right: BTreeSet<u64> = [3, 4].into();
    match split_successful_tensor(&f, &left, &right).unwrap() {
        Split::Crossing { edge, counter_test } => {
            assert_eq!(edge, (1, 3));
            assert!(interaction(&f, &counter_test).unwrap().is_infinite());
        }
        Split::Tensor(..) => panic!("the edge 1 -> 3 crosses"),
    }
}

#[test]
fn category_samples() {
    assert_eq!(pentagon_failure(1 << 10), None);
    let s: BTreeSet<u64> = [0, 3, 5].into();
    assert!(is_successful(identity_morphism(&s).body()).successful());
    let t: BTreeSet<u64> = [1, 2].into();
    let both = tensor_morphisms(&identity_morphism(&s), &identity_morphism(&t)).unwrap();
    assert!(both.approx_eq(&identity_morphism(&tensor_carriers(&s, &t)), 0.0));
}

#[test]
fn locations() {
    for n in 0..10_000u64 {
        let (i, m) = delta_inverse(n);
        assert_eq!(delta(i, m), Some(n));
    }
    let text = "(tensor (ax X0 0 1) (ax X1 0 1))";
    let file = parse_proof(text).unwrap();
    let x0 = goi::logic::Atom::new("X0", 0);
    let x1 = goi::logic::Atom::new("X1", 0);
    assert_eq!(file.basis.atom_location(&x0).unwrap(), [0].into());
    assert_eq!(file.basis.atom_location(&x1).unwrap(), [1].into());
}

#[test]
fn axioms() {
    let file = parse_proof("(ax X1 3 97)").unwrap();
    assert_eq!(
        check_proof(&file.proof, &file.basis).unwrap().to_string(),
        "⊢ X1(3), X1(97)^⊥"
    );

    let dup = parse_proof("(mix (ax X1 3 4) (ax X1 3 5))").unwrap();
    assert!(check_proof(&dup.proof, &dup.basis).is_err());

    let file = parse_proof("(ax X 0 1)").unwrap();
    let f = interpret(&file.proof, &file.basis).unwrap();
    assert_eq!(f.wager(), 0.0);
    let link =
        fax(&Delocation::new([(delta(0, 0).unwrap(), delta(0, 1).unwrap())]).unwrap()).unwrap();
    assert!(f.approx_eq(&link, 0.0));
}

#[test]
fn sample_proof() {
    let file = parse_proof(SAMPLE_PROOF).unwrap();
    let conclusion = check_proof(&file.proof, &file.basis).unwrap();
    assert_eq!(
        conclusion.to_string(),
        "⊢ X1(23)^⊥ ⅋ X2(12)^⊥, X1(3) ⊗ X2(7)"
    );
    let f = interpret(&file.proof, &file.basis).unwrap();
    assert!(is_successful(&f).successful());
    assert_eq!(
        f.carrier(),
        &file
            .basis
            .location(&conclusion.0[0])
            .unwrap()
            .union(&file.basis.location(&conclusion.0[1]).unwrap())
            .copied()
            .collect()
    );

    let normal = eliminate_cuts(&file.proof, &file.basis).unwrap();
    assert!(normal.proof.is_cut_free());
    assert_eq!(check_proof(&normal.proof, &file.basis).unwrap(), conclusion);
    let axioms: Vec<_> = normal
        .proof
        .axioms()
        .into_iter()
        .map(|a| (a.name.clone(), a.pos, a.neg))
        .collect();
    assert!(axioms.contains(&("X1".to_string(), 3, 23)));
    let g = interpret(&normal.proof, &file.basis).unwrap();
    assert!(graph_equal(f.graph(), g.graph(), 0.0));
    assert_eq!(f.wager(), g.wager());

    assert_eq!(switching_tests(&conclusion, &file.basis).unwrap().len(), 2);
}

#[test]
fn a_tensor_has_one_switching() {
    let p: Proof = Tree::tensor(Proof::ax("X1", 0, 1), Proof::ax("X2", 0, 1));
    let basis = Basis::new(["X1", "X2"], &Default::default());
    let s = check_proof(&p, &basis).unwrap();
    assert_eq!(switching_tests(&s, &basis).unwrap().len(), 1);
}
