//! The simplified reduction of two symmetric graphs from the feedback
//! equation, checked against its block formula.

use std::collections::BTreeSet;

use goi::graph::SimpleGraph;
use goi::matrix::{adjacency_matrix, feedback_blocks, feedback_solve, is_operator_graph};

fn main() -> goi::Result<()> {
    let f = SimpleGraph::new(
        [0, 1, 2],
        [((0, 1), 0.6), ((1, 0), 0.6), ((1, 2), 0.5), ((2, 1), 0.5)],
    )?;
    let g = SimpleGraph::new(
        [1, 2, 3],
        [((1, 2), 0.4), ((2, 1), 0.4), ((2, 3), 0.8), ((3, 2), 0.8)],
    )?;
    println!(
        "F and G are operator graphs: {} {}",
        is_operator_graph(&f),
        is_operator_graph(&g)
    );

    let s = feedback_solve(&f, &g)?;
    for ((v, w), x) in s.weights() {
        println!("{v} -> {w}: {x:.12}");
    }
    let blocks = feedback_blocks(&f, &g)?;
    let delta: BTreeSet<_> = blocks.index().iter().copied().collect();
    let diff = adjacency_matrix(&s, &delta)?.max_abs_diff(&blocks);
    println!("largest difference from the block formula: {diff:e}");
    println!("result is an operator graph: {}", is_operator_graph(&s));
    Ok(())
}
