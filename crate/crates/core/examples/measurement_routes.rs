//! The two ways of measuring circuits: enumeration up to a length and the
//! log-determinant, plus the trace series between them.

use std::collections::BTreeSet;

use goi::graph::{simplify, WeightedGraph};
use goi::matrix::{adjacency_matrix, log_det_one_minus, trace_series_partial};
use goi::measure::{measure_exact, measure_truncated};

fn main() -> goi::Result<()> {
    let g = WeightedGraph::new(
        [1, 2, 3],
        [(1, 2, 0.5), (2, 1, 0.5), (2, 3, 0.9), (3, 3, 0.2)],
    )?;
    let h = WeightedGraph::new([1, 2, 3], [(2, 1, 0.7), (1, 2, 0.3), (3, 2, 0.6)])?;

    for len in [2, 4, 6, 8, 12] {
        println!(
            "enumeration up to {len:>2}: {}",
            measure_truncated(&g, &h, len)
        );
    }
    println!("log-determinant:         {}", measure_exact(&g, &h)?);

    let over: BTreeSet<_> = [1, 2, 3].into();
    let m = adjacency_matrix(&simplify(&g), &over)?.mul(&adjacency_matrix(&simplify(&h), &over)?);
    let series = trace_series_partial(&m, 200);
    println!(
        "trace series after 10, 200 terms: {} {}",
        series[9], series[199]
    );
    println!("-ln det(I - M_G M_H) = {}", log_det_one_minus(&m));
    Ok(())
}
