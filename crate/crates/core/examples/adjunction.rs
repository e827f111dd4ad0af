//! Measuring against a union splits into measuring against one part and
//! then against the reduction with the other.

use goi::graph::WeightedGraph;
use goi::measure::check_adjunction;

fn main() -> goi::Result<()> {
    let f = WeightedGraph::new(
        [0, 1, 2, 3],
        [
            (0, 1, 0.5),
            (1, 2, 0.8),
            (2, 3, 0.4),
            (3, 0, 0.9),
            (1, 0, 0.3),
        ],
    )?;
    let g = WeightedGraph::new([0, 1], [(1, 0, 0.6), (0, 0, 0.2)])?;
    let h = WeightedGraph::new([2, 3], [(3, 2, 0.7)])?;

    let a = check_adjunction(&f, &g, &h)?;
    println!("<F, G ∪ H>  = {}", a.whole.value);
    println!("<F, G>      = {}", a.first.value);
    println!("<F∷G, H>    = {}", a.second.value);
    println!("sum matches: {}", a.holds);
    Ok(())
}
