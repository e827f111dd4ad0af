//! Plugging, reduction and circuits on the small worked graphs: a 4-cycle
//! F, two loops G and a 2-cycle H.

use goi::graph::{one_circuits, plug, reduce, reduce_truncated, write_graph};
use goi::measure::measure_exact;
use goi::verify::worked_graphs;

fn main() -> goi::Result<()> {
    let (f, g, h) = worked_graphs();

    for (name, other) in [("G", &g), ("H", &h)] {
        let (zeros, ones) = plug(&f, other).color_histogram();
        println!("F plugged with {name}: {zeros} edges of color 0, {ones} of color 1");
        let r = reduce_truncated(&f, other, 8);
        println!("reduction with {name}:\n{}", write_graph(&r.graph));
        for p in &r.paths {
            println!("  path {} -> {} of length {}", p.src, p.dst, p.len());
        }
        let circuits = one_circuits(&f, other, 8);
        println!(
            "  {} circuit(s), measurement {}",
            circuits.len(),
            measure_exact(&f, other)?
        );
    }

    // Both reductions agree even though only H closes a circuit.
    assert_eq!(reduce(&f, &g)?.num_edges(), reduce(&f, &h)?.num_edges());
    Ok(())
}
