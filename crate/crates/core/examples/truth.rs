//! Successful projects: symmetric partial matchings with zero wager.

use std::collections::BTreeSet;

use goi::graph::WeightedGraph;
use goi::project::{interaction, Project};
use goi::truth::{is_successful, split_successful_tensor, Split};

fn main() -> goi::Result<()> {
    let f = Project::from_graph(WeightedGraph::new(
        [0, 1, 2, 3],
        [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)],
    )?);
    println!("matching is successful: {}", is_successful(&f).successful());

    let half = Project::from_graph(WeightedGraph::new([0, 1], [(0, 1, 0.5), (1, 0, 0.5)])?);
    println!("half-weight matching: {:?}", is_successful(&half).reasons);

    for left in [[0, 1], [0, 2]] {
        let left: BTreeSet<_> = left.into();
        let right: BTreeSet<_> = f.carrier().difference(&left).copied().collect();
        match split_successful_tensor(&f, &left, &right)? {
            Split::Tensor(a, b) => println!(
                "{left:?} | {right:?}: tensor of parts on {:?} and {:?}",
                a.carrier(),
                b.carrier()
            ),
            Split::Crossing { edge, counter_test } => println!(
                "{left:?} | {right:?}: edge {edge:?} crosses, counter-test interaction {}",
                interaction(&f, &counter_test)?
            ),
        }
    }
    Ok(())
}
