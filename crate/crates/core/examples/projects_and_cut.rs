//! Projects, their interaction, tensor and cut, and the fax of a
//! delocation.

use goi::graph::WeightedGraph;
use goi::project::{
    cut, delocate, fax, interaction, orthogonal, tensor, write_project, Delocation, Project,
};

fn main() -> goi::Result<()> {
    let a = Project::new(0.0, WeightedGraph::new([0, 1], [(0, 1, 1.0), (1, 0, 1.0)])?)?;
    let test = Project::new(0.5, WeightedGraph::new([0, 1], [(0, 1, 0.5)])?)?;
    println!("interaction: {}", interaction(&a, &test)?);
    println!("orthogonal: {}", orthogonal(&a, &test)?);

    // Move the test to {10, 11} and connect it to a's carrier with a fax.
    let d = Delocation::new([(0, 10), (1, 11)])?;
    let moved = delocate(&test, &d)?;
    let link = fax(&d)?;
    println!("fax:\n{}", write_project(&link));
    let through = cut(&link, &tensor(&a, &Project::unit())?)?;
    println!("a sent through the fax:\n{}", write_project(&through));
    println!(
        "interaction after moving: {}",
        interaction(&moved, &through)?
    );
    Ok(())
}
