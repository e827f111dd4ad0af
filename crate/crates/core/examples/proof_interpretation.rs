//! Checking, interpreting and normalizing a located proof.

use goi::graph::graph_equal;
use goi::logic::{check_proof, eliminate_cuts_checked, interpret, parse_proof, write_proof};
use goi::project::write_project;
use goi::verify::SAMPLE_PROOF;

fn main() -> goi::Result<()> {
    let file = parse_proof(SAMPLE_PROOF)?;
    let conclusion = check_proof(&file.proof, &file.basis)?;
    println!("{conclusion}");

    let f = interpret(&file.proof, &file.basis)?;
    println!("{}", write_project(&f));

    let normal = eliminate_cuts_checked(&file.proof, &file.basis)?;
    println!(
        "after {} rewrite(s):\n{}",
        normal.rewrites,
        write_proof(&normal.proof, &file.basis)
    );
    let g = interpret(&normal.proof, &file.basis)?;
    println!(
        "same interpretation: {}",
        graph_equal(f.graph(), g.graph(), 0.0)
    );
    Ok(())
}
