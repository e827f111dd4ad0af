//! Switching tests of a conclusion and their interaction with proofs.

use goi::logic::{check_proof, interpret, parse_proof, switching_tests};
use goi::project::{interaction, orthogonal};

fn main() -> goi::Result<()> {
    // The same two axioms, linked by a par or by a tensor.
    for text in [
        "(par (ex (tensor (ax X1 0 1) (ax X2 0 1)) 0 1))",
        "(tensor (ax X1 0 1) (ax X2 0 1))",
    ] {
        let file = parse_proof(text)?;
        let conclusion = check_proof(&file.proof, &file.basis)?;
        let f = interpret(&file.proof, &file.basis)?;
        println!("{conclusion}");
        for t in switching_tests(&conclusion, &file.basis)? {
            println!(
                "  switching {:?}: interaction {:.6}, orthogonal {}",
                t.switches,
                interaction(&f, &t.project)?,
                orthogonal(&f, &t.project)?
            );
        }
    }
    Ok(())
}
