//! Random proofs with cuts, checked against their normal forms.

use goi::logic::{eliminate_cuts, random_proof, ProofShape, Rule};
use goi::verify::{check_soundness, trial_rng};

fn main() {
    let shape = ProofShape::default();
    for trial in 0..5 {
        let mut rng = trial_rng(1, trial);
        let (p, basis) = random_proof(&mut rng, &shape);
        let normal = eliminate_cuts(&p, &basis).expect("generated proofs check");
        println!("{p}");
        println!("  {} cut(s) -> {}", p.count(Rule::Cut), normal.proof);
        println!("  sound: {:?}", check_soundness(&p, &basis));
    }
}
