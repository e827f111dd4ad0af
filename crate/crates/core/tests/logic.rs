//! Located proofs: localization, enumerations, transport and normal forms.

use std::collections::BTreeMap;

use goi::graph::{graph_equal, WeightedGraph};
use goi::logic::{
    check_proof, eliminate_cuts, eliminate_cuts_checked, interpret, mll_conclusion,
    parse_mll_proof, parse_proof, random_proof, transport_check, Atom, Basis, Formula, Proof,
    ProofShape,
};
use goi::project::{delocate, Delocation, Project};
use goi::truth::is_successful;
use goi::verify::{check_soundness, trial_rng, SAMPLE_PROOF};
use rand::Rng;

fn erased(s: &goi::logic::Sequent) -> Vec<Formula> {
    fn erase(f: &Formula) -> Formula {
        match f {
            Formula::Var(a) => Formula::Var(Atom::new(a.name.clone(), 0)),
            Formula::NegVar(a) => Formula::NegVar(Atom::new(a.name.clone(), 0)),
            Formula::Tensor(a, b) => Formula::tensor(erase(a), erase(b)),
            Formula::Par(a, b) => Formula::par(erase(a), erase(b)),
            Formula::One => Formula::One,
            Formula::Bottom => Formula::Bottom,
        }
    }
    s.formulas().iter().map(erase).collect()
}

/// Vertex renaming between two localizations of the same axioms.
fn renaming(p: &Proof, q: &Proof, basis: &Basis) -> Delocation {
    let mut pairs = Vec::new();
    for (a, b) in p.axioms().into_iter().zip(q.axioms()) {
        for (x, y) in [(a.positive(), b.positive()), (a.negative(), b.negative())] {
            for layer in 0..basis.size_of(&x.name).unwrap() {
                pairs.push((
                    basis.vertex(&x, layer).unwrap(),
                    basis.vertex(&y, layer).unwrap(),
                ));
            }
        }
    }
    Delocation::new(pairs).unwrap()
}

#[test]
fn sample_proof_localizes_from_its_erasure() {
    let file = parse_proof(SAMPLE_PROOF).unwrap();
    let conclusion = check_proof(&file.proof, &file.basis).unwrap();
    let mll = file.proof.erase();
    assert_eq!(
        mll_conclusion(&mll).unwrap().formulas(),
        &erased(&conclusion)[..]
    );

    // The cut needs equal positions on both sides, so reuse the original ones.
    let positions: Vec<(u64, u64)> = file.proof.axioms().iter().map(|a| (a.pos, a.neg)).collect();
    let again = mll
        .localize(|k, positive| {
            if positive {
                positions[k].0
            } else {
                positions[k].1
            }
        })
        .unwrap();
    assert_eq!(again, file.proof);
}

#[test]
fn unlocated_proofs_parse_and_localize() {
    let mll = parse_mll_proof("(par (ex (tensor (ax A) (ax B)) 0 1))").unwrap();
    assert_eq!(
        mll_conclusion(&mll).unwrap().to_string(),
        "⊢ B(0), A(0) ⅋ (A(0)^⊥ ⊗ B(0)^⊥)"
    );
    let p = mll.localize_default();
    let basis = Basis::new(["A", "B"], &BTreeMap::new());
    assert_eq!(
        check_proof(&p, &basis).unwrap().to_string(),
        "⊢ B(2), A(0) ⅋ (A(1)^⊥ ⊗ B(3)^⊥)"
    );
    assert!(check_proof(&mll.localize(|_, _| 0).unwrap(), &basis).is_err());
    let twice = parse_mll_proof("(mix (ax A) (ax A))").unwrap();
    assert!(twice.localize(|_, _| 0).is_err());
}

#[test]
fn enumerations_interpret_to_delocations() {
    let shape = ProofShape {
        sizes: [
            ("X1".to_string(), 2),
            ("X2".to_string(), 1),
            ("Y".to_string(), 3),
        ]
        .into(),
        ..ProofShape::default()
    };
    for trial in 0..40 {
        let mut rng = trial_rng(11, trial);
        let (p, basis) = random_proof(&mut rng, &shape);
        let normal = eliminate_cuts(&p, &basis).unwrap().proof;
        let mll = normal.erase();
        let offset: u64 = rng.gen_range(1..50);
        let first = mll.localize_default();
        let second = mll
            .localize(|k, positive| offset + 3 * k as u64 + u64::from(positive))
            .unwrap();
        let f = interpret(&first, &basis).unwrap();
        let g = interpret(&second, &basis).unwrap();
        let moved = delocate(&f, &renaming(&first, &second, &basis)).unwrap();
        assert!(moved.approx_eq(&g, 0.0), "{normal}");
    }
}

#[test]
fn tests_are_transported_along_axioms() {
    let shape = ProofShape {
        sizes: [("X1".to_string(), 2), ("X2".to_string(), 3)].into(),
        ..ProofShape::default()
    };
    for trial in 0..30 {
        let mut rng = trial_rng(5, trial);
        let (p, basis) = random_proof(&mut rng, &shape);
        let f = interpret(&p, &basis).unwrap();
        let conclusion = check_proof(&p, &basis).unwrap();
        let atoms = conclusion.atoms();
        let Some(&(atom, _)) = atoms.first() else {
            continue;
        };
        let size = basis.size_of(&atom.name).unwrap();
        let mut g = WeightedGraph::on(0..size);
        for _ in 0..3 {
            let (v, w) = (rng.gen_range(0..size), rng.gen_range(0..size));
            g.add_edge(v, w, rng.gen_range(0.1..=1.0)).unwrap();
        }
        let test = Project::new(rng.gen_range(0.0..1.0), g).unwrap();
        assert!(transport_check(&f, &basis, atom, &test).unwrap(), "{p}");
    }
}

#[test]
fn random_proofs_with_wide_atoms_are_sound() {
    let shape = ProofShape {
        sizes: [
            ("X1".to_string(), 3),
            ("X2".to_string(), 1),
            ("X3".to_string(), 2),
        ]
        .into(),
        max_rules: 14,
        depth: 4,
    };
    for trial in 0..60 {
        let mut rng = trial_rng(99, trial);
        let (p, basis) = random_proof(&mut rng, &shape);
        check_soundness(&p, &basis).unwrap_or_else(|e| panic!("{p}: {e}"));
    }
}

#[test]
fn every_rewrite_keeps_the_interpretation() {
    for trial in 0..100 {
        let mut rng = trial_rng(2024, trial);
        let (p, basis) = random_proof(&mut rng, &ProofShape::default());
        let normal = eliminate_cuts_checked(&p, &basis).unwrap();
        assert!(normal.mismatches.is_empty(), "{p}: {:?}", normal.mismatches);
        assert!(normal.rewrites >= p.count(goi::logic::Rule::Cut));
        let (f, g) = (
            interpret(&p, &basis).unwrap(),
            interpret(&normal.proof, &basis).unwrap(),
        );
        assert!(is_successful(&g).successful());
        assert!(graph_equal(f.graph(), g.graph(), 0.0));
    }
}

#[test]
fn ill_formed_proofs_are_rejected_with_their_rule() {
    let cases = [
        ("(ax X1 2 2)", "ax"),
        ("(tensor (ax X1 0 1) (ax X1 0 2))", "ax"),
        ("(tensor (ax X1 0 1) (ax X2 0 1))", "none"),
        ("(cut (ax X1 0 1) (ax X1 2 3))", "cut"),
        ("(par (one))", "par"),
        ("(ex (ax X1 0 1) 0 5)", "ex"),
    ];
    for (text, rule) in cases {
        let file = parse_proof(text).unwrap();
        if rule == "none" {
            assert!(check_proof(&file.proof, &file.basis).is_ok());
            continue;
        }
        let err = check_proof(&file.proof, &file.basis).unwrap_err();
        assert!(
            err.to_string().contains(&format!("`{rule}`")),
            "{text}: {err}"
        );
    }
}
