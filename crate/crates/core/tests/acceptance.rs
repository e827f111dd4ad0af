//! The acceptance gate: every criterion at its stated size and tolerance,
//! one line per criterion. Runs without the test harness so the lines are
//! always printed.

use goi::verify::{assoc_counterexample, run_suite, Suite, SuiteReport, VerifyOptions};

const SEED: u64 = 42;

fn suite(suite: Suite, trials: usize) -> SuiteReport {
    run_suite(
        suite,
        &VerifyOptions {
            trials,
            seed: SEED,
            max_vertices: 6,
        },
    )
}

fn summary(report: &SuiteReport) -> (bool, String) {
    let passed = report.trials - report.failures.len();
    let mut detail = format!("{passed}/{} trials", report.trials);
    if let Some(f) = report.failures.first() {
        detail.push_str(&format!(
            ", first failure at trial {}: {}",
            f.trial, f.message
        ));
    }
    (report.passed(), detail)
}

type Criterion = (&'static str, Box<dyn Fn() -> (bool, String)>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "1 adjunction of measurements",
            Box::new(|| summary(&suite(Suite::Adjunction, 1000))),
        ),
        (
            "2 circuit-count adjunction",
            Box::new(|| summary(&suite(Suite::Circuits, 500))),
        ),
        (
            "3 trace series vs log-determinant",
            Box::new(|| summary(&suite(Suite::Routes, 500))),
        ),
        (
            "4 simplification invariance",
            Box::new(|| summary(&suite(Suite::Invariance, 500))),
        ),
        (
            "5 feedback equation",
            Box::new(|| summary(&suite(Suite::Feedback, 200))),
        ),
        (
            "6 associativity",
            Box::new(|| {
                let (ok, detail) = summary(&suite(Suite::Assoc, 300));
                let counter = assoc_counterexample().unwrap_or(false);
                (
                    ok && counter,
                    format!("{detail}, shared-vertex counterexample differs: {counter}"),
                )
            }),
        ),
        (
            "7 category laws",
            Box::new(|| summary(&suite(Suite::Category, 20))),
        ),
        ("8 truth", Box::new(|| summary(&suite(Suite::Truth, 300)))),
        (
            "9 soundness and cut invariance",
            Box::new(|| summary(&suite(Suite::Soundness, 101))),
        ),
        (
            "10 worked examples",
            Box::new(|| summary(&suite(Suite::Examples, 100))),
        ),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let (ok, detail) = check();
        println!(
            "{} criterion {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
