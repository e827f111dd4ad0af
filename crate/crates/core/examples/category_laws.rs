//! The bijections behind the monoidal structure and sampled category laws.

use goi::category::{
    alpha, alpha_inverse, check_coherence_samples, dualizing, gamma, phi, phi_inverse, unitor,
};

fn main() {
    for n in 0..8 {
        println!(
            "n={n}: phi^-1={:?} gamma={} alpha={} alpha^-1={} unitor={} dualizing={}",
            phi_inverse(n),
            gamma(n),
            alpha(n),
            alpha_inverse(n),
            unitor(n),
            dualizing(n)
        );
    }
    assert_eq!(phi(phi_inverse(41)), 41);

    let report = check_coherence_samples(7, 1 << 12, 25);
    println!(
        "{} checks, {} failures",
        report.checks,
        report.failures.len()
    );
    for f in &report.failures {
        println!("  {f}");
    }
}
