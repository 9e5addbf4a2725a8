//! Perfectness verdicts with their certificates, plus a cross-check of
//! projective covers on sampled modules.

use gradalg::covers::ProjectiveSystem;
use gradalg::fixtures::{corpus, int_polynomial};
use gradalg::idempotents::DEFAULT_SEED;
use gradalg::perfectness::{check_perfect, cross_validate_perfectness, sample_modules};
use gradalg::Field;

fn main() {
    for field in [Field::Rationals, Field::prime(2).unwrap()] {
        println!("over {field}");
        for (name, a) in corpus(field) {
            let r = check_perfect(&a, DEFAULT_SEED).unwrap();
            println!("  {name:<17} {:?} via {:?}", r.verdict, r.theorem_used);
        }
    }
    let r = check_perfect(&int_polynomial(Field::Rationals, 2), DEFAULT_SEED).unwrap();
    println!("Z window: {:?}: {}", r.verdict, r.reason);

    let (_, a) = corpus(Field::Rationals)
        .into_iter()
        .find(|(n, _)| *n == "diamond")
        .unwrap();
    let sys = ProjectiveSystem::new(&a, DEFAULT_SEED).unwrap();
    let samples = sample_modules(&sys, DEFAULT_SEED, 2).unwrap();
    let cv = cross_validate_perfectness(&sys, &samples);
    println!(
        "diamond: {} sampled modules, {} cover failures",
        samples.len(),
        cv.failures
    );
}
