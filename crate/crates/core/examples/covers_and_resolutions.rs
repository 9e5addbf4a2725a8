//! Projective covers and minimal resolutions over a truncated polynomial
//! window, checked stage by stage.

use std::sync::Arc;

use gradalg::covers::{
    minimal_resolution, projective_cover, top, verify_resolution, ProjectiveSystem,
};
use gradalg::fixtures::{concentrated, nat_truncated};
use gradalg::idempotents::DEFAULT_SEED;
use gradalg::Field;

fn main() {
    let a = nat_truncated(Field::Rationals, 3, 9);
    let sys = ProjectiveSystem::new(&a, DEFAULT_SEED).unwrap();
    println!(
        "k[x]/x^3 on 0..9: {} indecomposable projectives {:?}",
        sys.classes.len(),
        sys.labels()
    );

    let k = Arc::new(concentrated(&a, a.category().arrow_index("0").unwrap()).unwrap());
    let t = top(&sys, &k).unwrap();
    let cover = projective_cover(&sys, &k).unwrap();
    println!("top of K: {:?}", t.dims);
    println!(
        "cover of K: summands {:?}, kernel small {}",
        cover.summands, cover.kernel_in_radical
    );

    let r = minimal_resolution(&sys, &k, 6).unwrap();
    let check = verify_resolution(&sys, &r).unwrap();
    println!(
        "minimal resolution of K, length {} (terminated {}):",
        r.length(),
        r.terminated
    );
    for (n, row) in r.betti(&sys).iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|e| format!("P({})^{}", e.generator, e.multiplicity))
            .collect();
        println!("  P_{n} = {}", cells.join(" + "));
    }
    println!("verified: {} {:?}", check.passed, check.failure);

    let p2 = sys.classes[2].module.clone();
    let rp = minimal_resolution(&sys, &p2, 3).unwrap();
    println!("a projective resolves in length {}", rp.length());
}
