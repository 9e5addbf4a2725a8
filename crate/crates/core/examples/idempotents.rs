//! Complete primitive idempotent sets, locality, and the splitting of a
//! projective into indecomposable summands.

use std::sync::Arc;

use gradalg::algebra::FdAlgebra;
use gradalg::fixtures::upper_triangular_poset;
use gradalg::graded::{direct_sum, projective, GradedHom};
use gradalg::idempotents::{complete_primitive_set, decompose_projective, is_local, DEFAULT_SEED};
use gradalg::Field;

fn main() {
    let q = Field::Rationals;
    for (name, a) in [
        ("T_3", FdAlgebra::upper_triangular(q, 3)),
        ("M_2", FdAlgebra::full_matrix(q, 2)),
        ("k x k x k", FdAlgebra::diagonal(q, 3)),
    ] {
        let set = complete_primitive_set(&a, DEFAULT_SEED).unwrap();
        println!(
            "{name}: {} idempotents, complete primitive {}",
            set.elements.len(),
            set.is_complete_primitive()
        );
        for e in &set.elements {
            let v: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            println!("  [{}]", v.join(" "));
        }
    }

    let local = is_local(&FdAlgebra::truncated_polynomial(q, 4), DEFAULT_SEED).unwrap();
    println!("k[x]/x^4 local: {}", local.local);
    match is_local(&FdAlgebra::quadratic(q, -1), DEFAULT_SEED) {
        Ok(c) => println!("Q[i] local: {}", c.local),
        Err(e) => println!("Q[i]: {e}"),
    }

    let (ut, _) = upper_triangular_poset(q);
    let cat = ut.category();
    let p1 = projective(&ut, cat.arrow_index("1->1").unwrap())
        .unwrap()
        .module;
    let p2 = projective(&ut, cat.arrow_index("2->2").unwrap())
        .unwrap()
        .module;
    let sum: Arc<_> = direct_sum(&[p1.clone(), p2, p1]).unwrap().module;
    let dec = decompose_projective(&sum, DEFAULT_SEED).unwrap();
    println!("P1 + P2 + P1 splits into {} summands:", dec.summands.len());
    for s in &dec.summands {
        println!(
            "  dims {:?}  local endomorphisms {}",
            s.module.dims(),
            s.local
        );
    }
    let identity = GradedHom::identity(&sum);
    println!(
        "sum of i_j p_j is the identity: {}",
        dec.resum().maps() == identity.maps()
    );
}
