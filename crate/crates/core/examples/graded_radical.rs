//! The radical of a category graded algebra computed through its total
//! hom algebra, and the radicals of hom spaces and modules it induces.

use std::sync::Arc;

use gradalg::fixtures::{nat_polynomial, upper_triangular_poset};
use gradalg::graded::{hom_space, projective};
use gradalg::perfectness::t_nilpotency_witness;
use gradalg::radical::{hom_radical, module_radical, nilpotency_index, GradedRadical};
use gradalg::Field;

fn main() {
    let q = Field::Rationals;
    let a = nat_polynomial(q, 3);
    let cat = a.category();
    let rad = GradedRadical::over_all_arrows(&a).unwrap();
    let b = rad.total.algebra();
    println!(
        "k[x] on 0..3: total hom algebra dim {}, radical dim {}, nilpotency index {:?}",
        b.dim(),
        rad.radical.dim(),
        nilpotency_index(b, &rad.radical)
    );

    let p: Vec<Arc<_>> = (0..=1)
        .map(|n| {
            projective(&a, cat.arrow_index(&n.to_string()).unwrap())
                .unwrap()
                .module
        })
        .collect();
    for (i, j) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let hom = hom_space(&p[i], &p[j]).unwrap();
        let j_rad = hom_radical(&p[i], &p[j]).unwrap();
        println!("  J(P{i}, P{j}) dim {} of {}", j_rad.dim(), hom.dim());
    }
    let parts = module_radical(&p[1], &rad).unwrap();
    let dims: Vec<String> = parts
        .iter()
        .zip(p[1].dims())
        .map(|(s, d)| format!("{}/{d}", s.dim()))
        .collect();
    println!("  rad P1 per degree: {}", dims.join(" "));

    let (ut, _) = upper_triangular_poset(q);
    let gens: Vec<usize> = (0..ut.category().arrow_count()).collect();
    let w = t_nilpotency_witness(&ut, &gens).unwrap();
    println!(
        "upper triangular: J(E) has index {} over {:?}",
        w.index, w.generators
    );
    for link in &w.chain {
        println!("  {} -> {}", link.source, link.target);
    }
}
