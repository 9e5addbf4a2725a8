//! Jacobson radicals of small algebras, including group algebras in
//! characteristic dividing the group order.

use gradalg::algebra::FdAlgebra;
use gradalg::radical::{radical_certificate, RadicalMethod};
use gradalg::Field;

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect()
}

fn main() {
    let q = Field::Rationals;
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let cases = [
        ("k[x]/x^3 over Q", FdAlgebra::truncated_polynomial(q, 3)),
        ("T_3 over Q", FdAlgebra::upper_triangular(q, 3)),
        ("M_2 over F_2", FdAlgebra::full_matrix(f2, 2)),
        (
            "F_2[Z/2]",
            FdAlgebra::group_algebra(f2, &cyclic_table(2)).unwrap(),
        ),
        (
            "F_3[Z/3]",
            FdAlgebra::group_algebra(f3, &cyclic_table(3)).unwrap(),
        ),
        (
            "Q[Z/3]",
            FdAlgebra::group_algebra(q, &cyclic_table(3)).unwrap(),
        ),
    ];
    for (name, a) in cases {
        let c = radical_certificate(&a).unwrap();
        let method = match c.method {
            RadicalMethod::TraceForm => "trace form",
            RadicalMethod::TraceFiltration => "trace filtration",
        };
        println!(
            "{name:<18} dim {}  rad {}  J^{} = 0  A/J semisimple {}  ({method})",
            c.algebra_dim, c.radical_dim, c.nilpotency_index, c.quotient_semisimple
        );
    }
}
