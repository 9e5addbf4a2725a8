//! Exact row reduction, kernels and subspace arithmetic over Q and F_p.

use gradalg::{Field, Matrix, Subspace};

fn main() {
    for field in [
        Field::Rationals,
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
    ] {
        let m = Matrix::from_i64(field, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let (r, pivots) = m.rref();
        let k = m.kernel_basis();
        println!("over {field}: rank {}  pivots {pivots:?}", m.rank());
        println!("rref:\n{r}kernel rows:\n{k}");

        let u = Subspace::from_matrix(&Matrix::from_i64(field, &[&[1, 0, 1], &[0, 1, 0]]));
        let v = Subspace::from_matrix(&Matrix::from_i64(field, &[&[1, 1, 1]]));
        println!(
            "dim U {} + dim V {} = dim(U+V) {} + dim(U∩V) {}\n",
            u.dim(),
            v.dim(),
            u.sum(&v).dim(),
            u.intersection(&v).dim()
        );
    }
    let half = Field::Rationals.parse("-3/6").unwrap();
    println!("-3/6 = {half}, inverse {}", half.inv().unwrap());
}
