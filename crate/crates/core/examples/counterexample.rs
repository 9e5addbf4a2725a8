//! The idempotent split search on the integer window: every admissible
//! endomorphism of the free module is enumerated and its descent checked.

use gradalg::counterexample::{
    admissible_lambdas, brute_force_split_search, build_scene, idempotent_diagonal_check,
    min_element_propagation,
};
use gradalg::Field;

fn main() {
    let f2 = Field::prime(2).unwrap();
    let s = build_scene(1, f2).unwrap();
    for lambda in admissible_lambdas(1, f2).unwrap().iter().take(3) {
        let e = s.endomorphism(lambda).unwrap();
        let a = idempotent_diagonal_check(&s, &e).unwrap();
        let desc = min_element_propagation(&s, &a);
        let rows: Vec<String> = lambda
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        println!(
            "λ = [{}]  I = {:?}  chain {:?}",
            rows.join(" | "),
            a.i_set,
            desc.chain
        );
    }

    for (d, p) in [(1, 2), (2, 2), (3, 2), (2, 3)] {
        let r = brute_force_split_search(d, Field::prime(p).unwrap()).unwrap();
        println!(
            "d = {d} over F_{p}: {} admissible, {} reach the edge, {} interior-minimal, consistent {}",
            r.admissible,
            r.reaches_edge,
            r.interior_minimal,
            r.consistent()
        );
    }
    match brute_force_split_search(4, f2) {
        Ok(_) => unreachable!(),
        Err(e) => println!("d = 4: {e}"),
    }
}
