//! Writes the bundled fixture algebras as scene files.
//!
//! cargo run --example scene_files -- crates/core/fixtures

use std::collections::BTreeMap;
use std::path::PathBuf;

use gradalg::algebra::FdAlgebra;
use gradalg::fixtures::{
    concentrated, cyclic_group_graded, diamond, int_module_x, int_polynomial, kronecker,
    nat_polynomial, nat_truncated, point_algebra, upper_triangular_poset,
};
use gradalg::graded::{GradedAlgebra, GradedModule};
use gradalg::scene::{export_scene, to_json, ModuleSpec};
use gradalg::Field;

fn projectives(a: &GradedAlgebra, ids: &[(&str, &str)]) -> BTreeMap<String, ModuleSpec> {
    let cat = a.category();
    ids.iter()
        .map(|(name, id)| {
            cat.arrow_index(id).expect("arrow");
            (
                name.to_string(),
                ModuleSpec::Projective {
                    projective: id.to_string(),
                },
            )
        })
        .collect()
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).expect("output directory");
    let q = Field::Rationals;
    let mut files: Vec<(&str, String)> = Vec::new();

    let (ut, _) = upper_triangular_poset(q);
    let s2 = concentrated(&ut, ut.category().arrow_index("2->2").unwrap()).unwrap();
    let mut f = export_scene(&ut, &[("S2", &s2)]);
    f.modules
        .extend(projectives(&ut, &[("P2", "2->2"), ("P1", "1->1")]));
    files.push(("upper_triangular.json", to_json(&f)));

    let cubic = nat_truncated(q, 3, 9);
    let k = concentrated(&cubic, cubic.category().arrow_index("0").unwrap()).unwrap();
    let mut f = export_scene(&cubic, &[("K", &k)]);
    f.modules
        .extend(projectives(&cubic, &[("P0", "0"), ("P2", "2")]));
    files.push(("nat_cubic_window.json", to_json(&f)));

    let poly = nat_polynomial(q, 3);
    let mut f = export_scene(&poly, &[]);
    f.modules
        .extend(projectives(&poly, &[("P0", "0"), ("P1", "1")]));
    files.push(("nat_polynomial.json", to_json(&f)));

    let point = point_algebra(&FdAlgebra::truncated_polynomial(q, 3));
    let reg = GradedModule::regular(&point);
    files.push((
        "point_cubic.json",
        to_json(&export_scene(&point, &[("R", &reg)])),
    ));

    let z2 = cyclic_group_graded(q, 2);
    let mut f = export_scene(&z2, &[]);
    f.modules
        .extend(projectives(&z2, &[("Pe", "g0"), ("Pg", "g1")]));
    files.push(("z2_group.json", to_json(&f)));

    let f2 = Field::prime(2).unwrap();
    let z2f = cyclic_group_graded(f2, 2);
    let mut f = export_scene(&z2f, &[]);
    f.modules.extend(projectives(&z2f, &[("Pe", "g0")]));
    files.push(("z2_group_f2.json", to_json(&f)));

    let dia = diamond(q);
    let mut f = export_scene(&dia, &[]);
    f.modules
        .extend(projectives(&dia, &[("P0", "0->0"), ("P1", "1->1")]));
    files.push(("diamond.json", to_json(&f)));

    let kr = kronecker(q);
    let mut f = export_scene(&kr, &[]);
    f.modules
        .extend(projectives(&kr, &[("P1", "e1"), ("P2", "e2")]));
    files.push(("kronecker.json", to_json(&f)));

    let int = int_polynomial(q, 1);
    let x = int_module_x(&int, 1).unwrap();
    files.push((
        "int_window.json",
        to_json(&export_scene(&int, &[("X", &x)])),
    ));

    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text + "\n").expect("write fixture");
        println!("{}", path.display());
    }
}
