use std::sync::Arc;

use super::*;
use crate::algebra::FdAlgebra;
use crate::category::IndexCategory;
use crate::fixtures;

fn q() -> Field {
    Field::Rationals
}

fn arrow(a: &GradedAlgebra, id: &str) -> usize {
    a.category().arrow_index(id).unwrap()
}

#[test]
fn point_and_window_algebras_validate() {
    assert!(fixtures::point_field(q()).validate().is_clean());
    assert!(fixtures::nat_polynomial(q(), 3).validate().is_clean());
}

#[test]
fn planted_associativity_break_is_reported() {
    // a1 a1 = 2 a2, a1 a2 = 3 a3, a2 a1 = a3: (a1 a1) a1 = 2 a3 but a1 (a1 a1) = 6 a3.
    let cat =
        Arc::new(IndexCategory::interval_window(crate::category::Lattice::Nat, 0, 3).unwrap());
    let c2 = cat.clone();
    let a = GradedAlgebra::from_fn(
        q(),
        cat,
        vec![1; 4],
        vec![vec![q().one()]],
        move |x, _, y, _| {
            let (dx, dy) = (c2.coordinates(x).unwrap()[0], c2.coordinates(y).unwrap()[0]);
            Ok(vec![match (dx, dy) {
                (1, 1) => q().from_i64(2),
                (1, 2) => q().from_i64(3),
                _ => q().one(),
            }])
        },
    )
    .unwrap();
    let report = a.validate();
    assert!(report
        .violations
        .iter()
        .any(|v| matches!(v, GradedViolation::Associativity { .. })));
}

#[test]
fn modules_validate() {
    let a = fixtures::nat_polynomial(q(), 3);
    assert!(GradedModule::regular(&a).validate().is_clean());
    let z = fixtures::int_polynomial(q(), 2);
    let x = fixtures::int_module_x(&z, 2).unwrap();
    assert!(x.validate().is_clean());
    // a_k x_l = 2 x_{k+l} for k > 0 breaks a(bm) = (ab)m.
    let cat = z.category().clone();
    let dims = x.dims().to_vec();
    let bad = GradedModule::from_fn(z.clone(), dims.clone(), |a, _, b, _| {
        let c = cat.compose(a, b).arrow().unwrap();
        let k = cat.coordinates(a).unwrap()[0];
        let mut v = zero_vector(q(), dims[c]);
        if dims[c] == 1 {
            v[0] = if k > 0 { q().from_i64(2) } else { q().one() };
        }
        Ok(v)
    })
    .unwrap();
    assert!(!bad.validate().is_clean());
}

#[test]
fn free_module_dimensions() {
    let a = fixtures::nat_polynomial(q(), 3);
    let p1 = projective(&a, arrow(&a, "1")).unwrap();
    assert_eq!(p1.module.dims(), &[0, 1, 1, 1]);
    assert!(p1.module.validate().is_clean());
    let unit = fixtures::point_field(q());
    assert_eq!(projective(&unit, 0).unwrap().module.dims(), &[1]);
    // additivity
    let v = [1, 0, 2, 0];
    let w = [0, 1, 0, 1];
    let sum: Vec<usize> = v.iter().zip(&w).map(|(x, y)| x + y).collect();
    let fv = free_module(&a, &v).unwrap().module.total_dim();
    let fw = free_module(&a, &w).unwrap().module.total_dim();
    assert_eq!(free_module(&a, &sum).unwrap().module.total_dim(), fv + fw);
}

#[test]
fn counit_is_surjective() {
    let a = fixtures::nat_polynomial(q(), 3);
    let reg = Arc::new(GradedModule::regular(&a));
    let (_, eps) = counit(&reg).unwrap();
    assert!(eps.is_surjective() && eps.is_equivariant());
    let z = fixtures::int_polynomial(q(), 2);
    let x = Arc::new(fixtures::int_module_x(&z, 2).unwrap());
    let (free, eps) = counit(&x).unwrap();
    assert!(eps.is_surjective());
    assert!(eps.is_equivariant());
    // a_0 ⊗ x_l -> x_l
    let zero = arrow(&z, "0");
    for (b, labels) in free.basis.iter().enumerate() {
        for (k, l) in labels.iter().enumerate() {
            if l.alpha == zero {
                assert_eq!(eps.map(b).column(k), vec![q().one()]);
            }
        }
    }
}

#[test]
fn divisor_spaces() {
    let unit = fixtures::point_field(q());
    let d = unit.divisor_space(0, 0).unwrap();
    assert_eq!(d.ring.unwrap().dim(), 1);
    let a = fixtures::nat_polynomial(q(), 3);
    let two = arrow(&a, "2");
    let d = a.divisor_space(two, two).unwrap();
    assert_eq!(d.summands, vec![arrow(&a, "0")]);
    assert_eq!(d.dim, 1);
    let d = a.divisor_space(arrow(&a, "3"), arrow(&a, "1")).unwrap();
    assert_eq!(d.summands, vec![two]);
}

#[test]
fn poset_divisor_ring_is_corner() {
    let (a, t) = fixtures::upper_triangular_poset(q());
    for (name, e) in [("1", t.basis_element(0)), ("2", t.basis_element(2))] {
        let id = arrow(&a, &format!("{name}->{name}"));
        let ring = a.divisor_space(id, id).unwrap().ring.unwrap();
        let (corner, _) = t.corner(&e).unwrap();
        assert_eq!(ring.dim(), corner.dim());
    }
    let up = arrow(&a, "2->1");
    let ring = a.divisor_space(up, up).unwrap().ring.unwrap();
    assert_eq!(ring.dim(), 1);
    assert_eq!(a.dim(up), 1);
}

#[test]
fn poset_construction_checks() {
    let kk = FdAlgebra::diagonal(q(), 2);
    let anti = Arc::new(
        IndexCategory::from_poset(
            vec!["1".into(), "2".into()],
            &[("1".into(), "1".into()), ("2".into(), "2".into())],
        )
        .unwrap(),
    );
    let ids = vec![
        ("1".to_string(), kk.basis_element(0)),
        ("2".to_string(), kk.basis_element(1)),
    ];
    let (g, _) = build_poset_graded(&kk, &ids, anti.clone()).unwrap();
    assert_eq!(g.dims(), &[1, 1]);
    assert!(g.validate().is_clean());
    assert!(matches!(
        fixtures::upper_triangular_over(q(), &["1", "2"]),
        Err(Error::TriangularityViolation(_))
    ));
    let bad = vec![
        ("1".to_string(), kk.basis_element(0)),
        ("2".to_string(), kk.basis_element(0)),
    ];
    assert!(matches!(
        build_poset_graded(&kk, &bad, anti),
        Err(Error::IdempotentError(_))
    ));
}

#[test]
fn hom_spaces() {
    let unit = fixtures::point_field(q());
    let k = Arc::new(GradedModule::regular(&unit));
    assert_eq!(hom_space(&k, &k).unwrap().dim(), 1);
    let a = fixtures::nat_polynomial(q(), 3);
    let p1 = projective(&a, arrow(&a, "1")).unwrap().module;
    let p0 = projective(&a, arrow(&a, "0")).unwrap().module;
    assert_eq!(hom_space(&p1, &p0).unwrap().dim(), 1);
    assert_eq!(hom_space(&p0, &p1).unwrap().dim(), 0);
}

#[test]
fn adjunction_dimension_on_corpus() {
    for (name, a) in fixtures::corpus(q()) {
        let reg = Arc::new(GradedModule::regular(&a));
        for b in 0..a.category().arrow_count() {
            let p = projective(&a, b).unwrap().module;
            let h = hom_space(&p, &reg).unwrap();
            assert_eq!(h.dim(), reg.dim(b), "{name} at {b}");
        }
    }
}

#[test]
fn total_algebra_dimensions() {
    let unit = fixtures::point_field(q());
    assert_eq!(TotalHomAlgebra::over_all_arrows(&unit).unwrap().dim(), 1);
    let a = fixtures::nat_polynomial(q(), 2);
    let e = TotalHomAlgebra::over_all_arrows(&a).unwrap();
    assert_eq!(e.dim(), 6);
    assert_eq!(e.algebra().associativity_violation(), None);
    let (t, _) = fixtures::upper_triangular_poset(q());
    let e = TotalHomAlgebra::over_all_arrows(&t).unwrap();
    assert_eq!(e.idempotents().len(), 3);
    let mut sum = zero_vector(q(), e.dim());
    for x in e.idempotents() {
        sum = crate::field::add_vectors(&sum, x);
        assert!(e.algebra().is_idempotent(x));
    }
    assert_eq!(&sum, e.algebra().one());
    for p in 0..3 {
        for r in 0..3 {
            let gp = e.generators()[p];
            let gr = e.generators()[r];
            let dp = t.divisor_space(gp, gr).unwrap().dim;
            assert_eq!(e.block_dim(p, r), dp);
        }
    }
}

#[test]
fn total_product_is_composition() {
    let a = fixtures::nat_polynomial(q(), 3);
    let e = TotalHomAlgebra::over_all_arrows(&a).unwrap();
    let projs: Vec<FreeModule> = (0..4).map(|c| projective(&a, c).unwrap()).collect();
    let as_hom = |v: &Vector, p: usize, r: usize| {
        let m = e.block_entries(v, p, r);
        yoneda_hom(&projs[p], &projs[r].module, &m)
    };
    for x in 0..e.dim() {
        for y in 0..e.dim() {
            let (bx, by) = (e.basis()[x], e.basis()[y]);
            if bx.col != by.row {
                continue;
            }
            let xy = e
                .algebra()
                .mul(&e.algebra().basis_element(x), &e.algebra().basis_element(y));
            let f = as_hom(&e.algebra().basis_element(x), bx.row, bx.col);
            let g = as_hom(&e.algebra().basis_element(y), by.row, by.col);
            assert_eq!(as_hom(&xy, bx.row, by.col).flatten(), g.after(&f).flatten());
        }
    }
}

#[test]
fn total_round_trip() {
    let z = fixtures::int_polynomial(q(), 2);
    let x = fixtures::int_module_x(&z, 2).unwrap();
    let e = TotalHomAlgebra::over_all_arrows(&z).unwrap();
    let fd = module_to_total(&x, &e).unwrap();
    assert_eq!(fd.dim(), 5);
    let (back, _) = total_to_module(&fd, &e, &z).unwrap();
    assert_eq!(back.dims(), x.dims());
    for a in 0..x.arrow_count() {
        for b in 0..x.arrow_count() {
            assert_eq!(back.action(a, b), x.action(a, b));
        }
    }
    let a = fixtures::nat_polynomial(q(), 3);
    let small = TotalHomAlgebra::new(&a, &[0]).unwrap();
    let reg = GradedModule::regular(&a);
    assert!(matches!(
        module_to_total(&reg, &small),
        Err(Error::InfiniteSupport(_))
    ));
}

#[test]
fn direct_sum_and_quotients() {
    let a = fixtures::nat_polynomial(q(), 3);
    let p0 = projective(&a, 0).unwrap().module;
    let p1 = projective(&a, 1).unwrap().module;
    let ds = direct_sum(&[p0.clone(), p1.clone()]).unwrap();
    assert!(ds.module.validate().is_clean());
    for (i, pr) in ds.inclusions.iter().zip(&ds.projections) {
        assert!(i.is_equivariant() && pr.is_equivariant());
        assert_eq!(
            pr.after(i).flatten(),
            GradedHom::identity(i.source()).flatten()
        );
    }
    let sub = p0.generated_submodule(&[(1, vec![q().one()])]);
    assert_eq!(
        sub.iter().map(Subspace::dim).collect::<Vec<_>>(),
        vec![0, 1, 1, 1]
    );
    let quo = p0.quotient(&sub).unwrap();
    assert_eq!(quo.dims(), &[1, 0, 0, 0]);
    assert!(quo.validate().is_clean());
}
