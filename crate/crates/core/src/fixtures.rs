//! Small named algebras used throughout the tests, the examples and the CLI.

use std::sync::Arc;

use crate::algebra::FdAlgebra;
use crate::category::{IndexCategory, Lattice};
use crate::error::{Error, Result};
use crate::field::{unit_vector, zero_vector, Field, Vector};
use crate::graded::{build_poset_graded, GradedAlgebra, GradedModule};

fn s(x: &str) -> String {
    x.to_string()
}

/// An ordinary algebra graded over the one-arrow category.
pub fn point_algebra(a: &FdAlgebra) -> Arc<GradedAlgebra> {
    let cat = IndexCategory::explicit(
        vec![s("*")],
        vec![(s("1"), s("*"), s("*"))],
        vec![(s("*"), s("1"))],
        vec![(s("1"), s("1"), s("1"))],
    )
    .expect("point category");
    let field = a.field();
    let alg = GradedAlgebra::from_fn(
        field,
        Arc::new(cat),
        vec![a.dim()],
        vec![a.one().clone()],
        |_, i, _, j| Ok(a.basis_product(i, j).to_vec()),
    )
    .expect("valid algebra");
    Arc::new(alg)
}

/// The field itself over the one-arrow category.
pub fn point_field(field: Field) -> Arc<GradedAlgebra> {
    point_algebra(&FdAlgebra::diagonal(field, 1))
}

/// `A_k = K a_k` on the window `[lo, hi]` of `N` or `Z`, with
/// `a_k a_l = a_{k+l}` and `A_k = 0` for `k < 0` or `k >= nil`.
pub fn monomial_window(
    field: Field,
    lattice: Lattice,
    lo: i64,
    hi: i64,
    nil: Option<i64>,
) -> Arc<GradedAlgebra> {
    let cat = Arc::new(IndexCategory::interval_window(lattice, lo, hi).expect("window"));
    let degree = |a: usize| cat.coordinates(a).unwrap()[0];
    let carries = |k: i64| k >= 0 && nil.is_none_or(|n| k < n);
    let dims: Vec<usize> = (0..cat.arrow_count())
        .map(|a| usize::from(carries(degree(a))))
        .collect();
    let units = vec![vec![field.one()]];
    let alg = GradedAlgebra::from_fn(field, cat.clone(), dims.clone(), units, |a, _, b, _| {
        let c = cat.compose(a, b).arrow().unwrap();
        let mut v = zero_vector(field, dims[c]);
        if dims[c] == 1 {
            v[0] = field.one();
        }
        Ok(v)
    })
    .expect("valid algebra");
    Arc::new(alg)
}

/// Polynomial algebra `K[x]` graded by `N`, truncated to the window `[0, hi]`.
pub fn nat_polynomial(field: Field, hi: i64) -> Arc<GradedAlgebra> {
    monomial_window(field, Lattice::Nat, 0, hi, None)
}

/// `K[x]/(x^n)` graded by `N` on the window `[0, hi]`.
pub fn nat_truncated(field: Field, n: i64, hi: i64) -> Arc<GradedAlgebra> {
    monomial_window(field, Lattice::Nat, 0, hi, Some(n))
}

/// `K[x]` graded by `Z` on the window `[-d, 2d]`.
pub fn int_polynomial(field: Field, d: i64) -> Arc<GradedAlgebra> {
    monomial_window(field, Lattice::Int, -d, 2 * d, None)
}

/// The module `X` with `X_k = K x_k` for `|k| <= d` and `a_k x_l = x_{k+l}`.
pub fn int_module_x(algebra: &Arc<GradedAlgebra>, d: i64) -> Result<GradedModule> {
    let cat = algebra.category().clone();
    let field = algebra.field();
    let degree = |a: usize| cat.coordinates(a).unwrap()[0];
    let dims: Vec<usize> = (0..cat.arrow_count())
        .map(|a| usize::from(degree(a).abs() <= d))
        .collect();
    GradedModule::from_fn(algebra.clone(), dims.clone(), |a, _, b, _| {
        let c = cat.compose(a, b).arrow().unwrap();
        let mut v = zero_vector(field, dims[c]);
        if dims[c] == 1 {
            v[0] = field.one();
        }
        Ok(v)
    })
}

fn chain_relation(elements: &[&str]) -> Vec<(String, String)> {
    let mut rel = Vec::new();
    for i in 0..elements.len() {
        for j in i..elements.len() {
            rel.push((s(elements[i]), s(elements[j])));
        }
    }
    rel
}

/// Upper-triangular `2 x 2` matrices graded over the chain `2 < 1` by the
/// diagonal matrix units; `E12` sits on the arrow `2->1`.
pub fn upper_triangular_poset(field: Field) -> (Arc<GradedAlgebra>, FdAlgebra) {
    upper_triangular_over(field, &["2", "1"]).expect("valid grading")
}

/// Same algebra over a chain given from bottom to top.
pub fn upper_triangular_over(
    field: Field,
    chain: &[&str; 2],
) -> Result<(Arc<GradedAlgebra>, FdAlgebra)> {
    let t = FdAlgebra::upper_triangular(field, 2); // E11, E12, E22
    let cat =
        IndexCategory::from_poset(chain.iter().map(|x| s(x)).collect(), &chain_relation(chain))?;
    let ids = vec![
        (s("1"), unit_vector(field, 3, 0)),
        (s("2"), unit_vector(field, 3, 2)),
    ];
    let (g, _) = build_poset_graded(&t, &ids, Arc::new(cat))?;
    Ok((Arc::new(g), t))
}

/// Incidence algebra of a poset given by its full order relation: one
/// basis element per related pair, all products `1`.
pub fn incidence_algebra(
    field: Field,
    elements: &[&str],
    relation: &[(String, String)],
) -> Arc<GradedAlgebra> {
    let cat = Arc::new(
        IndexCategory::from_poset(elements.iter().map(|x| s(x)).collect(), relation)
            .expect("poset"),
    );
    let n = cat.arrow_count();
    let units = vec![vec![field.one()]; cat.objects().len()];
    let alg = GradedAlgebra::from_fn(field, cat, vec![1; n], units, |_, _, _, _| {
        Ok(vec![field.one()])
    })
    .expect("valid algebra");
    Arc::new(alg)
}

/// Incidence algebra of the diamond `0 < a, b < 1`.
pub fn diamond(field: Field) -> Arc<GradedAlgebra> {
    let els = ["0", "a", "b", "1"];
    let mut rel: Vec<(String, String)> = els.iter().map(|x| (s(x), s(x))).collect();
    for (x, y) in [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("0", "1")] {
        rel.push((s(x), s(y)));
    }
    incidence_algebra(field, &els, &rel)
}

/// Incidence algebra of the chain `1 < 2 < ... < n`.
pub fn chain_incidence(field: Field, n: usize) -> Arc<GradedAlgebra> {
    let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    incidence_algebra(field, &refs, &chain_relation(&refs))
}

/// The group algebra of `Z/n` graded by `Z/n`: `A_g = K g`.
pub fn cyclic_group_graded(field: Field, n: usize) -> Arc<GradedAlgebra> {
    let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| (i + j) % n).collect())
        .collect();
    let cat = Arc::new(IndexCategory::from_group(names, &table).expect("group"));
    let alg = GradedAlgebra::from_fn(
        field,
        cat,
        vec![1; n],
        vec![vec![field.one()]],
        |_, _, _, _| Ok(vec![field.one()]),
    )
    .expect("valid algebra");
    Arc::new(alg)
}

/// The Kronecker category (two objects, two parallel arrows) with every
/// component one-dimensional.
pub fn kronecker(field: Field) -> Arc<GradedAlgebra> {
    let cat = IndexCategory::explicit(
        vec![s("1"), s("2")],
        vec![
            (s("e1"), s("1"), s("1")),
            (s("e2"), s("2"), s("2")),
            (s("p"), s("1"), s("2")),
            (s("q"), s("1"), s("2")),
        ],
        vec![(s("1"), s("e1")), (s("2"), s("e2"))],
        vec![
            (s("e1"), s("e1"), s("e1")),
            (s("e2"), s("e2"), s("e2")),
            (s("e2"), s("p"), s("p")),
            (s("e2"), s("q"), s("q")),
            (s("p"), s("e1"), s("p")),
            (s("q"), s("e1"), s("q")),
        ],
    )
    .expect("kronecker category");
    let alg = GradedAlgebra::from_fn(
        field,
        Arc::new(cat),
        vec![1; 4],
        vec![vec![field.one()]; 2],
        |_, _, _, _| Ok(vec![field.one()]),
    )
    .expect("valid algebra");
    Arc::new(alg)
}

/// The one-dimensional module concentrated in degree `c`, for `A_{1_t}`
/// one-dimensional. Every other component acts by zero, so the result is a
/// module only when no nonzero product of non-identity components lands in
/// `A_{1_t}`; check with [`GradedModule::validate`].
pub fn concentrated(algebra: &Arc<GradedAlgebra>, c: usize) -> Result<GradedModule> {
    let cat = algebra.category().clone();
    let field = algebra.field();
    let t = cat.target(c);
    let unit = algebra.local_unit(t);
    if unit.len() != 1 {
        return Err(Error::StructureError(
            "local unit component is not one-dimensional".into(),
        ));
    }
    let scale = unit[0].inv().expect("nonzero local unit");
    let mut dims = vec![0; cat.arrow_count()];
    dims[c] = 1;
    GradedModule::from_fn(algebra.clone(), dims.clone(), |a, _, b, _| {
        let mut v: Vector = zero_vector(field, dims[cat.compose(a, b).arrow().unwrap()]);
        if a == cat.identity(t) && b == c {
            v[0] = scale.clone();
        }
        Ok(v)
    })
}

/// Every graded fixture with a short name, over the given field.
pub fn corpus(field: Field) -> Vec<(&'static str, Arc<GradedAlgebra>)> {
    let mut out = vec![
        ("point", point_field(field)),
        ("nat_poly_3", nat_polynomial(field, 3)),
        ("nat_poly_2", nat_polynomial(field, 2)),
        ("nat_cubic_5", nat_truncated(field, 3, 5)),
        ("upper_triangular", upper_triangular_poset(field).0),
        ("diamond", diamond(field)),
        ("chain_3", chain_incidence(field, 3)),
        ("z2_graded", cyclic_group_graded(field, 2)),
        ("kronecker", kronecker(field)),
        (
            "point_t2",
            point_algebra(&FdAlgebra::upper_triangular(field, 2)),
        ),
        ("point_kxk", point_algebra(&FdAlgebra::diagonal(field, 2))),
    ];
    if field == Field::Rationals {
        out.push(("z3_graded", cyclic_group_graded(field, 3)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid() {
        for field in [
            Field::Rationals,
            Field::prime(2).unwrap(),
            Field::prime(3).unwrap(),
        ] {
            for (name, a) in corpus(field) {
                assert!(a.validate().is_clean(), "{name} over {field}");
                assert!(a.category().validate().is_clean(), "{name}");
            }
        }
    }

    #[test]
    fn x_module_is_valid() {
        let q = Field::Rationals;
        let a = int_polynomial(q, 3);
        assert!(int_module_x(&a, 3).unwrap().validate().is_clean());
    }
}
