//! Algebras, modules and homomorphisms graded over an [`IndexCategory`].
//!
//! Components are indexed by arrow position in the category. Products are
//! stored as left-multiplication matrices: for a composable pair `(a, b)`
//! with composite `c` and each basis element `x_i` of `A_a`, a matrix
//! `A_b -> A_c` (resp. `M_b -> M_c` for modules).

mod poset;
mod total;

pub use poset::build_poset_graded;
pub use total::{module_to_total, total_to_module, yoneda_hom, TotalBasis, TotalHomAlgebra};

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FdAlgebra;
use crate::category::{Composite, IndexCategory};
use crate::error::{Error, Result};
use crate::field::{
    axpy, is_zero_vector, unit_vector, zero_vector, Field, Matrix, Scalar, Subspace, Vector,
};

/// Left-multiplication matrices indexed by `a * n + b`; empty when the pair
/// is not composable or composes out of the window.
type ActionTable = Vec<Vec<Matrix>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "violation")]
pub enum GradedViolation {
    Associativity {
        arrows: [String; 3],
        basis: [usize; 3],
    },
    LeftUnit {
        arrow: String,
        basis: usize,
    },
    RightUnit {
        arrow: String,
        basis: usize,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GradedReport {
    pub violations: Vec<GradedViolation>,
}

impl GradedReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: Field,
    category: Arc<IndexCategory>,
    dims: Vec<usize>,
    mult: ActionTable,
    units: Vec<Vector>,
}

fn build_table(
    field: Field,
    category: &IndexCategory,
    left_dims: &[usize],
    dims: &[usize],
    mut product: impl FnMut(usize, usize, usize, usize) -> Result<Vector>,
) -> Result<ActionTable> {
    let n = category.arrow_count();
    let mut table = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            let Composite::Arrow(c) = category.compose(a, b) else {
                continue;
            };
            let mut mats = Vec::with_capacity(left_dims[a]);
            for i in 0..left_dims[a] {
                let mut cols = Vec::with_capacity(dims[b]);
                for j in 0..dims[b] {
                    let v = product(a, i, b, j)?;
                    if v.len() != dims[c] {
                        return Err(Error::DimensionMismatch(format!(
                            "product in degree {} has length {}, expected {}",
                            category.arrow_id(c),
                            v.len(),
                            dims[c]
                        )));
                    }
                    if let Some(x) = v.iter().find(|x| x.field() != field) {
                        return Err(Error::FieldMismatch(format!(
                            "{} coefficient over {field}",
                            x.field()
                        )));
                    }
                    cols.push(v);
                }
                mats.push(Matrix::from_columns(field, dims[c], &cols));
            }
            table[a * n + b] = mats;
        }
    }
    Ok(table)
}

impl GradedAlgebra {
    /// Builds an algebra from `dims[a] = dim A_a`, local units per object and
    /// a closure giving `x_i y_j` (for `x_i` in `A_a`, `y_j` in `A_b`) as
    /// coordinates in `A_{ab}`. The closure is only called on composable
    /// in-window pairs.
    pub fn from_fn(
        field: Field,
        category: Arc<IndexCategory>,
        dims: Vec<usize>,
        units: Vec<Vector>,
        product: impl FnMut(usize, usize, usize, usize) -> Result<Vector>,
    ) -> Result<GradedAlgebra> {
        let n = category.arrow_count();
        if dims.len() != n {
            return Err(Error::StructureError(format!(
                "{} component dimensions for {n} arrows",
                dims.len()
            )));
        }
        if units.len() != category.objects().len() {
            return Err(Error::StructureError(
                "one local unit per object required".into(),
            ));
        }
        for (o, u) in units.iter().enumerate() {
            let id = category.identity(o);
            if u.len() != dims[id] {
                return Err(Error::DimensionMismatch(format!(
                    "local unit at {} has the wrong length",
                    category.objects()[o]
                )));
            }
            if u.iter().any(|x| x.field() != field) {
                return Err(Error::FieldMismatch("local unit over another field".into()));
            }
        }
        let mult = build_table(field, &category, &dims, &dims, product)?;
        Ok(GradedAlgebra {
            field,
            category,
            dims,
            mult,
            units,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn category(&self) -> &Arc<IndexCategory> {
        &self.category
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, a: usize) -> usize {
        self.dims[a]
    }

    /// Arrows carrying a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&a| self.dims[a] > 0).collect()
    }

    pub fn local_unit(&self, object: usize) -> &Vector {
        &self.units[object]
    }

    /// Matrices of left multiplication by basis elements of `A_a` on `A_b`.
    pub fn left_mult(&self, a: usize, b: usize) -> &[Matrix] {
        &self.mult[a * self.dims.len() + b]
    }

    /// `x y` for `x` in `A_a`, `y` in `A_b`; `None` when the product is
    /// undefined or out of the window.
    pub fn mul(&self, a: usize, x: &[Scalar], b: usize, y: &[Scalar]) -> Option<(usize, Vector)> {
        let c = self.category.compose(a, b).arrow()?;
        Some((
            c,
            apply_element(self.field, self.left_mult(a, b), x, y, self.dims[c]),
        ))
    }

    /// Associativity and unit laws on all basis triples.
    pub fn validate(&self) -> GradedReport {
        let cat = &*self.category;
        let n = self.dims.len();
        let mut violations = Vec::new();
        for a in 0..n {
            let s = cat.source(a);
            let t = cat.target(a);
            let (es, et) = (cat.identity(s), cat.identity(t));
            for i in 0..self.dims[a] {
                let x = unit_vector(self.field, self.dims[a], i);
                if self.mul(et, &self.units[t], a, &x).map(|r| r.1) != Some(x.clone()) {
                    violations.push(GradedViolation::LeftUnit {
                        arrow: cat.arrow_id(a).into(),
                        basis: i,
                    });
                }
                if self.mul(a, &x, es, &self.units[s]).map(|r| r.1) != Some(x.clone()) {
                    violations.push(GradedViolation::RightUnit {
                        arrow: cat.arrow_id(a).into(),
                        basis: i,
                    });
                }
            }
        }
        let dims = self.dims.clone();
        check_associativity(
            cat,
            &dims,
            &dims,
            &dims,
            &self.mult,
            &self.mult,
            &mut violations,
        );
        GradedReport { violations }
    }

    /// `A(c : b) = sum over a with ab = c of A_a`.
    pub fn divisor_space(&self, c: usize, b: usize) -> Result<DivisorSpace> {
        let n = self.dims.len();
        if c >= n || b >= n {
            return Err(Error::StructureError("arrow out of range".into()));
        }
        let summands = self.category.left_quotients(c, b);
        let mut offsets = Vec::with_capacity(summands.len());
        let mut dim = 0;
        for &a in &summands {
            offsets.push(dim);
            dim += self.dims[a];
        }
        let ring = if c == b {
            let t = self.category.target(c);
            let unit_arrow = self.category.identity(t);
            let mut one = zero_vector(self.field, dim);
            if let Some(pos) = summands.iter().position(|&a| a == unit_arrow) {
                one[offsets[pos]..offsets[pos] + self.dims[unit_arrow]]
                    .clone_from_slice(&self.units[t]);
            }
            let locate: Vec<(usize, usize)> = summands
                .iter()
                .enumerate()
                .flat_map(|(k, &a)| (0..self.dims[a]).map(move |i| (k, i)))
                .collect();
            let alg = FdAlgebra::from_products(self.field, dim, one, |x, y| {
                let (kx, ix) = locate[x];
                let (ky, iy) = locate[y];
                let mut out = zero_vector(self.field, dim);
                let (ax, ay) = (summands[kx], summands[ky]);
                if let Some((p, v)) = self.mul(
                    ax,
                    &unit_vector(self.field, self.dims[ax], ix),
                    ay,
                    &unit_vector(self.field, self.dims[ay], iy),
                ) {
                    let kp = summands
                        .iter()
                        .position(|&s| s == p)
                        .expect("closed under products");
                    out[offsets[kp]..offsets[kp] + self.dims[p]].clone_from_slice(&v);
                }
                out
            })?;
            Some(alg)
        } else {
            None
        };
        Ok(DivisorSpace {
            target: c,
            divisor: b,
            summands,
            offsets,
            dim,
            ring,
        })
    }

    /// Canonical fingerprint used to derive pseudorandom seeds.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut feed = |s: &str| {
            for b in s.bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        feed(&self.field.to_string());
        for (a, d) in self.dims.iter().enumerate() {
            feed(self.category.arrow_id(a));
            feed(&d.to_string());
        }
        for mats in &self.mult {
            for m in mats {
                for x in m.entries() {
                    feed(&x.to_string());
                }
            }
        }
        h
    }
}

/// `A(c : b)` with its summand layout and, when `b = c`, its ring structure.
#[derive(Clone, Debug)]
pub struct DivisorSpace {
    pub target: usize,
    pub divisor: usize,
    pub summands: Vec<usize>,
    pub offsets: Vec<usize>,
    pub dim: usize,
    pub ring: Option<FdAlgebra>,
}

fn apply_element(
    field: Field,
    mats: &[Matrix],
    x: &[Scalar],
    y: &[Scalar],
    out_dim: usize,
) -> Vector {
    let mut out = zero_vector(field, out_dim);
    for (c, m) in x.iter().zip(mats) {
        if c.is_zero() {
            continue;
        }
        let v = m.mul_vec(y);
        axpy(&mut out, c, &v);
    }
    out
}

/// Checks `a(bm) = (ab)m` for algebra tables `amult` and action tables
/// `act`. Triples whose inner composites leave the window are skipped.
fn check_associativity(
    cat: &IndexCategory,
    adims: &[usize],
    mdims_in: &[usize],
    _mdims_out: &[usize],
    amult: &ActionTable,
    act: &ActionTable,
    violations: &mut Vec<GradedViolation>,
) {
    let n = cat.arrow_count();
    let field_of = |t: &ActionTable| t.iter().flatten().next().map(|m| m.field());
    let Some(field) = field_of(act).or_else(|| field_of(amult)) else {
        return;
    };
    for a in 0..n {
        for b in 0..n {
            let Composite::Arrow(ab) = cat.compose(a, b) else {
                continue;
            };
            for c in 0..n {
                let Composite::Arrow(bc) = cat.compose(b, c) else {
                    continue;
                };
                let Composite::Arrow(abc) = cat.compose(a, bc) else {
                    continue;
                };
                if cat.compose(ab, c) != Composite::Arrow(abc) {
                    continue;
                }
                for i in 0..adims[a] {
                    for j in 0..adims[b] {
                        let xy = amult[a * n + b][i].column(j);
                        for k in 0..mdims_in[c] {
                            let m = unit_vector(field, mdims_in[c], k);
                            let inner = act[b * n + c][j].mul_vec(&m);
                            let left = act[a * n + bc][i].mul_vec(&inner);
                            let right = apply_element(field, &act[ab * n + c], &xy, &m, left.len());
                            if left != right {
                                violations.push(GradedViolation::Associativity {
                                    arrows: [
                                        cat.arrow_id(a).into(),
                                        cat.arrow_id(b).into(),
                                        cat.arrow_id(c).into(),
                                    ],
                                    basis: [i, j, k],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    dims: Vec<usize>,
    action: ActionTable,
}

impl GradedModule {
    /// Builds a module from `dims[b] = dim M_b` and a closure giving
    /// `x_i m_j` (for `x_i` in `A_a`, `m_j` in `M_b`) in `M_{ab}`.
    pub fn from_fn(
        algebra: Arc<GradedAlgebra>,
        dims: Vec<usize>,
        act: impl FnMut(usize, usize, usize, usize) -> Result<Vector>,
    ) -> Result<GradedModule> {
        let n = algebra.dims.len();
        if dims.len() != n {
            return Err(Error::StructureError(format!(
                "{} component dimensions for {n} arrows",
                dims.len()
            )));
        }
        let action = build_table(algebra.field, &algebra.category, &algebra.dims, &dims, act)?;
        Ok(GradedModule {
            algebra,
            dims,
            action,
        })
    }

    /// `A` as a module over itself.
    pub fn regular(algebra: &Arc<GradedAlgebra>) -> GradedModule {
        GradedModule {
            algebra: algebra.clone(),
            dims: algebra.dims.clone(),
            action: algebra.mult.clone(),
        }
    }

    /// The zero module.
    pub fn zero(algebra: &Arc<GradedAlgebra>) -> GradedModule {
        let n = algebra.dims.len();
        GradedModule::from_fn(algebra.clone(), vec![0; n], |_, _, _, _| unreachable!())
            .expect("zero module")
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn category(&self) -> &IndexCategory {
        &self.algebra.category
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, b: usize) -> usize {
        self.dims[b]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_count(&self) -> usize {
        self.dims.len()
    }

    /// Matrices of basis elements of `A_a` acting `M_b -> M_{ab}`.
    pub fn action(&self, a: usize, b: usize) -> &[Matrix] {
        &self.action[a * self.dims.len() + b]
    }

    pub fn act(&self, a: usize, x: &[Scalar], b: usize, m: &[Scalar]) -> Option<(usize, Vector)> {
        let c = self.algebra.category.compose(a, b).arrow()?;
        Some((
            c,
            apply_element(self.field(), self.action(a, b), x, m, self.dims[c]),
        ))
    }

    /// Module axioms on all basis triples.
    pub fn validate(&self) -> GradedReport {
        let cat = &*self.algebra.category;
        let mut violations = Vec::new();
        for b in 0..self.dims.len() {
            let t = cat.target(b);
            let et = cat.identity(t);
            for j in 0..self.dims[b] {
                let m = unit_vector(self.field(), self.dims[b], j);
                if self.act(et, &self.algebra.units[t], b, &m).map(|r| r.1) != Some(m.clone()) {
                    violations.push(GradedViolation::LeftUnit {
                        arrow: cat.arrow_id(b).into(),
                        basis: j,
                    });
                }
            }
        }
        check_associativity(
            cat,
            &self.algebra.dims,
            &self.dims,
            &self.dims,
            &self.algebra.mult,
            &self.action,
            &mut violations,
        );
        GradedReport { violations }
    }

    fn same_algebra(&self, other: &GradedModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra)
    }

    /// Offsets of each degree in the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len());
        let mut acc = 0;
        for d in &self.dims {
            out.push(acc);
            acc += d;
        }
        out
    }

    /// Smallest graded submodule containing the given homogeneous elements.
    pub fn generated_submodule(&self, generators: &[(usize, Vector)]) -> Vec<Subspace> {
        let n = self.dims.len();
        let field = self.field();
        let mut spans: Vec<Subspace> = self
            .dims
            .iter()
            .map(|&d| Subspace::zero(field, d))
            .collect();
        let mut queue = Vec::new();
        for (b, v) in generators {
            if spans[*b].insert(v.clone()) {
                queue.push((*b, v.clone()));
            }
        }
        while let Some((b, v)) = queue.pop() {
            for a in 0..n {
                let Composite::Arrow(c) = self.category().compose(a, b) else {
                    continue;
                };
                for m in self.action(a, b) {
                    let w = m.mul_vec(&v);
                    if spans[c].insert(w.clone()) {
                        queue.push((c, w));
                    }
                }
            }
        }
        spans
    }

    pub fn is_submodule(&self, parts: &[Subspace]) -> bool {
        let n = self.dims.len();
        (0..n).all(|b| {
            parts[b].basis().iter().all(|v| {
                (0..n).all(|a| match self.category().compose(a, b) {
                    Composite::Arrow(c) => self
                        .action(a, b)
                        .iter()
                        .all(|m| parts[c].contains(&m.mul_vec(v))),
                    _ => true,
                })
            })
        })
    }

    /// The submodule with the given homogeneous components, on the reduced bases.
    pub fn submodule(&self, parts: &[Subspace]) -> Result<GradedModule> {
        if parts.len() != self.dims.len()
            || parts.iter().zip(&self.dims).any(|(p, &d)| p.ambient() != d)
        {
            return Err(Error::DimensionMismatch(
                "submodule components do not match the module".into(),
            ));
        }
        if !self.is_submodule(parts) {
            return Err(Error::StructureError(
                "subspaces are not closed under the action".into(),
            ));
        }
        let dims = parts.iter().map(Subspace::dim).collect();
        GradedModule::from_fn(self.algebra.clone(), dims, |a, i, b, j| {
            let c = self.category().compose(a, b).arrow().expect("composable");
            let w = self.action(a, b)[i].mul_vec(&parts[b].basis()[j]);
            Ok(parts[c].coordinates(&w).expect("closed"))
        })
    }

    /// The quotient by a submodule, on the unit vectors at non-pivot columns.
    pub fn quotient(&self, parts: &[Subspace]) -> Result<GradedModule> {
        if !self.is_submodule(parts) {
            return Err(Error::StructureError(
                "subspaces are not closed under the action".into(),
            ));
        }
        let reps: Vec<Vec<usize>> = parts.iter().map(Subspace::non_pivots).collect();
        let dims = reps.iter().map(Vec::len).collect();
        GradedModule::from_fn(self.algebra.clone(), dims, |a, i, b, j| {
            let c = self.category().compose(a, b).arrow().expect("composable");
            let w = self.action(a, b)[i].column(reps[b][j]);
            Ok(parts[c].quotient_coordinates(&w))
        })
    }

    /// Projection onto [`GradedModule::quotient`].
    pub fn quotient_map(
        self: &Arc<Self>,
        parts: &[Subspace],
        quotient: &Arc<GradedModule>,
    ) -> GradedHom {
        let maps = (0..self.dims.len())
            .map(|b| {
                let cols: Vec<Vector> = (0..self.dims[b])
                    .map(|j| {
                        parts[b].quotient_coordinates(&unit_vector(self.field(), self.dims[b], j))
                    })
                    .collect();
                Matrix::from_columns(self.field(), quotient.dims[b], &cols)
            })
            .collect();
        GradedHom {
            source: self.clone(),
            target: quotient.clone(),
            maps,
        }
    }

    /// Inclusion of [`GradedModule::submodule`] into `self`.
    pub fn inclusion(self: &Arc<Self>, parts: &[Subspace], sub: &Arc<GradedModule>) -> GradedHom {
        let maps = parts
            .iter()
            .map(|p| Matrix::from_columns(self.field(), p.ambient(), p.basis()))
            .collect();
        GradedHom {
            source: sub.clone(),
            target: self.clone(),
            maps,
        }
    }

    pub fn zero_parts(&self) -> Vec<Subspace> {
        self.dims
            .iter()
            .map(|&d| Subspace::zero(self.field(), d))
            .collect()
    }

    pub fn full_parts(&self) -> Vec<Subspace> {
        self.dims
            .iter()
            .map(|&d| Subspace::full(self.field(), d))
            .collect()
    }
}

/// Direct sum with its canonical inclusions and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Arc<GradedModule>,
    pub inclusions: Vec<GradedHom>,
    pub projections: Vec<GradedHom>,
}

pub fn direct_sum(parts: &[Arc<GradedModule>]) -> Result<DirectSum> {
    let first = parts
        .first()
        .ok_or_else(|| Error::StructureError("empty direct sum".into()))?;
    if parts.iter().any(|p| !p.same_algebra(first)) {
        return Err(Error::StructureError(
            "direct sum of modules over different algebras".into(),
        ));
    }
    let algebra = first.algebra.clone();
    let n = first.dims.len();
    let field = first.field();
    let dims: Vec<usize> = (0..n)
        .map(|b| parts.iter().map(|p| p.dims[b]).sum())
        .collect();
    let starts = |b: usize| -> Vec<usize> {
        let mut s = Vec::new();
        let mut acc = 0;
        for p in parts {
            s.push(acc);
            acc += p.dims[b];
        }
        s
    };
    let mut action = vec![Vec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            let Composite::Arrow(c) = algebra.category.compose(a, b) else {
                continue;
            };
            let (sb, sc) = (starts(b), starts(c));
            action[a * n + b] = (0..algebra.dims[a])
                .map(|i| {
                    let mut m = Matrix::zeros(field, dims[c], dims[b]);
                    for (k, p) in parts.iter().enumerate() {
                        m.set_block(sc[k], sb[k], &p.action(a, b)[i]);
                    }
                    m
                })
                .collect();
        }
    }
    let module = Arc::new(GradedModule {
        algebra,
        dims: dims.clone(),
        action,
    });
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        let mut inc = Vec::new();
        let mut proj = Vec::new();
        for b in 0..n {
            let s = starts(b)[k];
            let mut i = Matrix::zeros(field, dims[b], p.dims[b]);
            i.set_block(s, 0, &Matrix::identity(field, p.dims[b]));
            proj.push(i.transpose());
            inc.push(i);
        }
        inclusions.push(GradedHom {
            source: p.clone(),
            target: module.clone(),
            maps: inc,
        });
        projections.push(GradedHom {
            source: module.clone(),
            target: p.clone(),
            maps: proj,
        });
    }
    Ok(DirectSum {
        module,
        inclusions,
        projections,
    })
}

/// Basis label of a free module: `x_i ⊗ v_j` with `x_i` in `A_a`, `v_j` in `V_b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FreeLabel {
    pub alpha: usize,
    pub i: usize,
    pub beta: usize,
    pub j: usize,
}

#[derive(Clone, Debug)]
pub struct FreeModule {
    pub module: Arc<GradedModule>,
    pub basis: Vec<Vec<FreeLabel>>,
}

/// `F_A(V)_c = sum over ab = c of A_a ⊗ V_b`, acting on the left factor.
pub fn free_module(algebra: &Arc<GradedAlgebra>, v_dims: &[usize]) -> Result<FreeModule> {
    let cat = &algebra.category;
    let n = cat.arrow_count();
    if v_dims.len() != n {
        return Err(Error::StructureError(
            "graded vector space over another category".into(),
        ));
    }
    let mut basis: Vec<Vec<FreeLabel>> = vec![Vec::new(); n];
    for (c, labels) in basis.iter_mut().enumerate() {
        for &(a, b) in cat.factorizations(c) {
            for i in 0..algebra.dims[a] {
                for j in 0..v_dims[b] {
                    labels.push(FreeLabel {
                        alpha: a,
                        i,
                        beta: b,
                        j,
                    });
                }
            }
        }
    }
    let position: Vec<std::collections::HashMap<FreeLabel, usize>> = basis
        .iter()
        .map(|l| l.iter().enumerate().map(|(k, x)| (*x, k)).collect())
        .collect();
    let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
    let field = algebra.field;
    let module = GradedModule::from_fn(algebra.clone(), dims.clone(), |d, k, c, idx| {
        let label = basis[c][idx];
        let target = cat.compose(d, c).arrow().expect("composable");
        let mut out = zero_vector(field, dims[target]);
        let x = unit_vector(field, algebra.dims[d], k);
        let y = unit_vector(field, algebra.dims[label.alpha], label.i);
        if let Some((da, prod)) = algebra.mul(d, &x, label.alpha, &y) {
            for (l, coeff) in prod.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let key = FreeLabel {
                    alpha: da,
                    i: l,
                    beta: label.beta,
                    j: label.j,
                };
                let pos = position[target]
                    .get(&key)
                    .ok_or_else(|| Error::StructureError("free module basis not closed".into()))?;
                out[*pos] = coeff.clone();
            }
        }
        Ok(out)
    })?;
    Ok(FreeModule {
        module: Arc::new(module),
        basis,
    })
}

/// The free module `A[c] = F_A(K[c])` on one generator in degree `c`.
pub fn projective(algebra: &Arc<GradedAlgebra>, c: usize) -> Result<FreeModule> {
    let mut v = vec![0; algebra.dims.len()];
    v[c] = 1;
    free_module(algebra, &v)
}

/// Position of the generator `e_t ⊗ g` of `A[c]` in degree `c`.
pub fn projective_generator(free: &FreeModule, c: usize) -> Vector {
    let algebra = free.module.algebra();
    let cat = algebra.category();
    let t = cat.target(c);
    let unit = algebra.local_unit(t);
    let mut v = zero_vector(algebra.field(), free.module.dim(c));
    for (k, l) in free.basis[c].iter().enumerate() {
        if l.alpha == cat.identity(t) && l.beta == c {
            v[k] = unit[l.i].clone();
        }
    }
    v
}

/// The counit `F_A(M) -> M`, `x ⊗ m -> x m`.
pub fn counit(module: &Arc<GradedModule>) -> Result<(FreeModule, GradedHom)> {
    let free = free_module(module.algebra(), module.dims())?;
    let field = module.field();
    let maps = (0..module.dims.len())
        .map(|c| {
            let cols: Vec<Vector> = free.basis[c]
                .iter()
                .map(|l| module.action(l.alpha, l.beta)[l.i].column(l.j))
                .collect();
            Matrix::from_columns(field, module.dims[c], &cols)
        })
        .collect();
    let hom = GradedHom {
        source: free.module.clone(),
        target: module.clone(),
        maps,
    };
    Ok((free, hom))
}

/// A degree-preserving family of linear maps `f_b: M_b -> N_b`.
#[derive(Clone, Debug)]
pub struct GradedHom {
    source: Arc<GradedModule>,
    target: Arc<GradedModule>,
    maps: Vec<Matrix>,
}

impl GradedHom {
    pub fn new(
        source: Arc<GradedModule>,
        target: Arc<GradedModule>,
        maps: Vec<Matrix>,
    ) -> Result<GradedHom> {
        if !source.same_algebra(&target) {
            return Err(Error::StructureError(
                "hom between modules over different algebras".into(),
            ));
        }
        if maps.len() != source.dims.len() {
            return Err(Error::DimensionMismatch(
                "one matrix per arrow required".into(),
            ));
        }
        for (b, m) in maps.iter().enumerate() {
            if m.rows() != target.dims[b] || m.cols() != source.dims[b] {
                return Err(Error::DimensionMismatch(format!(
                    "map in degree {b} has the wrong shape"
                )));
            }
        }
        Ok(GradedHom {
            source,
            target,
            maps,
        })
    }

    pub fn zero(source: &Arc<GradedModule>, target: &Arc<GradedModule>) -> GradedHom {
        let maps = (0..source.dims.len())
            .map(|b| Matrix::zeros(source.field(), target.dims[b], source.dims[b]))
            .collect();
        GradedHom {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn identity(module: &Arc<GradedModule>) -> GradedHom {
        let maps = module
            .dims
            .iter()
            .map(|&d| Matrix::identity(module.field(), d))
            .collect();
        GradedHom {
            source: module.clone(),
            target: module.clone(),
            maps,
        }
    }

    pub fn source(&self) -> &Arc<GradedModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedModule> {
        &self.target
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, b: usize) -> &Matrix {
        &self.maps[b]
    }

    /// First `(a, basis of A_a, b, basis of M_b)` where `f(x m) != x f(m)`.
    pub fn equivariance_violation(&self) -> Option<(usize, usize, usize, usize)> {
        let n = self.maps.len();
        let cat = self.source.category();
        for a in 0..n {
            for b in 0..n {
                let Composite::Arrow(c) = cat.compose(a, b) else {
                    continue;
                };
                for (i, (rm, rn)) in self
                    .source
                    .action(a, b)
                    .iter()
                    .zip(self.target.action(a, b))
                    .enumerate()
                {
                    let left = &self.maps[c] * rm;
                    let right = rn * &self.maps[b];
                    if left != right {
                        let j = (0..left.cols())
                            .find(|&j| left.column(j) != right.column(j))
                            .unwrap_or(0);
                        return Some((a, i, b, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariance_violation().is_none()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GradedHom) -> GradedHom {
        let maps = self
            .maps
            .iter()
            .zip(&first.maps)
            .map(|(g, f)| g * f)
            .collect();
        GradedHom {
            source: first.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn add(&self, other: &GradedHom) -> GradedHom {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(f, g)| f + g)
            .collect();
        GradedHom {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn scale(&self, c: &Scalar) -> GradedHom {
        let maps = self.maps.iter().map(|f| f.scale(c)).collect();
        GradedHom {
            source: self.source.clone(),
            target: self.target.clone(),
            maps,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Entries of all maps, degree by degree, row-major.
    pub fn flatten(&self) -> Vector {
        self.maps
            .iter()
            .flat_map(|m| m.entries().iter().cloned())
            .collect()
    }

    pub fn from_flat(
        source: &Arc<GradedModule>,
        target: &Arc<GradedModule>,
        v: &[Scalar],
    ) -> GradedHom {
        let mut maps = Vec::with_capacity(source.dims.len());
        let mut pos = 0;
        for b in 0..source.dims.len() {
            let (r, c) = (target.dims[b], source.dims[b]);
            maps.push(Matrix::from_raw(
                source.field(),
                r,
                c,
                v[pos..pos + r * c].to_vec(),
            ));
            pos += r * c;
        }
        GradedHom {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn kernel(&self) -> Vec<Subspace> {
        self.maps
            .iter()
            .map(|m| Subspace::from_matrix(&m.kernel_basis()))
            .collect()
    }

    pub fn image(&self) -> Vec<Subspace> {
        self.maps
            .iter()
            .map(|m| Subspace::from_rows(m.field(), m.rows(), (0..m.cols()).map(|j| m.column(j))))
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }
}

/// Length of the flattened representation of homs `M -> N`.
pub fn hom_flat_len(m: &GradedModule, n: &GradedModule) -> usize {
    m.dims.iter().zip(&n.dims).map(|(a, b)| a * b).sum()
}

/// The space of equivariant homs `M -> N` as a subspace of flattened map families.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Arc<GradedModule>,
    pub target: Arc<GradedModule>,
    pub space: Subspace,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<GradedHom> {
        self.space
            .basis()
            .iter()
            .map(|v| GradedHom::from_flat(&self.source, &self.target, v))
            .collect()
    }

    pub fn contains(&self, f: &GradedHom) -> bool {
        self.space.contains(&f.flatten())
    }
}

/// Solves `f_{ab}(x m) = x f_b(m)` for all composable in-window pairs.
pub fn hom_space(m: &Arc<GradedModule>, n: &Arc<GradedModule>) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::StructureError(
            "hom between modules over different algebras".into(),
        ));
    }
    let field = m.field();
    let arrows = m.dims.len();
    let mut offset = Vec::with_capacity(arrows);
    let mut total = 0;
    for b in 0..arrows {
        offset.push(total);
        total += m.dims[b] * n.dims[b];
    }
    let cat = m.category();
    let mut rows: Vec<Vector> = Vec::new();
    for a in 0..arrows {
        for b in 0..arrows {
            let Composite::Arrow(c) = cat.compose(a, b) else {
                continue;
            };
            let (mb, mc, nb, nc) = (m.dims[b], m.dims[c], n.dims[b], n.dims[c]);
            if mb == 0 || nc == 0 {
                continue;
            }
            for (rm, rn) in m.action(a, b).iter().zip(n.action(a, b)) {
                // (f_c rm - rn f_b)[r, s] = 0
                for r in 0..nc {
                    for s in 0..mb {
                        let mut row = zero_vector(field, total);
                        for t in 0..mc {
                            let x = rm.get(t, s);
                            if !x.is_zero() {
                                row[offset[c] + r * mc + t] += x;
                            }
                        }
                        for t in 0..nb {
                            let x = rn.get(r, t);
                            if !x.is_zero() {
                                row[offset[b] + t * mb + s] -= x;
                            }
                        }
                        if !is_zero_vector(&row) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, total)
    } else {
        let eqs = Matrix::from_rows_with_cols(field, total, rows)?;
        Subspace::from_matrix(&eqs.kernel_basis())
    };
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        space,
    })
}

/// The endomorphism algebra of `M` under composition, on the basis of
/// [`hom_space`]`(M, M)`: the product of `f` and `g` is `f ∘ g`.
pub fn endomorphism_algebra(m: &Arc<GradedModule>) -> Result<(FdAlgebra, HomSpace)> {
    let ends = hom_space(m, m)?;
    let basis = ends.basis();
    let one = ends
        .space
        .coordinates(&GradedHom::identity(m).flatten())
        .ok_or_else(|| Error::StructureError("identity is not equivariant".into()))?;
    let alg = FdAlgebra::from_products(m.field(), basis.len(), one, |i, j| {
        ends.space
            .coordinates(&basis[i].after(&basis[j]).flatten())
            .expect("closed under composition")
    })?;
    Ok((alg, ends))
}

/// The hom determined by a coordinate vector in an [`HomSpace`] basis.
pub fn hom_from_coordinates(space: &HomSpace, coords: &[Scalar]) -> GradedHom {
    GradedHom::from_flat(&space.source, &space.target, &space.space.combine(coords))
}

#[cfg(test)]
mod tests;
