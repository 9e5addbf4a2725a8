use std::collections::HashMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Serialize;

use super::{FreeModule, GradedAlgebra, GradedHom, GradedModule};
use crate::algebra::{FdAlgebra, FdModule};
use crate::category::Composite;
use crate::error::{Error, Result};
use crate::field::{unit_vector, zero_vector, Matrix, Subspace, Vector};

/// Basis element of the total hom algebra: `x_index` in `A_alpha`, read as
/// the hom `A[g_row] -> A[g_col]` sending the generator to `x ⊗ g_col`
/// (so `alpha g_col = g_row`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TotalBasis {
    pub row: usize,
    pub col: usize,
    pub alpha: usize,
    pub index: usize,
}

/// All homs between the projectives `A[g]` for a finite list of generators.
///
/// The stored algebra multiplies `(x: row p, col q)(y: row q, col r) = xy`,
/// which is composition read left to right, i.e. the opposite of the hom
/// algebra `E`. Graded modules supported on the generators are exactly its
/// left modules; [`TotalHomAlgebra::hom_algebra`] returns `E` itself.
#[derive(Clone, Debug)]
pub struct TotalHomAlgebra {
    generators: Vec<usize>,
    basis: Vec<TotalBasis>,
    blocks: Vec<Range<usize>>,
    algebra: FdAlgebra,
    idempotents: Vec<Vector>,
}

impl TotalHomAlgebra {
    pub fn new(a: &GradedAlgebra, generators: &[usize]) -> Result<TotalHomAlgebra> {
        let cat = a.category();
        let g = generators.len();
        if generators.iter().any(|&x| x >= cat.arrow_count()) {
            return Err(Error::StructureError("generator is not an arrow".into()));
        }
        let mut seen = generators.to_vec();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != g {
            return Err(Error::StructureError("repeated generator".into()));
        }
        let mut basis = Vec::new();
        let mut blocks = Vec::with_capacity(g * g);
        let mut starts: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for p in 0..g {
            for q in 0..g {
                let start = basis.len();
                for alpha in cat.left_quotients(generators[p], generators[q]) {
                    starts.insert((p, q, alpha), basis.len());
                    for index in 0..a.dim(alpha) {
                        basis.push(TotalBasis {
                            row: p,
                            col: q,
                            alpha,
                            index,
                        });
                    }
                }
                blocks.push(start..basis.len());
            }
        }
        let dim = basis.len();
        let field = a.field();
        let mut idempotents = Vec::with_capacity(g);
        let mut one = zero_vector(field, dim);
        for (p, &gen) in generators.iter().enumerate() {
            let t = cat.target(gen);
            let id = cat.identity(t);
            let mut e = zero_vector(field, dim);
            if let Some(&s) = starts.get(&(p, p, id)) {
                for (k, c) in a.local_unit(t).iter().enumerate() {
                    e[s + k] = c.clone();
                    one[s + k] = c.clone();
                }
            }
            idempotents.push(e);
        }
        let algebra = FdAlgebra::from_products(field, dim, one, |x, y| {
            let (bx, by) = (basis[x], basis[y]);
            let mut out = zero_vector(field, dim);
            if bx.col != by.row {
                return out;
            }
            let ex = unit_vector(field, a.dim(bx.alpha), bx.index);
            let ey = unit_vector(field, a.dim(by.alpha), by.index);
            if let Some((c, v)) = a.mul(bx.alpha, &ex, by.alpha, &ey) {
                let s = starts[&(bx.row, by.col, c)];
                out[s..s + v.len()].clone_from_slice(&v);
            }
            out
        })?;
        Ok(TotalHomAlgebra {
            generators: generators.to_vec(),
            basis,
            blocks,
            algebra,
            idempotents,
        })
    }

    /// Generators default to every arrow of the category.
    pub fn over_all_arrows(a: &GradedAlgebra) -> Result<TotalHomAlgebra> {
        let all: Vec<usize> = (0..a.category().arrow_count()).collect();
        TotalHomAlgebra::new(a, &all)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn basis(&self) -> &[TotalBasis] {
        &self.basis
    }

    /// The algebra whose left modules are graded modules.
    pub fn algebra(&self) -> &FdAlgebra {
        &self.algebra
    }

    /// `E`, with product `f g = f ∘ g`.
    pub fn hom_algebra(&self) -> FdAlgebra {
        self.algebra.opposite()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `Hom(A[g_p], A[g_q])`.
    pub fn block(&self, p: usize, q: usize) -> Range<usize> {
        self.blocks[p * self.generators.len() + q].clone()
    }

    pub fn block_dim(&self, p: usize, q: usize) -> usize {
        self.block(p, q).len()
    }

    /// The identity of `A[g_p]`.
    pub fn idempotent(&self, p: usize) -> &Vector {
        &self.idempotents[p]
    }

    pub fn idempotents(&self) -> &[Vector] {
        &self.idempotents
    }

    pub fn position(&self, arrow: usize) -> Option<usize> {
        self.generators.iter().position(|&g| g == arrow)
    }

    /// Restricts a vector to the `(p, q)` block.
    pub fn block_part(&self, v: &[crate::field::Scalar], p: usize, q: usize) -> Vector {
        let mut out = zero_vector(self.algebra.field(), self.dim());
        for k in self.block(p, q) {
            out[k] = v[k].clone();
        }
        out
    }

    /// The block of `v` as a vector in `A[g_q]_{g_p}`.
    pub fn block_entries(&self, v: &[crate::field::Scalar], p: usize, q: usize) -> Vector {
        v[self.block(p, q)].to_vec()
    }

    /// Embeds an element of `A[g_q]_{g_p}` as a vector of the total algebra.
    pub fn embed_block(&self, entries: &[crate::field::Scalar], p: usize, q: usize) -> Vector {
        let mut out = zero_vector(self.algebra.field(), self.dim());
        let r = self.block(p, q);
        out[r].clone_from_slice(entries);
        out
    }

    /// Splits a subspace into its `(p, q)` block restrictions. For two-sided
    /// ideals these span the ideal.
    pub fn block_homogeneous(&self, s: &Subspace) -> Subspace {
        let g = self.generators.len();
        let mut out = Subspace::zero(self.algebra.field(), self.dim());
        for v in s.basis() {
            for p in 0..g {
                for q in 0..g {
                    out.insert(self.block_part(v, p, q));
                }
            }
        }
        out
    }
}

/// The hom `A[c] -> M` sending the generator to `m` in `M_c`.
pub fn yoneda_hom(
    free: &FreeModule,
    target: &Arc<GradedModule>,
    m: &[crate::field::Scalar],
) -> GradedHom {
    let source = &free.module;
    let field = target.field();
    let maps = (0..source.arrow_count())
        .map(|d| {
            let cols: Vec<Vector> = free.basis[d]
                .iter()
                .map(|l| target.action(l.alpha, l.beta)[l.i].mul_vec(m))
                .collect();
            Matrix::from_columns(field, target.dim(d), &cols)
        })
        .collect();
    GradedHom::new(source.clone(), target.clone(), maps).expect("shapes agree")
}

/// `M` as a left module over [`TotalHomAlgebra::algebra`], on the space
/// `sum over generators g of M_g`.
pub fn module_to_total(m: &GradedModule, total: &TotalHomAlgebra) -> Result<FdModule> {
    let field = m.field();
    for b in 0..m.arrow_count() {
        if m.dim(b) > 0 && total.position(b).is_none() {
            return Err(Error::InfiniteSupport(format!(
                "module is nonzero in degree {} outside the generators",
                m.category().arrow_id(b)
            )));
        }
    }
    let offsets: Vec<usize> = total
        .generators
        .iter()
        .scan(0, |acc, &g| {
            let o = *acc;
            *acc += m.dim(g);
            Some(o)
        })
        .collect();
    let dim: usize = total.generators.iter().map(|&g| m.dim(g)).sum();
    let action = total
        .basis
        .iter()
        .map(|b| {
            let mut mat = Matrix::zeros(field, dim, dim);
            let (gp, gq) = (total.generators[b.row], total.generators[b.col]);
            if m.dim(gp) > 0 && m.dim(gq) > 0 {
                mat.set_block(
                    offsets[b.row],
                    offsets[b.col],
                    &m.action(b.alpha, gq)[b.index],
                );
            }
            mat
        })
        .collect();
    FdModule::new(field, dim, action)
}

/// Rebuilds a graded module from a module over the total algebra, using the
/// images of the block idempotents as components.
pub fn total_to_module(
    fd: &FdModule,
    total: &TotalHomAlgebra,
    algebra: &Arc<GradedAlgebra>,
) -> Result<(GradedModule, Vec<Subspace>)> {
    let cat = algebra.category();
    let n = cat.arrow_count();
    let mut parts: Vec<Option<Subspace>> = vec![None; n];
    for (p, &g) in total.generators.iter().enumerate() {
        let e = fd.act_matrix(total.idempotent(p));
        parts[g] = Some(Subspace::from_rows(
            fd.field(),
            fd.dim(),
            (0..fd.dim()).map(|j| e.column(j)),
        ));
    }
    let dims: Vec<usize> = parts
        .iter()
        .map(|p| p.as_ref().map_or(0, Subspace::dim))
        .collect();
    let index: HashMap<(usize, usize, usize), usize> = {
        let mut h = HashMap::new();
        for (k, b) in total.basis.iter().enumerate() {
            if b.index == 0 {
                h.insert((b.row, b.col, b.alpha), k);
            }
        }
        h
    };
    let module = GradedModule::from_fn(algebra.clone(), dims.clone(), |a, i, b, j| {
        let Composite::Arrow(c) = cat.compose(a, b) else {
            unreachable!()
        };
        let (Some(q), Some(p)) = (total.position(b), total.position(c)) else {
            return Ok(zero_vector(algebra.field(), dims[c]));
        };
        let k = index[&(p, q, a)] + i;
        let src = &parts[b].as_ref().expect("generator").basis()[j];
        let w = fd.action()[k].mul_vec(src);
        parts[c]
            .as_ref()
            .expect("generator")
            .coordinates(&w)
            .ok_or_else(|| Error::StructureError("action leaves the block".into()))
    })?;
    let parts = parts
        .into_iter()
        .map(|p| p.unwrap_or_else(|| Subspace::zero(fd.field(), fd.dim())))
        .collect();
    Ok((module, parts))
}
