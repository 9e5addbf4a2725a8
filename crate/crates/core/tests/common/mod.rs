//! Brute-force oracles shared by the integration tests. They rely only on
//! the field layer and on raw structure constants.

#![allow(dead_code)]

use std::collections::BTreeSet;

use gradalg::algebra::FdAlgebra;
use gradalg::field::{unit_vector, zero_vector, Vector};
use gradalg::graded::GradedModule;
use gradalg::{Field, Matrix, Scalar, Subspace};

/// Every element of `F_p^n`, or integer vectors with entries in `-1..=1`
/// and at most two nonzero entries over `Q`.
pub fn candidates(field: Field, n: usize) -> Vec<Vector> {
    match field.elements() {
        Some(els) => {
            let mut out = vec![Vec::new()];
            for _ in 0..n {
                out = out
                    .into_iter()
                    .flat_map(|v: Vector| {
                        els.iter().map(move |x| {
                            let mut w = v.clone();
                            w.push(x.clone());
                            w
                        })
                    })
                    .collect();
            }
            out
        }
        None => {
            let mut out = Vec::new();
            for i in 0..n {
                out.push(unit_vector(field, n, i));
                for j in i + 1..n {
                    for s in [1, -1] {
                        let mut v = unit_vector(field, n, i);
                        v[j] = field.from_i64(s);
                        out.push(v);
                    }
                }
            }
            out
        }
    }
}

/// `A x A` for unital `A`.
fn principal_ideal(a: &FdAlgebra, x: &[Scalar]) -> Subspace {
    let n = a.dim();
    let mut s = Subspace::zero(a.field(), n);
    for i in 0..n {
        let left = a.mul(&a.basis_element(i), x);
        for j in 0..n {
            s.insert(a.mul(&left, &a.basis_element(j)));
        }
    }
    s
}

fn power_vanishes(a: &FdAlgebra, ideal: &Subspace) -> bool {
    let mut current = ideal.clone();
    for _ in 0..=a.dim() {
        if current.is_zero() {
            return true;
        }
        let mut next = Subspace::zero(a.field(), a.dim());
        for u in current.basis() {
            for v in ideal.basis() {
                next.insert(a.mul(u, v));
            }
        }
        current = next;
    }
    current.is_zero()
}

/// Sum of the nilpotent principal ideals `A x A` over the candidates; over
/// `F_p` this is exactly the largest nilpotent ideal.
pub fn largest_nilpotent_ideal(a: &FdAlgebra) -> Subspace {
    let mut sum = Subspace::zero(a.field(), a.dim());
    for x in candidates(a.field(), a.dim()) {
        if sum.contains(&x) {
            continue;
        }
        let i = principal_ideal(a, &x);
        if power_vanishes(a, &i) {
            sum = sum.sum(&i);
        }
    }
    assert!(
        power_vanishes(a, &sum),
        "sum of nilpotent ideals must be nilpotent"
    );
    sum
}

pub fn same_subspace(a: &Subspace, b: &Subspace) -> bool {
    a.dim() == b.dim() && a.basis().iter().all(|v| b.contains(v))
}

/// Generator degrees of a minimal resolution over `K[x]/(x^n)` graded on the
/// window `[0, hi]`, computed by iterating kernels of hand-built covers.
/// A module is given by its degree dimensions and `x: M_k -> M_{k+1}`.
pub struct WindowModule {
    pub dims: Vec<usize>,
    pub x: Vec<Matrix>,
}

impl WindowModule {
    pub fn from_graded(m: &GradedModule, x_arrow: usize) -> WindowModule {
        let cat = m.category();
        let hi = m.arrow_count();
        let dims: Vec<usize> = (0..hi)
            .map(|k| m.dim(cat.arrow_at(&[k as i64]).unwrap()))
            .collect();
        let field = m.field();
        let x = (0..hi)
            .map(|k| {
                let b = cat.arrow_at(&[k as i64]).unwrap();
                if k + 1 < hi && m.dim(b) > 0 && m.algebra().dim(x_arrow) > 0 {
                    m.action(x_arrow, b)[0].clone()
                } else {
                    Matrix::zeros(field, *dims.get(k + 1).unwrap_or(&0), dims[k])
                }
            })
            .collect();
        WindowModule { dims, x }
    }
}

fn x_power(m: &WindowModule, field: Field, from: usize, j: usize) -> Matrix {
    let mut out = Matrix::identity(field, m.dims[from]);
    for s in 0..j {
        out = m.x[from + s].checked_mul(&out).unwrap();
    }
    out
}

/// Returns, per homological degree, the sorted generator degrees.
pub fn resolution_shifts(
    field: Field,
    n: usize,
    hi: usize,
    start: WindowModule,
    steps: usize,
) -> Vec<Vec<usize>> {
    let mut module = start;
    let mut out = Vec::new();
    for _ in 0..=steps {
        if module.dims.iter().all(|&d| d == 0) {
            break;
        }
        // generators: complements of x M_{k-1} in M_k, lowest degree first
        let mut gens: Vec<(usize, Vector)> = Vec::new();
        for k in 0..hi {
            let mut span = Subspace::zero(field, module.dims[k]);
            if k > 0 {
                let xm = &module.x[k - 1];
                for j in 0..xm.cols() {
                    span.insert(xm.column(j));
                }
            }
            for i in 0..module.dims[k] {
                let e = unit_vector(field, module.dims[k], i);
                if span.insert(e.clone()) {
                    gens.push((k, e));
                }
            }
        }
        out.push(gens.iter().map(|g| g.0).collect());
        // free module: basis a_j g at degree deg(g) + j, j < n
        let free_basis: Vec<Vec<(usize, usize)>> = (0..hi)
            .map(|k| {
                gens.iter()
                    .enumerate()
                    .filter(|(_, g)| g.0 <= k && k - g.0 < n)
                    .map(|(gi, g)| (gi, k - g.0))
                    .collect()
            })
            .collect();
        let phi: Vec<Matrix> = (0..hi)
            .map(|k| {
                let cols: Vec<Vector> = free_basis[k]
                    .iter()
                    .map(|&(gi, j)| x_power(&module, field, gens[gi].0, j).mul_vec(&gens[gi].1))
                    .collect();
                Matrix::from_columns(field, module.dims[k], &cols)
            })
            .collect();
        // kernel basis vectors as columns
        let kernels: Vec<Matrix> = (0..hi).map(|k| phi[k].kernel_basis().transpose()).collect();
        let dims: Vec<usize> = kernels.iter().map(Matrix::cols).collect();
        let x = (0..hi)
            .map(|k| {
                let next = dims.get(k + 1).copied().unwrap_or(0);
                let mut m = Matrix::zeros(field, next, dims[k]);
                if k + 1 >= hi {
                    return m;
                }
                for c in 0..dims[k] {
                    let v = kernels[k].column(c);
                    let mut w = zero_vector(field, free_basis[k + 1].len());
                    for (pos, &(gi, j)) in free_basis[k].iter().enumerate() {
                        if let Some(t) = free_basis[k + 1].iter().position(|&b| b == (gi, j + 1)) {
                            w[t] = &w[t] + &v[pos];
                        }
                    }
                    let coords = kernels[k + 1]
                        .solve(&w)
                        .unwrap()
                        .expect("kernel is a submodule");
                    for (r, val) in coords.into_iter().enumerate() {
                        m.set(r, c, val);
                    }
                }
                m
            })
            .collect();
        module = WindowModule { dims, x };
    }
    out
}

/// Every submodule of an `F_2` module, by closing homogeneous generating sets.
/// Vectors are bitmasks per arrow.
pub struct F2Module {
    pub dims: Vec<usize>,
    /// `(a, b, matrix of one basis element of A_a)` acting `M_b -> M_{ab}`, as
    /// column bitmasks, with the target arrow.
    pub actions: Vec<(usize, usize, Vec<u64>)>,
}

pub type Sub = Vec<BTreeSet<u64>>;

impl F2Module {
    pub fn new(m: &GradedModule) -> F2Module {
        let cat = m.category();
        let n = m.arrow_count();
        let mut actions = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let Some(c) = cat.compose(a, b).arrow() else {
                    continue;
                };
                if m.algebra().dim(a) == 0 || m.dim(b) == 0 || m.dim(c) == 0 {
                    continue;
                }
                for mat in m.action(a, b) {
                    let cols = (0..mat.cols())
                        .map(|j| {
                            mat.column(j)
                                .iter()
                                .enumerate()
                                .fold(0u64, |acc, (i, x)| acc | (u64::from(!x.is_zero()) << i))
                        })
                        .collect();
                    actions.push((b, c, cols));
                }
            }
        }
        F2Module {
            dims: m.dims().to_vec(),
            actions,
        }
    }

    fn apply(cols: &[u64], v: u64) -> u64 {
        cols.iter()
            .enumerate()
            .filter(|(j, _)| v >> j & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    }

    fn span_insert(set: &mut BTreeSet<u64>, v: u64) -> bool {
        if set.contains(&v) {
            return false;
        }
        let old: Vec<u64> = set.iter().copied().collect();
        for w in old {
            set.insert(w ^ v);
        }
        true
    }

    pub fn zero(&self) -> Sub {
        self.dims.iter().map(|_| BTreeSet::from([0])).collect()
    }

    /// Smallest submodule containing `s` and `v` in degree `b`.
    pub fn close(&self, s: &Sub, b: usize, v: u64) -> Sub {
        let mut out = s.clone();
        let mut queue = vec![(b, v)];
        while let Some((b, v)) = queue.pop() {
            if !Self::span_insert(&mut out[b], v) {
                continue;
            }
            for (src, tgt, cols) in &self.actions {
                if *src == b {
                    let w = Self::apply(cols, v);
                    if !out[*tgt].contains(&w) {
                        queue.push((*tgt, w));
                    }
                }
            }
        }
        out
    }

    pub fn submodules(&self) -> Vec<Sub> {
        let mut seen: BTreeSet<Sub> = BTreeSet::from([self.zero()]);
        let mut frontier = vec![self.zero()];
        while let Some(s) = frontier.pop() {
            for (b, &d) in self.dims.iter().enumerate() {
                for v in 1..(1u64 << d) {
                    if s[b].contains(&v) {
                        continue;
                    }
                    let t = self.close(&s, b, v);
                    if seen.insert(t.clone()) {
                        frontier.push(t);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_full(&self, s: &Sub) -> bool {
        s.iter().zip(&self.dims).all(|(x, &d)| x.len() == 1 << d)
    }

    pub fn sum(&self, x: &Sub, y: &Sub) -> Sub {
        let mut out = x.clone();
        for (b, set) in y.iter().enumerate() {
            for &v in set {
                Self::span_insert(&mut out[b], v);
            }
        }
        out
    }

    /// `x` is small: `x + s = M` forces `s = M`.
    pub fn is_small(&self, x: &Sub, all: &[Sub]) -> bool {
        all.iter()
            .all(|s| self.is_full(s) || !self.is_full(&self.sum(x, s)))
    }

    pub fn to_subspaces(&self, s: &Sub) -> Vec<Subspace> {
        let f2 = Field::prime(2).unwrap();
        s.iter()
            .zip(&self.dims)
            .map(|(set, &d)| {
                Subspace::from_rows(
                    f2,
                    d,
                    set.iter()
                        .map(|&v| (0..d).map(|i| f2.from_i64((v >> i & 1) as i64)).collect()),
                )
            })
            .collect()
    }
}

/// Admissible `λ` triangles over `F_p` by direct enumeration of every
/// triangle, checking `f e = f` on all rows and `e^2 = e` on rows `|k| <= d-1`.
pub fn admissible_count(d: usize, p: u64) -> u64 {
    let rows = 2 * d + 1;
    let cells = rows * (rows + 1) / 2;
    let total = p.pow(cells as u32);
    let mut count = 0;
    let mut lam = vec![vec![0u64; rows]; rows];
    for code in 0..total {
        let mut c = code;
        for (r, row) in lam.iter_mut().enumerate() {
            for x in row.iter_mut().take(r + 1) {
                *x = c % p;
                c /= p;
            }
        }
        let sums = (0..rows).all(|r| lam[r][..=r].iter().sum::<u64>() % p == 1);
        let idem = (0..rows - 1).all(|k| {
            (0..=k).all(|m| (m..=k).map(|l| lam[k][l] * lam[l][m]).sum::<u64>() % p == lam[k][m])
        });
        if sums && idem {
            count += 1;
        }
    }
    count
}
