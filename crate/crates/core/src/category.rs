//! Small grading categories: explicit finite tables, finite groups, poset
//! interval categories and finite windows of `N^k` / `Z^k`.
//!
//! Composition `ab` means "`b` first, then `a`", so `source(ab) = source(b)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    Nat,
    Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CategoryKind {
    ExplicitFinite,
    FiniteGroup,
    CommutativeMonoidWindow { lattice: Lattice, rank: usize },
    PosetInterval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

/// Result of composing two arrows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Composite {
    Arrow(usize),
    /// The sum left the window; every component there is zero.
    OutOfWindow,
    /// Not composable, or missing from an explicit table.
    Undefined,
}

impl Composite {
    pub fn arrow(self) -> Option<usize> {
        match self {
            Composite::Arrow(a) => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IndexCategory {
    kind: CategoryKind,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<usize>,
    table: Vec<Composite>,
    coords: Option<Vec<Vec<i64>>>,
    factorizations: Vec<Vec<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "violation")]
pub enum CategoryViolation {
    MissingComposite {
        left: String,
        right: String,
    },
    WrongEndpoints {
        left: String,
        right: String,
        composite: String,
    },
    LeftIdentity {
        arrow: String,
    },
    RightIdentity {
        arrow: String,
    },
    Associativity {
        a: String,
        b: String,
        c: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CategoryReport {
    pub violations: Vec<CategoryViolation>,
}

impl CategoryReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Every arrow sequence repeats some arrow infinitely often, or every
/// descending right-divisor chain is finite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SequenceCondition {
    RepeatingSequences,
    RightDivisorChains,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    Fails,
    NotDecidableForKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowSequenceReport {
    pub condition: SequenceCondition,
    pub verdict: Verdict,
    pub witness: Option<Vec<String>>,
    pub reason: String,
}

impl IndexCategory {
    fn assemble(
        kind: CategoryKind,
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<usize>,
        table: Vec<Composite>,
        coords: Option<Vec<Vec<i64>>>,
    ) -> IndexCategory {
        let n = arrows.len();
        let mut factorizations = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if let Composite::Arrow(c) = table[a * n + b] {
                    factorizations[c].push((a, b));
                }
            }
        }
        IndexCategory {
            kind,
            objects,
            arrows,
            identities,
            table,
            coords,
            factorizations,
        }
    }

    /// A finite category from explicit tables. Composable pairs missing from
    /// `composition` are reported by [`IndexCategory::validate`].
    pub fn explicit(
        objects: Vec<String>,
        arrows: Vec<(String, String, String)>,
        identities: Vec<(String, String)>,
        composition: Vec<(String, String, String)>,
    ) -> Result<IndexCategory> {
        let obj_index = index_map(&objects, "object")?;
        let mut list = Vec::new();
        for (id, s, t) in &arrows {
            let source = lookup(&obj_index, s, "object")?;
            let target = lookup(&obj_index, t, "object")?;
            list.push(Arrow {
                id: id.clone(),
                source,
                target,
            });
        }
        let ids: Vec<String> = list.iter().map(|a| a.id.clone()).collect();
        let arrow_index = index_map(&ids, "arrow")?;
        let mut idents = vec![usize::MAX; objects.len()];
        for (o, a) in &identities {
            let oi = lookup(&obj_index, o, "object")?;
            let ai = lookup(&arrow_index, a, "arrow")?;
            if list[ai].source != oi || list[ai].target != oi {
                return Err(Error::StructureError(format!(
                    "identity {a} is not an endomorphism of {o}"
                )));
            }
            idents[oi] = ai;
        }
        if let Some(o) = idents.iter().position(|&i| i == usize::MAX) {
            return Err(Error::StructureError(format!(
                "object {} has no identity",
                objects[o]
            )));
        }
        let n = list.len();
        let mut table = vec![Composite::Undefined; n * n];
        for (a, b, c) in &composition {
            let (a, b, c) = (
                lookup(&arrow_index, a, "arrow")?,
                lookup(&arrow_index, b, "arrow")?,
                lookup(&arrow_index, c, "arrow")?,
            );
            if list[a].source != list[b].target {
                return Err(Error::StructureError(format!(
                    "composite given for non-composable pair ({}, {})",
                    list[a].id, list[b].id
                )));
            }
            table[a * n + b] = Composite::Arrow(c);
        }
        Ok(IndexCategory::assemble(
            CategoryKind::ExplicitFinite,
            objects,
            list,
            idents,
            table,
            None,
        ))
    }

    /// The interval category of a poset: one arrow `l->m` for each `l <= m`.
    /// `relation` must list every pair of the order, reflexive pairs included.
    pub fn from_poset(
        elements: Vec<String>,
        relation: &[(String, String)],
    ) -> Result<IndexCategory> {
        let idx = index_map(&elements, "element")?;
        let n = elements.len();
        let mut le = vec![false; n * n];
        for (a, b) in relation {
            let (a, b) = (lookup(&idx, a, "element")?, lookup(&idx, b, "element")?);
            le[a * n + b] = true;
        }
        for a in 0..n {
            if !le[a * n + a] {
                return Err(Error::NotAPoset(format!(
                    "not reflexive at {}",
                    elements[a]
                )));
            }
            for b in 0..n {
                if a != b && le[a * n + b] && le[b * n + a] {
                    return Err(Error::NotAPoset(format!(
                        "not antisymmetric: {} and {}",
                        elements[a], elements[b]
                    )));
                }
                for c in 0..n {
                    if le[a * n + b] && le[b * n + c] && !le[a * n + c] {
                        return Err(Error::NotAPoset(format!(
                            "not transitive: {} <= {} <= {}",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut pos = BTreeMap::new();
        for s in 0..n {
            for t in 0..n {
                if le[s * n + t] {
                    pos.insert((s, t), arrows.len());
                    arrows.push(Arrow {
                        id: format!("{}->{}", elements[s], elements[t]),
                        source: s,
                        target: t,
                    });
                }
            }
        }
        let m = arrows.len();
        let mut table = vec![Composite::Undefined; m * m];
        for (a, x) in arrows.iter().enumerate() {
            for (b, y) in arrows.iter().enumerate() {
                if x.source == y.target {
                    table[a * m + b] = Composite::Arrow(pos[&(y.source, x.target)]);
                }
            }
        }
        let identities = (0..n).map(|s| pos[&(s, s)]).collect();
        Ok(IndexCategory::assemble(
            CategoryKind::PosetInterval,
            elements,
            arrows,
            identities,
            table,
            None,
        ))
    }

    /// One-object category of a finite group; `table[i][j]` is the index of `g_i g_j`.
    pub fn from_group(elements: Vec<String>, table: &[Vec<usize>]) -> Result<IndexCategory> {
        let n = elements.len();
        index_map(&elements, "element")?;
        if n == 0
            || table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::NotAGroup(
                "Cayley table is not square over the elements".into(),
            ));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for g in 0..n {
            if !(0..n).any(|h| table[g][h] == e && table[h][g] == e) {
                return Err(Error::NotAGroup(format!("{} has no inverse", elements[g])));
            }
        }
        let arrows = elements
            .iter()
            .map(|id| Arrow {
                id: id.clone(),
                source: 0,
                target: 0,
            })
            .collect();
        let flat = table
            .iter()
            .flatten()
            .map(|&c| Composite::Arrow(c))
            .collect();
        Ok(IndexCategory::assemble(
            CategoryKind::FiniteGroup,
            vec!["*".into()],
            arrows,
            vec![e],
            flat,
            None,
        ))
    }

    /// A finite window of `N^k` or `Z^k` under addition. Sums leaving the
    /// window compose to [`Composite::OutOfWindow`].
    pub fn monoid_window(
        lattice: Lattice,
        rank: usize,
        window: &[Vec<i64>],
    ) -> Result<IndexCategory> {
        let mut points: Vec<Vec<i64>> = window.to_vec();
        if points.iter().any(|p| p.len() != rank) {
            return Err(Error::WindowError(format!(
                "window point of the wrong rank (expected {rank})"
            )));
        }
        points.sort();
        let before = points.len();
        points.dedup();
        if points.len() != before {
            return Err(Error::WindowError("window lists a point twice".into()));
        }
        let set: BTreeSet<&Vec<i64>> = points.iter().collect();
        if !set.contains(&vec![0; rank]) {
            return Err(Error::WindowError(
                "window does not contain the identity 0".into(),
            ));
        }
        if lattice == Lattice::Nat {
            for p in &points {
                if p.iter().any(|&x| x < 0) {
                    return Err(Error::WindowError(format!(
                        "{} is not in N^{rank}",
                        point_id(p)
                    )));
                }
                for i in 0..rank {
                    if p[i] > 0 {
                        let mut q = p.clone();
                        q[i] -= 1;
                        if !set.contains(&q) {
                            return Err(Error::WindowError(format!(
                                "window not downward closed: {} present, {} missing",
                                point_id(p),
                                point_id(&q)
                            )));
                        }
                    }
                }
            }
        }
        let index: BTreeMap<&Vec<i64>, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let n = points.len();
        let mut table = vec![Composite::OutOfWindow; n * n];
        for a in 0..n {
            for b in 0..n {
                let sum: Vec<i64> = points[a]
                    .iter()
                    .zip(&points[b])
                    .map(|(x, y)| x + y)
                    .collect();
                if let Some(&c) = index.get(&sum) {
                    table[a * n + b] = Composite::Arrow(c);
                }
            }
        }
        let arrows = points
            .iter()
            .map(|p| Arrow {
                id: point_id(p),
                source: 0,
                target: 0,
            })
            .collect();
        let zero = index[&vec![0; rank]];
        Ok(IndexCategory::assemble(
            CategoryKind::CommutativeMonoidWindow { lattice, rank },
            vec!["*".into()],
            arrows,
            vec![zero],
            table,
            Some(points),
        ))
    }

    /// Rank-one window `{lo, ..., hi}`.
    pub fn interval_window(lattice: Lattice, lo: i64, hi: i64) -> Result<IndexCategory> {
        let pts: Vec<Vec<i64>> = (lo..=hi).map(|k| vec![k]).collect();
        IndexCategory::monoid_window(lattice, 1, &pts)
    }

    pub fn kind(&self) -> &CategoryKind {
        &self.kind
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow_id(&self, a: usize) -> &str {
        &self.arrows[a].id
    }

    pub fn arrow_index(&self, id: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.id == id)
            .ok_or_else(|| Error::StructureError(format!("unknown arrow {id}")))
    }

    pub fn object_index(&self, id: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| Error::StructureError(format!("unknown object {id}")))
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.identities.contains(&a)
    }

    /// Lattice coordinates of a window arrow.
    pub fn coordinates(&self, a: usize) -> Option<&[i64]> {
        self.coords.as_ref().map(|c| c[a].as_slice())
    }

    /// Window arrow with the given coordinates.
    pub fn arrow_at(&self, point: &[i64]) -> Option<usize> {
        self.coords.as_ref()?.iter().position(|p| p == point)
    }

    pub fn is_window(&self) -> bool {
        matches!(self.kind, CategoryKind::CommutativeMonoidWindow { .. })
    }

    pub fn is_int_window(&self) -> bool {
        matches!(
            self.kind,
            CategoryKind::CommutativeMonoidWindow {
                lattice: Lattice::Int,
                ..
            }
        )
    }

    pub fn compose(&self, a: usize, b: usize) -> Composite {
        self.table[a * self.arrows.len() + b]
    }

    pub fn composable(&self, a: usize, b: usize) -> bool {
        self.arrows[a].source == self.arrows[b].target
    }

    /// All pairs `(a, b)` with `ab = c`.
    pub fn factorizations(&self, c: usize) -> &[(usize, usize)] {
        &self.factorizations[c]
    }

    /// All `a` with `ab = c`, in arrow order.
    pub fn left_quotients(&self, c: usize, b: usize) -> Vec<usize> {
        self.factorizations[c]
            .iter()
            .filter(|&&(_, y)| y == b)
            .map(|&(x, _)| x)
            .collect()
    }

    /// Whether `b` is a right divisor of `c`, i.e. `c = ab` for some `a`.
    pub fn right_divisor(&self, c: usize, b: usize) -> Result<bool> {
        let n = self.arrows.len();
        if c >= n || b >= n {
            return Err(Error::StructureError(format!(
                "arrow index out of range ({c}, {b})"
            )));
        }
        Ok(self.factorizations[c].iter().any(|&(_, y)| y == b))
    }

    pub fn right_divisor_by_id(&self, c: &str, b: &str) -> Result<bool> {
        self.right_divisor(self.arrow_index(c)?, self.arrow_index(b)?)
    }

    /// Checks identity laws, endpoints and associativity on all enumerable
    /// triples. For `Z^k` windows a triple is skipped when one of its inner
    /// composites has left the window.
    pub fn validate(&self) -> CategoryReport {
        let n = self.arrows.len();
        let mut violations = Vec::new();
        let id = |a: usize| self.arrows[a].id.clone();
        for a in 0..n {
            for b in 0..n {
                let c = self.compose(a, b);
                if !self.composable(a, b) {
                    continue;
                }
                match c {
                    Composite::Undefined => violations.push(CategoryViolation::MissingComposite {
                        left: id(a),
                        right: id(b),
                    }),
                    Composite::Arrow(c) => {
                        if self.source(c) != self.source(b) || self.target(c) != self.target(a) {
                            violations.push(CategoryViolation::WrongEndpoints {
                                left: id(a),
                                right: id(b),
                                composite: id(c),
                            });
                        }
                    }
                    Composite::OutOfWindow => {}
                }
            }
        }
        for a in 0..n {
            if self.compose(self.identity(self.target(a)), a) != Composite::Arrow(a) {
                violations.push(CategoryViolation::LeftIdentity { arrow: id(a) });
            }
            if self.compose(a, self.identity(self.source(a))) != Composite::Arrow(a) {
                violations.push(CategoryViolation::RightIdentity { arrow: id(a) });
            }
        }
        let skip_clipped = self.is_int_window();
        for a in 0..n {
            for b in 0..n {
                if !self.composable(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.composable(b, c) {
                        continue;
                    }
                    let ab = self.compose(a, b);
                    let bc = self.compose(b, c);
                    if skip_clipped
                        && (ab == Composite::OutOfWindow || bc == Composite::OutOfWindow)
                    {
                        continue;
                    }
                    let left = match ab {
                        Composite::Arrow(x) => self.compose(x, c),
                        other => other,
                    };
                    let right = match bc {
                        Composite::Arrow(y) => self.compose(a, y),
                        other => other,
                    };
                    if left != right
                        && left != Composite::Undefined
                        && right != Composite::Undefined
                    {
                        violations.push(CategoryViolation::Associativity {
                            a: id(a),
                            b: id(b),
                            c: id(c),
                        });
                    }
                }
            }
        }
        CategoryReport { violations }
    }

    /// Decides the sequence hypothesis of the main theorems for the kinds
    /// where a finite argument exists.
    pub fn check_sequence_condition(&self, support: &[usize]) -> ArrowSequenceReport {
        let (condition, verdict, reason) = match &self.kind {
            CategoryKind::ExplicitFinite => (
                SequenceCondition::RepeatingSequences,
                Verdict::Holds,
                "finitely many arrows: every sequence repeats some arrow infinitely often"
                    .to_string(),
            ),
            CategoryKind::FiniteGroup => (
                SequenceCondition::RepeatingSequences,
                Verdict::Holds,
                format!(
                    "finite group, algebra supported on {} arrows",
                    support.len()
                ),
            ),
            CategoryKind::PosetInterval => (
                SequenceCondition::RightDivisorChains,
                Verdict::Holds,
                "finite poset: strictly descending right-divisor chains are finite".to_string(),
            ),
            CategoryKind::CommutativeMonoidWindow {
                lattice: Lattice::Nat,
                ..
            } => (
                SequenceCondition::RepeatingSequences,
                Verdict::Holds,
                "N^k is artinian with least element 0".to_string(),
            ),
            CategoryKind::CommutativeMonoidWindow {
                lattice: Lattice::Int,
                ..
            } => (
                SequenceCondition::RepeatingSequences,
                Verdict::NotDecidableForKind,
                "Z^k is an infinite group; a finite window certifies nothing".to_string(),
            ),
        };
        ArrowSequenceReport {
            condition,
            verdict,
            witness: None,
            reason,
        }
    }
}

fn point_id(p: &[i64]) -> String {
    if p.len() == 1 {
        p[0].to_string()
    } else {
        let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

fn index_map(ids: &[String], what: &str) -> Result<BTreeMap<String, usize>> {
    let mut m = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        if id.is_empty() || m.insert(id.clone(), i).is_some() {
            return Err(Error::StructureError(format!(
                "bad or duplicate {what} id {id:?}"
            )));
        }
    }
    Ok(m)
}

fn lookup(m: &BTreeMap<String, usize>, id: &str, what: &str) -> Result<usize> {
    m.get(id)
        .copied()
        .ok_or_else(|| Error::StructureError(format!("unknown {what} {id}")))
}
