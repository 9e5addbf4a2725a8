//! JSON scene files: a field, an index category, a graded algebra given by
//! sparse structure constants, and optional named modules.
//!
//! ```json
//! {
//!   "field": {"prime": 2},
//!   "category": {"kind": "poset", "elements": ["2", "1"], "order": [["2", "1"]]},
//!   "algebra": {
//!     "dims": {"2->2": 1, "2->1": 1, "1->1": 1},
//!     "units": {"2": [1], "1": [1]},
//!     "products": [{"left": ["1->1", 0], "right": ["2->1", 0], "terms": [[0, 1]]}]
//!   },
//!   "modules": {"P": {"projective": "2->2"}}
//! }
//! ```
//!
//! A product entry `left x_i`, `right y_j` gives `x_i y_j` in `A_{left right}`
//! (`right` applied first); missing entries are zero. Coefficients are
//! integers or strings `"p/q"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::{CategoryKind, CategoryReport, IndexCategory, Lattice};
use crate::error::{Error, Result};
use crate::field::{zero_vector, Field, Scalar, Vector};
use crate::graded::{projective, GradedAlgebra, GradedModule, GradedReport};

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime { prime: u64 },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CategorySpec {
    Explicit {
        objects: Vec<String>,
        /// `[id, source, target]`.
        arrows: Vec<(String, String, String)>,
        /// object -> identity arrow.
        identities: BTreeMap<String, String>,
        /// `[left, right, composite]` with `right` applied first.
        composition: Vec<(String, String, String)>,
    },
    Poset {
        elements: Vec<String>,
        /// Pairs `x <= y`; the reflexive-transitive closure is taken.
        order: Vec<(String, String)>,
    },
    Group {
        elements: Vec<String>,
        /// `table[i][j]` names `g_i g_j`.
        table: Vec<Vec<String>>,
    },
    Window {
        lattice: LatticeSpec,
        #[serde(default)]
        interval: Option<(i64, i64)>,
        #[serde(default)]
        points: Option<Vec<Vec<i64>>>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeSpec {
    Nat,
    Int,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Coefficient {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub left: (String, usize),
    pub right: (String, usize),
    /// `[basis index, coefficient]` in the composite component.
    pub terms: Vec<(usize, Coefficient)>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dims: BTreeMap<String, usize>,
    pub units: BTreeMap<String, Vec<Coefficient>>,
    #[serde(default)]
    pub products: Vec<Product>,
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Projective {
        projective: String,
    },
    Regular {
        regular: bool,
    },
    Explicit {
        dims: BTreeMap<String, usize>,
        #[serde(default)]
        action: Vec<Product>,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    pub field: FieldSpec,
    pub category: CategorySpec,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
}

/// A fully built and validated scene.
#[derive(Clone, Debug)]
pub struct Scene {
    pub field: Field,
    pub algebra: Arc<GradedAlgebra>,
    pub modules: BTreeMap<String, Arc<GradedModule>>,
}

impl Scene {
    pub fn module(&self, name: &str) -> Result<&Arc<GradedModule>> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::StructureError(format!("no module named {name:?}")))
    }
}

/// Validation results, one per stage reached.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SceneReport {
    pub category: Option<CategoryReport>,
    pub algebra: Option<GradedReport>,
    pub modules: BTreeMap<String, GradedReport>,
    pub clean: bool,
}

impl SceneFile {
    pub fn parse(text: &str) -> Result<SceneFile> {
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))
    }

    pub fn field(&self) -> Result<Field> {
        match &self.field {
            FieldSpec::Named(s) if s == "rationals" => Ok(Field::Rationals),
            FieldSpec::Named(s) => Err(Error::ParseError(format!("unknown field {s:?}"))),
            FieldSpec::Prime { prime } => Field::prime(*prime),
        }
    }

    pub fn build_category(&self) -> Result<IndexCategory> {
        match &self.category {
            CategorySpec::Explicit {
                objects,
                arrows,
                identities,
                composition,
            } => IndexCategory::explicit(
                objects.clone(),
                arrows.clone(),
                identities
                    .iter()
                    .map(|(o, a)| (o.clone(), a.clone()))
                    .collect(),
                composition.clone(),
            ),
            CategorySpec::Poset { elements, order } => {
                IndexCategory::from_poset(elements.clone(), &order_closure(elements, order)?)
            }
            CategorySpec::Group { elements, table } => {
                let idx: BTreeMap<&str, usize> = elements
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (e.as_str(), i))
                    .collect();
                let table = table
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| {
                                idx.get(x.as_str())
                                    .copied()
                                    .ok_or_else(|| Error::NotAGroup(format!("unknown element {x}")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                IndexCategory::from_group(elements.clone(), &table)
            }
            CategorySpec::Window {
                lattice,
                interval,
                points,
            } => {
                let lattice = match lattice {
                    LatticeSpec::Nat => Lattice::Nat,
                    LatticeSpec::Int => Lattice::Int,
                };
                match (interval, points) {
                    (Some((lo, hi)), None) => IndexCategory::interval_window(lattice, *lo, *hi),
                    (None, Some(pts)) => {
                        let rank = pts.first().map_or(0, Vec::len);
                        IndexCategory::monoid_window(lattice, rank, pts)
                    }
                    _ => Err(Error::ParseError(
                        "a window needs exactly one of interval or points".into(),
                    )),
                }
            }
        }
    }

    pub fn build_algebra(&self, category: Arc<IndexCategory>) -> Result<GradedAlgebra> {
        let field = self.field()?;
        let spec = &self.algebra;
        let dims = arrow_dims(&category, &spec.dims)?;
        let mut units = Vec::new();
        for (o, name) in category.objects().iter().enumerate() {
            let coeffs = spec
                .units
                .get(name)
                .ok_or_else(|| Error::ParseError(format!("no local unit for object {name}")))?;
            let u = coeffs
                .iter()
                .map(|c| coefficient(field, c))
                .collect::<Result<Vector>>()?;
            if u.len() != dims[category.identity(o)] {
                return Err(Error::DimensionMismatch(format!(
                    "local unit at {name} has the wrong length"
                )));
            }
            units.push(u);
        }
        for o in spec.units.keys() {
            category.object_index(o)?;
        }
        let table = product_table(field, &category, &dims, &dims, &spec.products)?;
        GradedAlgebra::from_fn(
            field,
            category.clone(),
            dims.clone(),
            units,
            |a, i, b, j| Ok(lookup_product(&table, field, &category, &dims, a, i, b, j)),
        )
    }

    pub fn build_module(
        &self,
        algebra: &Arc<GradedAlgebra>,
        spec: &ModuleSpec,
    ) -> Result<GradedModule> {
        let cat = algebra.category().clone();
        match spec {
            ModuleSpec::Projective { projective: id } => {
                Ok((*projective(algebra, cat.arrow_index(id)?)?.module).clone())
            }
            ModuleSpec::Regular { regular: true } => Ok(GradedModule::regular(algebra)),
            ModuleSpec::Regular { regular: false } => Ok(GradedModule::zero(algebra)),
            ModuleSpec::Explicit { dims, action } => {
                let field = algebra.field();
                let mdims = arrow_dims(&cat, dims)?;
                let table = product_table(field, &cat, algebra.dims(), &mdims, action)?;
                GradedModule::from_fn(algebra.clone(), mdims.clone(), |a, i, b, j| {
                    Ok(lookup_product(&table, field, &cat, &mdims, a, i, b, j))
                })
            }
        }
    }

    /// Builds every stage and reports the first failing validator, if any.
    pub fn validate(&self) -> Result<(SceneReport, Option<Scene>)> {
        let mut report = SceneReport::default();
        let cat = self.build_category()?;
        let cr = cat.validate();
        let ok = cr.is_clean();
        report.category = Some(cr);
        if !ok {
            return Ok((report, None));
        }
        let algebra = Arc::new(self.build_algebra(Arc::new(cat))?);
        let ar = algebra.validate();
        let ok = ar.is_clean();
        report.algebra = Some(ar);
        if !ok {
            return Ok((report, None));
        }
        let mut modules = BTreeMap::new();
        for (name, spec) in &self.modules {
            let m = self.build_module(&algebra, spec)?;
            report.modules.insert(name.clone(), m.validate());
            modules.insert(name.clone(), Arc::new(m));
        }
        report.clean = report.modules.values().all(GradedReport::is_clean);
        let scene = report.clean.then(|| Scene {
            field: algebra.field(),
            algebra,
            modules,
        });
        Ok((report, scene))
    }

    /// Builds the scene, failing with `StructureError` if any validator complains.
    pub fn load(&self) -> Result<Scene> {
        let (report, scene) = self.validate()?;
        scene.ok_or_else(|| {
            Error::StructureError(format!(
                "scene fails validation: {}",
                serde_json::to_string(&report).expect("report serializes")
            ))
        })
    }
}

pub fn load_scene(text: &str) -> Result<Scene> {
    SceneFile::parse(text)?.load()
}

fn order_closure(elements: &[String], order: &[(String, String)]) -> Result<Vec<(String, String)>> {
    let n = elements.len();
    let idx: BTreeMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for (x, y) in order {
        let get = |s: &str| {
            idx.get(s)
                .copied()
                .ok_or_else(|| Error::NotAPoset(format!("unknown element {s}")))
        };
        le[get(x)?][get(y)?] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut rel = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                rel.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    Ok(rel)
}

fn arrow_dims(cat: &IndexCategory, given: &BTreeMap<String, usize>) -> Result<Vec<usize>> {
    let mut dims = vec![0; cat.arrow_count()];
    for (id, &d) in given {
        dims[cat.arrow_index(id)?] = d;
    }
    Ok(dims)
}

fn coefficient(field: Field, c: &Coefficient) -> Result<Scalar> {
    match c {
        Coefficient::Int(v) => Ok(field.from_i64(*v)),
        Coefficient::Text(s) => field.parse(s),
    }
}

type ProductTable = BTreeMap<(usize, usize, usize, usize), Vector>;

fn product_table(
    field: Field,
    cat: &IndexCategory,
    left_dims: &[usize],
    right_dims: &[usize],
    entries: &[Product],
) -> Result<ProductTable> {
    let mut table = ProductTable::new();
    for p in entries {
        let (a, i) = (cat.arrow_index(&p.left.0)?, p.left.1);
        let (b, j) = (cat.arrow_index(&p.right.0)?, p.right.1);
        if i >= left_dims[a] || j >= right_dims[b] {
            return Err(Error::DimensionMismatch(format!(
                "basis index out of range in product ({}, {i}) ({}, {j})",
                p.left.0, p.right.0
            )));
        }
        let Some(c) = cat.compose(a, b).arrow() else {
            return Err(Error::StructureError(format!(
                "product given for non-composable pair ({}, {})",
                p.left.0, p.right.0
            )));
        };
        let mut v = zero_vector(field, right_dims[c]);
        for (k, coeff) in &p.terms {
            if *k >= v.len() {
                return Err(Error::DimensionMismatch(format!(
                    "term index {k} out of range at {}",
                    cat.arrow_id(c)
                )));
            }
            v[*k] = &v[*k] + &coefficient(field, coeff)?;
        }
        if table.insert((a, i, b, j), v).is_some() {
            return Err(Error::ParseError(format!(
                "product ({}, {i}) ({}, {j}) given twice",
                p.left.0, p.right.0
            )));
        }
    }
    Ok(table)
}

#[allow(clippy::too_many_arguments)]
fn lookup_product(
    table: &ProductTable,
    field: Field,
    cat: &IndexCategory,
    dims: &[usize],
    a: usize,
    i: usize,
    b: usize,
    j: usize,
) -> Vector {
    match table.get(&(a, i, b, j)) {
        Some(v) => v.clone(),
        None => zero_vector(field, dims[cat.compose(a, b).arrow().expect("composable")]),
    }
}

fn export_coefficient(x: &Scalar) -> Coefficient {
    let s = x.to_string();
    match s.parse::<i64>() {
        Ok(v) => Coefficient::Int(v),
        Err(_) => Coefficient::Text(s),
    }
}

fn export_products(
    cat: &IndexCategory,
    left_dims: &[usize],
    right_dims: &[usize],
    act: impl Fn(usize, usize) -> Vec<crate::field::Matrix>,
) -> Vec<Product> {
    let mut out = Vec::new();
    for a in 0..cat.arrow_count() {
        for b in 0..cat.arrow_count() {
            if left_dims[a] == 0 || right_dims[b] == 0 || cat.compose(a, b).arrow().is_none() {
                continue;
            }
            let mats = act(a, b);
            for (i, m) in mats.iter().enumerate() {
                for j in 0..m.cols() {
                    let terms: Vec<(usize, Coefficient)> = m
                        .column(j)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k, export_coefficient(x)))
                        .collect();
                    if !terms.is_empty() {
                        out.push(Product {
                            left: (cat.arrow_id(a).to_string(), i),
                            right: (cat.arrow_id(b).to_string(), j),
                            terms,
                        });
                    }
                }
            }
        }
    }
    out
}

fn export_category(cat: &IndexCategory) -> CategorySpec {
    let n = cat.arrow_count();
    match cat.kind() {
        CategoryKind::ExplicitFinite => CategorySpec::Explicit {
            objects: cat.objects().to_vec(),
            arrows: cat
                .arrows()
                .iter()
                .map(|a| {
                    (
                        a.id.clone(),
                        cat.objects()[a.source].clone(),
                        cat.objects()[a.target].clone(),
                    )
                })
                .collect(),
            identities: (0..cat.objects().len())
                .map(|o| {
                    (
                        cat.objects()[o].clone(),
                        cat.arrow_id(cat.identity(o)).to_string(),
                    )
                })
                .collect(),
            composition: (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter_map(|(a, b)| {
                    cat.compose(a, b).arrow().map(|c| {
                        (
                            cat.arrow_id(a).to_string(),
                            cat.arrow_id(b).to_string(),
                            cat.arrow_id(c).to_string(),
                        )
                    })
                })
                .collect(),
        },
        CategoryKind::PosetInterval => CategorySpec::Poset {
            elements: cat.objects().to_vec(),
            order: cat
                .arrows()
                .iter()
                .filter(|a| a.source != a.target)
                .map(|a| {
                    (
                        cat.objects()[a.source].clone(),
                        cat.objects()[a.target].clone(),
                    )
                })
                .collect(),
        },
        CategoryKind::FiniteGroup => CategorySpec::Group {
            elements: cat.arrows().iter().map(|a| a.id.clone()).collect(),
            table: (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| cat.arrow_id(cat.compose(a, b).arrow().unwrap()).to_string())
                        .collect()
                })
                .collect(),
        },
        CategoryKind::CommutativeMonoidWindow { lattice, .. } => CategorySpec::Window {
            lattice: match lattice {
                Lattice::Nat => LatticeSpec::Nat,
                Lattice::Int => LatticeSpec::Int,
            },
            interval: None,
            points: Some(
                (0..n)
                    .map(|a| cat.coordinates(a).unwrap().to_vec())
                    .collect(),
            ),
        },
    }
}

fn export_dims(cat: &IndexCategory, dims: &[usize]) -> BTreeMap<String, usize> {
    dims.iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(a, &d)| (cat.arrow_id(a).to_string(), d))
        .collect()
}

/// Writes an algebra and modules back out in scene form.
pub fn export_scene(algebra: &GradedAlgebra, modules: &[(&str, &GradedModule)]) -> SceneFile {
    let cat = algebra.category();
    let field = match algebra.field() {
        Field::Rationals => FieldSpec::Named("rationals".into()),
        Field::Prime(p) => FieldSpec::Prime { prime: p },
    };
    let units = (0..cat.objects().len())
        .map(|o| {
            (
                cat.objects()[o].clone(),
                algebra
                    .local_unit(o)
                    .iter()
                    .map(export_coefficient)
                    .collect(),
            )
        })
        .collect();
    let products = export_products(cat, algebra.dims(), algebra.dims(), |a, b| {
        algebra.left_mult(a, b).to_vec()
    });
    let modules = modules
        .iter()
        .map(|(name, m)| {
            let action = export_products(cat, algebra.dims(), m.dims(), |a, b| {
                m.action(a, b).to_vec()
            });
            (
                name.to_string(),
                ModuleSpec::Explicit {
                    dims: export_dims(cat, m.dims()),
                    action,
                },
            )
        })
        .collect();
    SceneFile {
        field,
        category: export_category(cat),
        algebra: AlgebraSpec {
            dims: export_dims(cat, algebra.dims()),
            units,
            products,
        },
        modules,
    }
}

pub fn to_json(scene: &SceneFile) -> String {
    let v: Value = serde_json::to_value(scene).expect("scene serializes");
    serde_json::to_string_pretty(&v).expect("json")
}
