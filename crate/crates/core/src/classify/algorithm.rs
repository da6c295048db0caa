//! Layer-by-layer classification of (n, m)-bent functions.
//!
//! Starting from the layer-1 classes, each representative F is extended by
//! its bent friends; the extensions (F, f) are sorted into EA classes one
//! layer up, the class sizes follow from
//! |C^(m+1)_j| = 2^(n+1) * sum_i |C^m_i| * |F(C^m_i, C^(m+1)_j)|,
//! and every new representative is cut back down through its bent spaces.

use super::friends::{bent_friends_packed, bent_spaces, friend_orbit};
use super::layer1::{layer1_key, Census, Layer1Key};
use super::registry::ClassRegistry;
use super::{gl_order, ClassId, ClassRecord, HasseEdge};
use crate::constructions::{catalog_layer, layer_size};
use crate::function::BooleanFunction;
use crate::invariants::{canon::DEFAULT_NODE_BUDGET, function_fingerprint};
use crate::{Error, Result, VectorialFunction};
use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;
use std::collections::{BTreeMap, HashSet};

/// Layer-1 classes (representative, number of affine-free members) and the
/// full affine-free stream used as the friend candidates.
#[derive(Clone, Debug)]
pub struct Layer1Input {
    pub n: usize,
    pub classes: Vec<(VectorialFunction, u64)>,
    pub tables: Vec<u64>,
}

impl Layer1Input {
    pub fn from_census(census: &Census) -> Result<Layer1Input> {
        if !census.is_complete() {
            return Err(Error::invalid("the layer-1 census has not finished"));
        }
        let tables = census
            .tables
            .clone()
            .ok_or_else(|| Error::invalid("the census did not keep its tables"))?;
        let classes = census
            .state
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                (
                    VectorialFunction::from_boolean(census.representative(i)),
                    c.count,
                )
            })
            .collect();
        Ok(Layer1Input {
            n: census.state.n,
            classes,
            tables,
        })
    }
}

pub struct ClassifyOptions<'a> {
    pub budget: u64,
    /// Highest layer to build (defaults to n/2).
    pub top: Option<usize>,
    /// Relabel classes to the published catalog numbering when one exists for n.
    pub align_to_catalog: bool,
    pub progress: Option<&'a mut dyn FnMut(&serde_json::Value)>,
}

impl Default for ClassifyOptions<'_> {
    fn default() -> Self {
        ClassifyOptions {
            budget: DEFAULT_NODE_BUDGET,
            top: None,
            align_to_catalog: true,
            progress: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, relation: &str, subject: String, passed: bool, detail: String) {
        self.checks.push(RelationCheck {
            relation: relation.into(),
            subject,
            passed,
            detail,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub n: usize,
    pub records: Vec<ClassRecord>,
    pub edges: Vec<HasseEdge>,
    /// Classes whose representative has no bent friend.
    pub lonely: Vec<ClassId>,
    pub report: RelationReport,
    /// Canonical labelings computed while classifying extensions.
    pub canonical_forms: u64,
}

impl Classification {
    pub fn layer(&self, m: usize) -> impl Iterator<Item = &ClassRecord> {
        self.records.iter().filter(move |r| r.id.m == m)
    }

    /// |B(n, m)|: the number of all (n, m)-bent functions.
    pub fn total(&self, m: usize) -> BigUint {
        self.layer(m).map(|r| &r.cardinality).sum()
    }

    /// |AB(n, m)|: the number of affine-free (n, m)-bent functions.
    pub fn affine_free_total(&self, m: usize) -> BigUint {
        self.layer(m).map(|r| &r.affine_free).sum()
    }
}

/// |C^(m+1)_j| from the lower records and the friend counts on the edges into `upper`.
pub fn class_cardinality(
    n: usize,
    upper: ClassId,
    lower: &[ClassRecord],
    edges: &[HasseEdge],
) -> Result<BigUint> {
    let mut sum = BigUint::zero();
    for e in edges.iter().filter(|e| e.upper == upper && e.friends > 0) {
        let rec = lower.iter().find(|r| r.id == e.lower).ok_or_else(|| {
            Error::Inconsistency(format!("lower class {} of {upper} is missing", e.lower))
        })?;
        sum += &rec.cardinality * e.friends;
    }
    Ok(sum << (n + 1))
}

fn shift(m: usize, n: usize) -> usize {
    m * (n + 1)
}

/// Checks the relations that tie layers together:
/// (a) |GL(m,2)| divides every |C^m_i|;
/// (b) the bent spaces of each upper class number 2^(m+1) - 1 in total;
/// (c) |C_i| * friends_i / spaces_i is the same for all lower classes of one upper class;
/// (d) |C^m_i| = |AC^m_i| * 2^(m(n+1)) for the affine-free part;
/// plus friends > 0 exactly when spaces > 0 on every edge.
pub fn verify_relations(n: usize, records: &[ClassRecord], edges: &[HasseEdge]) -> RelationReport {
    let mut report = RelationReport::default();
    for r in records {
        let gl = gl_order(r.id.m);
        report.push(
            "gl-divides-cardinality",
            r.id.to_string(),
            (&r.cardinality % &gl).is_zero(),
            format!("|C| = {}, |GL({},2)| = {gl}", r.cardinality, r.id.m),
        );
        let expected = &r.affine_free << shift(r.id.m, n);
        report.push(
            "affine-free-scaling",
            r.id.to_string(),
            expected == r.cardinality,
            format!("|AC| * 2^{} = {expected}", shift(r.id.m, n)),
        );
    }
    for e in edges {
        report.push(
            "edge-support",
            format!("{}-{}", e.lower, e.upper),
            (e.friends > 0) == (e.spaces > 0),
            format!("friends {} spaces {}", e.friends, e.spaces),
        );
    }
    let uppers: Vec<&ClassRecord> = records.iter().filter(|r| r.id.m >= 2).collect();
    for up in uppers {
        let into: Vec<&HasseEdge> = edges.iter().filter(|e| e.upper == up.id).collect();
        let spaces: u64 = into.iter().map(|e| e.spaces).sum();
        let want = (1u64 << up.id.m) - 1;
        report.push(
            "spaces-sum",
            up.id.to_string(),
            spaces == want,
            format!("sum of spaces {spaces}, expected {want}"),
        );
        // |C_i| f_i / s_i = |C_j| / (2^(n+1) (2^(m+1) - 1)) for every lower class i.
        let lhs_scale = BigUint::from(want) << (n + 1);
        let mut ok = !into.is_empty();
        for e in into.iter().filter(|e| e.spaces > 0) {
            match records.iter().find(|r| r.id == e.lower) {
                Some(low) => {
                    let lhs = &low.cardinality * e.friends * &lhs_scale;
                    let rhs = &up.cardinality * e.spaces;
                    ok &= lhs == rhs;
                }
                None => ok = false,
            }
        }
        report.push(
            "cross-ratio",
            up.id.to_string(),
            ok,
            "|C_i| * friends / spaces constant over lower classes".into(),
        );
    }
    report
}

fn progress(opts: &mut ClassifyOptions, value: serde_json::Value) {
    if let Some(cb) = opts.progress.as_mut() {
        cb(&value);
    }
}

struct Layer {
    reps: Vec<VectorialFunction>,
    affine_free: Vec<BigUint>,
    cardinality: Vec<BigUint>,
}

/// Runs the classification from layer 1 up to layer `top` (default n/2).
pub fn run_algorithm1(input: &Layer1Input, mut opts: ClassifyOptions) -> Result<Classification> {
    let n = input.n;
    let top = opts.top.unwrap_or(n / 2).min(n / 2);
    let mut layers: Vec<Layer> = vec![Layer {
        reps: input.classes.iter().map(|(f, _)| f.clone()).collect(),
        affine_free: input
            .classes
            .iter()
            .map(|&(_, c)| BigUint::from(c))
            .collect(),
        cardinality: input
            .classes
            .iter()
            .map(|&(_, c)| BigUint::from(c) << (n + 1))
            .collect(),
    }];
    let keys: Vec<Layer1Key> = layers[0]
        .reps
        .iter()
        .map(|f| layer1_key(f.coord(0)))
        .collect::<Result<_>>()?;
    // (layer of lower class, lower index, upper index) -> (friends, spaces)
    let mut edge_counts: BTreeMap<(usize, usize, usize), (u64, u64)> = BTreeMap::new();
    let mut lonely: Vec<(usize, usize)> = Vec::new();
    let mut registries: Vec<Option<ClassRegistry>> = vec![None];
    let mut canonical_forms = 0;
    for m in 1..top {
        let mut upper = ClassRegistry::new(opts.budget);
        let lower = &layers[m - 1];
        for (i, rep) in lower.reps.iter().enumerate() {
            let friends = bent_friends_packed(rep, &input.tables);
            if friends.is_empty() {
                lonely.push((m, i));
            }
            let all: HashSet<u64> = friends.iter().copied().collect();
            let mut seen: HashSet<u64> = HashSet::new();
            let mut orbits = 0u64;
            for &f in &friends {
                if seen.contains(&f) {
                    continue;
                }
                let orbit = friend_orbit(rep, f);
                if !orbit.iter().all(|g| all.contains(g)) {
                    return Err(Error::Inconsistency(format!(
                        "friend {f:016x} of layer-{m} class {i} has a shift that is not a friend"
                    )));
                }
                seen.extend(orbit.iter().copied());
                let g = rep.extend(BooleanFunction::from_u64(n, f)?)?;
                let (j, _) = upper.classify(&g)?;
                edge_counts.entry((m, i, j)).or_default().0 += orbit.len() as u64;
                orbits += 1;
            }
            progress(
                &mut opts,
                serde_json::json!({"event": "extensions", "n": n, "m": m, "class": i,
                    "friends": friends.len(), "orbits": orbits, "classes": upper.len()}),
            );
        }
        let mut next = Layer {
            reps: Vec::new(),
            affine_free: Vec::new(),
            cardinality: Vec::new(),
        };
        for j in 0..upper.len() {
            let mut af = BigUint::zero();
            let mut card = BigUint::zero();
            for i in 0..lower.reps.len() {
                if let Some(&(fr, _)) = edge_counts.get(&(m, i, j)) {
                    af += &lower.affine_free[i] * fr;
                    card += &lower.cardinality[i] * fr;
                }
            }
            next.reps.push(upper.classes()[j].representative.clone());
            next.affine_free.push(af);
            next.cardinality.push(card << (n + 1));
        }
        // Cut each new representative back down through its bent spaces.
        for (j, g) in next.reps.iter().enumerate() {
            for space in bent_spaces(g)? {
                let i = if m == 1 {
                    let k = layer1_key(space.function.coord(0))?;
                    keys.iter().position(|&x| x == k)
                } else {
                    registries[m - 1]
                        .as_mut()
                        .expect("registry of every layer above the first")
                        .find(&space.function)?
                };
                let i = i.ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "a bent space of layer-{} class {j} lies in no known layer-{m} class",
                        m + 1
                    ))
                })?;
                edge_counts.entry((m, i, j)).or_default().1 += 1;
            }
        }
        canonical_forms += upper.canonical_forms;
        progress(
            &mut opts,
            serde_json::json!({"event": "layer", "n": n, "m": m + 1, "classes": next.reps.len()}),
        );
        registries.push(Some(upper));
        layers.push(next);
    }
    // The top layer has no friends by the degree bound on vectorial bent functions.
    let last = layers.len();
    if last == n / 2 {
        lonely.extend((0..layers[last - 1].reps.len()).map(|i| (last, i)));
    }

    let labels = if opts.align_to_catalog {
        catalog_labels(n, &layers, &keys, &mut registries)?
    } else {
        None
    };
    let id = |m: usize, i: usize| ClassId {
        m,
        index: labels.as_ref().map_or(i, |l: &Vec<Vec<usize>>| l[m - 1][i]) + 1,
    };
    let mut records = Vec::new();
    for (k, layer) in layers.iter().enumerate() {
        for (i, rep) in layer.reps.iter().enumerate() {
            records.push(ClassRecord {
                id: id(k + 1, i),
                representative: rep.clone(),
                cardinality: layer.cardinality[i].clone(),
                affine_free: layer.affine_free[i].clone(),
                fingerprint: function_fingerprint(rep).hash(),
            });
        }
    }
    records.sort_by_key(|r| r.id);
    let mut edges: Vec<HasseEdge> = edge_counts
        .iter()
        .map(|(&(m, i, j), &(friends, spaces))| HasseEdge {
            lower: id(m, i),
            upper: id(m + 1, j),
            friends,
            spaces,
        })
        .collect();
    edges.sort_by_key(|e| (e.lower, e.upper));
    let mut lonely: Vec<ClassId> = lonely.into_iter().map(|(m, i)| id(m, i)).collect();
    lonely.sort();

    let mut report = verify_relations(n, &records, &edges);
    for r in records.iter().filter(|r| r.id.m >= 2) {
        let lower: Vec<ClassRecord> = records
            .iter()
            .filter(|x| x.id.m == r.id.m - 1)
            .cloned()
            .collect();
        let c = class_cardinality(n, r.id, &lower, &edges)?;
        report.push(
            "class-cardinality",
            r.id.to_string(),
            c == r.cardinality,
            format!("{c}"),
        );
    }
    if labels.is_none() && opts.align_to_catalog && n == 6 {
        report.push(
            "catalog-alignment",
            "all layers".into(),
            false,
            "classes do not match the catalog one-to-one".into(),
        );
    }
    Ok(Classification {
        n,
        records,
        edges,
        lonely,
        report,
        canonical_forms,
    })
}

/// Per-layer maps from discovery index to catalog index, when a catalog exists
/// for n and matches every layer one-to-one.
fn catalog_labels(
    n: usize,
    layers: &[Layer],
    keys: &[Layer1Key],
    registries: &mut [Option<ClassRegistry>],
) -> Result<Option<Vec<Vec<usize>>>> {
    if n != 6 {
        return Ok(None);
    }
    let mut out = Vec::new();
    for (k, layer) in layers.iter().enumerate() {
        let m = k + 1;
        if layer.reps.len() != layer_size(m) {
            return Ok(None);
        }
        let mut label = vec![usize::MAX; layer.reps.len()];
        for (c, entry) in catalog_layer(m).enumerate() {
            let f = entry.function();
            let found = if m == 1 {
                let key = layer1_key(f.coord(0))?;
                keys.iter().position(|&x| x == key)
            } else {
                registries[k]
                    .as_mut()
                    .expect("registry of every layer above the first")
                    .find(&f)?
            };
            match found {
                Some(i) if label[i] == usize::MAX => label[i] = c,
                _ => return Ok(None),
            }
        }
        out.push(label);
    }
    Ok(Some(out))
}
