//! Independent reference implementations used by the property tests and the
//! acceptance harness, plus seeded generators for their inputs.
#![allow(dead_code)]

use std::collections::BTreeMap;

use embcomp_core::data::{Column, ColumnKind, DataTable, RelationshipKind, Value};
use embcomp_core::scene::{Obb, Pose};
use embcomp_core::CompositeType;
use nalgebra::{Matrix3, UnitQuaternion, Vector3};
use rand::seq::SliceRandom;
use rand::Rng;

/// Admissibility written out cell by cell.
pub fn matrix_cell(kind: RelationshipKind, ty: CompositeType) -> bool {
    use CompositeType::*;
    use RelationshipKind as K;
    match kind {
        K::None => ty == Juxtaposed,
        K::ItemItem => true,
        K::ItemGroup => ty != Overloaded,
        K::ItemDimension => ty != Nested,
    }
}

// ---------------------------------------------------------------------------
// Relationship inference by exhaustive row matching.

/// Kind, `(a side, b side)` and witnessing key columns.
pub type Classified = (RelationshipKind, (String, String), Option<(String, String)>);

fn cell<'a>(t: &'a DataTable, row: usize, col: &str) -> Option<&'a Value> {
    t.rows[row].get(col)
}

/// For each row of `x`, the rows of `y` whose `cy` cell equals its `cx` cell.
fn matches(x: &DataTable, cx: &str, y: &DataTable, cy: &str) -> Vec<Vec<usize>> {
    (0..x.rows.len())
        .map(|i| {
            (0..y.rows.len())
                .filter(|j| match (cell(x, i, cx), cell(y, *j, cy)) {
                    (Some(u), Some(v)) => u == v,
                    _ => false,
                })
                .collect()
        })
        .collect()
}

fn one_to_one(a: &DataTable, ca: &str, b: &DataTable, cb: &str) -> bool {
    !a.rows.is_empty()
        && !b.rows.is_empty()
        && matches(a, ca, b, cb).iter().all(|m| m.len() == 1)
        && matches(b, cb, a, ca).iter().all(|m| m.len() == 1)
}

fn one_to_many(one: &DataTable, c1: &str, many: &DataTable, cm: &str) -> bool {
    if one.rows.is_empty() || many.rows.is_empty() {
        return false;
    }
    let back = matches(many, cm, one, c1);
    if !back.iter().all(|m| m.len() == 1) {
        return false;
    }
    let fan = matches(one, c1, many, cm);
    fan.iter().all(|m| !m.is_empty()) && fan.iter().any(|m| m.len() >= 2)
}

fn new_measures(t: &DataTable, other: &DataTable) -> usize {
    t.columns
        .iter()
        .filter(|c| c.kind == ColumnKind::Quantitative && c.name != t.key)
        .filter(|c| other.columns.iter().all(|o| o.name != c.name))
        .count()
}

fn first_pair(
    x: &DataTable,
    y: &DataTable,
    ok: impl Fn(&str, &str) -> bool,
) -> Option<(String, String)> {
    let mut found: Vec<(String, String)> = Vec::new();
    for cx in &x.columns {
        for cy in &y.columns {
            if ok(&cx.name, &cy.name) {
                found.push((cx.name.clone(), cy.name.clone()));
            }
        }
    }
    found.sort();
    found.into_iter().next()
}

pub fn classify(a: &DataTable, b: &DataTable) -> Classified {
    let sides = |x: &DataTable, y: &DataTable| (x.name.clone(), y.name.clone());
    if let Some(keys) = first_pair(a, b, |x, y| one_to_one(a, x, b, y)) {
        let (na, nb) = (new_measures(a, b), new_measures(b, a));
        if na < 2 && nb < 2 {
            return (RelationshipKind::ItemItem, sides(a, b), Some(keys));
        }
        let b_client = nb > na || (nb == na && b.name >= a.name);
        let (host, client) = if b_client { (a, b) } else { (b, a) };
        let keys = first_pair(host, client, |x, y| one_to_one(host, x, client, y));
        return (RelationshipKind::ItemGroup, sides(host, client), keys);
    }
    for (one, many) in [(a, b), (b, a)] {
        if let Some(keys) = first_pair(one, many, |x, y| one_to_many(one, x, many, y)) {
            return (RelationshipKind::ItemDimension, sides(one, many), Some(keys));
        }
    }
    (RelationshipKind::None, sides(a, b), None)
}

const NAMES: [&str; 5] = ["id", "k", "m1", "m2", "m3"];
const TEXT: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

fn value(rng: &mut impl Rng, kind: ColumnKind) -> Value {
    match kind {
        ColumnKind::Categorical => Value::from(*TEXT.choose(rng).expect("non-empty")),
        ColumnKind::Quantitative => Value::from(rng.gen_range(0..6) as f64),
    }
}

fn columns(rng: &mut impl Rng) -> Vec<Column> {
    let n = rng.gen_range(1..=4);
    let mut names = NAMES.to_vec();
    names.shuffle(rng);
    names[..n]
        .iter()
        .map(|name| {
            let kind = if rng.gen_bool(0.5) {
                ColumnKind::Quantitative
            } else {
                ColumnKind::Categorical
            };
            Column::new(*name, kind)
        })
        .collect()
}

fn distinct(rng: &mut impl Rng, kind: ColumnKind, n: usize) -> Vec<Value> {
    let mut pool: Vec<Value> = match kind {
        ColumnKind::Categorical => TEXT.iter().map(|s| Value::from(*s)).collect(),
        ColumnKind::Quantitative => (0..6).map(|i| Value::from(i as f64)).collect(),
    };
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}

fn build(name: &str, cols: Vec<Column>, key_values: Vec<Value>, rng: &mut impl Rng) -> DataTable {
    let key = cols[0].name.clone();
    let rows = key_values
        .into_iter()
        .map(|k| {
            let mut row = BTreeMap::new();
            for c in &cols {
                let v = if c.name == key { k.clone() } else { value(rng, c.kind) };
                row.insert(c.name.clone(), v);
            }
            row
        })
        .collect();
    DataTable {
        name: name.into(),
        key,
        columns: cols,
        rows,
    }
}

/// A pair of well-formed tables with at most 6 rows and 4 columns each,
/// biased toward sharing key values so every relationship kind shows up.
pub fn random_table_pair(rng: &mut impl Rng) -> (DataTable, DataTable) {
    let ca = columns(rng);
    let n = rng.gen_range(1..=6);
    let keys_a = distinct(rng, ca[0].kind, n);
    let a = build("ta", ca, keys_a.clone(), rng);

    let mut cb = columns(rng);
    let b = match rng.gen_range(0..3) {
        0 => {
            let m = rng.gen_range(1..=6);
            let keys = distinct(rng, cb[0].kind, m);
            build("tb", cb, keys, rng)
        }
        1 => {
            // Same key values, possibly under another column name.
            cb[0].kind = a.columns[0].kind;
            let mut keys = keys_a.clone();
            keys.shuffle(rng);
            build("tb", cb, keys, rng)
        }
        _ => {
            // Rows referencing a's keys from a non-key column.
            cb[0].kind = ColumnKind::Quantitative;
            if cb.len() < 2 {
                cb.push(Column::new(
                    NAMES.iter().find(|n| **n != cb[0].name).copied().expect("spare name"),
                    a.columns[0].kind,
                ));
            } else {
                cb[1].kind = a.columns[0].kind;
            }
            let m = rng.gen_range(keys_a.len()..=6).max(1);
            let mut t = build("tb", cb, (0..m).map(|i| Value::from(i as f64)).collect(), rng);
            let ref_col = t.columns[1].name.clone();
            for (i, row) in t.rows.iter_mut().enumerate() {
                let k = if i < keys_a.len() {
                    keys_a[i].clone()
                } else {
                    keys_a.choose(rng).expect("non-empty").clone()
                };
                row.insert(ref_col.clone(), k);
            }
            t
        }
    };
    (a, b)
}

// ---------------------------------------------------------------------------
// Box intersection by vertex enumeration of the 12 face half-spaces.

fn half_spaces(b: &Obb, grow: f64) -> Vec<(Vector3<f64>, f64)> {
    let mut out = Vec::with_capacity(6);
    for i in 0..3 {
        let n = b.axes[i];
        let d = n.dot(&b.center);
        let h = b.half_extents[i] + grow;
        out.push((n, d + h));
        out.push((-n, -d + h));
    }
    out
}

/// Whether the boxes, each grown by `grow` (negative shrinks), share a point.
/// Their intersection is a bounded polytope, so it is non-empty exactly when
/// some triple of face planes meets in a point satisfying all 12 half-spaces.
fn meet(a: &Obb, b: &Obb, grow: f64) -> bool {
    let hs: Vec<(Vector3<f64>, f64)> = half_spaces(a, grow)
        .into_iter()
        .chain(half_spaces(b, grow))
        .collect();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            for k in j + 1..hs.len() {
                let m = Matrix3::from_rows(&[
                    hs[i].0.transpose(),
                    hs[j].0.transpose(),
                    hs[k].0.transpose(),
                ]);
                let Some(inv) = m.try_inverse() else { continue };
                if m.determinant().abs() < 1e-9 {
                    continue;
                }
                let x = inv * Vector3::new(hs[i].1, hs[j].1, hs[k].1);
                if hs.iter().all(|(n, d)| n.dot(&x) <= d + 1e-9) {
                    return true;
                }
            }
        }
    }
    false
}

/// `Some(overlap)` when the answer is robust to moving every face by
/// `band`; `None` for near-touching pairs.
pub fn boxes_overlap(a: &Obb, b: &Obb, band: f64) -> Option<bool> {
    if meet(a, b, -band) {
        Some(true)
    } else if !meet(a, b, band) {
        Some(false)
    } else {
        None
    }
}

pub fn random_rotation(rng: &mut impl Rng) -> UnitQuaternion<f64> {
    let axis = Vector3::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    if axis.norm() < 1e-3 {
        return UnitQuaternion::identity();
    }
    UnitQuaternion::from_axis_angle(
        &nalgebra::Unit::new_normalize(axis),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

pub fn random_obb(rng: &mut impl Rng) -> Obb {
    let pose = Pose {
        position: Vector3::new(
            rng.gen_range(-0.6..0.6),
            rng.gen_range(-0.6..0.6),
            rng.gen_range(-0.6..0.6),
        ),
        rotation: random_rotation(rng),
        scale: rng.gen_range(0.5..2.0),
    };
    let half = Vector3::new(
        rng.gen_range(0.01..0.4),
        rng.gen_range(0.01..0.4),
        rng.gen_range(0.005..0.3),
    );
    Obb::from_local(&pose, Vector3::zeros(), half)
}
