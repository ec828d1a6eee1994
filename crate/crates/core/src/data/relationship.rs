use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{DataTable, Value};

/// How the rows of two tables correspond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationshipKind {
    None,
    ItemItem,
    ItemGroup,
    ItemDimension,
}

impl RelationshipKind {
    pub const ALL: [RelationshipKind; 4] = [
        RelationshipKind::None,
        RelationshipKind::ItemItem,
        RelationshipKind::ItemGroup,
        RelationshipKind::ItemDimension,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RelationshipKind::None => "none",
            RelationshipKind::ItemItem => "item-item",
            RelationshipKind::ItemGroup => "item-group",
            RelationshipKind::ItemDimension => "item-dimension",
        }
    }

    /// Inference precedence; lower wins.
    pub fn precedence(self) -> usize {
        match self {
            RelationshipKind::ItemItem => 0,
            RelationshipKind::ItemGroup => 1,
            RelationshipKind::ItemDimension => 2,
            RelationshipKind::None => 3,
        }
    }
}

impl fmt::Display for RelationshipKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RelationshipKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RelationshipKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown relationship kind \"{s}\""))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationSource {
    Declared,
    Inferred,
}

/// A relationship between two tables.
///
/// For the asymmetric kinds the sides are normalized: `table_a` is the item
/// side (the host for item-group, the "one" side for item-dimension) and
/// `table_b` carries the attributes or the many rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relationship {
    pub kind: RelationshipKind,
    #[serde(rename = "a")]
    pub table_a: String,
    #[serde(rename = "b")]
    pub table_b: String,
    #[serde(rename = "aKey", skip_serializing_if = "Option::is_none")]
    pub a_key: Option<String>,
    #[serde(rename = "bKey", skip_serializing_if = "Option::is_none")]
    pub b_key: Option<String>,
    pub source: RelationSource,
}

impl Relationship {
    pub fn declared(
        kind: RelationshipKind,
        a: &str,
        b: &str,
        a_key: Option<&str>,
        b_key: Option<&str>,
    ) -> Self {
        let keyed = kind != RelationshipKind::None;
        Self {
            kind,
            table_a: a.into(),
            table_b: b.into(),
            a_key: a_key.filter(|_| keyed).map(Into::into),
            b_key: b_key.filter(|_| keyed).map(Into::into),
            source: RelationSource::Declared,
        }
    }

    fn inferred(kind: RelationshipKind, a: &str, b: &str, keys: Option<(&str, &str)>) -> Self {
        Self {
            kind,
            table_a: a.into(),
            table_b: b.into(),
            a_key: keys.map(|k| k.0.into()),
            b_key: keys.map(|k| k.1.into()),
            source: RelationSource::Inferred,
        }
    }

    pub fn none(a: &str, b: &str) -> Self {
        Self::inferred(RelationshipKind::None, a, b, None)
    }

    pub(crate) fn same_table(t: &DataTable) -> Self {
        Self::inferred(
            RelationshipKind::ItemItem,
            &t.name,
            &t.name,
            Some((&t.key, &t.key)),
        )
    }

    pub fn involves(&self, a: &str, b: &str) -> bool {
        (self.table_a == a && self.table_b == b) || (self.table_a == b && self.table_b == a)
    }

    /// Flat item pairs from table `ta` to table `tb`, whichever side of the
    /// relationship each table is on. Sorted by (ta item, tb item).
    pub fn pairs_between(
        &self,
        ta: &DataTable,
        tb: &DataTable,
    ) -> Result<Vec<(String, String)>, CorrespondenceError> {
        let mut out = Vec::new();
        if self.table_a == ta.name && self.table_b == tb.name {
            for c in item_correspondences(self, ta, tb)? {
                out.extend(c.targets.into_iter().map(|t| (c.item.clone(), t)));
            }
        } else if self.table_a == tb.name && self.table_b == ta.name {
            for c in item_correspondences(self, tb, ta)? {
                out.extend(c.targets.into_iter().map(|t| (t, c.item.clone())));
            }
        } else {
            return Err(CorrespondenceError::TableMismatch {
                expected: (self.table_a.clone(), self.table_b.clone()),
                found: (ta.name.clone(), tb.name.clone()),
            });
        }
        out.sort();
        Ok(out)
    }
}

/// One item of the `a` side and the `b` row keys it corresponds to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub item: String,
    pub targets: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorrespondenceError {
    #[error("relationship kind is none; there are no correspondences")]
    KindIsNone,
    #[error("relationship is between {expected:?} but tables {found:?} were given")]
    TableMismatch {
        expected: (String, String),
        found: (String, String),
    },
    #[error("column \"{0}\" does not exist")]
    UnknownColumn(String),
}

fn column_values<'a>(t: &'a DataTable, col: &str) -> Vec<&'a Value> {
    t.rows.iter().filter_map(|r| r.get(col)).collect()
}

fn is_unique(values: &[&Value]) -> bool {
    let set: BTreeSet<&Value> = values.iter().copied().collect();
    set.len() == values.len()
}

/// Measure columns of `t` whose names do not occur in `other`.
fn new_measures(t: &DataTable, other: &DataTable) -> usize {
    t.measure_columns()
        .filter(|c| !other.has_column(&c.name))
        .count()
}

/// Column pairs `(ca, cb)` whose values are unique on both sides and form the
/// same non-empty set.
fn bijection_witnesses(a: &DataTable, b: &DataTable) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for ca in &a.columns {
        let va = column_values(a, &ca.name);
        if va.is_empty() || va.len() != a.rows.len() || !is_unique(&va) {
            continue;
        }
        let set_a: BTreeSet<&Value> = va.into_iter().collect();
        for cb in &b.columns {
            let vb = column_values(b, &cb.name);
            if vb.len() != b.rows.len() || !is_unique(&vb) {
                continue;
            }
            let set_b: BTreeSet<&Value> = vb.into_iter().collect();
            if set_a == set_b {
                out.push((ca.name.clone(), cb.name.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Column pairs `(c_one, c_many)` where `c_one` identifies rows of `one` and
/// the rows of `many` map onto every one of them, at least one fanning out to
/// two or more rows.
fn dimension_witnesses(one: &DataTable, many: &DataTable) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for c1 in &one.columns {
        let v1 = column_values(one, &c1.name);
        if v1.is_empty() || v1.len() != one.rows.len() || !is_unique(&v1) {
            continue;
        }
        for cm in &many.columns {
            let vm = column_values(many, &cm.name);
            if vm.len() != many.rows.len() {
                continue;
            }
            let mut fan: BTreeMap<&Value, usize> = v1.iter().map(|v| (*v, 0)).collect();
            let mut onto = true;
            for v in &vm {
                match fan.get_mut(v) {
                    Some(n) => *n += 1,
                    None => {
                        onto = false;
                        break;
                    }
                }
            }
            if onto && fan.values().all(|n| *n >= 1) && fan.values().any(|n| *n >= 2) {
                out.push((c1.name.clone(), cm.name.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Infers the relationship between two tables from their contents.
///
/// A column pair with equal, duplicate-free value sets witnesses a bijection;
/// it is item-group when one side contributes two or more new measure
/// columns, item-item otherwise. Failing that, a column mapping many rows of
/// one table onto every key of the other witnesses item-dimension. Ties
/// between witnessing pairs go to the lexicographically smallest pair.
pub fn infer_relationship(a: &DataTable, b: &DataTable) -> Relationship {
    let bij = bijection_witnesses(a, b);
    if let Some((ka, kb)) = bij.first() {
        let (new_a, new_b) = (new_measures(a, b), new_measures(b, a));
        if new_a.max(new_b) < 2 {
            return Relationship::inferred(
                RelationshipKind::ItemItem,
                &a.name,
                &b.name,
                Some((ka, kb)),
            );
        }
        let b_is_client = match new_b.cmp(&new_a) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => b.name >= a.name,
        };
        let (host, client) = if b_is_client { (a, b) } else { (b, a) };
        let (kh, kc) = bijection_witnesses(host, client)
            .into_iter()
            .next()
            .expect("bijection is symmetric");
        return Relationship::inferred(
            RelationshipKind::ItemGroup,
            &host.name,
            &client.name,
            Some((&kh, &kc)),
        );
    }
    for (one, many) in [(a, b), (b, a)] {
        if let Some((k1, km)) = dimension_witnesses(one, many).first() {
            return Relationship::inferred(
                RelationshipKind::ItemDimension,
                &one.name,
                &many.name,
                Some((k1, km)),
            );
        }
    }
    Relationship::none(&a.name, &b.name)
}

/// Row-level correspondences of a relationship, sorted by `a` row key.
///
/// Item-item and item-group yield one target per item; item-dimension yields
/// every `b` row grouped under the item.
pub fn item_correspondences(
    rel: &Relationship,
    a: &DataTable,
    b: &DataTable,
) -> Result<Vec<Correspondence>, CorrespondenceError> {
    if rel.kind == RelationshipKind::None {
        return Err(CorrespondenceError::KindIsNone);
    }
    if rel.table_a != a.name || rel.table_b != b.name {
        return Err(CorrespondenceError::TableMismatch {
            expected: (rel.table_a.clone(), rel.table_b.clone()),
            found: (a.name.clone(), b.name.clone()),
        });
    }
    let a_key = rel.a_key.as_deref().unwrap_or(&a.key);
    let b_key = rel.b_key.as_deref().unwrap_or(&b.key);
    if !a.has_column(a_key) {
        return Err(CorrespondenceError::UnknownColumn(a_key.into()));
    }
    if !b.has_column(b_key) {
        return Err(CorrespondenceError::UnknownColumn(b_key.into()));
    }

    let mut by_value: BTreeMap<&Value, Vec<String>> = BTreeMap::new();
    for row in &b.rows {
        if let (Some(v), Some(k)) = (row.get(b_key), b.row_key(row)) {
            by_value.entry(v).or_default().push(k);
        }
    }
    let mut out: Vec<Correspondence> = a
        .rows
        .iter()
        .filter_map(|row| {
            let item = a.row_key(row)?;
            let mut targets = by_value.get(row.get(a_key)?)?.clone();
            targets.sort();
            Some(Correspondence { item, targets })
        })
        .collect();
    out.sort_by(|x, y| x.item.cmp(&y.item));
    Ok(out)
}
